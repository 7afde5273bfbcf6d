"""
Config-driven command line: load an experiment, run checks, write artifacts.
"""
from ergodic_rates.cli.config import ConfigError, ExperimentConfig, load_config, parse_config
from ergodic_rates.cli.main import main

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "parse_config", "main"]
