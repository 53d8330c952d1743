"""Configuration management for gerechte.

This module handles loading configuration from a YAML file, providing
default values when needed. Command-line flags override whatever is loaded
here.

Configuration Structure:
    seed: Seed for every randomized choice (default: 0)
    log_level: Logging level name (default: INFO)
    brute_force:
        max_assignments: Node cap of the backtracking oracle (default: 10000000)
        max_order: Largest order the oracle is tried on (default: 9)
        time_limit: Optional wall-clock budget in seconds (default: none)
    census:
        max_order: Largest order the enumerator accepts (default: 6)
        workers: Number of worker processes (default: 1)
        database_file: Optional SQLite file for resumable results (default: none)
        progress: Show a progress bar (default: true)

Example config.yaml:
    seed: 0
    brute_force:
      max_assignments: 10000000
      max_order: 9
    census:
      workers: 4
      database_file: census.db
"""

import logging
import yaml

# Default configuration values
DEFAULT_SEED = 0
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_MAX_ASSIGNMENTS = 10_000_000
DEFAULT_BRUTE_FORCE_MAX_ORDER = 9
DEFAULT_CENSUS_MAX_ORDER = 6
DEFAULT_WORKERS = 1


def default_config():
    """Return a fresh configuration dictionary holding only default values.

    Returns:
        dict: Configuration dictionary with the keys described in the module
            docstring
    """
    return {
        "seed": DEFAULT_SEED,
        "log_level": DEFAULT_LOG_LEVEL,
        "brute_force": {
            "max_assignments": DEFAULT_MAX_ASSIGNMENTS,
            "max_order": DEFAULT_BRUTE_FORCE_MAX_ORDER,
            "time_limit": None,
        },
        "census": {
            "max_order": DEFAULT_CENSUS_MAX_ORDER,
            "workers": DEFAULT_WORKERS,
            "database_file": None,
            "progress": True,
        },
    }


def load_config(path="config.yaml"):
    """Load configuration from a YAML file.

    If the file is not found or contains invalid data, default values are
    used. Keys missing from the file fall back to their defaults one by one.

    Args:
        path (str): Path to the YAML configuration file

    Returns:
        dict: Configuration dictionary (see default_config)
    """
    config = default_config()
    try:
        with open(path, "r") as f:
            loaded = yaml.safe_load(f) or {}

        config["seed"] = int(loaded.get("seed", DEFAULT_SEED))
        config["log_level"] = str(loaded.get("log_level", DEFAULT_LOG_LEVEL)).upper()

        # Nested sections only override the keys they name
        for section in ("brute_force", "census"):
            values = loaded.get(section) or {}
            for key in config[section]:
                if key in values:
                    config[section][key] = values[key]

        return config
    except FileNotFoundError:
        logging.warning(f"Config file {path} not found, using default values")
        return default_config()
    except Exception as e:
        logging.error(f"Error loading config: {e}")
        return default_config()
