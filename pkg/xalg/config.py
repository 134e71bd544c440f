"""
Configuration and logging for xalg.

Settings come from ``config.yaml`` at the project root (or the path in
``XALG_CONFIG``), with environment overrides loaded from ``.env`` and
command-line flags applied last by the CLI.
"""

import logging
import os
from dataclasses import dataclass, replace
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import dotenv
import yaml

project_root = Path(__file__).parent.parent

# Load .env file
env_path = project_root / '.env'
if env_path.exists():
    dotenv.load_dotenv(dotenv_path=str(env_path), override=False)
else:
    dotenv.load_dotenv(override=False)

DEFAULT_CONFIG_PATH = project_root / 'config.yaml'
DEFAULT_MAX_SEARCH = 2 ** 24
DEFAULT_MAX_PAIR_PRODUCT = 4096
DEFAULT_MAX_PAIR_ORDER = 512
DEFAULT_MAX_TRIPLE_ORDER = 512
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

logger = logging.getLogger('xalg.config')


@dataclass(frozen=True)
class Settings:
    """Immutable run settings shared by every module."""

    max_search: int = DEFAULT_MAX_SEARCH
    max_pair_product: int = DEFAULT_MAX_PAIR_PRODUCT
    max_pair_order: int = DEFAULT_MAX_PAIR_ORDER
    max_triple_order: int = DEFAULT_MAX_TRIPLE_ORDER
    log_level: str = 'WARNING'
    log_format: str = LOG_FORMAT
    log_file: Optional[str] = None
    report_format: str = 'text'
    include_timing: bool = False
    seed: int = 0

    def with_overrides(self, **overrides) -> 'Settings':
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)


def _load_yaml(config_path: Path) -> Dict:
    """Load configuration from YAML file."""
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f)
        logger.debug("Loaded configuration from %s", config_path)
        return config or {}
    except FileNotFoundError:
        logger.warning("Config file not found at %s, using defaults", config_path)
        return {}
    except yaml.YAMLError as e:
        logger.warning("Error loading config file: %s, using defaults", e)
        return {}


def load_settings(config_path: Optional[str] = None) -> Settings:
    """
    Build Settings from config.yaml and environment variables.

    Args:
        config_path: Path to config.yaml. If None, uses ``XALG_CONFIG`` or
            project_root/config.yaml.

    Returns:
        Settings with file values, then environment overrides, applied.
    """
    if config_path is None:
        config_path = os.getenv('XALG_CONFIG') or DEFAULT_CONFIG_PATH
    config = _load_yaml(Path(config_path))

    search_config = config.get('search', {}) or {}
    exhaustive_config = config.get('exhaustive', {}) or {}
    logging_config = config.get('logging', {}) or {}
    report_config = config.get('report', {}) or {}

    settings = Settings(
        max_search=int(search_config.get('max_search', DEFAULT_MAX_SEARCH)),
        max_pair_product=int(exhaustive_config.get('max_pair_product', DEFAULT_MAX_PAIR_PRODUCT)),
        max_pair_order=int(exhaustive_config.get('max_pair_order', DEFAULT_MAX_PAIR_ORDER)),
        max_triple_order=int(exhaustive_config.get('max_triple_order', DEFAULT_MAX_TRIPLE_ORDER)),
        log_level=str(logging_config.get('level', 'WARNING')).upper(),
        log_format=logging_config.get('format', LOG_FORMAT),
        log_file=logging_config.get('file'),
        report_format=report_config.get('format', 'text'),
        include_timing=bool(report_config.get('include_timing', False)),
    )

    env_search = os.getenv('XALG_MAX_SEARCH')
    env_level = os.getenv('XALG_LOG_LEVEL')
    if env_search:
        try:
            settings = settings.with_overrides(max_search=int(env_search))
        except ValueError:
            logger.warning("Ignoring non-integer XALG_MAX_SEARCH=%r", env_search)
    if env_level:
        settings = settings.with_overrides(log_level=env_level.upper())
    return settings


def configure_logging(settings: Settings) -> None:
    """Attach handlers to the ``xalg`` logger according to settings."""
    root = logging.getLogger('xalg')
    root.setLevel(getattr(logging, settings.log_level, logging.WARNING))
    root.handlers.clear()
    formatter = logging.Formatter(settings.log_format)
    stream = logging.StreamHandler()
    stream.setFormatter(formatter)
    root.addHandler(stream)
    if settings.log_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
    root.propagate = False


class VerificationLog:
    """
    Scratch record of a verification run.

    Entries are timestamped and kept in memory; when a path is given they are
    also appended to that file. Nothing here is copied into reports.
    """

    def __init__(self, log_path: Optional[str] = None):
        self.log_path = Path(log_path) if log_path else None
        self.memory: List[str] = []
        if self.log_path is not None:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)

    def log(self, message: str, entry: Optional[str] = None):
        """
        Record a message.

        Args:
            message: Message to log
            entry: Catalog entry or command the message belongs to (optional)
        """
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        if entry is not None:
            log_entry = f"[{entry}] {timestamp}: {message}"
        else:
            log_entry = f"{timestamp}: {message}"
        self.memory.append(log_entry)
        if self.log_path is not None:
            with open(self.log_path, 'a', encoding='utf-8') as f:
                f.write(log_entry + '\n')
