from os import getenv
from pathlib import Path

from dotenv import load_dotenv

# The environment has to be in place before the log file name is read.
env_files = ["config.env", ".env"]
env_loaded = None

for env_file in env_files:
    if Path(env_file).exists():
        load_dotenv(env_file)
        env_loaded = env_file
        break

from HoCat.logging import LOGGER  # noqa: E402
from HoCat.engine_config import get_config_manager  # noqa: E402

logger = LOGGER(__name__)

if env_loaded:
    logger.info(f"Loaded environment from {env_loaded}")
else:
    logger.info("No .env file found, using system environment variables")

PACKAGE_ROOT = Path(__file__).resolve().parent
PROJECT_ROOT = PACKAGE_ROOT.parent

DEFAULT_BUDGET = 10**7
ROUTES = ("q", "ctilde", "both")
FORMATS = ("text", "json")


def parse_int_env(key: str, default: int) -> int:
    value = getenv(key, "").strip()
    if not value:
        return default
    try:
        return int(float(value)) if "e" in value.lower() else int(value)
    except ValueError:
        logger.error(f"Ignoring non-integer value for {key}: {value!r}")
        return default


HOCAT_CONFIG = getenv("HOCAT_CONFIG", str(PROJECT_ROOT / "hocat_config.json"))
HOCAT_BATTERY_DIR = getenv("HOCAT_BATTERY_DIR", "")
HOCAT_BUDGET = parse_int_env("HOCAT_BUDGET", DEFAULT_BUDGET)
HOCAT_ROUTE = getenv("HOCAT_ROUTE", "ctilde").lower()
HOCAT_FORMAT = getenv("HOCAT_FORMAT", "text").lower()

if HOCAT_BUDGET <= 0:
    logger.warning(f"HOCAT_BUDGET must be positive, falling back to {DEFAULT_BUDGET}")
    HOCAT_BUDGET = DEFAULT_BUDGET

if HOCAT_ROUTE not in ROUTES:
    logger.warning(f"Unknown HOCAT_ROUTE {HOCAT_ROUTE!r}, using 'ctilde'")
    HOCAT_ROUTE = "ctilde"

if HOCAT_FORMAT not in FORMATS:
    logger.warning(f"Unknown HOCAT_FORMAT {HOCAT_FORMAT!r}, using 'text'")
    HOCAT_FORMAT = "text"

config_manager = get_config_manager(config_path=HOCAT_CONFIG)


def default_battery_dir() -> str:
    """Battery corpus used when neither --battery nor HOCAT_BATTERY_DIR is given."""

    if HOCAT_BATTERY_DIR:
        return HOCAT_BATTERY_DIR
    configured = config_manager.get_battery_config("default") or {}
    path = Path(configured.get("path", "batteries/default"))
    if not path.is_absolute():
        path = PROJECT_ROOT / path
    return str(path)
