import logging
import os
from logging.handlers import RotatingFileHandler

LOG_FILE = os.getenv("HOCAT_LOG_FILE", "logs.txt")
LOG_LEVEL = os.getenv("HOCAT_LOG_LEVEL", "INFO").upper()

# Removing old log files if they exist and starting logging from a fresh file.
if os.path.exists(LOG_FILE):
    os.remove(LOG_FILE)

# Reports go to stdout, so the stream handler writes to stderr.
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format="[%(asctime)s - %(levelname)s] - %(name)s - %(message)s",
    datefmt="%d-%b-%y %H:%M:%S",
    handlers=[
        RotatingFileHandler(LOG_FILE, mode="w+", maxBytes=5000000, backupCount=3),
        logging.StreamHandler(),
    ]
)

# Suppressing dotenv chatter about missing files.
logging.getLogger("dotenv").setLevel(logging.ERROR)


def LOGGER(name: str) -> logging.Logger:
    return logging.getLogger(name)
