import sys

from loguru import logger

from src.config.settings.base import config_env

logger.remove()
logger.add(sys.stderr, level=config_env.LOG_LEVEL)
logger.add(config_env.LOG_FILE, level="DEBUG", rotation="500 MB", retention="10 days", backtrace=True, diagnose=True)
