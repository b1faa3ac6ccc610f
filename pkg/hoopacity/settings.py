import os

class Settings:
    """
    Centralized settings for hoopacity.
    Values can be overridden by environment variables.
    """
    # Construction guard: no single subset construction may exceed this
    MAX_STATES = int(os.getenv("HOOPACITY_MAX_STATES", "200000"))

    # Oracle defaults
    ORACLE_MAX_LEN = int(os.getenv("HOOPACITY_ORACLE_MAX_LEN", "6"))

    # Async runner
    CONCURRENCY_LIMIT = int(os.getenv("HOOPACITY_CONCURRENCY_LIMIT", "4"))

    LOG_LEVEL = os.getenv("HOOPACITY_LOG_LEVEL", "WARNING").upper()

    # Debug Mode
    DEBUG = os.getenv("HOOPACITY_DEBUG", "False").lower() in ("true", "1", "yes")

settings = Settings()
