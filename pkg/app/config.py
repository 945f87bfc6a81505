"""Configuration management for the verification engine."""

import os
from dotenv import load_dotenv

# .env overrides for the verification run
load_dotenv()


def _float_env(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, str(default)))
    except ValueError:
        return default


class Settings:
    """Application settings loaded from environment variables."""

    def __init__(self):
        # Application Configuration
        self.debug = os.getenv("DEBUG", "0").lower() in ("true", "1", "yes")
        self.log_level = os.getenv("LOG_LEVEL", "INFO")

        # Output locations
        self.report_dir = os.getenv("REPORT_DIR", "reports")
        self.coset_cache_dir = os.getenv("COSET_CACHE_DIR", ".cache/cosets")

        # Finite differences
        self.fd_step = _float_env("FD_STEP", 1e-3)
        self.nested_fd_step = _float_env("NESTED_FD_STEP", 5e-3)

        # Working precision for mpmath evaluations
        try:
            self.mp_dps = int(os.getenv("MP_DPS", "30"))
        except ValueError:
            self.mp_dps = 30

        # Number of checks dispatched concurrently
        try:
            self.check_batch_size = int(os.getenv("CHECK_BATCH_SIZE", "4"))
        except ValueError:
            self.check_batch_size = 4

        try:
            self.default_seed = int(os.getenv("DEFAULT_SEED", "0"))
        except ValueError:
            self.default_seed = 0


# Shared instance read by the CLI and suites
settings = Settings()
