import logging
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from models.schemas import VerificationWindow

load_dotenv()

REPO_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseModel):
    window: int = Field(default=10, ge=1)
    group_range: int = Field(default=2, ge=0)
    max_cases: int = Field(default=4000, ge=1)
    seed: int = 0
    catalog_dir: Path = REPO_ROOT / "catalog"
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        values = {
            "window": os.getenv("BV_WINDOW"),
            "group_range": os.getenv("BV_GROUP_RANGE"),
            "max_cases": os.getenv("BV_MAX_CASES"),
            "seed": os.getenv("BV_SEED"),
            "catalog_dir": os.getenv("BV_CATALOG_DIR"),
            "log_level": os.getenv("BV_LOG_LEVEL"),
        }
        return cls(**{k: v for k, v in values.items() if v is not None})

    def default_window(self) -> VerificationWindow:
        return VerificationWindow(
            degree=self.window, group_range=self.group_range, max_cases=self.max_cases, seed=self.seed
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, get_settings().log_level.upper(), logging.INFO))

    # Avoid duplicate handlers
    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger
