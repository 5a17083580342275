"""
Application Configuration
Environment-driven settings and validation of single command runs
"""
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

from src.algebra.bracket_diagrams import Variant
from src.algebra.free_superalgebra import ParityMode

# Load environment variables
load_dotenv()

# Base directory - go up one level from src to project root
BASE_DIR = Path(__file__).parent.parent


def _optional_int(name: str) -> Optional[int]:
    value = os.getenv(name, '')
    return int(value) if value else None


class Config:
    """Base configuration"""
    APP_NAME = "Bracket Diagram Homology"
    VERSION = "1.0.0"

    DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

    # Computation bounds
    I_MAX = int(os.getenv('I_MAX', 4))
    J_MAX = _optional_int('J_MAX')
    WORKERS = int(os.getenv('BRACKET_DIAGRAMS_WORKERS', 1))
    TIME_BUDGET = float(os.getenv('TIME_BUDGET', 0))

    # Paths
    OUTPUT_DIR = BASE_DIR / os.getenv('OUTPUT_DIR', 'exports')
    CACHE_DIR = BASE_DIR / os.getenv('CACHE_DIR', '.cache')
    FIXTURES_DIR = BASE_DIR / os.getenv('FIXTURES_DIR', 'fixtures')

    # Cache settings
    CACHE_ENABLED = os.getenv('CACHE_ENABLED', 'False').lower() == 'true'
    CACHE_SIZE_LIMIT = int(os.getenv('CACHE_SIZE_LIMIT', 2 ** 30))

    @classmethod
    def init_app(cls):
        """Initialize application directories"""
        cls.OUTPUT_DIR.mkdir(exist_ok=True)
        if cls.CACHE_ENABLED:
            cls.CACHE_DIR.mkdir(exist_ok=True)
        return cls


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    CACHE_ENABLED = os.getenv('CACHE_ENABLED', 'True').lower() == 'true'


class TestingConfig(Config):
    """Testing configuration"""
    I_MAX = 3
    WORKERS = 1
    CACHE_ENABLED = False
    LOG_LEVEL = 'WARNING'


# Select config based on environment
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}

APP_CONFIG = config[os.getenv('APP_ENV', 'default')]


class RunConfig(BaseModel):
    """One validated command invocation"""
    variant: Variant = Variant.B
    parity: ParityMode = ParityMode.EVEN
    i: Optional[int] = Field(default=None, ge=0)
    j: Optional[int] = Field(default=None, ge=0)
    i_max: int = Field(default=Config.I_MAX, ge=0)
    j_max: Optional[int] = Field(default=Config.J_MAX, ge=0)
    coefficients: str = "integers"
    prime: Optional[int] = None
    source_basis: Optional[Path] = None
    target_basis: Optional[Path] = None
    output_format: str = "text"
    output: Optional[Path] = None
    time_budget: float = Field(default=Config.TIME_BUDGET, ge=0)
    workers: int = Field(default=Config.WORKERS, ge=1)
    differential: str = "full"
    needs_rationals: bool = False

    @field_validator('coefficients')
    @classmethod
    def _known_coefficients(cls, value: str) -> str:
        if value not in ("integers", "rationals", "mod-p"):
            raise ValueError(f"unknown coefficients {value!r}")
        return value

    @field_validator('output_format')
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {value!r}")
        return value

    @field_validator('differential')
    @classmethod
    def _known_differential(cls, value: str) -> str:
        if value not in ("full", "bar"):
            raise ValueError(f"unknown differential {value!r}")
        return value

    @field_validator('source_basis', 'target_basis')
    @classmethod
    def _basis_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            raise ValueError(f"basis file {value} does not exist")
        return value

    @model_validator(mode='after')
    def _consistent(self) -> "RunConfig":
        if self.coefficients == "mod-p":
            if self.prime is None or self.prime < 2 or any(self.prime % k == 0 for k in range(2, int(self.prime ** 0.5) + 1)):
                raise ValueError("mod-p coefficients need a prime")
        if self.needs_rationals and self.coefficients != "rationals":
            raise ValueError("primitive projections need rational coefficients")
        if self.differential == "bar" and not self.variant.starred:
            raise ValueError("the asterisk-preserving differential lives on asterisk diagrams")
        if self.variant.starred and self.parity is ParityMode.ODD and self.differential == "bar":
            raise ValueError("the asterisk-preserving differential is an even-d construction")
        return self
