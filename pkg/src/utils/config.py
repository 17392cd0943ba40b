"""Configuration settings for the resurgent Anger-Weber toolkit."""

import os
from fractions import Fraction
from typing import Dict, Any


class Config:
    """Configuration class for the application."""

    # Precision settings
    DEFAULT_DIGITS = 50
    MIN_DIGITS = 16
    QUAD_GUARD_DIGITS = 10  # extra digits carried inside every quadrature
    RESURGENCE_DIGITS = 20  # nested profile integrals are run at reduced precision
    DIGITS_ENV_VAR = 'RA_DIGITS'

    # Oracle settings (angles as exact multiples of pi)
    ORACLE_SECTOR = Fraction(1, 3)
    PROFILE_SPLIT = 1  # t*x below this uses the cosine integral, above it besselk

    # File paths
    BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    REPORTS_DIR = os.path.join(BASE_DIR, 'reports')

    # Export settings
    EXPORT_FORMATS = ['json', 'csv', 'excel', 'pdf']
    OUTPUT_FORMATS = ['json', 'csv']

    # Logging settings
    LOG_LEVEL = 'INFO'
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    LOG_TO_FILE = False
    LOG_FILE = 'resurgent_anger.log'

    # Late-coefficient table reproduction
    TABLE1_ROWS = {
        'n': 25,
        'M': 33,
        'betas': ['pi/6', 'pi/3', '6pi/13', '7pi/15'],
        'value_digits': 32,
        'error_digits': 6,
        'bound_digits': 7,
    }

    # Stokes scan defaults
    SCAN_RULES = {
        'points': 17,
        'half_width': 0.4,
        'max_half_width': 0.5,
        'emergent_terms': 3,
    }

    # Grids used by the `check` command
    CHECK_RULES = {
        'equivalence_max_n': 15,
        'lauwerier_points': 20,
        'lauwerier_seed': 20240607,
        'secb_points': [(10, 'pi/3', 0), (10, 'pi/3', 2)],
        'x1_points': [(20, 0), (20, 3)],
        'residual_tolerance': 1e-8,
    }

    @classmethod
    def get_all_settings(cls) -> Dict[str, Any]:
        """Get all configuration settings as a dictionary."""
        return {
            'default_digits': cls.DEFAULT_DIGITS,
            'min_digits': cls.MIN_DIGITS,
            'quad_guard_digits': cls.QUAD_GUARD_DIGITS,
            'resurgence_digits': cls.RESURGENCE_DIGITS,
            'oracle_sector': str(cls.ORACLE_SECTOR) + '*pi',
            'reports_dir': cls.REPORTS_DIR,
            'export_formats': cls.EXPORT_FORMATS,
            'table1_rows': cls.TABLE1_ROWS,
            'scan_rules': cls.SCAN_RULES,
            'check_rules': cls.CHECK_RULES,
        }

    @classmethod
    def default_digits(cls) -> int:
        """Working precision, honouring the RA_DIGITS override."""
        raw = os.environ.get(cls.DIGITS_ENV_VAR)
        if raw is None or not raw.strip():
            return cls.DEFAULT_DIGITS
        try:
            digits = int(raw)
        except ValueError:
            from utils.validators import ValidationError
            raise ValidationError(f"{cls.DIGITS_ENV_VAR} must be an integer, got {raw!r}")
        if digits < cls.MIN_DIGITS:
            from utils.validators import ValidationError
            raise ValidationError(f"{cls.DIGITS_ENV_VAR} must be at least {cls.MIN_DIGITS}")
        return digits

    @classmethod
    def ensure_directories_exist(cls):
        """Ensure all required directories exist."""
        os.makedirs(cls.REPORTS_DIR, exist_ok=True)


# Environment-specific configurations
class DevelopmentConfig(Config):
    """Development environment configuration."""
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production environment configuration."""
    LOG_LEVEL = 'WARNING'
    LOG_TO_FILE = True


def get_config() -> Config:
    """Pick the configuration named by RA_ENV."""
    env = os.environ.get('RA_ENV', '').strip().lower()
    if env == 'development':
        return DevelopmentConfig()
    if env == 'production':
        return ProductionConfig()
    return Config()


# Default configuration
config = get_config()
