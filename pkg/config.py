import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

from dotenv import dotenv_values, load_dotenv

from errors import ConfigError

# Load environment variables
load_dotenv()


def _env_float(name, default):
    return float(os.environ.get(name, default))


def _env_int(name, default):
    return int(os.environ.get(name, default))


class Config:
    """Base configuration class"""

    # Numerical tolerances
    TOLERANCES = {
        'dependent_operator': _env_float('GE_DEPENDENT_TOL', '1e-10'),  # drop basis elements below this residual
        'unentangled': _env_float('GE_PURITY_TOL', '1e-8'),  # purity >= 1 - tol counts as unentangled
        'degenerate_gap': _env_float('GE_GAP_TOL', '1e-8'),  # relative to spectral width
        'lowest_weight': _env_float('GE_LOWEST_WEIGHT_TOL', '1e-8'),
        'closure': 1e-8,
        'ground_overlap': 1e-8,
    }

    # Convex-roof optimizer
    ROOF_CONFIG = {
        'restarts': _env_int('GE_ROOF_RESTARTS', '32'),
        'tolerance': _env_float('GE_ROOF_TOL', '1e-4'),
        'max_iterations': _env_int('GE_ROOF_MAXITER', '2000'),
        'method': os.environ.get('GE_ROOF_METHOD', 'L-BFGS-B'),
        'max_evaluations': _env_int('GE_ROOF_MAXFEV', '0'),  # 0 means the method's own limit
        'ensemble_cap': None,  # None means rank(rho)**2
        'seed': _env_int('GE_SEED', '0'),
    }

    # GLOCC sampling and monotonicity audit
    GLOCC_CONFIG = {
        'depth': _env_int('GE_GLOCC_DEPTH', '2'),
        'trials': _env_int('GE_GLOCC_TRIALS', '200'),
        'measure_probability': _env_float('GE_GLOCC_MEASURE_PROB', '0.5'),
        'recheck_factor': _env_int('GE_GLOCC_RECHECK', '4'),
        'allowed_violation_fraction': _env_float('GE_GLOCC_ALLOWED', '0.05'),
    }

    # XY chain purity scans
    SCAN_CONFIG = {
        'n': _env_int('GE_SCAN_N', '1000'),
        'eta': _env_float('GE_SCAN_ETA', '1.0'),
        'gmin': 0.0,
        'gmax': 2.0,
        'steps': 400,
        'window': (0.02, 0.2),  # fit range of g_c - g
        'extrapolation_divisors': (1, 2, 4),  # N, N/2, N/4 for the g_c extrapolation
    }

    # Theorem-equivalence suite
    THEOREM_CONFIG = {
        'orbit_samples': _env_int('GE_THEOREM_ORBIT', '100'),
        'random_samples': _env_int('GE_THEOREM_RANDOM', '100'),
    }

    THREADS = _env_int('GE_THREADS', '1')

    # Logging configuration
    LOG_LEVEL = os.environ.get('GE_LOG_LEVEL', 'INFO')
    LOG_FILE = os.environ.get('GE_LOG_FILE')


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = os.environ.get('GE_LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing configuration: small optimizer budgets, single thread"""
    ROOF_CONFIG = {**Config.ROOF_CONFIG, 'restarts': 8, 'max_iterations': 500}
    GLOCC_CONFIG = {**Config.GLOCC_CONFIG, 'trials': 10}
    THEOREM_CONFIG = {'orbit_samples': 20, 'random_samples': 20}
    THREADS = 1


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': Config,
    'testing': TestingConfig,
    'default': Config,
}


def get_config():
    """Get configuration based on environment"""
    env = os.environ.get('GE_ENV', 'default')
    return config.get(env, config['default'])


@dataclass
class RunConfig:
    """One CLI run: subcommand plus resolved algebra, state and numeric options"""
    subcommand: str
    algebra: Optional[str] = None
    algebra_options: dict = field(default_factory=dict)
    state: Optional[str] = None
    state_options: dict = field(default_factory=dict)
    numeric: dict = field(default_factory=dict)
    out: Optional[str] = None
    seed: int = 0
    threads: int = 1


def load_config_file(path, allowed_keys):
    """
    Read a key=value run configuration file

    The grammar is the dotenv one: one `key=value` per line, `#` comments,
    optional single or double quotes around values. Keys are long flag names
    with dashes written as underscores. Unknown keys raise ConfigError.
    """
    if not os.path.exists(path):
        raise ConfigError('config', f"file not found: {path}")

    values = dotenv_values(path)
    settings = {}
    for key, value in values.items():
        name = key.strip().lower().replace('-', '_')
        if name not in allowed_keys:
            raise ConfigError(name, f"unknown key in {path}")
        if value is None:
            raise ConfigError(name, "missing value")
        settings[name] = value
    return settings


@contextmanager
def override_tolerances(**values):
    """Temporarily replace entries of the active TOLERANCES section"""
    cfg = get_config()
    unknown = set(values) - set(cfg.TOLERANCES)
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown tolerance")
    saved = cfg.TOLERANCES
    cfg.TOLERANCES = {**saved, **{k: float(v) for k, v in values.items() if v is not None}}
    try:
        yield cfg.TOLERANCES
    finally:
        cfg.TOLERANCES = saved
