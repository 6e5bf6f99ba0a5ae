"""
Lab configuration
"""
import os

# Paths are fixed at import time so every service resolves the same root
_current_file = os.path.realpath(__file__)
BASE_DIR = os.path.dirname(_current_file)
PROJECT_ROOT = os.path.dirname(BASE_DIR)


# Named tolerances for every check the lab performs.
# `fast` trades draw counts and grid sizes for wall time; tolerances stay the same
# except where a smaller grid cannot reach them.
TOLERANCE_PROFILES = {
    'default': {
        'det_rel': 1e-8,
        'phi_abs': 1e-8,
        'mu_abs': 1e-4,
        'gaudin_abs': 1e-10,
        'gaudin_fd_abs': 1e-4,
        'identity_abs': 1e-7,
        'oscillatory_abs': 1e-6,
        'boundary_abs': 1e-3,
        'chi_rel': 1e-6,
        'kernel_rel': 1e-6,
        'mellin_rel': 1e-6,
        'norm_rel': 1e-8,
        'ext_norm_rel': 1e-6,
        'ext_det_rel': 1e-6,
        'y_kernel_rel': 1e-8,
        'ode_rel': 1e-6,
        'jost_rel': 1e-6,
        'expansion_rel': 1e-6,
        'involution_abs': 1e-5,
        'laguerre_abs': 1e-4,
        'dirichlet_rel': 1e-3,
        'draws': 5,
        'grid_n': 64,
    },
    'strict': {
        'det_rel': 1e-10,
        'phi_abs': 1e-10,
        'mu_abs': 1e-5,
        'gaudin_abs': 1e-12,
        'gaudin_fd_abs': 1e-4,
        'identity_abs': 1e-8,
        'oscillatory_abs': 1e-7,
        'boundary_abs': 1e-3,
        'chi_rel': 1e-7,
        'kernel_rel': 1e-7,
        'mellin_rel': 1e-7,
        'norm_rel': 1e-9,
        'ext_norm_rel': 1e-7,
        'ext_det_rel': 1e-8,
        'y_kernel_rel': 1e-9,
        'ode_rel': 1e-6,
        'jost_rel': 1e-7,
        'expansion_rel': 1e-6,
        'involution_abs': 1e-5,
        'laguerre_abs': 1e-4,
        'dirichlet_rel': 1e-3,
        'draws': 8,
        'grid_n': 96,
    },
    'fast': {
        'det_rel': 1e-8,
        'phi_abs': 1e-8,
        'mu_abs': 1e-4,
        'gaudin_abs': 1e-10,
        'gaudin_fd_abs': 1e-4,
        'identity_abs': 1e-7,
        'oscillatory_abs': 1e-6,
        'boundary_abs': 1e-3,
        'chi_rel': 1e-6,
        'kernel_rel': 1e-6,
        'mellin_rel': 1e-6,
        'norm_rel': 1e-8,
        'ext_norm_rel': 1e-6,
        'ext_det_rel': 1e-6,
        'y_kernel_rel': 1e-8,
        'ode_rel': 1e-6,
        'jost_rel': 1e-6,
        'expansion_rel': 1e-6,
        'involution_abs': 1e-5,
        'laguerre_abs': 1e-4,
        'dirichlet_rel': 1e-3,
        'draws': 2,
        'grid_n': 64,
    },
}


class Config:
    """Base configuration"""
    OUTPUT_DIR = os.getenv('HANKEL_LAB_OUTPUT_DIR', os.path.join(PROJECT_ROOT, 'reports'))
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

    # Suite runner
    MAX_WORKERS = int(os.getenv('HANKEL_LAB_MAX_WORKERS', '4'))
    MEMORY_THRESHOLD_MB = int(os.getenv('HANKEL_LAB_MEMORY_THRESHOLD_MB', '1024'))

    # Numerics
    DEFAULT_N = int(os.getenv('HANKEL_LAB_DEFAULT_N', '64'))
    DEFAULT_TOL_PROFILE = os.getenv('HANKEL_LAB_TOL_PROFILE', 'default')
    DEFAULT_SEED = int(os.getenv('HANKEL_LAB_SEED', '20240101'))


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False


config_map = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}


def get_config():
    """Get configuration based on environment"""
    env = os.getenv('HANKEL_LAB_ENV', 'default')
    return config_map.get(env, DevelopmentConfig)


def get_tolerance(profile: str, key: str) -> float:
    """
    Resolve one named tolerance

    Args:
        profile: Profile name (default, strict, fast)
        key: Tolerance name

    Returns:
        The tolerance value
    """
    from utils.errors import DomainError

    if profile not in TOLERANCE_PROFILES:
        raise DomainError(f"Unknown tolerance profile: {profile}")
    values = TOLERANCE_PROFILES[profile]
    if key not in values:
        raise DomainError(f"Unknown tolerance key: {key}")
    return values[key]
