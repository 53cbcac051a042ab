"""Default configuration constants."""

import math

# State vector layout
QUANTITIES: int = 13
QUANTITY_NAMES: tuple[str, ...] = (
    "sigma_xx",
    "sigma_yy",
    "sigma_zz",
    "sigma_xy",
    "sigma_yz",
    "sigma_xz",
    "u",
    "v",
    "w",
    "p",
    "u_f",
    "v_f",
    "w_f",
)
MATERIAL_KEYS: tuple[str, ...] = (
    "K_S",
    "rho_S",
    "lambda_M",
    "mu_M",
    "phi",
    "kappa",
    "T",
    "K_F",
    "rho_F",
    "nu",
)

# Discretisation limits
MIN_DEGREE: int = 1
MAX_DEGREE: int = 7
MAX_QUADRATURE_EXACTNESS: int = 2 * MAX_DEGREE + 2

# Run defaults
DEFAULT_ORDER: int = 3
DEFAULT_SUBDIVISIONS: int = 4
DEFAULT_T_END: float = 1e-4
DEFAULT_CFL: float = 0.5
DEFAULT_DOMAIN: tuple[float, float] = (-1.0, 1.0)
DEFAULT_SEED: int = 0

# Plane-wave benchmark defaults
DEFAULT_WAVE_VECTOR: tuple[float, float, float] = (math.pi, math.pi, math.pi)
DEFAULT_AMPLITUDES: tuple[float, ...] = (100.0, 100.0, 100.0, 100.0) + (0.0,) * 9

# Study defaults
DEFAULT_STUDY_ORDERS: tuple[int, ...] = (2, 3, 4)
DEFAULT_STUDY_SUBDIVISIONS: tuple[int, ...] = (4, 8)
NORM_NAMES: tuple[str, ...] = ("L1", "L2", "Linf")
DEFAULT_WORKERS: int = 1

# Output defaults
DEFAULT_PRECISION: int = 12

# Numerical tolerances
ROUNDOFF_FLUSH: float = 1e-12
RESOLVENT_CONDITION_LIMIT: float = 1e12
ZERO_EIGENVALUE_RATIO: float = 1e-6
UNIT_VECTOR_TOLERANCE: float = 1e-12
ORACLE_TOLERANCE: float = 1e-10
