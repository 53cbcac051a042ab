"""Material parameter sets shared by the tests."""

from py_poro_ader.core.material import MaterialParameters

CONVERGENCE_MATERIAL = MaterialParameters(
    K_S=4.0e10,
    rho_S=2.5e3,
    lambda_M=1.2e10,
    mu_M=1.0e10,
    phi=0.2,
    kappa=6.0e-13,
    T=3.0,
    K_F=2.5e9,
    rho_F=1.04e3,
    nu=1.0e-3,
)
HOMOGENEOUS_MATERIAL = MaterialParameters(
    K_S=2.0e10,
    rho_S=2.08e3,
    lambda_M=5.28e9,
    mu_M=6.4e9,
    phi=0.4,
    kappa=6.0e-13,
    T=2.0,
    K_F=2.5e9,
    rho_F=1.04e3,
    nu=1.0e-3,
)
UPPER_HALF_SPACE = MaterialParameters(
    K_S=4.0e10,
    rho_S=2.5e3,
    lambda_M=1.2e10,
    mu_M=1.2e10,
    phi=0.2,
    kappa=6.0e-13,
    T=2.0,
    K_F=2.5e9,
    rho_F=1.04e3,
    nu=0.0,
)
LOWER_HALF_SPACE = MaterialParameters(
    K_S=7.6e9,
    rho_S=2.21e3,
    lambda_M=3.96e9,
    mu_M=3.96e9,
    phi=0.16,
    kappa=1.0e-13,
    T=2.0,
    K_F=2.5e9,
    rho_F=1.04e3,
    nu=0.0,
)
