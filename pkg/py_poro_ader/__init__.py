"""
py_poro_ader - ADER-DG solver for poroelastic wave propagation

Provides the element-local space-time predictor for stiff Biot sources,
its dense reference solve, a cost model, and a periodic plane-wave
convergence driver.
"""

__version__ = "0.1.0"
