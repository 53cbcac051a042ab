"""
Command-line entrypoint.

Run with ``python -m py_poro_ader``.
"""

from .main import main

if __name__ == "__main__":
    main()
