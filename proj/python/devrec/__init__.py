"""Developer activity metrics and item-similarity project recommendation."""

try:
    from devrec._devrec import *  # noqa: F401,F403  (pip-installed layout)
except ImportError:
    from _devrec import *  # noqa: F401,F403  (CMake build dir on PYTHONPATH)
