"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  ``BACKEND`` names the active one and
``get_backend`` returns either explicitly (tests and benchmarks use it to
compare the two).
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def available_backends():
    return ["cython", "python"] if _ckernels is not None else ["python"]


def get_backend(name=None):
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


_active = get_backend()
log_rising_sum = _active.log_rising_sum
gk21_power_exp = _active.gk21_power_exp
