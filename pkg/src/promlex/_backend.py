"""Select the modular-kernel backend: compiled extension if built, numpy otherwise."""

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this platform
    from . import _kernels_py as _impl

    BACKEND = "python"

charpoly_mod = _impl.charpoly_mod
nullspace_mod = _impl.nullspace_mod
