"""Kernel backend selection: compiled extension if built, numpy fallback otherwise."""

try:
    from . import _kernels_cy as _impl
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

spf_table = _impl.spf_table
sopfr_table = _impl.sopfr_table
sopfr_sum = _impl.sopfr_sum
theta_table = _impl.theta_table
curve_point_count = _impl.curve_point_count
