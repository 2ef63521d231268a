"""Backend selection for the inner-loop kernels.

The compiled ``_core`` extension is used when importable; otherwise the numpy
twins in ``_fallback`` are used. Set ``EEGDIST_PURE=1`` to force the fallback.
"""
import os

from . import _fallback

BACKEND = "python"
if not os.environ.get("EEGDIST_PURE"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
else:
    _impl = _fallback

analysis_step = _impl.analysis_step
synthesis_step = _impl.synthesis_step
pack_codes = _impl.pack_codes
unpack_codes = _impl.unpack_codes
bsc_flip = _impl.bsc_flip

__all__ = [
    "BACKEND",
    "analysis_step",
    "synthesis_step",
    "pack_codes",
    "unpack_codes",
    "bsc_flip",
]
