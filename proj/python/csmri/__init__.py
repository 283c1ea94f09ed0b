"""Compressive-sensing MRI reconstruction toolkit.

Thin Python wrapper over the C++ core (the ``_csmri`` extension).
"""

try:  # installed wheel: extension lives inside the package
    from . import _csmri as _core
except ImportError:  # development layout: extension on PYTHONPATH
    import _csmri as _core

__all__ = [
    "ConfigError",
    "DescentViolation",
    "ShapeError",
    "add_rician",
    "corrupt",
    "denoisers",
    "fft_centered",
    "ifft_centered",
    "make_mask",
    "mse",
    "phantom",
    "prox_lp",
    "psnr",
    "recon",
    "rician_recon",
    "rlne",
    "wavelet_analyze",
    "wavelet_synthesize",
]

globals().update({name: getattr(_core, name) for name in __all__})
