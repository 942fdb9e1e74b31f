"""Impulse noise removal for color images.

Images are HxWx3 uint8 numpy arrays; masks are HxW bool arrays.
"""

from ._core import (
    ConfigError,
    ShapeError,
    corrupt,
    denoise,
    detect,
    error_rates,
    mse_psnr,
    plain_vmf,
    roc,
    set_num_threads,
)

__all__ = [
    "ConfigError",
    "ShapeError",
    "corrupt",
    "denoise",
    "detect",
    "error_rates",
    "mse_psnr",
    "plain_vmf",
    "roc",
    "set_num_threads",
]
