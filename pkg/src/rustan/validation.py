"""Input validation helpers shared by the public API."""

from __future__ import annotations

import numpy as np

__all__ = ["check_image", "check_image_batch", "check_same_shape"]

# Interpolation can overshoot the unit interval by a few ulps.
_RANGE_SLACK = 1e-9


def check_image(u, name: str = "image") -> np.ndarray:
    """Validate an HxWxC intensity grid and return it as float64.

    A 2-D array is accepted and promoted to a single channel. Intensities
    must lie in [0, 1] and both spatial dimensions must be at least 2.
    """
    a = np.asarray(u, dtype=np.float64)
    if a.ndim == 2:
        a = a[:, :, None]
    if a.ndim != 3 or a.shape[2] not in (1, 3):
        raise ValueError(f"{name} must be HxWxC with 1 or 3 channels, got shape {np.shape(u)}")
    if a.shape[0] < 2 or a.shape[1] < 2:
        raise ValueError(f"{name} must be at least 2x2 pixels, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite values")
    if a.min() < -_RANGE_SLACK or a.max() > 1.0 + _RANGE_SLACK:
        raise ValueError(
            f"{name} intensities must lie in [0, 1], got range "
            f"[{a.min():.6g}, {a.max():.6g}]"
        )
    return a


def check_image_batch(x, name: str = "X") -> np.ndarray:
    """Validate a batch of equally shaped images, returning an (N, H, W, C) array."""
    if isinstance(x, np.ndarray) and x.ndim == 4:
        imgs = [x[i] for i in range(x.shape[0])]
    else:
        imgs = list(x)
    if not imgs:
        raise ValueError(f"{name} must contain at least one image")
    checked = [check_image(im, name=f"{name}[{i}]") for i, im in enumerate(imgs)]
    shape = checked[0].shape
    for i, im in enumerate(checked):
        if im.shape != shape:
            raise ValueError(
                f"{name}[{i}] has shape {im.shape}, expected {shape} like {name}[0]"
            )
    return np.stack(checked)


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "images") -> None:
    if a.shape != b.shape:
        raise ValueError(f"{what} must have identical shapes, got {a.shape} vs {b.shape}")
