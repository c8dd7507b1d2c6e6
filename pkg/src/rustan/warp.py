"""Differentiable bilinear warping over normalized sampling grids.

Conventions (these matter when comparing against other samplers):

* Normalized coordinates are corner-aligned: -1 maps to pixel index 0 and
  +1 to index dim-1 on each axis.
* The affine matrix maps TARGET coordinates to SOURCE coordinates (pull
  warping): each output pixel fetches the input at theta @ (x_t, y_t, 1).
  To make content appear rotated by +phi, pass the rotation by -phi.
* Source coordinates outside the input contribute zero (zero padding).
* At integer source coordinates the coordinate gradient takes the
  sub-gradient of the left interpolation cell.
"""

from __future__ import annotations

import numpy as np

from .affine import as_affine
from .validation import check_image

__all__ = [
    "generate_grid",
    "bilinear_sample",
    "warp",
    "warp_backward",
    "resize",
]


def _norm_coords(n: int) -> np.ndarray:
    return np.linspace(-1.0, 1.0, n)


def generate_grid(theta, height: int, width: int) -> np.ndarray:
    """Source coordinates (x_s, y_s) for every target pixel of an HxW output.

    Returns an (height, width, 2) array; [..., 0] is x_s and [..., 1] is
    y_s, both in normalized units.
    """
    if height < 2 or width < 2:
        raise ValueError(f"grid must be at least 2x2, got {height}x{width}")
    t = as_affine(theta)
    xt = _norm_coords(width)[None, :]
    yt = _norm_coords(height)[:, None]
    xs = t[0, 0] * xt + t[0, 1] * yt + t[0, 2]
    ys = t[1, 0] * xt + t[1, 1] * yt + t[1, 2]
    return np.stack(np.broadcast_arrays(xs, ys), axis=-1)


def _denormalize(grid: np.ndarray, h_in: int, w_in: int):
    ix = (grid[..., 0] + 1.0) * 0.5 * (w_in - 1)
    iy = (grid[..., 1] + 1.0) * 0.5 * (h_in - 1)
    return ix, iy


def _gather(u: np.ndarray, yi: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Fetch u at integer-valued float indices with zero padding outside."""
    h, w = u.shape[:2]
    valid = (xi >= 0) & (xi <= w - 1) & (yi >= 0) & (yi <= h - 1)
    xc = np.clip(xi, 0, w - 1).astype(np.intp)
    yc = np.clip(yi, 0, h - 1).astype(np.intp)
    return u[yc, xc] * valid[..., None]


def bilinear_sample(u, grid) -> np.ndarray:
    """Bilinearly interpolate u at every grid coordinate.

    The output spatial shape follows the grid; channels follow the input.
    """
    u = check_image(u)
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 3 or grid.shape[2] != 2:
        raise ValueError(f"grid must be HxWx2, got shape {grid.shape}")
    h_in, w_in, _ = u.shape
    ix, iy = _denormalize(grid, h_in, w_in)
    x0 = np.floor(ix)
    y0 = np.floor(iy)
    fx = ix - x0
    fy = iy - y0
    out = (1.0 - fx)[..., None] * (1.0 - fy)[..., None] * _gather(u, y0, x0)
    out += fx[..., None] * (1.0 - fy)[..., None] * _gather(u, y0, x0 + 1.0)
    out += (1.0 - fx)[..., None] * fy[..., None] * _gather(u, y0 + 1.0, x0)
    out += fx[..., None] * fy[..., None] * _gather(u, y0 + 1.0, x0 + 1.0)
    return np.clip(out, 0.0, 1.0)


def warp(u, theta) -> np.ndarray:
    """Warp an image by an affine transform at its own resolution."""
    u = check_image(u)
    return bilinear_sample(u, generate_grid(theta, u.shape[0], u.shape[1]))


def resize(u, height: int, width: int) -> np.ndarray:
    """Corner-aligned bilinear resize (identity transform on a new grid)."""
    return bilinear_sample(u, generate_grid(np.eye(3), height, width))


def warp_backward(u, theta, grad_out):
    """Gradients of warp(u, theta) contracted with grad_out.

    Returns (grad_u, grad_theta) where grad_u has the input's shape and
    grad_theta holds the 6 free entries of theta in row-major order
    (t00, t01, t02, t10, t11, t12).
    """
    u = check_image(u)
    grad_out = np.asarray(grad_out, dtype=np.float64)
    h_in, w_in, c = u.shape
    if grad_out.shape != (h_in, w_in, c):
        raise ValueError(
            f"grad_out shape {grad_out.shape} does not match warp output {(h_in, w_in, c)}"
        )
    grid = generate_grid(theta, h_in, w_in)
    ix, iy = _denormalize(grid, h_in, w_in)

    # Intensity gradient: scatter interpolation weights into the source pixels.
    x0 = np.floor(ix)
    y0 = np.floor(iy)
    fx = ix - x0
    fy = iy - y0
    grad_u = np.zeros_like(u)
    for dx, dy, wgt in (
        (0.0, 0.0, (1.0 - fx) * (1.0 - fy)),
        (1.0, 0.0, fx * (1.0 - fy)),
        (0.0, 1.0, (1.0 - fx) * fy),
        (1.0, 1.0, fx * fy),
    ):
        xi = x0 + dx
        yi = y0 + dy
        valid = (xi >= 0) & (xi <= w_in - 1) & (yi >= 0) & (yi <= h_in - 1)
        if not valid.any():
            continue
        contrib = wgt[..., None] * grad_out
        np.add.at(
            grad_u,
            (yi[valid].astype(np.intp), xi[valid].astype(np.intp)),
            contrib[valid],
        )

    # Coordinate gradient; ceil-1 picks the left cell at integer coordinates.
    x0g = np.ceil(ix) - 1.0
    y0g = np.ceil(iy) - 1.0
    fxg = ix - x0g
    fyg = iy - y0g
    p00 = _gather(u, y0g, x0g)
    p10 = _gather(u, y0g, x0g + 1.0)
    p01 = _gather(u, y0g + 1.0, x0g)
    p11 = _gather(u, y0g + 1.0, x0g + 1.0)
    dv_dix = (1.0 - fyg)[..., None] * (p10 - p00) + fyg[..., None] * (p11 - p01)
    dv_diy = (1.0 - fxg)[..., None] * (p01 - p00) + fxg[..., None] * (p11 - p10)
    gx = (grad_out * dv_dix).sum(axis=2) * (0.5 * (w_in - 1))
    gy = (grad_out * dv_diy).sum(axis=2) * (0.5 * (h_in - 1))

    xt = _norm_coords(w_in)[None, :]
    yt = _norm_coords(h_in)[:, None]
    grad_theta = np.array(
        [
            (gx * xt).sum(),
            (gx * yt).sum(),
            gx.sum(),
            (gy * xt).sum(),
            (gy * yt).sum(),
            gy.sum(),
        ]
    )
    return grad_u, grad_theta
