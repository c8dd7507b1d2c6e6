"""2D homogeneous affine algebra: pose composition, inversion, sampling.

All transforms are 3x3 float64 matrices acting on homogeneous column
vectors (x, y, 1), with the bottom row fixed at [0, 0, 1]. Poses live in
the normalized image coordinate frame used by the grid sampler, where
both axes span [-1, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PoseSpec",
    "PoseRanges",
    "SingularTransformError",
    "as_affine",
    "compose_pose",
    "invert",
    "matmul",
    "identity_residual",
    "sample_pose",
]

# Below this determinant magnitude the linear block is treated as singular.
_DET_EPS = 1e-12


class SingularTransformError(ValueError):
    """Raised when the linear block of a transform cannot be inverted."""


@dataclass(frozen=True)
class PoseSpec:
    """Translation, rotation and scale of a single sampled pose.

    tx, ty are translations in normalized units (half-image = 1), phi is
    the rotation angle in radians, sx and sy are axis scale factors.
    """

    tx: float = 0.0
    ty: float = 0.0
    phi: float = 0.0
    sx: float = 1.0
    sy: float = 1.0

    def __post_init__(self):
        if not (self.sx > 0.0 and self.sy > 0.0):
            raise ValueError(
                f"scale factors must be positive, got sx={self.sx}, sy={self.sy}"
            )
        if abs(self.phi) > math.pi:
            raise ValueError(f"|phi| must not exceed pi, got phi={self.phi}")
        if abs(self.tx) > 1.0 or abs(self.ty) > 1.0:
            raise ValueError(
                f"|tx| and |ty| must not exceed 1, got tx={self.tx}, ty={self.ty}"
            )


@dataclass(frozen=True)
class PoseRanges:
    """Closed sampling intervals for each pose component.

    Defaults cover a moderate crosswind regime: rotation within +/-15
    degrees, translation within +/-0.1 normalized units, scale within
    [0.9, 1.1]. Every interval endpoint must itself be a valid pose
    component.
    """

    tx: tuple[float, float] = (-0.1, 0.1)
    ty: tuple[float, float] = (-0.1, 0.1)
    phi: tuple[float, float] = (-math.pi / 12.0, math.pi / 12.0)
    sx: tuple[float, float] = (0.9, 1.1)
    sy: tuple[float, float] = (0.9, 1.1)

    def __post_init__(self):
        for name in ("tx", "ty", "phi", "sx", "sy"):
            lo, hi = getattr(self, name)
            if not (lo <= hi):
                raise ValueError(f"empty interval for {name}: ({lo}, {hi})")
        # Component intervals are independent, so checking both endpoint
        # poses covers the whole box.
        PoseSpec(self.tx[0], self.ty[0], self.phi[0], self.sx[0], self.sy[0])
        PoseSpec(self.tx[1], self.ty[1], self.phi[1], self.sx[1], self.sy[1])

    def clamp_phi(self, phi_max: float) -> "PoseRanges":
        """Return a copy with the rotation interval intersected with [-phi_max, phi_max]."""
        lo = max(self.phi[0], -phi_max)
        hi = min(self.phi[1], phi_max)
        return PoseRanges(self.tx, self.ty, (lo, hi), self.sx, self.sy)


def as_affine(m) -> np.ndarray:
    """Validate and return m as a 3x3 float64 homogeneous affine matrix."""
    a = np.asarray(m, dtype=np.float64)
    if a.shape != (3, 3):
        raise ValueError(f"affine matrix must be 3x3, got shape {a.shape}")
    if not (a[2, 0] == 0.0 and a[2, 1] == 0.0 and a[2, 2] == 1.0):
        raise ValueError(f"bottom row must be [0, 0, 1], got {a[2]}")
    return a


def compose_pose(pose: PoseSpec) -> np.ndarray:
    """Build the transform T(tx, ty) @ R(phi) @ S(sx, sy) in that order."""
    t = np.array([[1.0, 0.0, pose.tx], [0.0, 1.0, pose.ty], [0.0, 0.0, 1.0]])
    c, s = math.cos(pose.phi), math.sin(pose.phi)
    r = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    sc = np.array([[pose.sx, 0.0, 0.0], [0.0, pose.sy, 0.0], [0.0, 0.0, 1.0]])
    return t @ r @ sc


def invert(a) -> np.ndarray:
    """Invert an affine matrix, keeping the bottom row exactly [0, 0, 1]."""
    a = as_affine(a)
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(det) < _DET_EPS:
        raise SingularTransformError(f"linear block is singular (det={det:.3e})")
    inv = np.empty((3, 3))
    inv[0, 0] = a[1, 1] / det
    inv[0, 1] = -a[0, 1] / det
    inv[1, 0] = -a[1, 0] / det
    inv[1, 1] = a[0, 0] / det
    inv[0, 2] = -(inv[0, 0] * a[0, 2] + inv[0, 1] * a[1, 2])
    inv[1, 2] = -(inv[1, 0] * a[0, 2] + inv[1, 1] * a[1, 2])
    inv[2] = (0.0, 0.0, 1.0)
    return inv


def matmul(a, b) -> np.ndarray:
    """Compose two affine matrices (standard 3x3 product)."""
    return as_affine(a) @ as_affine(b)


def identity_residual(a) -> float:
    """Mean absolute deviation of all 9 entries from the identity matrix."""
    return float(np.abs(as_affine(a) - np.eye(3)).mean())


def sample_pose(rng: np.random.Generator, ranges: PoseRanges | None = None) -> PoseSpec:
    """Draw each pose component uniformly from its interval.

    Components are drawn in the fixed order tx, ty, phi, sx, sy so that a
    seeded generator reproduces the same pose stream.
    """
    r = ranges if ranges is not None else PoseRanges()
    return PoseSpec(
        tx=float(rng.uniform(*r.tx)),
        ty=float(rng.uniform(*r.ty)),
        phi=float(rng.uniform(*r.phi)),
        sx=float(rng.uniform(*r.sx)),
        sy=float(rng.uniform(*r.sy)),
    )
