"""Self-supervised inverse-affine image calibration and runway-scene benchmark."""

from .affine import (
    PoseRanges,
    PoseSpec,
    SingularTransformError,
    compose_pose,
    identity_residual,
    invert,
    matmul,
    sample_pose,
)
from .warp import bilinear_sample, generate_grid, resize, warp, warp_backward

__version__ = "0.1.0"

__all__ = [
    "PoseRanges",
    "PoseSpec",
    "SingularTransformError",
    "compose_pose",
    "identity_residual",
    "invert",
    "matmul",
    "sample_pose",
    "bilinear_sample",
    "generate_grid",
    "resize",
    "warp",
    "warp_backward",
    "__version__",
]
