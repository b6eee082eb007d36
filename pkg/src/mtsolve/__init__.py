"""Positive solutions of M-tensor multilinear systems by homotopy continuation."""

from .homotopy import Status, TrackerConfig, TrackResult, track
from .mtensor import GeneratorConfig, MTensorDecomposition, generate_instance
from .tensor import DenseTensor, apply, identity_tensor, jacobian, partial_symmetrize

__all__ = [
    "DenseTensor",
    "GeneratorConfig",
    "MTensorDecomposition",
    "Status",
    "TrackResult",
    "TrackerConfig",
    "apply",
    "generate_instance",
    "identity_tensor",
    "jacobian",
    "partial_symmetrize",
    "track",
]
