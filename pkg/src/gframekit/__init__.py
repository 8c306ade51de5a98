"""Generalized frames (g-frames) on finite-dimensional complex Hilbert spaces."""

__version__ = "0.1.0"

from .classify import ClassificationReport, classify
from .duality import DualPair, canonical_dual, reconstruct, tight_transform, verify_dual_pair
from .errors import GFrameError
from .gframe import FrameBounds, GFrame, analyze, frame_operator, optimal_bounds, synthesize

__all__ = [
    "ClassificationReport",
    "DualPair",
    "FrameBounds",
    "GFrame",
    "GFrameError",
    "analyze",
    "canonical_dual",
    "classify",
    "frame_operator",
    "optimal_bounds",
    "reconstruct",
    "synthesize",
    "tight_transform",
    "verify_dual_pair",
]
