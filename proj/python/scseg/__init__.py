"""Block-wise smooth-background / foreground segmentation of screen-content images."""

from ._core import (
    SegParams,
    SegmentationResult,
    __version__,
    basis_matrix,
    confusion,
    evaluate,
    fill_background,
    precision_recall_f1,
    segment,
    synth_block,
    to_grayscale,
    zigzag_order,
)

__all__ = [
    "SegParams",
    "SegmentationResult",
    "__version__",
    "basis_matrix",
    "confusion",
    "evaluate",
    "fill_background",
    "precision_recall_f1",
    "segment",
    "synth_block",
    "to_grayscale",
    "zigzag_order",
]
