"""Activation-map types and the probabilistic OR/AND fusion operations.

A CAM is a 2-D float64 array with values in [0, 1]; in normalized form the
maximum value is exactly 1 unless the map is all zeros. A RawMap is the
pre-normalization form: non-negative, finite, no upper bound. A PseudoMask is
a 2-D uint8 label map (0 = background, 1..C = classes, 255 = ignore).

All functions are pure; none mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClassSetMismatch,
    DimensionMismatch,
    EmptyMap,
    EmptyStack,
    NonFiniteInput,
)

IGNORE_LABEL = 255
MAX_CLASS_ID = 254  # labels must fit uint8 alongside the ignore value
FUSE_MODES = ("or", "and", "avg")
DEFAULT_BG_THRESHOLD = 0.25


def _as_2d(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyMap(f"{name} has a zero-sized dimension: {arr.shape}")
    return arr


def as_raw_map(values, name: str = "raw map") -> np.ndarray:
    """Validate a pre-normalization map: 2-D, finite, non-negative float64."""
    arr = _as_2d(values, name)
    if not np.isfinite(arr).all():
        raise NonFiniteInput(f"{name} contains NaN or infinity")
    if (arr < 0).any():
        raise ValueError(f"{name} contains negative values")
    return arr


def as_cam(values, name: str = "cam") -> np.ndarray:
    """Validate a CAM: 2-D float64 with all values in [0, 1]."""
    arr = as_raw_map(values, name)
    if (arr > 1).any():
        raise ValueError(f"{name} contains values above 1")
    return arr


def normalize_cam(raw) -> np.ndarray:
    """Divide by the map maximum; an all-zero map stays all-zero.

    This is the canonical CAM form: max value exactly 1 unless degenerate.
    """
    arr = as_raw_map(raw)
    peak = arr.max()
    if peak == 0.0:
        return np.zeros_like(arr)
    return arr / peak


def _pair(c1, c2) -> tuple[np.ndarray, np.ndarray]:
    a = as_cam(c1, "c1")
    b = as_cam(c2, "c2")
    if a.shape != b.shape:
        raise DimensionMismatch(f"operand shapes differ: {a.shape} vs {b.shape}")
    return a, b


def prob_or_raw(c1, c2) -> np.ndarray:
    """Unnormalized probabilistic OR: c1 + c2 - c1*c2, per pixel.

    Rounding can leave the textbook expression a few ulp below max(c1, c2);
    the ordering identity or >= max must hold exactly, so clamp to it
    (mathematically a no-op).
    """
    a, b = _pair(c1, c2)
    u = a + b - a * b
    return np.maximum(u, np.maximum(a, b))


def prob_and_raw(c1, c2) -> np.ndarray:
    """Unnormalized probabilistic AND: c1*c2, per pixel."""
    a, b = _pair(c1, c2)
    return a * b


def fuse_or(c1, c2) -> np.ndarray:
    """Probabilistic OR of two CAMs, max-normalized."""
    return normalize_cam(prob_or_raw(c1, c2))


def fuse_and(c1, c2) -> np.ndarray:
    """Probabilistic AND of two CAMs, max-normalized."""
    return normalize_cam(prob_and_raw(c1, c2))


def fuse_average(c1, c2) -> np.ndarray:
    """Naive ensemble baseline: per-pixel average, max-normalized."""
    a, b = _pair(c1, c2)
    return normalize_cam((a + b) / 2.0)


_FUSERS = {"or": fuse_or, "and": fuse_and, "avg": fuse_average}


@dataclass
class CamStack:
    """Per-image collection of CAMs keyed by class id.

    All member CAMs share one (height, width); class ids are restricted to
    1..254 so labels coexist with the uint8 ignore value.
    """

    image_id: str
    entries: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        checked = {}
        shape = None
        for cid, cam in self.entries.items():
            cid = int(cid)
            if not 1 <= cid <= MAX_CLASS_ID:
                raise ValueError(f"class id {cid} outside 1..{MAX_CLASS_ID}")
            arr = as_cam(cam, f"cam[{cid}]")
            if shape is None:
                shape = arr.shape
            elif arr.shape != shape:
                raise DimensionMismatch(
                    f"cam[{cid}] shape {arr.shape} != stack shape {shape}"
                )
            checked[cid] = arr
        self.entries = checked

    @property
    def shape(self) -> tuple[int, int] | None:
        for cam in self.entries.values():
            return cam.shape
        return None

    def class_ids(self) -> list[int]:
        return sorted(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def stack_fuse(s1: CamStack, s2: CamStack, mode: str) -> CamStack:
    """Apply one fusion mode class-by-class across two stacks."""
    if mode not in _FUSERS:
        raise ValueError(f"unknown fusion mode {mode!r}, expected one of {FUSE_MODES}")
    if s1.image_id != s2.image_id:
        raise ValueError(f"image ids differ: {s1.image_id!r} vs {s2.image_id!r}")
    if s1.class_ids() != s2.class_ids():
        raise ClassSetMismatch(
            f"class sets differ: {s1.class_ids()} vs {s2.class_ids()}"
        )
    if s1.shape != s2.shape:
        raise DimensionMismatch(f"stack shapes differ: {s1.shape} vs {s2.shape}")
    fuse = _FUSERS[mode]
    return CamStack(
        image_id=s1.image_id,
        entries={k: fuse(s1.entries[k], s2.entries[k]) for k in s1.class_ids()},
    )


def to_pseudo_mask(stack: CamStack, bg_threshold: float = DEFAULT_BG_THRESHOLD) -> np.ndarray:
    """Threshold a stack into a uint8 label map.

    Per pixel the label is the argmax over a constant background score
    (bg_threshold) and every class score. Ties break toward the lowest class
    id, and background wins exact ties against any class.
    """
    if not 0.0 < bg_threshold < 1.0:
        raise ValueError(f"bg_threshold must be in (0, 1), got {bg_threshold}")
    if len(stack) == 0:
        raise EmptyStack(f"stack {stack.image_id!r} has no class entries")
    ids = stack.class_ids()
    h, w = stack.shape
    scores = np.empty((1 + len(ids), h, w), dtype=np.float64)
    scores[0] = bg_threshold
    for i, cid in enumerate(ids):
        scores[1 + i] = stack.entries[cid]
    # argmax returns the first maximal index: background first, then ids ascending
    winner = scores.argmax(axis=0)
    labels = np.array([0] + ids, dtype=np.uint8)
    return labels[winner]


def validate_mask(mask, num_classes: int | None = None, name: str = "mask") -> np.ndarray:
    """Validate a uint8 label map; optionally bound non-ignore labels by C."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyMap(f"{name} has a zero-sized dimension: {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"{name} must be integer-typed, got {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError(f"{name} values outside uint8 range")
        arr = arr.astype(np.uint8)
    if num_classes is not None:
        bad = (arr != IGNORE_LABEL) & (arr > num_classes)
        if bad.any():
            raise ValueError(f"{name} holds labels above {num_classes}")
    return arr
