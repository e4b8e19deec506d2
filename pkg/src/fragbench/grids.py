"""Volumetric and projective containers shared by every other module.

Grid convention: 3D arrays are indexed [x, y, z] with shape (nx, ny, nz);
the physical center of voxel (i, j, k) is offset + (i + 0.5) * spacing per
axis, all in millimeters.  2D multi-label masks are indexed [row, col]
(image convention) and always measured in pixel units, spacing (1, 1).

All containers freeze their arrays after construction so they can be shared
across parallel workers without copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from .errors import GridMismatch, InvalidLabel
from .labels import (
    MAX_LABEL_ID,
    AnatomyClass,
    FragmentLabel,
    anatomy_label_ids,
    decode_label,
    encode_label,
)

MASK_RESOLUTION = 448  # challenge-conformant 2D mask edge length, pixels
_VALID_BIT_MASK = np.uint32((1 << MAX_LABEL_ID) - 1)


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.setflags(write=False)
    return out


def _as_tuple3(v) -> tuple[float, float, float]:
    t = tuple(float(x) for x in v)
    if len(t) != 3:
        raise ValueError(f"expected 3 components, got {len(t)}")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class LabelVolume:
    """Dense 3D grid of fragment label ids (0 = background)."""

    voxels: np.ndarray
    spacing: tuple[float, float, float]
    offset: tuple[float, float, float] = (0.0, 0.0, 0.0)
    extra_header: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        vox = np.asarray(self.voxels)
        if vox.ndim != 3:
            raise ValueError(f"label volume must be 3D, got ndim={vox.ndim}")
        if vox.dtype != np.uint8:
            if vox.size and (vox.min() < 0 or vox.max() > MAX_LABEL_ID):
                raise InvalidLabel("voxel values outside 0..30 cannot be labels")
            vox = vox.astype(np.uint8)
        elif vox.size and vox.max() > MAX_LABEL_ID:
            raise InvalidLabel(f"voxel value {int(vox.max())} exceeds {MAX_LABEL_ID}")
        object.__setattr__(self, "voxels", _freeze(vox))
        object.__setattr__(self, "spacing", _as_tuple3(self.spacing))
        object.__setattr__(self, "offset", _as_tuple3(self.offset))
        if any(s <= 0 for s in self.spacing):
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.voxels.shape  # type: ignore[return-value]


@dataclass(frozen=True)
class IntensityVolume:
    """Scalar CT volume (HU) on the same grid convention as LabelVolume."""

    voxels: np.ndarray
    spacing: tuple[float, float, float]
    offset: tuple[float, float, float] = (0.0, 0.0, 0.0)
    extra_header: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        vox = np.asarray(self.voxels)
        if vox.ndim != 3:
            raise ValueError(f"intensity volume must be 3D, got ndim={vox.ndim}")
        object.__setattr__(self, "voxels", _freeze(vox))
        object.__setattr__(self, "spacing", _as_tuple3(self.spacing))
        object.__setattr__(self, "offset", _as_tuple3(self.offset))
        if any(s <= 0 for s in self.spacing):
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.voxels.shape  # type: ignore[return-value]


@dataclass(frozen=True)
class MultiLabelMask2D:
    """2D mask where bit (id - 1) of each pixel word marks label id present.

    Projection superimposes fragments, so a pixel may carry several labels.
    """

    pixels: np.ndarray  # uint32, shape (h, w)

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise ValueError(f"mask must be 2D, got ndim={px.ndim}")
        if px.dtype != np.uint32:
            px = px.astype(np.uint32)
        if px.size and np.any(px & ~_VALID_BIT_MASK):
            raise InvalidLabel("mask pixels carry bits above bit 29")
        object.__setattr__(self, "pixels", _freeze(px))

    @property
    def dims(self) -> tuple[int, int]:
        """(width, height) in pixels."""
        h, w = self.pixels.shape
        return (w, h)


@dataclass(frozen=True)
class BinaryMask:
    """Boolean occupancy on the grid of its source volume or 2D mask.

    2D masks keep spacing (1, 1): distances come out in pixel units.
    """

    cells: np.ndarray
    spacing: tuple[float, ...]
    offset: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells, dtype=bool)
        if cells.ndim not in (2, 3):
            raise ValueError(f"mask must be 2D or 3D, got ndim={cells.ndim}")
        spacing = tuple(float(s) for s in self.spacing)
        if len(spacing) != cells.ndim:
            raise ValueError("spacing length must match mask dimensionality")
        if any(s <= 0 for s in spacing):
            raise ValueError(f"spacing must be positive, got {spacing}")
        offset = tuple(float(o) for o in self.offset)
        if not offset:
            offset = (0.0,) * cells.ndim
        if len(offset) != cells.ndim:
            raise ValueError("offset length must match mask dimensionality")
        object.__setattr__(self, "cells", _freeze(cells))
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "offset", offset)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.cells))

    @property
    def is_empty(self) -> bool:
        return not self.cells.any()

    def same_grid(self, other: "BinaryMask") -> bool:
        return (
            self.cells.shape == other.cells.shape
            and self.spacing == other.spacing
            and self.offset == other.offset
        )


LabelContainer = Union[LabelVolume, MultiLabelMask2D]


def require_same_grid(a: BinaryMask, b: BinaryMask) -> None:
    if not a.same_grid(b):
        raise GridMismatch(
            f"grids differ: {a.cells.shape}/{a.spacing}/{a.offset} vs "
            f"{b.cells.shape}/{b.spacing}/{b.offset}"
        )


def _container_grid(source: LabelContainer) -> tuple[tuple, tuple]:
    if isinstance(source, LabelVolume):
        return source.spacing, source.offset
    return (1.0, 1.0), (0.0, 0.0)


def fragment_mask(source: LabelContainer, label: FragmentLabel) -> BinaryMask:
    """Occupancy of one fragment; empty mask when the label is absent."""
    label_id = encode_label(label)
    spacing, offset = _container_grid(source)
    if isinstance(source, LabelVolume):
        cells = source.voxels == label_id
    else:
        cells = (source.pixels >> np.uint32(label_id - 1)) & np.uint32(1) != 0
    return BinaryMask(cells, spacing, offset)


def anatomy_mask(source: LabelContainer, anatomy: AnatomyClass) -> BinaryMask:
    """Union of all fragment masks of one bone (merged anatomical mask)."""
    ids = anatomy_label_ids(anatomy)
    spacing, offset = _container_grid(source)
    if isinstance(source, LabelVolume):
        cells = (source.voxels >= ids.start) & (source.voxels < ids.stop)
    else:
        bone_bits = np.uint32(((1 << 10) - 1) << (ids.start - 1))
        cells = (source.pixels & bone_bits) != 0
    return BinaryMask(cells, spacing, offset)


def list_fragments(source: LabelContainer) -> list[tuple[FragmentLabel, int]]:
    """Fragments present in the container with their cell counts, by id."""
    if isinstance(source, LabelVolume):
        counts = np.bincount(source.voxels.ravel(), minlength=MAX_LABEL_ID + 1)
    else:
        counts = np.zeros(MAX_LABEL_ID + 1, dtype=np.int64)
        for label_id in range(1, MAX_LABEL_ID + 1):
            bit = (source.pixels >> np.uint32(label_id - 1)) & np.uint32(1)
            counts[label_id] = int(np.count_nonzero(bit))
    return [
        (decode_label(i), int(counts[i]))
        for i in range(1, MAX_LABEL_ID + 1)
        if counts[i] > 0
    ]


def iter_fragment_masks(
    source: LabelContainer,
) -> Iterator[tuple[FragmentLabel, BinaryMask]]:
    for label, _ in list_fragments(source):
        yield label, fragment_mask(source, label)


def empty_like(source: LabelContainer) -> LabelContainer:
    """Background-only container on the same grid (used to score absent predictions)."""
    if isinstance(source, LabelVolume):
        return LabelVolume(
            np.zeros(source.dims, dtype=np.uint8), source.spacing, source.offset
        )
    return MultiLabelMask2D(np.zeros_like(source.pixels))
