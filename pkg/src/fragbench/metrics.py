"""Overlap and surface-distance primitives, plus bounding-sphere penalty geometry.

The three segmentation metrics:

* iou           intersection over union of solid masks
* hd95          95th-percentile symmetric Hausdorff distance between surfaces
* assd          average symmetric surface distance

Surfaces are the physical centers of foreground cells with at least one
face-adjacent background (or out-of-grid) neighbor: 6-connectivity in 3D,
4-connectivity in 2D.  Distances are Euclidean, in mm for 3D grids and in
pixels for 2D masks.  Nearest-neighbor queries go through a k-d tree but
the distances are identical to an all-pairs brute force.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import EmptyMask, EmptySurface
from .grids import BinaryMask, require_same_grid


@dataclass(frozen=True)
class SurfacePointSet:
    """Boundary-cell centers as (n, 3) physical coordinates; z = 0 for 2D grids."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


def iou(a: BinaryMask, b: BinaryMask) -> float:
    """|a ∩ b| / |a ∪ b|; 1.0 when both are empty, 0.0 when exactly one is."""
    require_same_grid(a, b)
    inter = int(np.count_nonzero(a.cells & b.cells))
    union = a.count + b.count - inter
    if union == 0:
        return 1.0
    return inter / union


def extract_surface(mask: BinaryMask) -> SurfacePointSet:
    """Centers of foreground cells with a face-adjacent background neighbor."""
    cells = mask.cells
    if not cells.any():
        return SurfacePointSet(np.empty((0, 3)))
    interior = np.ones_like(cells)
    for axis in range(cells.ndim):
        lo = [slice(None)] * cells.ndim
        hi = [slice(None)] * cells.ndim
        lo[axis] = slice(None, -1)
        hi[axis] = slice(1, None)
        shifted = np.zeros_like(cells)
        shifted[tuple(lo)] = cells[tuple(hi)]  # neighbor at +axis; border sees background
        interior &= shifted
        shifted = np.zeros_like(cells)
        shifted[tuple(hi)] = cells[tuple(lo)]
        interior &= shifted
    boundary = cells & ~interior
    idx = np.argwhere(boundary).astype(np.float64)
    spacing = np.asarray(mask.spacing)
    offset = np.asarray(mask.offset)
    pts = offset + (idx + 0.5) * spacing
    if cells.ndim == 2:
        pts = np.hstack([pts, np.zeros((pts.shape[0], 1))])
    return SurfacePointSet(pts)


def _directed_distances(src: SurfacePointSet, dst: SurfacePointSet) -> np.ndarray:
    tree = cKDTree(dst.points)
    d, _ = tree.query(src.points, k=1)
    return np.asarray(d, dtype=np.float64)


def surface_distance_percentile(distances: np.ndarray, q: float = 95.0) -> float:
    """Linear-interpolation percentile of a directed-distance set.

    Isolated here: swapping the percentile method changes hd95 globally.
    """
    return float(np.percentile(distances, q))


def hd95(cp: SurfacePointSet, cg: SurfacePointSet) -> float:
    """Max of the two directed 95th-percentile surface distances."""
    if len(cp) == 0 or len(cg) == 0:
        raise EmptySurface("hd95 requires two nonempty surfaces")
    fwd = surface_distance_percentile(_directed_distances(cp, cg))
    bwd = surface_distance_percentile(_directed_distances(cg, cp))
    return max(fwd, bwd)


def assd(cp: SurfacePointSet, cg: SurfacePointSet) -> float:
    """Average symmetric surface distance: pooled mean of both directed sets."""
    if len(cp) == 0 or len(cg) == 0:
        raise EmptySurface("assd requires two nonempty surfaces")
    fwd = _directed_distances(cp, cg)
    bwd = _directed_distances(cg, cp)
    return float((fwd.sum() + bwd.sum()) / (len(cp) + len(cg)))


def bounding_sphere(mask: BinaryMask) -> tuple[np.ndarray, float]:
    """Sphere circumscribing the tight axis-aligned physical bounding box.

    The box spans full cell extents (from the low face of the lowest cell to
    the high face of the highest cell per axis); the radius is half the box
    diagonal.  For 2D masks this degenerates to the circumscribing circle.
    """
    cells = mask.cells
    if not cells.any():
        raise EmptyMask("bounding sphere of an empty mask is undefined")
    idx = np.argwhere(cells)
    spacing = np.asarray(mask.spacing)
    offset = np.asarray(mask.offset)
    lo = offset + idx.min(axis=0) * spacing
    hi = offset + (idx.max(axis=0) + 1) * spacing
    center = (lo + hi) / 2.0
    radius = float(np.linalg.norm(hi - lo) / 2.0)
    return center, radius
