"""Halfspace descriptions of convex hulls in low dimension (d <= 6).

qhull (via scipy) does the heavy lifting on full-dimensional input.  This
module adds the degeneracy handling around it: a point cloud that only spans
an affine subspace is hulled inside that subspace, and the result combines
facet inequalities (sense ``normal . p >= offset``) with the equalities that
pin the subspace.  Together they describe the hull exactly in the ambient
space, which downstream code needs because single-contact and symmetric
scenes genuinely produce flat point clouds.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateInput, HullFailure

RANK_TOL = 1e-9
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class Facet:
    """Oriented hyperplane ``normal . p >= offset`` with a unit normal.
    Also used for equalities, where ``normal . p == offset`` on the hull."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float)
        normal.flags.writeable = False
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))


@dataclass(frozen=True)
class HullResult:
    """Inequality/equality description of a convex hull.

    ``affine_dim + len(equalities) == dim`` always holds; every input point
    satisfies every facet and equality to tolerance.
    """

    facets: tuple
    equalities: tuple
    affine_dim: int
    dim: int

    def contains(self, point, tol: float = 1e-9) -> bool:
        p = np.asarray(point, dtype=float)
        for eq in self.equalities:
            if abs(eq.normal @ p - eq.offset) > tol:
                return False
        for facet in self.facets:
            if facet.normal @ p - facet.offset < -tol:
                return False
        return True


def affine_dimension(points, tol: float = RANK_TOL):
    """Dimension, orthonormal basis (rows), and centroid of the affine hull.

    Singular values below ``tol`` times the largest are treated as zero.
    """
    rank, basis, _, centroid = _affine_split(np.asarray(points, dtype=float), tol)
    return rank, basis, centroid


def _affine_split(pts: np.ndarray, tol: float):
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    _, sv, vt = np.linalg.svd(centered, full_matrices=True)
    if sv.size == 0 or sv[0] <= np.finfo(float).tiny:
        rank = 0
    else:
        rank = int(np.sum(sv > tol * sv[0]))
    return rank, vt[:rank], vt[rank:], centroid


def convex_hull(
    points, rank_tol: float = RANK_TOL, merge_tol: float = MERGE_TOL
) -> HullResult:
    """Facets and equalities of the convex hull of a point cloud.

    Rank-deficient clouds are projected onto their affine hull, hulled there,
    and lifted back; the orthogonal directions become equalities.  A cloud of
    coincident points is a valid dimension-zero hull, not an error.  Nearly
    identical facets are merged (``merge_tol`` is relative to the cloud
    diameter) so numerical duplicates do not inflate the description.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise DegenerateInput("cannot hull an empty point set")
    if pts.ndim != 2:
        raise ValueError(f"points must be 2-D (n_points, dim), got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    dim = pts.shape[1]

    rank, basis, complement, centroid = _affine_split(pts, rank_tol)
    equalities = tuple(
        _canonical_equality(q, float(q @ centroid)) for q in complement
    )
    if rank == 0:
        return HullResult((), equalities, 0, dim)

    projected = (pts - centroid) @ basis.T
    diameter = float(np.linalg.norm(projected.max(axis=0) - projected.min(axis=0)))
    if rank == 1:
        y = projected[:, 0]
        sub = [
            (np.array([1.0]), float(y.min())),
            (np.array([-1.0]), float(-y.max())),
        ]
    else:
        try:
            hull = ConvexHull(projected)
        except QhullError as exc:
            raise HullFailure(f"qhull failed on projected cloud: {exc}") from exc
        # qhull rows satisfy normal . y + off <= 0 inside; flip to >= sense.
        sub = [(-row[:-1], float(row[-1])) for row in hull.equations]
        sub = _merge_duplicates(sub, merge_tol, diameter)

    facets = []
    for g, w_sub in sub:
        normal = g @ basis
        norm = np.linalg.norm(normal)
        facets.append(Facet(normal / norm, w_sub / norm + (normal / norm) @ centroid))
    facets.sort(key=lambda f: (tuple(np.round(f.normal, 12)), round(f.offset, 12)))
    return HullResult(tuple(facets), equalities, rank, dim)


def _canonical_equality(normal: np.ndarray, offset: float) -> Facet:
    # Equalities hold with either orientation; fix the sign so the first
    # non-negligible component is positive.
    for component in normal:
        if abs(component) > 1e-12:
            if component < 0.0:
                return Facet(-normal, -offset)
            break
    return Facet(normal, offset)


def _merge_duplicates(rows, merge_tol: float, diameter: float):
    # Greedy clustering, one vectorized sweep per surviving hyperplane.
    offset_tol = merge_tol * (1.0 + diameter)
    normals = np.array([g for g, _ in rows])
    offsets = np.array([w for _, w in rows])
    removed = np.zeros(len(rows), dtype=bool)
    kept = []
    for i in range(len(rows)):
        if removed[i]:
            continue
        kept.append(i)
        removed |= (np.abs(normals - normals[i]).max(axis=1) <= merge_tol) & (
            np.abs(offsets - offsets[i]) <= offset_tol
        )
    return [(normals[i], offsets[i]) for i in kept]
