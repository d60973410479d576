"""Contact geometry and span-form generators for multi-contact wrench analysis.

Conventions used throughout the package:

* Positions are world-frame meters, forces newtons, moments newton-meters.
* A contact's ``rotation`` maps its local frame to the world frame; the local
  z-axis is the surface normal pointing from the surface toward the supported
  body, i.e. the direction in which the surface can push.
* Moments are always taken about an explicitly stated anchor point.  Contacts
  store absolute positions; moment arms are formed only when the generating
  matrices are built, so the same contacts can be re-anchored freely.

All types are immutable after construction (arrays are marked read-only) and
all operations are pure functions, so concurrent reads are safe.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ZeroVector

ORTHONORMAL_TOL = 1e-10


def _as_vec3(value, name: str) -> np.ndarray:
    v = np.array(value, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must have finite components")
    v.flags.writeable = False
    return v


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Wrench:
    """A force/moment pair together with the point the moment is taken about."""

    force: np.ndarray
    moment: np.ndarray
    about: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "force", _as_vec3(self.force, "force"))
        object.__setattr__(self, "moment", _as_vec3(self.moment, "moment"))
        object.__setattr__(self, "about", _as_vec3(self.about, "about"))

    def as_array(self) -> np.ndarray:
        """Stacked 6-vector [force; moment]."""
        return np.concatenate([self.force, self.moment])


@dataclass(frozen=True)
class FrictionCone:
    """Pyramid approximation of a Coulomb friction cone.

    ``mu`` is the friction coefficient and ``sides`` the number of pyramid
    edges.  Three sides is the smallest full-dimensional approximation.
    ``mu == 0`` is accepted and degenerates the pyramid to the normal ray.
    """

    mu: float
    sides: int

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu >= 0.0):
            raise ValueError("mu must be finite and >= 0")
        if int(self.sides) != self.sides or self.sides < 3:
            raise ValueError("sides must be an integer >= 3")
        object.__setattr__(self, "sides", int(self.sides))


@dataclass(frozen=True)
class Contact:
    """One unilateral frictional point contact."""

    point: np.ndarray
    rotation: np.ndarray
    cone: FrictionCone

    def __post_init__(self):
        object.__setattr__(self, "point", _as_vec3(self.point, "point"))
        r = np.array(self.rotation, dtype=float)
        if r.shape != (3, 3):
            raise ValueError(f"rotation must be 3x3, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValueError("rotation must have finite entries")
        if np.max(np.abs(r.T @ r - np.eye(3))) > ORTHONORMAL_TOL:
            raise ValueError("rotation must be orthonormal")
        if np.linalg.det(r) < 0.0:
            raise ValueError("rotation must have determinant +1")
        object.__setattr__(self, "rotation", _freeze(r))

    @property
    def normal(self) -> np.ndarray:
        """World-frame surface normal (direction the surface pushes)."""
        return self.rotation[:, 2]


@dataclass(frozen=True)
class ContactConfiguration:
    """An ordered set of contacts acting on the same body."""

    contacts: tuple

    def __post_init__(self):
        contacts = tuple(self.contacts)
        if not contacts:
            raise ValueError("a contact configuration needs at least one contact")
        for i, a in enumerate(contacts):
            for b in contacts[:i]:
                if np.array_equal(a.point, b.point) and np.array_equal(
                    a.rotation, b.rotation
                ):
                    warnings.warn(
                        f"duplicate contact at index {i}: same point and rotation "
                        "(redundant, not invalid)",
                        stacklevel=2,
                    )
        object.__setattr__(self, "contacts", contacts)

    def __len__(self) -> int:
        return len(self.contacts)

    @property
    def n_generators(self) -> int:
        return sum(c.cone.sides for c in self.contacts)


@dataclass(frozen=True)
class GeneratingMatrices:
    """Span-form description of all wrenches the contacts can transmit.

    ``force_generators`` stacks the world-frame pyramid edges of every contact
    as columns; ``moment_generators`` holds the corresponding moment arms about
    ``anchor``.  Every transmissible wrench is a nonnegative column combination
    of the stacked 6-row matrix.  ``column_origin[k]`` gives the
    (contact index, edge index) pair a column came from.
    """

    force_generators: np.ndarray
    moment_generators: np.ndarray
    anchor: np.ndarray
    column_origin: tuple

    def __post_init__(self):
        f = np.asarray(self.force_generators, dtype=float)
        m = np.asarray(self.moment_generators, dtype=float)
        if f.shape != m.shape or f.ndim != 2 or f.shape[0] != 3:
            raise ValueError("generator matrices must both be 3 x n_columns")
        object.__setattr__(self, "force_generators", _freeze(f))
        object.__setattr__(self, "moment_generators", _freeze(m))
        object.__setattr__(self, "anchor", _as_vec3(self.anchor, "anchor"))
        object.__setattr__(self, "column_origin", tuple(self.column_origin))

    @property
    def n_columns(self) -> int:
        return self.force_generators.shape[1]

    def stacked(self) -> np.ndarray:
        """6 x n matrix with force generators over moment generators."""
        return np.vstack([self.force_generators, self.moment_generators])


@dataclass(frozen=True)
class RigidBodyParams:
    """Mass and gravity for the supported body."""

    mass: float
    gravity: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ValueError("mass must be positive")
        object.__setattr__(self, "gravity", _as_vec3(self.gravity, "gravity"))


@dataclass(frozen=True)
class MotionQuery:
    """A queried motion state: CoM acceleration plus, optionally, the rate of
    change of angular momentum.  ``angular_momentum_rate=None`` means the query
    does not constrain the moment."""

    com_accel: np.ndarray
    angular_momentum_rate: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "com_accel", _as_vec3(self.com_accel, "com_accel"))
        if self.angular_momentum_rate is not None:
            object.__setattr__(
                self,
                "angular_momentum_rate",
                _as_vec3(self.angular_momentum_rate, "angular_momentum_rate"),
            )


def cone_generators(cone: FrictionCone) -> np.ndarray:
    """Edge directions of the friction pyramid in the contact frame.

    Returns a 3 x sides matrix whose i-th column (1-based) is
    ``[mu*cos(2*pi*(i - 1/2)/m), mu*sin(2*pi*(i - 1/2)/m), 1]``.  The normal
    component is set to exactly 1.0; later normalization stages rely on that.
    """
    idx = np.arange(1, cone.sides + 1, dtype=float)
    ang = 2.0 * np.pi * (idx - 0.5) / cone.sides
    u = np.empty((3, cone.sides))
    u[0] = cone.mu * np.cos(ang)
    u[1] = cone.mu * np.sin(ang)
    u[2] = 1.0
    return u


def skew(r) -> np.ndarray:
    """Matrix S with S @ x == cross(r, x) for every x."""
    r = np.asarray(r, dtype=float)
    return np.array(
        [
            [0.0, -r[2], r[1]],
            [r[2], 0.0, -r[0]],
            [-r[1], r[0], 0.0],
        ]
    )


def build_generating_matrices(
    config: ContactConfiguration, com
) -> GeneratingMatrices:
    """Assemble the stacked generator matrices for a configuration, anchored
    at ``com``: per contact the world-frame pyramid edges and their moment
    arms (contact point minus anchor) crossed with those edges."""
    com = _as_vec3(com, "com")
    force_blocks = []
    moment_blocks = []
    origin = []
    for ci, contact in enumerate(config.contacts):
        edges = contact.rotation @ cone_generators(contact.cone)
        arm = skew(contact.point - com)
        force_blocks.append(edges)
        moment_blocks.append(arm @ edges)
        origin.extend((ci, j) for j in range(contact.cone.sides))
    return GeneratingMatrices(
        np.hstack(force_blocks), np.hstack(moment_blocks), com, tuple(origin)
    )


def required_wrench(body: RigidBodyParams, query: MotionQuery, com) -> Wrench:
    """Total contact wrench needed to realize the queried motion.

    Force balance gives ``force = mass * (accel - gravity)``; the moment equals
    the angular momentum rate (zero when the query leaves it unspecified).
    """
    com = _as_vec3(com, "com")
    force = body.mass * (query.com_accel - body.gravity)
    l_dot = query.angular_momentum_rate
    moment = np.zeros(3) if l_dot is None else l_dot
    return Wrench(force, moment, com)


def rotation_aligning_z(v) -> np.ndarray:
    """Rotation R with R @ (v/|v|) == (0, 0, 1), orthonormal, det +1.

    Rodrigues' formula about the axis ``v x z``; near the -z antipode, where
    that loses precision, the result is composed with a half-turn about x so
    the exact antipode maps to the half-turn itself.
    """
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n <= 1e-12:
        raise ZeroVector("cannot align a zero vector with the z-axis")
    vhat = v / n
    if vhat[2] < -0.99:
        flip = np.diag([1.0, -1.0, -1.0])
        return _rodrigues_to_z(flip @ vhat) @ flip
    return _rodrigues_to_z(vhat)


def _rodrigues_to_z(vhat: np.ndarray) -> np.ndarray:
    k = np.array([vhat[1], -vhat[0], 0.0])
    kmat = skew(k)
    return np.eye(3) + kmat + (kmat @ kmat) / (1.0 + vhat[2])
