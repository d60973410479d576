"""LP-backed ground truth for wrench feasibility.

Everything in this module goes straight from the span-form generators to a
small feasibility program: a wrench is achievable exactly when it is a
nonnegative combination of the stacked generator columns.  No convex hull and
no constraint matrix is consulted anywhere here, which keeps the module an
independent check on the polyhedral pipeline built on top of it (it imports
only the contact model and the LP solver).
"""

from dataclasses import dataclass

import numpy as np

from .contacts import GeneratingMatrices, Wrench
from .errors import AnchorMismatch, LpFailure
from .simplex import LinearProgram, LpStatus, solve

ANCHOR_TOL = 1e-12


def _check_anchor(anchor: np.ndarray, about: np.ndarray):
    if np.max(np.abs(anchor - about)) > ANCHOR_TOL:
        raise AnchorMismatch(
            f"wrench is about {about}, but the generators are anchored at {anchor}"
        )


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a membership test; ``coefficients`` is a realizing
    nonnegative combination when one exists."""

    feasible: bool
    coefficients: np.ndarray | None = None


def _membership(matrix: np.ndarray, target: np.ndarray) -> MembershipVerdict:
    n = matrix.shape[1]
    sol = solve(
        LinearProgram(
            objective=np.zeros(n),
            a_eq=matrix,
            b_eq=target,
            lower=np.zeros(n),
        )
    )
    if sol.status is LpStatus.OPTIMAL:
        return MembershipVerdict(True, sol.x)
    if sol.status is LpStatus.INFEASIBLE:
        return MembershipVerdict(False)
    raise LpFailure(f"membership test returned {sol.status}")


def wrench_membership_lp(gen: GeneratingMatrices, wrench: Wrench) -> MembershipVerdict:
    """Can the contacts produce this exact wrench?  Feasibility of
    ``stacked_generators @ a == [force; moment]`` with ``a >= 0``."""
    _check_anchor(gen.anchor, wrench.about)
    return _membership(gen.stacked(), wrench.as_array())


def force_membership_lp(gen: GeneratingMatrices, force) -> MembershipVerdict:
    """Can the contacts produce this total force, with any moment?"""
    force = np.asarray(force, dtype=float)
    return _membership(gen.force_generators, force)


def sample_feasible_wrench(gen: GeneratingMatrices, rng_seed: int) -> Wrench:
    """A wrench guaranteed achievable: generators combined with coefficients
    drawn i.i.d. unit-exponential.  Deterministic for a given seed."""
    rng = np.random.default_rng(rng_seed)
    coeff = rng.exponential(size=gen.n_columns)
    return Wrench(
        gen.force_generators @ coeff, gen.moment_generators @ coeff, gen.anchor
    )


@dataclass(frozen=True)
class AgreementReport:
    """Tally of verdict agreement between a constraint matrix and this module.

    A sample counts as ``boundary_excluded`` when the two routes disagree but
    the sample sits within the stated relative band of the constraint-matrix
    boundary, where the two tolerance models are allowed to differ.
    """

    agree_feasible: int
    agree_infeasible: int
    disagree: int
    boundary_excluded: int
    examples: tuple = ()

    @property
    def total(self) -> int:
        return (
            self.agree_feasible
            + self.agree_infeasible
            + self.disagree
            + self.boundary_excluded
        )


def compare_wcm_oracle(
    gen: GeneratingMatrices,
    wcm,
    n_samples: int,
    rng_seed: int,
    infeasible_mode: str = "straddle",
    band: float = 1e-7,
) -> AgreementReport:
    """Compare constraint-matrix verdicts against LP ground truth.

    Half the samples are constructively feasible (nonnegative generator
    combinations, so their feasibility certificate is the combination itself).
    The other half depends on ``infeasible_mode``:

    * ``"straddle"``: pairs bracketing the feasibility boundary, found by
      walking a ray from a feasible wrench and bisecting with the membership
      LP.  Every emitted verdict was established by an actual LP solve.
    * ``"random"``: unstructured 6-vectors at comparable magnitude, each
      given its own membership solve.
    """
    _check_anchor(gen.anchor, wcm.anchor)
    if infeasible_mode not in ("straddle", "random"):
        raise ValueError(f"unknown infeasible_mode {infeasible_mode!r}")
    rng = np.random.default_rng(rng_seed)
    stacked = gen.stacked()

    samples = []  # (wrench 6-vector, oracle verdict)
    n_feasible = n_samples // 2
    if n_feasible:
        coeffs = rng.exponential(size=(gen.n_columns, n_feasible))
        for w6 in (stacked @ coeffs).T:
            samples.append((w6, True))
    n_rest = n_samples - n_feasible
    if infeasible_mode == "straddle":
        while len(samples) < n_samples:
            lo_pair, hi_pair = _straddle_pair(stacked, rng)
            samples.append(lo_pair)
            if len(samples) < n_samples:
                samples.append(hi_pair)
    else:
        typical = 1.0 + float(
            np.median([np.linalg.norm(w6) for w6, _ in samples]) if samples else 1.0
        )
        for _ in range(n_rest):
            w6 = rng.normal(size=6) * typical / np.sqrt(6.0)
            samples.append((w6, _membership(stacked, w6).feasible))

    agree_feasible = agree_infeasible = disagree = excluded = 0
    examples = []
    for w6, oracle_feasible in samples:
        margin = float(np.min(wcm.rows @ w6))
        scale = 1.0 + np.linalg.norm(w6)
        wcm_feasible = margin >= -1e-9 * scale
        if wcm_feasible == oracle_feasible:
            if oracle_feasible:
                agree_feasible += 1
            else:
                agree_infeasible += 1
        elif abs(margin) <= band * scale:
            excluded += 1
        else:
            disagree += 1
            if len(examples) < 10:
                examples.append((w6.copy(), oracle_feasible, margin))
    return AgreementReport(
        agree_feasible, agree_infeasible, disagree, excluded, tuple(examples)
    )


def _straddle_pair(stacked: np.ndarray, rng: np.random.Generator):
    """Two wrenches bracketing the cone boundary along a random ray from a
    feasible interior sample, with LP-established verdicts."""
    for _ in range(50):
        coeff = rng.exponential(size=stacked.shape[1])
        base = stacked @ coeff
        direction = rng.normal(size=6)
        direction *= (1.0 + np.linalg.norm(base)) / np.linalg.norm(direction)
        if _membership(stacked, direction).feasible:
            continue  # ray direction inside the cone: it would never leave
        lo, hi = 0.0, 1.0
        escaped = True
        while _membership(stacked, base + hi * direction).feasible:
            lo = hi
            hi *= 4.0
            if hi > 2.0**40:
                escaped = False
                break
        if not escaped:
            continue
        while hi - lo > 1e-3 * (1.0 + hi):
            mid = 0.5 * (lo + hi)
            if _membership(stacked, base + mid * direction).feasible:
                lo = mid
            else:
                hi = mid
        return (base + lo * direction, True), (base + hi * direction, False)
    raise LpFailure("could not construct a boundary-straddling sample pair")
