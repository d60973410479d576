"""The LP oracle itself: membership, samplers, and the comparison harness."""

import ast
import inspect

import numpy as np
import pytest

from wrenchfeas import (
    Wrench,
    build_generating_matrices,
    classify,
    build_wcm,
    compare_wcm_oracle,
    force_membership_lp,
    sample_feasible_wrench,
    wrench_membership_lp,
)
from wrenchfeas.errors import AnchorMismatch
from wrenchfeas.wcm import WrenchConstraintMatrix

from conftest import flat_foot_config, random_config


@pytest.fixture(scope="module")
def flat_gen():
    return build_generating_matrices(flat_foot_config(), [0.0, 0.0, 0.8])


def test_oracle_never_imports_the_pipeline_it_validates():
    # Ground truth must stay structurally independent: only the contact
    # model and the LP solver may be imported.
    import wrenchfeas.oracle

    tree = ast.parse(inspect.getsource(wrenchfeas.oracle))
    local_imports = {
        node.module
        for node in ast.walk(tree)
        if isinstance(node, ast.ImportFrom) and node.level > 0
    }
    assert local_imports <= {"contacts", "errors", "simplex"}


def test_zero_wrench_is_feasible(flat_gen):
    verdict = wrench_membership_lp(
        flat_gen, Wrench([0, 0, 0], [0, 0, 0], flat_gen.anchor)
    )
    assert verdict.feasible
    assert np.max(np.abs(flat_gen.stacked() @ verdict.coefficients)) <= 1e-9


def test_constructive_wrenches_are_feasible_with_certified_residual(flat_gen):
    rng = np.random.default_rng(5)
    stacked = flat_gen.stacked()
    for _ in range(20):
        coeff = rng.exponential(size=flat_gen.n_columns)
        w6 = stacked @ coeff
        verdict = wrench_membership_lp(
            flat_gen, Wrench(w6[:3], w6[3:], flat_gen.anchor)
        )
        assert verdict.feasible
        residual = np.max(np.abs(stacked @ verdict.coefficients - w6))
        assert residual <= 1e-7 * (1.0 + np.max(np.abs(w6)))
        assert np.min(verdict.coefficients) >= -1e-10


def test_downward_pull_is_infeasible(flat_gen):
    # Every generator has nonnegative vertical force; no combination can
    # point down.
    verdict = wrench_membership_lp(
        flat_gen, Wrench([0, 0, -1.0], [0, 0, 0], flat_gen.anchor)
    )
    assert not verdict.feasible


def test_anchor_mismatch_rejected(flat_gen):
    with pytest.raises(AnchorMismatch):
        wrench_membership_lp(flat_gen, Wrench([0, 0, 1], [0, 0, 0], [0, 0, 0]))


def test_force_membership(flat_gen):
    assert force_membership_lp(flat_gen, [1.0, 0.5, 50.0]).feasible
    assert not force_membership_lp(flat_gen, [0.0, 0.0, -1.0]).feasible


class TestSampleFeasibleWrench:
    def test_deterministic_per_seed(self, flat_gen):
        a = sample_feasible_wrench(flat_gen, 123)
        b = sample_feasible_wrench(flat_gen, 123)
        assert np.array_equal(a.as_array(), b.as_array())
        c = sample_feasible_wrench(flat_gen, 124)
        assert not np.array_equal(a.as_array(), c.as_array())

    def test_always_passes_membership(self, flat_gen):
        for seed in range(10):
            wrench = sample_feasible_wrench(flat_gen, seed)
            assert wrench_membership_lp(flat_gen, wrench).feasible

    def test_sample_mean_matches_row_sums(self):
        # Unit-exponential coefficients have mean one, so the sample mean
        # converges to the generator row sums.
        rng = np.random.default_rng(0)
        config = random_config(rng, n_contacts=4)
        gen = build_generating_matrices(config, [0.05, -0.02, 0.4])
        stacked = gen.stacked()
        total = np.zeros(6)
        n = 10_000
        for seed in range(n):
            total += sample_feasible_wrench(gen, seed).as_array()
        mean = total / n
        expected = stacked.sum(axis=1)
        assert np.all(
            np.abs(mean - expected) <= 0.05 * (1.0 + np.abs(expected))
        )


@pytest.fixture(scope="module")
def flat_wcm():
    config = flat_foot_config()
    com = np.array([0.0, 0.0, 0.8])
    cls = classify(config, com)
    return cls.generating, build_wcm(config, com, cls.witness)


class TestCompareWcmOracle:
    def test_empty_report(self, flat_wcm):
        gen, wcm = flat_wcm
        report = compare_wcm_oracle(gen, wcm, 0, rng_seed=0)
        assert report.total == 0

    def test_agreement_on_flat_foot(self, flat_wcm):
        gen, wcm = flat_wcm
        report = compare_wcm_oracle(gen, wcm, 400, rng_seed=9)
        assert report.total == 400
        assert report.disagree == 0
        assert report.agree_feasible > 0
        assert report.agree_infeasible > 0

    def test_random_mode(self, flat_wcm):
        gen, wcm = flat_wcm
        report = compare_wcm_oracle(
            gen, wcm, 200, rng_seed=9, infeasible_mode="random"
        )
        assert report.disagree == 0

    def test_corrupted_matrix_is_caught(self, flat_wcm):
        # Sanity of the harness: breaking one row must produce disagreements.
        gen, wcm = flat_wcm
        rows = wcm.rows.copy()
        rows[0] = -rows[0]
        broken = WrenchConstraintMatrix(rows, wcm.anchor, wcm.witness)
        report = compare_wcm_oracle(gen, broken, 400, rng_seed=9)
        assert report.disagree > 0

    def test_anchor_mismatch(self, flat_wcm):
        gen, wcm = flat_wcm
        moved = WrenchConstraintMatrix(
            wcm.rows, wcm.anchor + [0, 0, 0.1], wcm.witness
        )
        with pytest.raises(AnchorMismatch):
            compare_wcm_oracle(gen, moved, 10, rng_seed=0)

    def test_unknown_mode_rejected(self, flat_wcm):
        gen, wcm = flat_wcm
        with pytest.raises(ValueError):
            compare_wcm_oracle(gen, wcm, 10, rng_seed=0, infeasible_mode="x")
