"""Constraint-matrix pipeline: modified generators, build, shift, queries."""

import numpy as np
import pytest

from wrenchfeas import (
    Contact,
    ContactConfiguration,
    FrictionCone,
    LinearProgram,
    LpStatus,
    MotionQuery,
    RigidBodyParams,
    Wrench,
    build_generating_matrices,
    build_wcm,
    classify,
    acceleration_feasible,
    modified_generators,
    shift_wcm,
    solve,
    wrench_feasible,
    wrench_margin,
)
from wrenchfeas.errors import AnchorMismatch, WitnessOnBoundary

from conftest import (
    flat_foot_config,
    random_constrained_config,
    random_rotation,
    rotate_config,
)

HALF = 0.8 * np.sqrt(2.0) / 2.0


def cone_member(matrix, target):
    sol = solve(
        LinearProgram(
            objective=np.zeros(matrix.shape[1]),
            a_eq=matrix,
            b_eq=target,
            lower=np.zeros(matrix.shape[1]),
        )
    )
    return sol.status is LpStatus.OPTIMAL


@pytest.fixture(scope="module")
def identity_contact_gen():
    config = ContactConfiguration(
        (Contact([0, 0, 0.5], np.eye(3), FrictionCone(0.8, 4)),)
    )
    return build_generating_matrices(config, [0, 0, 0.5])


class TestModifiedGenerators:
    def test_z_witness_identity_contact_is_unchanged(self, identity_contact_gen):
        mod = modified_generators(identity_contact_gen, [0.0, 0.0, 1.0])
        assert np.allclose(
            mod.force_generators, identity_contact_gen.force_generators, atol=1e-14
        )
        assert np.all(mod.force_generators[2] == 1.0)

    def test_witness_scale_invariance(self, identity_contact_gen):
        a = modified_generators(identity_contact_gen, [0.2, 0.1, 1.0])
        b = modified_generators(identity_contact_gen, [2.0, 1.0, 10.0])
        assert np.allclose(a.force_generators, b.force_generators, atol=1e-12)
        assert np.allclose(a.moment_generators, b.moment_generators, atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_third_row_is_ones(self, seed):
        rng = np.random.default_rng(seed)
        config = random_constrained_config(rng, n_contacts=5)
        com = rng.uniform(-0.2, 0.2, size=3)
        cls = classify(config, com)
        assert cls.constrained
        mod = modified_generators(cls.generating, cls.witness)
        assert np.max(np.abs(mod.force_generators[2] - 1.0)) <= 1e-12

    def test_generated_cone_is_preserved(self):
        # Nonnegative combinations of the rescaled columns and of the rotated
        # originals realize exactly the same wrenches.
        config = flat_foot_config()
        com = np.array([0.02, -0.01, 0.7])
        cls = classify(config, com)
        mod = modified_generators(cls.generating, cls.witness)
        rot = mod.rotation
        rotated = np.vstack(
            [rot @ cls.generating.force_generators, rot @ cls.generating.moment_generators]
        )
        rescaled = np.vstack([mod.force_generators, mod.moment_generators])
        rng = np.random.default_rng(0)
        for _ in range(10):
            coeff = rng.exponential(size=rotated.shape[1])
            assert cone_member(rescaled, rotated @ coeff)
            assert cone_member(rotated, rescaled @ coeff)

    def test_boundary_witness_rejected(self, identity_contact_gen):
        # (1, 0, 0) has negative projection on half the pyramid edges.
        with pytest.raises(WitnessOnBoundary):
            modified_generators(identity_contact_gen, [1.0, 0.0, 0.0])


class TestBuildWcm:
    def test_single_contact_at_anchor_closed_form(self):
        # Moments must vanish and the tangential force is boxed by the
        # pyramid: |fx| <= half * fz, |fy| <= half * fz, fz >= 0.
        config = ContactConfiguration(
            (Contact([0, 0, 0.5], np.eye(3), FrictionCone(0.8, 4)),)
        )
        com = np.array([0.0, 0.0, 0.5])
        cls = classify(config, com)
        wcm = build_wcm(config, com, cls.witness)
        rng = np.random.default_rng(8)
        for _ in range(300):
            w6 = rng.normal(size=6) * np.array([1, 1, 1, 0.1, 0.1, 0.1])
            if rng.random() < 0.5:
                w6[3:] = 0.0
                w6[2] = abs(w6[2])
                w6[:2] *= 0.5
            expected = (
                np.allclose(w6[3:], 0.0, atol=1e-9)
                and w6[2] >= -1e-9
                and abs(w6[0]) <= HALF * w6[2] + 1e-9
                and abs(w6[1]) <= HALF * w6[2] + 1e-9
            )
            wrench = Wrench(w6[:3], w6[3:], com)
            margin = wrench_margin(wcm, wrench)
            if abs(margin) <= 1e-7 * (1 + np.linalg.norm(w6)):
                continue
            assert wrench_feasible(wcm, wrench) == expected

    def test_sampled_cone_points_satisfy_rows(self):
        config = flat_foot_config()
        com = np.array([0.0, 0.0, 0.8])
        cls = classify(config, com)
        wcm = build_wcm(config, com, cls.witness)
        stacked = cls.generating.stacked()
        rng = np.random.default_rng(1)
        coeffs = rng.exponential(size=(stacked.shape[1], 1000))
        wrenches = (stacked @ coeffs).T
        margins = np.min(wrenches @ wcm.rows.T, axis=1)
        norms = np.linalg.norm(wrenches, axis=1)
        assert np.all(margins >= -1e-7 * norms)

    def test_zmp_recovery_coarse(self, flat_foot_scene):
        # Vertical force through a point is supportable exactly when the
        # point is inside the foot rectangle.
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        mg = scene.body.mass * 9.81
        for x in np.linspace(-0.18, 0.18, 13):
            for y in np.linspace(-0.12, 0.12, 11):
                point = np.array([x, y, 0.0])
                force = np.array([0.0, 0.0, mg])
                moment = np.cross(point - scene.com, force)
                inside = abs(x) <= 0.1 - 1e-6 and abs(y) <= 0.05 - 1e-6
                on_edge = (
                    abs(abs(x) - 0.1) <= 1e-6 or abs(abs(y) - 0.05) <= 1e-6
                )
                if on_edge:
                    continue
                assert (
                    wrench_feasible(wcm, Wrench(force, moment, scene.com))
                    == inside
                )

    def test_rows_are_unit_norm(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        assert np.allclose(np.linalg.norm(wcm.rows, axis=1), 1.0, atol=1e-12)


class TestShift:
    @pytest.fixture
    def built(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        return scene, cls, build_wcm(scene.config, scene.com, cls.witness)

    def test_zero_shift_is_identity(self, built):
        _, _, wcm = built
        shifted = shift_wcm(wcm, [0.0, 0.0, 0.0])
        assert np.allclose(shifted.rows, wcm.rows, atol=1e-15)
        assert np.allclose(shifted.anchor, wcm.anchor)
        assert shifted.source == "shifted"

    def test_round_trip_verdicts(self, built):
        scene, cls, wcm = built
        delta = np.array([0.05, -0.02, 0.1])
        back = shift_wcm(shift_wcm(wcm, delta), -delta)
        rng = np.random.default_rng(2)
        stacked = cls.generating.stacked()
        for k in range(300):
            w6 = (
                stacked @ rng.exponential(size=stacked.shape[1])
                if k % 2 == 0
                else rng.normal(size=6) * 200
            )
            wrench = Wrench(w6[:3], w6[3:], wcm.anchor)
            if abs(wrench_margin(wcm, wrench)) <= 1e-7 * (1 + np.linalg.norm(w6)):
                continue
            assert wrench_feasible(back, wrench) == wrench_feasible(wcm, wrench)

    def test_shift_matches_rebuild(self, built):
        scene, cls, wcm = built
        rng = np.random.default_rng(3)
        delta = np.array([0.05, -0.02, 0.1])
        shifted = shift_wcm(wcm, delta)
        com_b = scene.com + delta
        rebuilt = build_wcm(scene.config, com_b, cls.witness)
        gen_b = build_generating_matrices(scene.config, com_b)
        stacked = gen_b.stacked()
        disagreements = 0
        for k in range(1000):
            w6 = (
                stacked @ rng.exponential(size=stacked.shape[1])
                if k % 2 == 0
                else rng.normal(size=6) * 300
            )
            wrench = Wrench(w6[:3], w6[3:], com_b)
            a = wrench_feasible(shifted, wrench)
            b = wrench_feasible(rebuilt, wrench)
            if a != b:
                band = 1e-7 * (1 + np.linalg.norm(w6))
                near = min(
                    abs(wrench_margin(shifted, wrench)),
                    abs(wrench_margin(rebuilt, wrench)),
                )
                if near > band:
                    disagreements += 1
        assert disagreements == 0

    def test_anchor_bookkeeping(self, built):
        _, _, wcm = built
        delta = np.array([0.1, 0.2, -0.3])
        shifted = shift_wcm(wcm, delta)
        assert np.allclose(shifted.anchor, wcm.anchor + delta)
        assert np.allclose(shifted.shift_delta, delta)
        assert shifted.witness is wcm.witness


class TestQueries:
    def test_zero_wrench_always_feasible(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        assert wrench_feasible(wcm, Wrench([0, 0, 0], [0, 0, 0], scene.com))

    def test_anchor_mismatch_raises(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        with pytest.raises(AnchorMismatch):
            wrench_feasible(wcm, Wrench([0, 0, 1], [0, 0, 0], scene.com + 0.1))

    def test_positive_row_scaling_changes_no_verdict(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        rng = np.random.default_rng(4)
        scales = rng.uniform(0.1, 10.0, size=(wcm.n_rows, 1))
        rescaled_rows = wcm.rows * scales
        renormalized = rescaled_rows / np.linalg.norm(
            rescaled_rows, axis=1, keepdims=True
        )
        assert np.allclose(renormalized, wcm.rows, atol=1e-14)

    def test_upward_acceleration_between_walls(self, two_walls_scene):
        scene = two_walls_scene
        cls = classify(scene.config, scene.com)
        assert not cls.constrained
        ok = acceleration_feasible(
            cls, None, scene.body, MotionQuery([0.0, 0.0, 5.0]), scene.com
        )
        assert ok

    def test_unconstrained_with_pinned_moment_uses_oracle(self, two_walls_scene):
        scene = two_walls_scene
        cls = classify(scene.config, scene.com)
        query = MotionQuery([0.0, 0.0, 1.0], [0.0, 0.0, 0.0])
        result = acceleration_feasible(cls, None, scene.body, query, scene.com)
        assert result in (True, False)  # resolved by the oracle, not assumed

    def test_free_fall_and_double_gravity(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        g = scene.body.gravity
        assert acceleration_feasible(
            cls, wcm, scene.body, MotionQuery(g, [0, 0, 0]), scene.com
        )
        assert not acceleration_feasible(
            cls, wcm, scene.body, MotionQuery(2 * g, [0, 0, 0]), scene.com
        )

    def test_constrained_requires_wcm(self, flat_foot_scene):
        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        with pytest.raises(ValueError):
            acceleration_feasible(
                cls, None, scene.body, MotionQuery([0, 0, 0]), scene.com
            )


class TestConcurrentUse:
    def test_shared_objects_under_thread_pool(self, flat_foot_scene):
        # All types are immutable and operations pure: concurrent classify,
        # build and query calls must agree with the serial results exactly.
        from concurrent.futures import ThreadPoolExecutor

        scene = flat_foot_scene
        cls = classify(scene.config, scene.com)
        wcm = build_wcm(scene.config, scene.com, cls.witness)
        rng = np.random.default_rng(0)
        wrenches = [
            Wrench(w6[:3], w6[3:], scene.com)
            for w6 in rng.normal(size=(64, 6)) * 150.0
        ]
        serial = [wrench_feasible(wcm, w) for w in wrenches]

        def job(wrench):
            local = classify(scene.config, scene.com)
            rebuilt = build_wcm(scene.config, scene.com, local.witness)
            return (
                wrench_feasible(wcm, wrench),
                wrench_feasible(rebuilt, wrench),
                local.s_star,
            )

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(job, wrenches))
        for expected, (shared, rebuilt_verdict, s_star) in zip(serial, results):
            assert shared == expected
            assert rebuilt_verdict == expected
            assert s_star == cls.s_star


class TestFrameEquivariance:
    @pytest.mark.parametrize("seed", range(5))
    def test_rotated_scene_rotated_wrench(self, seed):
        rng = np.random.default_rng(seed)
        config = flat_foot_config()
        com = np.array([0.01, -0.02, 0.6])
        cls = classify(config, com)
        wcm = build_wcm(config, com, cls.witness)

        q = random_rotation(rng)
        rotated = rotate_config(config, q)
        cls_r = classify(rotated, q @ com)
        assert cls_r.constrained == cls.constrained
        wcm_r = build_wcm(rotated, q @ com, cls_r.witness)

        stacked = cls.generating.stacked()
        for k in range(200):
            w6 = (
                stacked @ rng.exponential(size=stacked.shape[1])
                if k % 2 == 0
                else rng.normal(size=6) * 100
            )
            wrench = Wrench(w6[:3], w6[3:], com)
            band = 1e-7 * (1 + np.linalg.norm(w6))
            if abs(wrench_margin(wcm, wrench)) <= band:
                continue
            rotated_wrench = Wrench(q @ w6[:3], q @ w6[3:], q @ com)
            if abs(wrench_margin(wcm_r, rotated_wrench)) <= band:
                continue
            assert wrench_feasible(wcm, wrench) == wrench_feasible(
                wcm_r, rotated_wrench
            )
