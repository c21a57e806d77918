import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partsentropy.groups import (
    FiniteGroup,
    HaarDomain,
    RigidMotion2D,
    RigidMotion3D,
    compose,
    construct_finite_group,
    cyclic_subgroup,
    group_from_json,
    group_to_json,
    haar_sample,
    haar_volume,
    inverse,
    motions_close,
    quaternions_to_matrices,
    sample_motion_arrays,
)

finite_angles = st.floats(-10.0, 10.0, allow_nan=False)
finite_coords = st.floats(-100.0, 100.0, allow_nan=False)


def random_motion_3d(rng):
    return RigidMotion3D(quaternions_to_matrices(rng.normal(size=4)), rng.normal(size=3))


class TestFiniteGroups:
    @pytest.mark.parametrize(
        "kind,n,order",
        [
            ("cyclic", 1, 1),
            ("cyclic", 6, 6),
            ("dihedral", 1, 2),
            ("dihedral", 4, 8),
            ("tetrahedral", None, 12),
            ("octahedral", None, 24),
            ("icosahedral", None, 60),
        ],
    )
    def test_orders(self, kind, n, order):
        g = construct_finite_group(kind, n)
        assert g.order == order

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown group kind"):
            construct_finite_group("prismatic")

    def test_cyclic_needs_n(self):
        with pytest.raises(ValueError):
            construct_finite_group("cyclic")

    def test_trivial_group(self):
        g = construct_finite_group("cyclic", 1)
        assert g.order == 1 and g.mul(0, 0) == 0

    @pytest.mark.parametrize("kind,n", [("cyclic", 5), ("dihedral", 3), ("octahedral", None)])
    def test_group_axioms_exhaustive(self, kind, n):
        g = construct_finite_group(kind, n)
        table = g.table
        ids = np.arange(g.order)
        assert (table[0] == ids).all() and (table[:, 0] == ids).all()
        assert (np.sort(table, axis=1) == ids).all()  # rows are permutations (closure + cancel)
        assert (table[table] == table[:, table]).all()
        for i in ids:
            assert table[i, g.inv(i)] == 0 and table[g.inv(i), i] == 0

    def test_matrices_match_table(self, octahedral):
        mats = octahedral.matrices
        eye = np.eye(3)
        for m in mats:
            assert np.max(np.abs(m @ m.T - eye)) < 1e-10
            assert abs(np.linalg.det(m) - 1) < 1e-10
        prod = np.einsum("iab,jbc->ijac", mats, mats)
        assert np.max(np.abs(prod - mats[octahedral.table])) < 1e-8

    def test_octahedral_element_orders(self, octahedral):
        orders = sorted(octahedral.element_order(i) for i in octahedral.elements)
        assert orders == [1] + [2] * 9 + [3] * 8 + [4] * 6

    def test_bad_table_rejected(self):
        with pytest.raises(ValueError, match="identity"):
            FiniteGroup("bad", np.array([[1, 0], [0, 1]]))
        with pytest.raises(ValueError, match="closure"):
            FiniteGroup("bad", np.array([[0, 1], [1, 5]]))

    def test_associativity_violation_rejected(self):
        # latin square with identity that is not a group table
        table = np.array(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 3, 4, 0, 1],
                [3, 4, 1, 2, 0],
                [4, 2, 0, 1, 3],
            ]
        )
        with pytest.raises(ValueError, match="associa|inverse"):
            FiniteGroup("bad", table)

    def test_json_round_trip(self, octahedral):
        data = group_to_json(octahedral)
        assert data["order"] == 24 and len(data["table"]) == 24 * 24
        back = group_from_json(data)
        assert (back.table == octahedral.table).all()
        assert np.allclose(back.matrices, octahedral.matrices)

    def test_cyclic_subgroup(self, octahedral):
        gen = next(i for i in octahedral.elements if octahedral.element_order(i) == 4)
        sub = cyclic_subgroup(octahedral, gen)
        assert len(sub) == 4 and 0 in sub


class TestRigidMotions:
    def test_pure_translations_add(self):
        g = compose(RigidMotion2D(1, 0, 0), RigidMotion2D(0, 1, 0))
        assert motions_close(g, RigidMotion2D(1, 1, 0))

    def test_rotation_then_translation(self):
        g = compose(RigidMotion2D(0, 0, math.pi / 2), RigidMotion2D(1, 0, 0))
        assert motions_close(g, RigidMotion2D(0, 1, math.pi / 2), tol=1e-12)

    def test_identity_neutral_100_random(self, rng):
        e2, e3 = RigidMotion2D.identity(), RigidMotion3D.identity()
        for _ in range(100):
            g2 = RigidMotion2D(*rng.normal(size=3))
            assert motions_close(compose(g2, e2), g2) and motions_close(compose(e2, g2), g2)
            g3 = random_motion_3d(rng)
            assert motions_close(compose(g3, e3), g3) and motions_close(compose(e3, g3), g3)

    def test_inverse_identity(self):
        assert motions_close(inverse(RigidMotion2D.identity()), RigidMotion2D.identity())

    def test_inverse_pure_translation(self):
        assert motions_close(inverse(RigidMotion2D(2.5, -1.0, 0)), RigidMotion2D(-2.5, 1.0, 0))

    def test_inverse_3d_by_composition(self, rng):
        for _ in range(50):
            g = random_motion_3d(rng)
            assert motions_close(compose(g, inverse(g)), RigidMotion3D.identity(), tol=1e-12)
            assert motions_close(compose(inverse(g), g), RigidMotion3D.identity(), tol=1e-12)

    def test_matches_homogeneous_matrix_product(self, rng):
        for _ in range(20):
            g1 = RigidMotion2D(*rng.normal(size=3))
            g2 = RigidMotion2D(*rng.normal(size=3))
            assert np.allclose(compose(g1, g2).matrix(), g1.matrix() @ g2.matrix(), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            compose(RigidMotion2D(), RigidMotion3D.identity())

    def test_rotation_validation(self):
        with pytest.raises(ValueError, match="orthogonal"):
            RigidMotion3D(np.eye(3) + 1e-3, np.zeros(3))
        with pytest.raises(ValueError, match="determinant"):
            RigidMotion3D(np.diag([1.0, 1.0, -1.0]), np.zeros(3))

    @given(
        x1=finite_coords, y1=finite_coords, t1=finite_angles,
        x2=finite_coords, y2=finite_coords, t2=finite_angles,
        x3=finite_coords, y3=finite_coords, t3=finite_angles,
    )
    @settings(max_examples=200, deadline=None)
    def test_group_axioms_2d(self, x1, y1, t1, x2, y2, t2, x3, y3, t3):
        g1, g2, g3 = RigidMotion2D(x1, y1, t1), RigidMotion2D(x2, y2, t2), RigidMotion2D(x3, y3, t3)
        assert motions_close(
            compose(compose(g1, g2), g3), compose(g1, compose(g2, g3)), tol=1e-12
        )
        assert motions_close(compose(g1, inverse(g1)), RigidMotion2D.identity(), tol=1e-12)

    def test_group_axioms_3d_random(self, rng):
        for _ in range(100):
            g1, g2, g3 = (random_motion_3d(rng) for _ in range(3))
            assert motions_close(
                compose(compose(g1, g2), g3), compose(g1, compose(g2, g3)), tol=1e-12
            )
            assert motions_close(compose(g1, inverse(g1)), RigidMotion3D.identity(), tol=1e-12)


class TestHaar:
    def test_volumes(self):
        assert haar_volume(HaarDomain("SO2")) == pytest.approx(2 * math.pi, rel=1e-15)
        assert haar_volume(HaarDomain("SO3")) == pytest.approx(8 * math.pi**2, rel=1e-15)
        se2 = HaarDomain("SE2", [[0, 1], [0, 1]])
        assert haar_volume(se2) == pytest.approx(2 * math.pi, rel=1e-15)
        se3 = HaarDomain("SE3", [[0, 2], [0, 1], [0, 1]])
        assert haar_volume(se3) == pytest.approx(16 * math.pi**2, rel=1e-15)

    def test_se_requires_box(self):
        with pytest.raises(ValueError, match="not compact"):
            HaarDomain("SE2")
        with pytest.raises(ValueError, match="finite"):
            HaarDomain("SE3", [[0, np.inf], [0, 1], [0, 1]])

    def test_so3_sample_mean_near_zero(self):
        arrays = sample_motion_arrays(HaarDomain("SO3"), 123, 100_000)
        mean = arrays.matrices.mean(axis=0)
        assert np.max(np.abs(mean)) < 0.02

    def test_so2_sample_mean_cos_near_zero(self):
        arrays = sample_motion_arrays(HaarDomain("SO2"), 99, 100_000)
        assert abs(np.cos(arrays.angles).mean()) < 0.02
        assert arrays.angles.min() > -math.pi and arrays.angles.max() <= math.pi

    def test_determinism_same_seed(self):
        d = HaarDomain("SE3", [[-1, 1]] * 3)
        a = sample_motion_arrays(d, 42, 70_000)
        b = sample_motion_arrays(d, 42, 70_000)
        assert (a.translations == b.translations).all()
        assert (a.matrices == b.matrices).all()

    def test_parallel_matches_serial(self):
        d = HaarDomain("SE2", [[-1, 1], [-1, 1]])
        a = sample_motion_arrays(d, 7, 200_000, workers=1)
        b = sample_motion_arrays(d, 7, 200_000, workers=8)
        assert (a.angles == b.angles).all()
        assert (a.translations == b.translations).all()

    def test_haar_sample_objects(self):
        motions = haar_sample(HaarDomain("SO3"), 5, 10)
        assert len(motions) == 10
        for g in motions:
            assert isinstance(g, RigidMotion3D)
            assert np.allclose(g.t, 0)

    def test_shift_invariance(self, rng):
        # sample averages of phi(g) and phi(g0 g) agree within 3 standard errors
        arrays = sample_motion_arrays(HaarDomain("SO3"), 2024, 100_000)
        g0 = quaternions_to_matrices(rng.normal(size=4))

        def phi(mats):
            return mats[:, 0, 0] + 0.5 * mats[:, 1, 2] ** 2

        values = phi(arrays.matrices)
        shifted = phi(np.einsum("ab,nbc->nac", g0, arrays.matrices))
        diff = values - shifted
        se = diff.std(ddof=1) / math.sqrt(diff.size)
        assert abs(diff.mean()) < 3 * se + 1e-12

    def test_count_validation(self):
        with pytest.raises(ValueError):
            sample_motion_arrays(HaarDomain("SO2"), 0, 0)

    def test_euler_grid_agrees_with_quaternion_sampler(self):
        # the ZXZ quadrature grid and the quaternion sampler must integrate
        # the same function over the rotation group to the same value
        from partsentropy.entropy.quadrature import so3_grid
        from partsentropy.groups import zxz_matrix

        def phi(mats):
            return mats[..., 0, 0] ** 2 + 0.3 * mats[..., 2, 1]

        nodes, weights = so3_grid(20)
        mats = np.stack([zxz_matrix(*node) for node in nodes])
        quad = float(weights @ phi(mats)) / (8 * math.pi**2)
        arrays = sample_motion_arrays(HaarDomain("SO3"), 314, 200_000)
        samples = phi(arrays.matrices)
        se = samples.std(ddof=1) / math.sqrt(samples.size)
        assert abs(quad - samples.mean()) < 3 * se
