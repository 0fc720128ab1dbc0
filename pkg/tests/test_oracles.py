import numpy as np
import pytest

from hyperhaar import (
    DegenerateNullspace,
    FamilySpec,
    FiniteHypergroup,
    H6Violation,
    Measure,
    build_family,
    invariance_residual,
    jewett_haar,
    solve_invariance,
    validate,
)
from hyperhaar.oracles import (
    conjugacy_class_hypergroup,
    cosine_grid_hypergroup,
    cyclic_hypergroup,
    product_hypergroup,
    symmetric_group_table,
    theta_hypergroup,
)

from conftest import s3_table


class TestJewettHaar:
    def test_cyclic_uniform(self):
        for n in (1, 2, 7):
            np.testing.assert_array_equal(jewett_haar(cyclic_hypergroup(n)).w, np.ones(n))

    def test_theta_weights(self):
        for theta in (0.1, 0.5, 1.0):
            got = jewett_haar(theta_hypergroup(theta))
            np.testing.assert_allclose(got.w, [1.0, 1.0 / theta], rtol=1e-15)

    def test_s3_class_sizes(self):
        got = jewett_haar(conjugacy_class_hypergroup(s3_table()[0]))
        np.testing.assert_allclose(got.w, [1.0, 3.0, 2.0], atol=1e-12)

    def test_h6_violation(self):
        with pytest.raises(H6Violation):
            jewett_haar(theta_hypergroup(0.0))


class TestSolveInvariance:
    def test_theta_half(self):
        got = solve_invariance(theta_hypergroup(0.5))
        np.testing.assert_allclose(got.w, [1 / 3, 2 / 3], atol=1e-12)

    def test_z4_uniform(self):
        got = solve_invariance(cyclic_hypergroup(4))
        np.testing.assert_allclose(got.w, np.full(4, 0.25), atol=1e-12)

    def test_cosine_grid_5(self):
        got = solve_invariance(cosine_grid_hypergroup(5))
        np.testing.assert_allclose(got.w, np.array([1, 2, 2, 2, 1]) / 8, atol=1e-12)
        j = jewett_haar(cosine_grid_hypergroup(5))
        np.testing.assert_allclose(got.w, j.w / j.w.sum(), atol=1e-12)

    def test_mass_one(self, bundled):
        assert solve_invariance(bundled).w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_nullspace(self):
        # broken table where every left translation is the identity map:
        # the invariance operator vanishes and the nullspace has dimension 2
        c = np.zeros((2, 2, 2))
        c[:, 0, 0] = 1.0
        c[:, 1, 1] = 1.0
        broken = FiniteHypergroup(2, 0, [0, 1], c)
        with pytest.raises(DegenerateNullspace):
            solve_invariance(broken)


class TestInvarianceResidual:
    def test_oracle_self_consistency(self, bundled):
        assert invariance_residual(bundled, jewett_haar(bundled)) < 1e-12

    def test_z4_dirac_maximally_off(self):
        h = cyclic_hypergroup(4)
        assert invariance_residual(h, Measure([1.0, 0.0, 0.0, 0.0])) == pytest.approx(1.0)

    def test_zero_measure_degenerate(self, bundled):
        assert invariance_residual(bundled, Measure(np.zeros(bundled.n))) == 0.0


class TestBuildFamily:
    def test_theta_one_is_z2(self):
        h = build_family(FamilySpec.parse("theta2", "1"))
        z2 = cyclic_hypergroup(2)
        np.testing.assert_allclose(h.c, z2.c, atol=1e-15)

    def test_s3_class_products(self):
        h = build_family(FamilySpec.parse("conj-class", "s3"))
        assert h.n == 3
        np.testing.assert_allclose(h.c[1, 1], [1 / 3, 0, 2 / 3], atol=1e-15)
        np.testing.assert_allclose(h.c[1, 2], [0, 1, 0], atol=1e-15)
        np.testing.assert_allclose(h.c[2, 2], [1 / 2, 0, 1 / 2], atol=1e-15)

    def test_cosine_grid_3(self):
        h = build_family(FamilySpec.parse("cosine-grid", "3"))
        np.testing.assert_allclose(h.c[1, 1], [0.5, 0.0, 0.5])
        np.testing.assert_allclose(h.c[2, 2], [1.0, 0.0, 0.0])
        assert validate(h, 1e-12).passed

    def test_product_haar(self):
        h = build_family(FamilySpec.parse("product", "cyclic:2,theta2:0.5"))
        got = solve_invariance(h)
        np.testing.assert_allclose(got.w, np.array([1, 2, 1, 2]) / 6, atol=1e-12)

    def test_all_bundled_validate_tightly(self, bundled):
        assert validate(bundled, 1e-12).passed

    def test_bad_group_table(self):
        with pytest.raises(ValueError, match="associative|identity|inverse"):
            conjugacy_class_hypergroup(np.zeros((3, 3), dtype=int))

    def test_parameter_out_of_range(self):
        with pytest.raises(ValueError):
            build_family(FamilySpec.parse("theta2", "0"))
        with pytest.raises(ValueError):
            build_family(FamilySpec.parse("cosine-grid", "1"))


class TestOracleAgreement:
    def test_bundled(self, bundled):
        j = jewett_haar(bundled)
        s = solve_invariance(bundled)
        np.testing.assert_allclose(j.w / j.w.sum(), s.w, atol=1e-10)

    def test_random_theta_and_product_instances(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            theta = rng.uniform(0.05, 1.0)
            hs = [theta_hypergroup(theta)]
            if rng.random() < 0.5:
                hs.append(product_hypergroup(theta_hypergroup(rng.uniform(0.05, 1.0)),
                                             cyclic_hypergroup(int(rng.integers(2, 5)))))
            for h in hs:
                j = jewett_haar(h)
                s = solve_invariance(h)
                np.testing.assert_allclose(j.w / j.w.sum(), s.w, atol=1e-10)

    def test_cosine_grid_trapezoid_weights(self):
        for m in (3, 5, 17):
            j = jewett_haar(cosine_grid_hypergroup(m))
            expected = np.full(m, 2.0)
            expected[0] = expected[-1] = 1.0
            np.testing.assert_allclose(j.w, expected, atol=1e-12)

    def test_conjugacy_weights_proportional_to_class_sizes(self):
        for k in (3, 4):
            table = symmetric_group_table(k)
            n = table.shape[0]
            ginv = [int(np.flatnonzero(table[a] == 0)[0]) for a in range(n)]
            orbits = sorted({tuple(sorted({int(table[table[g, a], ginv[g]])
                                           for g in range(n)})) for a in range(n)},
                            key=min)
            sizes = np.array([len(o) for o in orbits], dtype=float)
            h = conjugacy_class_hypergroup(table)
            j = jewett_haar(h)
            np.testing.assert_allclose(j.w, sizes, atol=1e-9)
            assert invariance_residual(h, j) < 1e-12

    def test_product_haar_is_tensor_of_factors(self):
        h1 = theta_hypergroup(0.3)
        h2 = cosine_grid_hypergroup(4)
        prod = product_hypergroup(h1, h2)
        expected = np.kron(jewett_haar(h1).w, jewett_haar(h2).w)
        np.testing.assert_allclose(jewett_haar(prod).w, expected, atol=1e-12)
