import math
from fractions import Fraction

import numpy as np
import pytest

from concrete_geom import (
    BoundaryPoint,
    DimMismatch,
    DomainError,
    LogRatioPoint,
    NonFiniteIntegrand,
    NonPositiveEntry,
    QuadratureConfig,
    SimplexPoint,
    UnsupportedDim,
    alr_forward,
    alr_inverse,
    closure,
    integrate_simplex,
    perturb,
    power,
)


def random_point(rng, k):
    return closure(rng.uniform(0.05, 1.0, size=k))


class TestClosure:
    def test_proportionality(self):
        x = closure([2.0, 3.0, 5.0])
        np.testing.assert_allclose(x.components, [0.2, 0.3, 0.5], rtol=1e-15)

    def test_symmetry(self):
        np.testing.assert_array_equal(closure([1.0, 1.0]).components, [0.5, 0.5])

    def test_tiny_entries(self):
        # Ratio-preserving rescale must survive entries near the underflow
        # threshold; the exact answer comes from rational arithmetic.
        x = closure([1e-300, 1e-300])
        exact = [Fraction(1, 2), Fraction(1, 2)]
        assert [Fraction(v) for v in x.components] == exact

        y = closure([3e-300, 1e-300])
        assert abs(y.components[0] - 0.75) < 1e-15

    def test_idempotent_exactly(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            x = closure(rng.uniform(1e-3, 10.0, size=rng.integers(2, 6)))
            y = closure(x.components)
            np.testing.assert_array_equal(x.components, y.components)

    def test_rejects_bad_input(self):
        with pytest.raises(NonPositiveEntry):
            closure([1.0, 0.0])
        with pytest.raises(NonPositiveEntry):
            closure([1.0, -2.0])
        with pytest.raises(NonPositiveEntry):
            closure([1.0, math.inf])
        with pytest.raises(DomainError):
            closure([1.0])


class TestSimplexPoint:
    def test_unit_sum_tolerance(self):
        SimplexPoint(np.array([0.5, 0.5 + 5e-13]))
        with pytest.raises(DomainError):
            SimplexPoint(np.array([0.5, 0.6]))

    def test_boundary_rejected(self):
        with pytest.raises(BoundaryPoint):
            SimplexPoint(np.array([1e-320, 1.0]))

    def test_sum_is_exactly_one(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            x = closure(rng.uniform(0.01, 1.0, size=4))
            assert float(np.sum(x.components)) == 1.0


class TestAitchisonOperators:
    def test_perturb_identity(self):
        rng = np.random.default_rng(2)
        for k in (2, 3, 5):
            x = random_point(rng, k)
            e = SimplexPoint.uniform(k)
            np.testing.assert_allclose(
                perturb(x, e).components, x.components, atol=1e-12
            )

    def test_perturb_inverse_pair(self):
        out = perturb(SimplexPoint(np.array([0.2, 0.8])), SimplexPoint(np.array([0.8, 0.2])))
        np.testing.assert_allclose(out.components, [0.5, 0.5], atol=1e-15)

    def test_perturb_hand_example(self):
        out = perturb(
            SimplexPoint(np.array([0.2, 0.3, 0.5])),
            SimplexPoint(np.array([0.5, 0.3, 0.2])),
        )
        np.testing.assert_allclose(out.components, [10 / 29, 9 / 29, 10 / 29], atol=1e-15)

    def test_perturb_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            perturb(SimplexPoint.uniform(2), SimplexPoint.uniform(3))

    def test_power_examples(self):
        x = SimplexPoint(np.array([0.2, 0.8]))
        np.testing.assert_allclose(power(1.0, x).components, x.components, atol=1e-15)
        np.testing.assert_allclose(power(0.0, x).components, [0.5, 0.5], atol=1e-15)
        np.testing.assert_allclose(power(2.0, x).components, [1 / 17, 16 / 17], atol=1e-15)

    def test_vector_space_laws(self):
        rng = np.random.default_rng(3)
        for k in (2, 3, 4):
            for _ in range(50):
                x, y, z = (random_point(rng, k) for _ in range(3))
                a, b = rng.uniform(-3, 3, size=2)

                np.testing.assert_allclose(
                    perturb(x, y).components, perturb(y, x).components, atol=1e-12
                )
                np.testing.assert_allclose(
                    perturb(perturb(x, y), z).components,
                    perturb(x, perturb(y, z)).components,
                    atol=1e-12,
                )
                np.testing.assert_allclose(
                    perturb(x, power(-1.0, x)).components,
                    SimplexPoint.uniform(k).components,
                    atol=1e-12,
                )
                np.testing.assert_allclose(
                    power(a, perturb(x, y)).components,
                    perturb(power(a, x), power(a, y)).components,
                    atol=1e-12,
                )
                np.testing.assert_allclose(
                    power(a + b, x).components,
                    perturb(power(a, x), power(b, x)).components,
                    atol=1e-12,
                )


class TestAlr:
    def test_examples(self):
        np.testing.assert_allclose(
            alr_forward(SimplexPoint(np.array([0.5, 0.5]))).coords, [0.0], atol=1e-15
        )
        e = math.e
        pt = SimplexPoint(np.array([e / (1 + e), 1 / (1 + e)]))
        np.testing.assert_allclose(alr_forward(pt).coords, [1.0], atol=1e-14)

    def test_round_trip(self):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            k = int(rng.integers(2, 6))
            x = random_point(rng, k)
            back = alr_inverse(alr_forward(x))
            np.testing.assert_allclose(back.components, x.components, atol=1e-12)

    def test_inverse_is_softmax(self):
        y = LogRatioPoint(np.array([1.0, -0.5]))
        x = alr_inverse(y)
        z = np.exp([1.0, -0.5, 0.0])
        np.testing.assert_allclose(x.components, z / z.sum(), atol=1e-15)


class TestIntegrateSimplex:
    def test_constant_k2(self):
        assert abs(integrate_simplex(lambda x: 1.0, 2) - 1.0) < 1e-9

    def test_constant_k3(self):
        assert abs(integrate_simplex(lambda x: 1.0, 3) - 0.5) < 1e-9

    def test_change_of_variables_against_fillup(self):
        # K = 2: direct Gauss-Legendre in the fill-up coordinate x1.
        def f(x):
            return x.components[0] ** 2 + math.sin(x.components[0])

        nodes, weights = np.polynomial.legendre.leggauss(200)
        t = 0.5 * (nodes + 1.0)
        direct = 0.5 * float(
            np.sum(weights * (t**2 + np.sin(t)))
        )
        alr = integrate_simplex(f, 2)
        assert abs(alr - direct) < 1e-8

    def test_monte_carlo_fallback(self):
        cfg = QuadratureConfig(mc_samples=400_000, mc_seed=5)
        est = integrate_simplex(lambda x: 1.0, 4, cfg)
        assert abs(est - 1.0 / 6.0) < 1e-12  # constant: exact up to volume factor

        est2 = integrate_simplex(lambda x: float(np.sum(x.components**2)), 4, cfg)
        # E[sum X_i^2] under uniform Dirichlet(1,..,1): K * 2/(K(K+1)) = 2/(K+1)
        assert abs(est2 - (2.0 / 5.0) / 6.0) < 1e-3

    def test_deterministic_high_k_rejected(self):
        with pytest.raises(UnsupportedDim):
            integrate_simplex(lambda x: 1.0, 4, mode="deterministic")

    def test_non_finite_integrand(self):
        with pytest.raises(NonFiniteIntegrand):
            integrate_simplex(lambda x: math.nan, 2)
