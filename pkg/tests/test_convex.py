import math

import numpy as np
import pytest

from limspace import convex as C
from limspace import sampling as S
from limspace.duals import ExtendedMeasureFunctional
from limspace.limcore import GridFunction, LimFunctionHalf
from limspace.measures import POS_INF, dirac, total_variation
from limspace.suites import z_reference


def peak(height=2.0, at=1.0, a=0.0):
    return LimFunctionHalf(GridFunction.hat(at - 1.0, at, at + 1.0, height), [a])


class TestSup:
    def test_constant(self):
        r = C.sup_functional(LimFunctionHalf.constant([1.5]))
        assert r.value == 1.5
        assert r.argmax == [0.0, POS_INF]

    def test_negative_core(self):
        # A compact core returns to 0 at its last knot, which ties with infinity.
        x = LimFunctionHalf(GridFunction([0.0, 2.0, 3.0], [[-1.0], [-0.5], [0.0]]), [0.0])
        r = C.sup_functional(x)
        assert r.value == 0.0
        assert POS_INF in r.argmax
        assert all(t == 3.0 or t == POS_INF for t in r.argmax)

    def test_interior_peak(self):
        assert C.sup_functional(peak()) == (2.0, [1.0])

    def test_jump_left_limit_counts(self):
        x = LimFunctionHalf(GridFunction([0.0, 1.0, 1.0, 2.0], [[0.0], [3.0], [1.0], [0.0]]), [0.0])
        assert C.sup_functional(x).value == 3.0

    def test_vector_rejected(self):
        with pytest.raises(ValueError):
            C.sup_functional(LimFunctionHalf.constant([1.0, 2.0]))


class TestExtremePoints:
    def test_zero_function(self):
        x = LimFunctionHalf(GridFunction([0.0, 1.0, 2.0], [[0.0], [0.0], [0.0]]), [0.0])
        pts = C.subdifferential_extreme_points(x)
        assert [float(e.mu_tilde.locs[0]) for e in pts] == [0.0, 1.0, 2.0, POS_INF]
        assert all(total_variation(e.mu_tilde) == 1.0 for e in pts)

    def test_two_peaks(self):
        x = LimFunctionHalf(GridFunction.hat(0.0, 1.0, 2.0, 2.0) + GridFunction.hat(3.0, 4.0, 5.0, 2.0), [0.0])
        locs = [float(e.mu_tilde.locs[0]) for e in C.subdifferential_extreme_points(x)]
        assert locs == [1.0, 4.0]

    def test_subgradient_inequality_random(self):
        rng = np.random.default_rng(0)
        x = LimFunctionHalf(GridFunction([0.0, 1.0, 2.0, 3.0], [[-1.0], [0.0], [-1.0], [0.0]]), [1.0])
        pts = C.subdifferential_extreme_points(x)
        assert [float(e.mu_tilde.locs[0]) for e in pts] == [1.0, 3.0, POS_INF]
        for _ in range(1000):
            y = S.random_half(rng)
            assert all(C.subgradient_check(e, x, y) for e in pts)

    def test_x_equals_y(self):
        x = peak()
        assert C.subgradient_check(C.subdifferential_extreme_points(x)[0], x, x)


class TestCounterexample:
    def test_finite_point(self):
        x = peak()
        y = C.find_subgradient_counterexample(2.0, x)
        assert y is not None
        assert not C.subgradient_check(ExtendedMeasureFunctional(dirac(2.0)), x, y)

    def test_infinity(self):
        x = peak()
        y = C.find_subgradient_counterexample(POS_INF, x)
        assert y is not None
        assert not C.subgradient_check(ExtendedMeasureFunctional(dirac(POS_INF)), x, y)

    def test_maximizer_has_none(self):
        assert C.find_subgradient_counterexample(1.0, peak()) is None


class TestCone:
    def test_constant(self):
        assert C.cone_interior_margin(LimFunctionHalf.constant([-1.0])) == 1.0

    def test_boundary(self):
        x = LimFunctionHalf(GridFunction([0.0, 2.0], [[-1.0], [0.0]]), [0.0])
        assert C.cone_interior_margin(x) == 0.0

    def test_perturbation_stays_inside(self):
        x = LimFunctionHalf.constant([-1.0])
        bump = LimFunctionHalf(GridFunction.hat(1.0, 2.0, 3.0, 0.5), [0.0])
        assert C.cone_interior_margin(x + bump) == 0.5


def test_degeneracy_check():
    res = C.degeneracy_check(z_reference, np.linspace(0.0, 500.0, 1001))
    assert res["c0"]["mu_is_zero"]
    assert res["clim"]["mu_is_delta_inf"]
    assert res["clim"]["total_variation"] == 1.0


def test_degeneracy_requires_negative():
    with pytest.raises(ValueError):
        C.degeneracy_check(lambda t: np.zeros_like(t), [0.0, 1.0])


def test_argmax_tolerance_is_small():
    assert C.ARGMAX_TOL < 1e-6 and not math.isnan(C.ARGMAX_TOL)
