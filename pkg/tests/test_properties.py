"""Hypothesis-driven properties on hand-built instances."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from limspace import duals as D
from limspace.limcore import (
    GridFunction,
    LimFunctionHalf,
    check_norm_equivalence,
    integrate_product,
    sup_norm,
    x_norm,
)
from limspace.measures import (
    SignedMeasure,
    compactify,
    decompactify_point,
    integrate,
    jordan_decompose,
    total_variation,
)

small = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
loc = st.floats(0, 20, allow_nan=False, allow_infinity=False)


@st.composite
def cores(draw, max_knots=6):
    n = draw(st.integers(1, max_knots))
    gaps = draw(st.lists(st.floats(0.01, 3.0), min_size=n, max_size=n))
    pts = np.concatenate([[0.0], np.cumsum(gaps)])
    vals = draw(st.lists(small, min_size=n, max_size=n)) + [0.0]
    return GridFunction(pts, np.array(vals)[:, None])


@st.composite
def halves(draw):
    return LimFunctionHalf(draw(cores()), [draw(small)])


@st.composite
def atom_measures(draw, infinite=True):
    locs = draw(st.lists(loc | (st.just(math.inf) if infinite else loc), min_size=0, max_size=5))
    w = draw(st.lists(small, min_size=len(locs), max_size=len(locs)))
    return SignedMeasure.from_atoms("half", list(zip(locs, w)))


@settings(max_examples=200, deadline=None)
@given(halves())
def test_norm_equivalence(x):
    assert check_norm_equivalence(x).holds


@settings(max_examples=200, deadline=None)
@given(halves(), st.sampled_from([1.0, 1.5, 2.0, 4.0]))
def test_composite_ordering(x, p):
    mx, pc, sm = x_norm(x, "max", "C"), x_norm(x, p, "C"), x_norm(x, "sum", "C")
    assert mx <= pc * (1 + 1e-12) and pc <= sm * (1 + 1e-12)
    assert sup_norm(x) <= sm * (1 + 1e-12)


@settings(max_examples=100, deadline=None)
@given(cores(), cores(), small)
def test_integrate_product_bilinear(f, g, c):
    hi = max(f.support()[1], g.support()[1])
    lhs = integrate_product(f * c + g, g, 0.0, hi)
    rhs = c * integrate_product(f, g, 0.0, hi) + integrate_product(g, g, 0.0, hi)
    assert math.isclose(lhs, rhs, rel_tol=1e-11, abs_tol=1e-9)


@settings(max_examples=200, deadline=None)
@given(atom_measures(infinite=False), small)
def test_extended_consistency(mu, alpha):
    f = D.MeasureFunctional(mu, [alpha])
    x = LimFunctionHalf(GridFunction.hat(0.0, 1.0, 5.0, 3.0), [-2.0])
    assert abs(D.pair_measure(f, x) - D.pair_extended(D.to_extended(f), x)) <= 1e-12 * max(1.0, total_variation(mu) * 10)


@settings(max_examples=200, deadline=None)
@given(atom_measures())
def test_jordan(mu):
    plus, minus = jordan_decompose(mu)
    assert math.isclose(total_variation(plus) + total_variation(minus), total_variation(mu), rel_tol=1e-14, abs_tol=1e-14)
    x = LimFunctionHalf(GridFunction.hat(0.0, 2.0, 4.0, 1.0), [0.5])
    assert math.isclose(integrate(plus, x) - integrate(minus, x), integrate(mu, x), rel_tol=1e-12, abs_tol=1e-12)


@given(st.floats(0, 1e6, allow_nan=False))
def test_compactify_inverse(s):
    assert math.isclose(decompactify_point(compactify(s)), s, rel_tol=1e-9, abs_tol=1e-12)


@given(st.floats(0, 1e6), st.floats(0, 1e6))
def test_compactify_monotone(a, b):
    if a < b:
        assert compactify(a) <= compactify(b)
