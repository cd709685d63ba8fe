"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
verdicts at the end of the pytest run, and running this file directly prints
them as well.
"""

import math
import time

import numpy as np
import pytest

from limspace import convex as C
from limspace import duals as D
from limspace import hilbert as H
from limspace import sampling as S
from limspace.limcore import (
    GridFunction,
    LimFunctionHalf,
    LimSequence,
    check_norm_equivalence,
    core_lp_norm,
    vector_norm,
    x_norm,
)
from limspace.measures import decompactify, integrate, integrate_function, pushforward_compactify, total_variation
from limspace.suites import degeneracy_table, z_reference

N = 1000
RESULTS: dict[int, tuple[bool, str]] = {}


def record(k: int, ok: bool, msg: str) -> None:
    RESULTS[k] = (bool(ok), msg)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {msg}")
    assert ok, msg


def test_1_norm_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    ratios = [check_norm_equivalence(S.random_half(rng, int(rng.integers(1, 4)))).ratio for _ in range(N)]
    w = check_norm_equivalence(LimFunctionHalf(GridFunction([0.0, 2.0], [[-2.0], [0.0]]), [1.0]))
    elapsed = time.perf_counter() - start
    ok = 1.0 <= min(ratios) and max(ratios) <= 3.0 and w.ratio == 3.0 and elapsed < 1.0
    record(1, ok, f"{N} instances, ratio in [{min(ratios):.6f}, {max(ratios):.6f}], witness ratio {w.ratio!r}, {elapsed:.3f}s")


def test_2_riesz_consistency():
    rng = np.random.default_rng(2)
    err, ident = 0.0, True
    for _ in range(N):
        dim = int(rng.integers(1, 4))
        f = D.MeasureFunctional(S.random_measure(rng, "half", dim), rng.standard_normal(dim))
        x = S.random_half(rng, dim)
        g = D.to_extended(f)
        err = max(err, abs(D.pair_measure(f, x) - D.pair_extended(g, x)))
        h = D.from_extended(g)
        ident &= np.array_equal(h.mu.locs, f.mu.locs) and np.array_equal(h.mu.weights, f.mu.weights)
        ident &= (h.mu.density is None) == (f.mu.density is None)
        ident &= bool(np.allclose(h.alpha, f.alpha, rtol=0, atol=1e-12))
    record(2, err <= 1e-12 and ident, f"max |pair - pair_extended| = {err:.3e}, round trip identity {ident}")


def test_3_line_assembly():
    rng = np.random.default_rng(3)
    em = ed = 0.0
    for _ in range(N):
        dim = int(rng.integers(1, 3))
        x = S.random_line(rng, dim, continuous=True)
        mu1, mu2 = S.random_measure(rng, "half", dim), S.random_measure(rng, "half", dim)
        alpha = rng.standard_normal(dim)
        whole = D.pair_measure_line(D.assemble_line_measure(mu1, mu2, alpha), x)
        em = max(em, abs(D.pair_line_measure_halves(mu1, mu2, alpha, x) - whole))
        xp = S.random_line(rng, dim, continuous=False)
        y1, y2 = S.random_step(rng, 0.0, 8.0, dim), S.random_step(rng, 0.0, 8.0, dim)
        a1, a2 = rng.standard_normal(dim), rng.standard_normal(dim)
        whole = D.pair_density_line(D.assemble_line_density(y1, y2, a1, a2), xp)
        ed = max(ed, abs(D.pair_line_density_halves(y1, y2, a1, a2, xp) - whole))
    record(3, em <= 1e-12 and ed <= 1e-12, f"measure variant {em:.3e}, density variant {ed:.3e}")


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def test_4_lebesgue_sequence_sobolev():
    rng = np.random.default_rng(4)
    bil = hold = 0.0
    for _ in range(N):
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0, math.inf]))
        q = D.conjugate_exponent(p)
        x, y = S.random_half(rng), S.random_half(rng)
        s, t = rng.standard_normal(2)

        f = D.DensityFunctional(S.random_step(rng, 0.0, 8.0), rng.standard_normal(1), q)
        px = D.pair_density(f, x)
        bil = max(bil, _rel(D.pair_density(f, x * s + y * t), s * px + t * D.pair_density(f, y)))
        bound = f.y.lq_norm(q) * core_lp_norm(x.core, p) + vector_norm(f.alpha) * vector_norm(x.limit)
        hold = max(hold, (abs(px) - bound) / max(1.0, bound))

        g = D.SobolevFunctional(S.random_step(rng, 0.0, 8.0), S.random_step(rng, 0.0, 8.0), rng.standard_normal(1))
        px = D.pair_sobolev(g, x)
        bil = max(bil, _rel(D.pair_sobolev(g, x * s + y * t), s * px + t * D.pair_sobolev(g, y)))
        dx = D.derivative(x.core)
        bound = (g.y0.lq_norm(q) * core_lp_norm(x.core, p) + g.y1.lq_norm(q) * dx.lq_norm(p)
                 + vector_norm(g.alpha) * vector_norm(x.limit))
        hold = max(hold, (abs(px) - bound) / max(1.0, bound))

        n = int(rng.integers(1, 9))
        h = D.SequenceFunctional(rng.standard_normal(n), rng.standard_normal())
        u, v = S.random_sequence(rng, n), S.random_sequence(rng, n)
        pu = D.pair_sequence(h, u)
        uv = LimSequence(u.head * s + v.head * t, u.limit * s + v.limit * t)
        bil = max(bil, _rel(D.pair_sequence(h, uv), s * pu + t * D.pair_sequence(h, v)))
        bound = float(np.linalg.norm(h.y, q) * np.linalg.norm(u.head, p)) + abs(h.alpha * u.limit)
        hold = max(hold, (abs(pu) - bound) / max(1.0, bound))
    worked = D.pair_sequence(D.SequenceFunctional([0.0, 1.0, 2.0], -1.0), LimSequence([1.0, -1.0, 0.5], 2.0))
    ok = bil <= 1e-12 and hold <= 1e-12 and worked == -2.0
    record(4, ok, f"bilinearity {bil:.3e}, Hoelder excess {max(hold, 0.0):.3e}, worked example {worked!r}")


def test_5_dual_norm_audit():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    exact_p1 = exact_max = True
    mismatches = 0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        f = D.SequenceFunctional(rng.standard_normal(n), rng.standard_normal())
        ynorm, a = float(np.abs(f.y).max()), abs(f.alpha)
        r1 = D.dual_norm_oracle(f, "p", 1.0)
        rm = D.dual_norm_oracle(f, "max", 1.0)
        exact_p1 &= r1.certified and r1.value == max(ynorm, a)
        exact_max &= rm.certified and rm.value == ynorm + a
        mismatches += abs(r1.value - (ynorm + a)) > 1e-9
    elapsed = time.perf_counter() - start
    ok = exact_p1 and exact_max and elapsed < 10.0
    record(5, ok, f"P-COMPOSITE(1) = max formula exactly: {exact_p1}; MAX = sum formula exactly: {exact_max}; "
                  f"sum formula under P-COMPOSITE(1) mismatched in {mismatches}/100; {elapsed:.2f}s")


def test_6_hilbert():
    T = 8.0
    gram_exact = all(np.array_equal(H.gram_matrix(J, T), np.eye(2**J + 1)) for J in range(11))
    rng = np.random.default_rng(6)
    gap = max(
        (lambda r: r.gap / r.lhs)(H.parseval_check(S.random_hat_half(rng, T), 12, T)) for _ in range(50)
    )
    err = 0.0
    for _ in range(N):
        x = S.random_half(rng, int(rng.integers(1, 3)))
        err = max(err, abs(H.inner_product(x, x) - x_norm(x, 2.0, "L") ** 2))
    record(6, gram_exact and gap <= 1e-3 and err <= 1e-12,
           f"Gram identity through J=10: {gram_exact}; max Parseval relative gap at J=12: {gap:.3e}; "
           f"|<x,x> - ||x||^2| max {err:.3e}")


def test_7_convex():
    rng = np.random.default_rng(7)
    tv_ok = sub_ok = True
    checked = 0
    for _ in range(10):
        k = int(rng.integers(2, 6))
        pts = np.concatenate([[0.0], np.sort(rng.choice(np.arange(1, 9), k, replace=False)).astype(float)])
        vals = rng.integers(-2, 2, pts.size).astype(float)
        vals[-1] = 0.0
        x = LimFunctionHalf(GridFunction(pts, vals[:, None]), [float(rng.integers(-2, 2))])
        ext = C.subdifferential_extreme_points(x)
        tv_ok &= all(total_variation(e.mu_tilde) == 1.0 for e in ext)
        for _ in range(100):
            y = S.random_half(rng)
            sub_ok &= all(C.subgradient_check(e, x, y) for e in ext)
            checked += 1
    res = C.degeneracy_check(z_reference, np.linspace(0.0, 1000.0, 2001))
    degen = res["c0"]["mu_is_zero"] and res["clim"]["mu_is_delta_inf"]
    record(7, tv_ok and sub_ok and checked == N and degen,
           f"TV exactly 1: {tv_ok}; subgradient inequality on {checked} random y: {sub_ok}; "
           f"C0 mu=0: {res['c0']['mu_is_zero']}, C_lim mu=delta_inf: {res['clim']['mu_is_delta_inf']}")


def test_8_degeneracy_table():
    rows = degeneracy_table(50)
    eps = np.finfo(float).eps
    exact = all(abs(r["sup_dist"] - 2.0 * abs(float(z_reference(2.0 * r["n"])))) <= 2 * eps * r["sup_dist"] for r in rows)
    decreasing = all(a["sup_dist"] > b["sup_dist"] for a, b in zip(rows, rows[1:]))
    positive = all(r["witness"] > 0 for r in rows)
    far = degeneracy_table(5000)[-1]["sup_dist"]
    record(8, exact and decreasing and positive and far < 1e-3,
           f"sup_dist = 2|z(2n)| to machine precision: {exact}; strictly decreasing: {decreasing}; "
           f"sup_dist(n=5000) = {far:.3e}; witness positive: {positive}")


def test_9_compactification():
    rng = np.random.default_rng(9)
    err = 0.0
    for _ in range(N):
        dim = int(rng.integers(1, 3))
        mu = S.random_measure(rng, "half", dim, density=False, atoms=int(rng.integers(1, 6)),
                              at_infinity=bool(rng.integers(0, 2)))
        x = S.random_half(rng, dim)
        err = max(err, abs(integrate(mu, x) - integrate_function(pushforward_compactify(mu), decompactify(x))))
    record(9, err <= 1e-12, f"{N} atom-only measures, max pairing difference {err:.3e}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
