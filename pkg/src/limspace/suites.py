"""Seeded property suites behind ``limspace verify``.

Every property is tracked by a :class:`Check` that records the largest
observed error and the first instance exceeding the tolerance.  Each suite
draws from its own generator seeded by ``(seed, suite index)``, so results
do not depend on which other suites run or in which order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import convex as C
from . import duals as D
from . import hilbert as H
from . import sampling as S
from . import serialize as Z
from .limcore import (
    GridFunction,
    LimFunctionHalf,
    LimSequence,
    check_lambda_limit,
    check_norm_equivalence,
    core_lp_norm,
    degenerate_perturbation,
    join_line,
    split_line,
    sup_norm,
    vector_norm,
    x_norm,
)
from .measures import (
    SignedMeasure,
    StepFunction,
    decompactify,
    integrate,
    integrate_function,
    jordan_decompose,
    pushforward_compactify,
    total_variation,
)

__all__ = [
    "SUITES",
    "Check",
    "PropertyResult",
    "run_suite",
    "run_suites",
    "degeneracy_table",
    "z_reference",
]

SUITES = ("norms", "riesz-half", "riesz-line", "lebesgue", "sequence", "sobolev", "hilbert", "convex")

EXPONENTS = (1.0, 1.5, 2.0, 3.0, math.inf)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    max_error: float
    checked: int
    tolerance: float
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "checked": self.checked,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "detail": self.detail,
        }


class Check:
    """Running record of one property: ``error <= tol`` must hold on every instance."""

    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.max_error = 0.0
        self.checked = 0
        self.witness = None
        self.detail: dict = {}

    def observe(self, error: float, witness: Callable[[], dict] | None = None) -> None:
        error = float(error)
        self.checked += 1
        if not error <= self.max_error:
            self.max_error = error
        if not error <= self.tol and self.witness is None:
            self.witness = {"instance": self.checked - 1, "error": error}
            if witness is not None:
                self.witness.update(witness())

    def result(self) -> PropertyResult:
        passed = self.witness is None and self.checked > 0
        return PropertyResult(self.name, passed, self.max_error, self.checked, self.tol, self.witness, self.detail)


class _Context:
    def __init__(self, seed: int, index: int, count: int, inject: bool):
        self.rng = np.random.default_rng([seed, index])
        self.count = count
        self.inject = inject
        self.checks: list[Check] = []

    def check(self, name: str, tol: float) -> Check:
        # Failure injection flips the sign of the first tolerance; no error is below it.
        if self.inject and not self.checks:
            tol = -abs(tol) - 1.0
        c = Check(name, tol)
        self.checks.append(c)
        return c


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _excess(lhs: float, rhs: float) -> float:
    """How far ``lhs <= rhs`` fails, relative to the scale of ``rhs``."""
    return max(0.0, lhs - rhs) / max(1.0, abs(rhs))


def _fn(x) -> dict:
    return Z.function_to_dict(x)


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def _suite_norms(ctx: _Context) -> None:
    rng = ctx.rng
    equiv = ctx.check("norm_equivalence_ratio_in_[1,3]", 1e-12)
    sup_lim = ctx.check("sup_norm_dominates_limit", 0.0)
    lam = ctx.check("lambda_limit_monotone_and_vanishing", 1e-12)
    plain = ctx.check("split_join_plain_roundtrip", 0.0)
    cont = ctx.check("split_join_continuous_roundtrip", 1e-13)
    tight = ctx.check("tightness_witness_ratio_3", 0.0)
    ratios = []
    for _ in range(ctx.count):
        x = S.random_half(rng, int(rng.integers(1, 4)))
        ne = check_norm_equivalence(x)
        ratios.append(ne.ratio)
        equiv.observe(max(0.0, 1.0 - ne.ratio, ne.ratio - 3.0), lambda: {"x": _fn(x), "ratio": ne.ratio})
        sup_lim.observe(max(0.0, vector_norm(x.limit) - ne.sup), lambda: {"x": _fn(x)})

        b, v, a = x.core.breaks, x.core.values + x.limit, x.limit
        T = float(b[-1])
        eps = float(rng.uniform(0.05, 2.0))
        Ns = np.sort(rng.uniform(0.0, T, 3))
        m = [check_lambda_limit(b, v, a, eps, float(N)) for N in Ns] + [check_lambda_limit(b, v, a, eps, T)]
        lam.observe(max(0.0, *np.diff(m), abs(m[-1])), lambda: {"x": _fn(x), "eps": eps, "measures": m})

        y = S.random_line(rng, x.dim, continuous=bool(rng.integers(0, 2)))
        y1, y2 = split_line(y)
        back = join_line(y1, y2)
        k = np.union1d(y.knots(), back.knots())
        err = max(
            float(np.abs(back.right(k) - y.right(k)).max()),
            float(np.abs(back.left(k) - y.left(k)).max()),
            float(np.abs(back.limit_neg - y.limit_neg).max()),
            float(np.abs(back.limit_pos - y.limit_pos).max()),
        )
        plain.observe(err, lambda: {"x": _fn(y)})
        if y.is_continuous(1e-12):
            c1, c2 = split_line(y, continuous=True)
            back = join_line(c1, c2, x_at_0=y(0.0), continuous=True)
            err = max(
                float(np.abs(back.right(k) - y.right(k)).max()),
                float(np.abs(back.left(k) - y.left(k)).max()),
            )
            cont.observe(err / max(1.0, sup_norm(y)), lambda: {"x": _fn(y)})
    w = LimFunctionHalf(GridFunction([0.0, 2.0], [[-2.0], [0.0]]), [1.0])
    tight.observe(abs(check_norm_equivalence(w).ratio - 3.0), lambda: {"x": _fn(w)})
    equiv.detail = {"max_ratio": max(ratios), "min_ratio": min(ratios)}


# ---------------------------------------------------------------------------
# Riesz representation on the half-line
# ---------------------------------------------------------------------------

def _measure_functional(rng, dim: int) -> D.MeasureFunctional:
    return D.MeasureFunctional(S.random_measure(rng, "half", dim), rng.standard_normal(dim))


def _suite_riesz_half(ctx: _Context) -> None:
    rng = ctx.rng
    consist = ctx.check("pair_measure_equals_pair_extended", 1e-12)
    rt = ctx.check("from_extended_to_extended_identity", 1e-12)
    bil = ctx.check("bilinearity", 1e-12)
    alpha = ctx.check("alpha_recovered_from_constants", 1e-12)
    tvb = ctx.check("total_variation_bound", 1e-12)
    jordan = ctx.check("jordan_total_variation_additive", 1e-12)
    comp = ctx.check("pushforward_pairing_invariance_atoms", 1e-12)
    for _ in range(ctx.count):
        dim = int(rng.integers(1, 4))
        f = _measure_functional(rng, dim)
        x, y = S.random_half(rng, dim), S.random_half(rng, dim)
        g = D.to_extended(f)
        p = D.pair_measure(f, x)
        consist.observe(abs(p - D.pair_extended(g, x)), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        h = D.from_extended(g)
        same_atoms = h.mu.locs.size == f.mu.locs.size and np.array_equal(h.mu.locs, f.mu.locs)
        err = float(np.abs(h.alpha - f.alpha).max())
        if same_atoms:
            err = max(err, float(np.abs(h.mu.weights - f.mu.weights).max(initial=0.0)))
        else:
            err = math.inf
        if (h.mu.density is None) != (f.mu.density is None):
            err = math.inf
        rt.observe(err, lambda: {"f": Z.functional_to_dict(f)})

        s, t = rng.standard_normal(2)
        lhs = D.pair_measure(f, x * s + y * t)
        rhs = s * p + t * D.pair_measure(f, y)
        f2 = _measure_functional(rng, dim)
        sum_f = D.MeasureFunctional(f.mu * s + f2.mu * t, f.alpha * s + f2.alpha * t)
        lhs2 = D.pair_measure(sum_f, x)
        rhs2 = s * p + t * D.pair_measure(f2, x)
        bil.observe(max(_rel(lhs, rhs), _rel(lhs2, rhs2)), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        rec = D.recover_alpha(lambda z: D.pair_measure(f, z), dim)
        alpha.observe(float(np.abs(rec - f.alpha).max()), lambda: {"f": Z.functional_to_dict(f)})

        bound = total_variation(g.mu_tilde) * sup_norm(x)
        tvb.observe(_excess(abs(D.pair_extended(g, x)), bound), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        mu = S.random_measure(rng, "half", 1, at_infinity=bool(rng.integers(0, 2)))
        plus, minus = jordan_decompose(mu)
        tv = total_variation(mu)
        err = _rel(tv, total_variation(plus) + total_variation(minus))
        if not (np.all(plus.weights >= 0) and np.all(minus.weights >= 0)):
            err = math.inf
        jordan.observe(err, lambda: {"mu": Z.measure_to_dict(mu)})

        atoms = S.random_measure(rng, "half", dim, density=False, atoms=int(rng.integers(1, 6)),
                                 at_infinity=bool(rng.integers(0, 2)))
        img = pushforward_compactify(atoms)
        a, b = integrate(atoms, x), integrate_function(img, decompactify(x))
        comp.observe(abs(a - b), lambda: {"mu": Z.measure_to_dict(atoms), "x": _fn(x)})


# ---------------------------------------------------------------------------
# the real line
# ---------------------------------------------------------------------------

def _suite_riesz_line(ctx: _Context) -> None:
    rng = ctx.rng
    meas = ctx.check("line_measure_assembly", 1e-12)
    dens = ctx.check("line_density_assembly", 1e-12)
    ext = ctx.check("line_pair_equals_pair_extended", 1e-12)
    cont = ctx.check("continuous_split_limits", 1e-12)
    for _ in range(ctx.count):
        dim = int(rng.integers(1, 3))
        x = S.random_line(rng, dim, continuous=True)
        mu1 = S.random_measure(rng, "half", dim)
        mu2 = S.random_measure(rng, "half", dim)
        alpha = rng.standard_normal(dim)
        halves = D.pair_line_measure_halves(mu1, mu2, alpha, x)
        f = D.assemble_line_measure(mu1, mu2, alpha)
        whole = D.pair_measure_line(f, x)
        meas.observe(abs(halves - whole), lambda: {
            "x": _fn(x), "mu1": Z.measure_to_dict(mu1), "mu2": Z.measure_to_dict(mu2), "alpha": alpha.tolist()})
        ext.observe(abs(whole - D.pair_extended(D.to_extended(f), x)), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        x1, x2 = split_line(x, continuous=True)
        err = max(float(np.abs(x1(0.0)).max()), float(np.abs(x2(0.0)).max()))
        cont.observe(err, lambda: {"x": _fn(x)})

        xp = S.random_line(rng, dim, continuous=False)
        T = 8.0
        y1, y2 = S.random_step(rng, 0.0, T, dim), S.random_step(rng, 0.0, T, dim)
        a1, a2 = rng.standard_normal(dim), rng.standard_normal(dim)
        q = float(rng.choice(EXPONENTS))
        halves = D.pair_line_density_halves(y1, y2, a1, a2, xp, q)
        whole = D.pair_density_line(D.assemble_line_density(y1, y2, a1, a2, q), xp)
        dens.observe(abs(halves - whole), lambda: {
            "x": _fn(xp), "y1": Z.step_to_dict(y1), "y2": Z.step_to_dict(y2), "alpha1": a1.tolist(), "alpha2": a2.tolist()})


# ---------------------------------------------------------------------------
# Lebesgue, sequence and Sobolev pairings
# ---------------------------------------------------------------------------

def _suite_lebesgue(ctx: _Context) -> None:
    rng = ctx.rng
    bil = ctx.check("bilinearity", 1e-12)
    hold = ctx.check("hoelder_bound", 1e-12)
    alpha = ctx.check("alpha_recovered_from_constants", 1e-12)
    for _ in range(ctx.count):
        p = float(rng.choice(EXPONENTS))
        q = D.conjugate_exponent(p)
        f = D.DensityFunctional(S.random_step(rng, 0.0, 8.0), rng.standard_normal(1), q)
        g = D.DensityFunctional(S.random_step(rng, 0.0, 8.0), rng.standard_normal(1), q)
        x, y = S.random_half(rng), S.random_half(rng)
        s, t = rng.standard_normal(2)
        px = D.pair_density(f, x)
        e1 = _rel(D.pair_density(f, x * s + y * t), s * px + t * D.pair_density(f, y))
        fg = D.DensityFunctional(f.y * s + g.y * t, f.alpha * s + g.alpha * t, q)
        e2 = _rel(D.pair_density(fg, x), s * px + t * D.pair_density(g, x))
        bil.observe(max(e1, e2), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        bound = f.y.lq_norm(q) * core_lp_norm(x.core, p) + vector_norm(f.alpha) * vector_norm(x.limit)
        hold.observe(_excess(abs(px), bound), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x), "p": p})

        rec = D.recover_alpha(lambda z: D.pair_density(f, z), 1)
        alpha.observe(float(np.abs(rec - f.alpha).max()), lambda: {"f": Z.functional_to_dict(f)})


def _suite_sequence(ctx: _Context) -> None:
    rng = ctx.rng
    worked = ctx.check("worked_example_equals_-2", 0.0)
    bil = ctx.check("bilinearity", 1e-12)
    hold = ctx.check("hoelder_bound", 1e-12)
    pc1 = ctx.check("oracle_p_composite_1_equals_max_formula", 0.0)
    mx = ctx.check("oracle_max_equals_sum_formula", 0.0)
    cert = ctx.check("oracle_polyhedral_certified", 0.0)

    f = D.SequenceFunctional([0.0, 1.0, 2.0], -1.0)
    x = LimSequence([1.0, -1.0, 0.5], 2.0)
    worked.observe(abs(D.pair_sequence(f, x) - (-2.0)), lambda: {"value": D.pair_sequence(f, x)})

    for _ in range(ctx.count):
        n = int(rng.integers(1, 9))
        f = D.SequenceFunctional(rng.standard_normal(n), rng.standard_normal())
        g = D.SequenceFunctional(rng.standard_normal(n), rng.standard_normal())
        x, y = S.random_sequence(rng, n), S.random_sequence(rng, n)
        s, t = rng.standard_normal(2)
        px = D.pair_sequence(f, x)
        xy = LimSequence(x.head * s + y.head * t, x.limit * s + y.limit * t)
        e1 = _rel(D.pair_sequence(f, xy), s * px + t * D.pair_sequence(f, y))
        fg = D.SequenceFunctional(f.y * s + g.y * t, f.alpha * s + g.alpha * t)
        e2 = _rel(D.pair_sequence(fg, x), s * px + t * D.pair_sequence(g, x))
        bil.observe(max(e1, e2), lambda: {"f": Z.functional_to_dict(f), "x": Z.sequence_to_dict(x)})

        p = float(rng.choice(EXPONENTS))
        q = D.conjugate_exponent(p)
        bound = float(np.linalg.norm(f.y, q) * np.linalg.norm(x.head, p)) + abs(f.alpha) * abs(x.limit)
        hold.observe(_excess(abs(px), bound), lambda: {"f": Z.functional_to_dict(f), "x": Z.sequence_to_dict(x), "p": p})

    mismatches = 0
    audits = min(ctx.count, 100)
    for _ in range(audits):
        n = int(rng.integers(1, 9))
        f = D.SequenceFunctional(rng.standard_normal(n), rng.standard_normal())
        ynorm, a = float(np.abs(f.y).max()), abs(f.alpha)
        r1 = D.dual_norm_oracle(f, "p", 1.0)
        pc1.observe(abs(r1.value - max(ynorm, a)), lambda: {"f": Z.functional_to_dict(f), "oracle": r1.value})
        rm = D.dual_norm_oracle(f, "max", 1.0)
        mx.observe(abs(rm.value - (ynorm + a)), lambda: {"f": Z.functional_to_dict(f), "oracle": rm.value})
        cert.observe(0.0 if (r1.certified and rm.certified) else 1.0, lambda: {"f": Z.functional_to_dict(f)})
        if abs(r1.value - (ynorm + a)) > 1e-9:
            mismatches += 1
    pc1.detail = {
        "audited": audits,
        "sum_formula_mismatches_under_p_composite_1": mismatches,
    }


def _suite_sobolev(ctx: _Context) -> None:
    rng = ctx.rng
    bil = ctx.check("bilinearity", 1e-12)
    hold = ctx.check("hoelder_bound", 1e-12)
    red = ctx.check("reduces_to_density_pairing_when_y1_zero", 1e-12)
    parts = ctx.check("constant_y1_integrates_by_parts", 1e-12)
    for _ in range(ctx.count):
        p = float(rng.choice(EXPONENTS))
        q = D.conjugate_exponent(p)
        f = D.SobolevFunctional(S.random_step(rng, 0.0, 8.0), S.random_step(rng, 0.0, 8.0), rng.standard_normal(1))
        x, y = S.random_half(rng), S.random_half(rng)
        s, t = rng.standard_normal(2)
        px = D.pair_sobolev(f, x)
        bil.observe(_rel(D.pair_sobolev(f, x * s + y * t), s * px + t * D.pair_sobolev(f, y)),
                    lambda: {"f": Z.functional_to_dict(f), "x": _fn(x)})

        dx = D.derivative(x.core)
        dnorm = dx.lq_norm(p) if dx is not None else 0.0
        bound = (f.y0.lq_norm(q) * core_lp_norm(x.core, p) + f.y1.lq_norm(q) * dnorm
                 + vector_norm(f.alpha) * vector_norm(x.limit))
        hold.observe(_excess(abs(px), bound), lambda: {"f": Z.functional_to_dict(f), "x": _fn(x), "p": p})

        g = D.SobolevFunctional(f.y0, None, f.alpha)
        red.observe(abs(D.pair_sobolev(g, x) - D.pair_density(D.DensityFunctional(f.y0, f.alpha), x)),
                    lambda: {"f": Z.functional_to_dict(g), "x": _fn(x)})

        c = float(rng.standard_normal())
        h = D.SobolevFunctional(None, StepFunction([0.0, 8.0], [[c]]), [0.0])
        expected = -c * float(x.core(0.0)[0])
        parts.observe(abs(D.pair_sobolev(h, x) - expected), lambda: {"x": _fn(x), "c": c})


# ---------------------------------------------------------------------------
# Hilbert structure
# ---------------------------------------------------------------------------

def _suite_hilbert(ctx: _Context) -> None:
    rng = ctx.rng
    gram = ctx.check("gram_matrix_identity_through_J10", 0.0)
    norm = ctx.check("inner_product_matches_L2lim_norm", 1e-12)
    cs = ctx.check("cauchy_schwarz", 1e-12)
    pars = ctx.check("parseval_relative_gap_J12", 1e-3)
    mono = ctx.check("parseval_gap_nonincreasing_in_J", 1e-12)
    T = 8.0
    worst = 0.0
    for J in range(11):
        G = H.gram_matrix(J, T)
        worst = max(worst, float(np.abs(G - np.eye(G.shape[0])).max()))
    gram.observe(worst)
    for _ in range(ctx.count):
        dim = int(rng.integers(1, 3))
        x, y = S.random_half(rng, dim), S.random_half(rng, dim)
        xx = H.inner_product(x, x)
        norm.observe(abs(xx - x_norm(x, 2.0, "L") ** 2), lambda: {"x": _fn(x)})
        xy, yy = H.inner_product(x, y), H.inner_product(y, y)
        cs.observe(_excess(xy * xy, xx * yy), lambda: {"x": _fn(x), "y": _fn(y)})
    rel = []
    for _ in range(min(ctx.count, 50)):
        x = S.random_hat_half(rng, T)
        r = H.parseval_check(x, 12, T)
        rg = r.gap / max(r.lhs, 1e-300)
        rel.append(rg)
        pars.observe(rg, lambda: {"x": _fn(x), "lhs": r.lhs, "rhs": r.rhs, "gap": r.gap})
        gaps = [H.parseval_check(x, J, T).gap for J in (2, 4, 6, 8)]
        mono.observe(max(0.0, *np.diff(gaps)) / max(1.0, r.lhs), lambda: {"x": _fn(x), "gaps": gaps})
    pars.detail = {"max_relative_gap": max(rel) if rel else 0.0}


# ---------------------------------------------------------------------------
# convex analysis
# ---------------------------------------------------------------------------

def z_reference(t):
    """``z(t) = -1 / (1 + t)``, strictly negative and vanishing at infinity."""
    return -1.0 / (1.0 + np.asarray(t, dtype=float))


def _tied_half(rng) -> LimFunctionHalf:
    """Scalar function with small integer values so that the maximum is often tied."""
    k = int(rng.integers(1, 6))
    pts = np.concatenate([[0.0], np.sort(rng.choice(np.arange(1, 9), k, replace=False)).astype(float)])
    vals = rng.integers(-2, 2, pts.size).astype(float)
    a = float(rng.integers(-2, 2))
    vals = vals - a
    vals[-1] = 0.0
    return LimFunctionHalf(GridFunction(pts, vals[:, None]), [a])


def _suite_convex(ctx: _Context) -> None:
    rng = ctx.rng
    tv = ctx.check("extreme_points_total_variation_1", 0.0)
    sub = ctx.check("extreme_points_subgradient_inequality", 1e-12)
    comb = ctx.check("convex_combinations_subgradient_inequality", 1e-12)
    counter = ctx.check("non_maximizers_have_counterexample", 0.0)
    degen = ctx.check("degeneracy_c0_zero_vs_clim_delta_inf", 0.0)
    table = ctx.check("degeneracy_table_closed_form", 0.0)
    points = 0
    for _ in range(max(1, ctx.count // 100)):
        x = _tied_half(rng)
        ext = C.subdifferential_extreme_points(x)
        points += len(ext)
        for e in ext:
            tv.observe(abs(total_variation(e.mu_tilde) - 1.0), lambda: {"x": _fn(x), "loc": float(e.mu_tilde.locs[0])})
        w = rng.dirichlet(np.ones(len(ext)))
        mix = SignedMeasure.from_atoms("half", [(float(e.mu_tilde.locs[0]), wi) for e, wi in zip(ext, w)])
        mixed = D.ExtendedMeasureFunctional(mix)
        fx = C.sup_functional(x).value
        for _ in range(100):
            y = S.random_half(rng)
            fy = C.sup_functional(y).value
            for e in ext:
                gap = fx + D.pair_extended(e, y - x) - fy
                sub.observe(max(0.0, gap), lambda: {"x": _fn(x), "y": _fn(y), "loc": float(e.mu_tilde.locs[0])})
            gap = fx + D.pair_extended(mixed, y - x) - fy
            comb.observe(max(0.0, gap), lambda: {"x": _fn(x), "y": _fn(y)})
        argmax = set(C.sup_functional(x).argmax)
        for s in [float(t) for t in x.knots()] + [math.inf]:
            if s not in argmax:
                cx = C.find_subgradient_counterexample(s, x)
                counter.observe(0.0 if cx is not None else 1.0, lambda: {"x": _fn(x), "s": s})
    tv.detail = {"extreme_points": points}

    res = C.degeneracy_check(z_reference, np.linspace(0.0, 1000.0, 2001))
    ok = res["c0"]["mu_is_zero"] and res["clim"]["mu_is_delta_inf"]
    degen.observe(0.0 if ok else 1.0, lambda: {"result": res})
    degen.detail = res

    rows = degeneracy_table(20)
    err = max(max(r["sup_dist_error"], r["witness_error"], 0.0 if r["witness"] > 0 else 1.0) for r in rows)
    decreasing = all(a["sup_dist"] > b["sup_dist"] for a, b in zip(rows, rows[1:]))
    table.observe(err if decreasing else max(err, 1.0), lambda: {"rows": rows})


# ---------------------------------------------------------------------------
# degeneracy table
# ---------------------------------------------------------------------------

def degeneracy_table(n_max: int) -> list[dict]:
    """Rows ``(n, sup_dist, witness)`` for ``z(t) = -1/(1+t)``.

    ``sup_dist`` is measured on a grid of ``[2n-1, 2n+1]`` containing ``2n``;
    the closed forms are ``2|z(2n)| = 2/(1+2n)`` and ``z_n(2n) = 1/(1+2n)``.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = []
    for n in range(1, n_max + 1):
        pert = degenerate_perturbation(z_reference, n)
        t = np.linspace(2 * n - 1, 2 * n + 1, 2001)
        t[1000] = 2.0 * n
        sampled = float(np.max(np.abs(pert.z_n(t) - z_reference(t))))
        closed = 2.0 / (1.0 + 2.0 * n)
        rows.append({
            "n": n,
            "sup_dist": sampled,
            "witness": pert.witness,
            "sup_dist_closed_form": closed,
            "witness_closed_form": 1.0 / (1.0 + 2.0 * n),
            "sup_dist_error": abs(sampled - closed) / closed,
            "witness_error": abs(pert.witness - 1.0 / (1.0 + 2.0 * n)) * (1.0 + 2.0 * n),
        })
    return rows


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

_RUNNERS = {
    "norms": _suite_norms,
    "riesz-half": _suite_riesz_half,
    "riesz-line": _suite_riesz_line,
    "lebesgue": _suite_lebesgue,
    "sequence": _suite_sequence,
    "sobolev": _suite_sobolev,
    "hilbert": _suite_hilbert,
    "convex": _suite_convex,
}


def run_suite(name: str, seed: int = 0, count: int = 1000, inject: bool = False) -> dict:
    """Run one suite; the report lists properties sorted by name."""
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    if count < 1:
        raise ValueError("count must be positive")
    ctx = _Context(seed, SUITES.index(name), count, inject)
    start = time.perf_counter()
    _RUNNERS[name](ctx)
    elapsed = time.perf_counter() - start
    props = sorted((c.result() for c in ctx.checks), key=lambda r: r.name)
    return {
        "suite": name,
        "seed": seed,
        "count": count,
        "passed": all(p.passed for p in props),
        "properties": [p.to_dict() for p in props],
        "seconds": elapsed,
    }


def run_suites(names, seed: int = 0, count: int = 1000, inject: bool = False) -> dict:
    """Run several suites; failure injection only touches the first one."""
    names = sorted(set(names), key=SUITES.index)
    reports = [run_suite(n, seed, count, inject and i == 0) for i, n in enumerate(names)]
    return {
        "seed": seed,
        "count": count,
        "passed": all(r["passed"] for r in reports),
        "suites": sorted(reports, key=lambda r: r["suite"]),
    }
