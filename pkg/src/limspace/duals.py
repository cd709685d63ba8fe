"""Continuous linear functionals on spaces converging at infinity.

Every functional is a core part acting on ``x - x(inf)`` plus a vector
``alpha`` acting on the limit.  The measure form also has an equivalent
extended-measure form in which the limit part becomes an atom at infinity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize as _optimize

from .limcore import (
    GridFunction,
    LimFunctionHalf,
    LimFunctionLine,
    LimSequence,
    _as_vector,
    core_lp_norm,
    integrate_product,
    split_line,
    x_norm_parts,
)
from .measures import POS_INF, NEG_INF, SignedMeasure, StepFunction, dirac, integrate

__all__ = [
    "MeasureFunctional",
    "LineMeasureFunctional",
    "ExtendedMeasureFunctional",
    "DensityFunctional",
    "LineDensityFunctional",
    "SequenceFunctional",
    "SobolevFunctional",
    "OracleReport",
    "conjugate_exponent",
    "pair",
    "pair_measure",
    "pair_extended",
    "to_extended",
    "from_extended",
    "pair_measure_line",
    "assemble_line_measure",
    "pair_line_measure_halves",
    "pair_density",
    "pair_density_line",
    "assemble_line_density",
    "pair_line_density_halves",
    "pair_sequence",
    "pair_sobolev",
    "derivative",
    "recover_alpha",
    "dual_norm_oracle",
    "dual_norm_formulas",
]


def conjugate_exponent(p: float) -> float:
    """Hoelder conjugate ``q`` with ``1/p + 1/q = 1`` (``q = inf`` for ``p = 1``)."""
    p = float(p)
    if p < 1:
        raise ValueError("exponent must be at least 1")
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True, eq=False)
class MeasureFunctional:
    """``x -> int <x - x(inf), dmu> + alpha^T x(inf)`` on the half-line."""

    mu: SignedMeasure
    alpha: np.ndarray

    def __post_init__(self):
        if self.mu.domain == "line" or np.any(np.isinf(self.mu.locs)):
            raise ValueError("the measure part lives on [0, inf) without atoms at infinity")
        object.__setattr__(self, "mu", self.mu.as_domain("half"))
        object.__setattr__(self, "alpha", _as_vector(self.alpha, self.mu.dim))

    @property
    def dim(self) -> int:
        return self.mu.dim


@dataclass(frozen=True, eq=False)
class LineMeasureFunctional:
    """``x -> int <x, dmu> + alpha_neg^T x(-inf) + alpha_pos^T x(inf)``."""

    mu: SignedMeasure
    alpha_neg: np.ndarray
    alpha_pos: np.ndarray

    def __post_init__(self):
        if np.any(np.isinf(self.mu.locs)):
            raise ValueError("the measure part has no atoms at infinity")
        object.__setattr__(self, "mu", self.mu.as_domain("line"))
        object.__setattr__(self, "alpha_neg", _as_vector(self.alpha_neg, self.mu.dim))
        object.__setattr__(self, "alpha_pos", _as_vector(self.alpha_pos, self.mu.dim))

    @property
    def dim(self) -> int:
        return self.mu.dim


@dataclass(frozen=True, eq=False)
class ExtendedMeasureFunctional:
    """``x -> int <x, dmu_tilde>`` with atoms at the infinite points allowed."""

    mu_tilde: SignedMeasure

    def __post_init__(self):
        if self.mu_tilde.domain == "finite":
            object.__setattr__(self, "mu_tilde", self.mu_tilde.as_domain("half"))

    @property
    def dim(self) -> int:
        return self.mu_tilde.dim


@dataclass(frozen=True, eq=False)
class DensityFunctional:
    """``x -> int <y, x - x(inf)> dt + alpha^T x(inf)`` with ``y`` in L_q."""

    y: StepFunction
    alpha: np.ndarray
    q: float = math.inf

    def __post_init__(self):
        if self.y.breaks[0] < 0:
            raise ValueError("half-line density must live on [0, inf)")
        if self.q < 1:
            raise ValueError("q must be at least 1")
        object.__setattr__(self, "alpha", _as_vector(self.alpha, self.y.dim))

    @property
    def dim(self) -> int:
        return self.y.dim


@dataclass(frozen=True, eq=False)
class LineDensityFunctional:
    """``x -> int <y, x> dt + alpha_neg^T x(-inf) + alpha_pos^T x(inf)``."""

    y: StepFunction
    alpha_neg: np.ndarray
    alpha_pos: np.ndarray
    q: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "alpha_neg", _as_vector(self.alpha_neg, self.y.dim))
        object.__setattr__(self, "alpha_pos", _as_vector(self.alpha_pos, self.y.dim))

    @property
    def dim(self) -> int:
        return self.y.dim


@dataclass(frozen=True, eq=False)
class SequenceFunctional:
    """``x -> sum y_n (x_n - a) + alpha a``."""

    y: np.ndarray
    alpha: float

    def __post_init__(self):
        y = np.array(self.y, dtype=float).reshape(-1)
        y.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class SobolevFunctional:
    """``x -> int <y0, x - x(inf)> + <y1, x'> dt + alpha^T x(inf)``.

    Either density may be ``None`` (zero).
    """

    y0: StepFunction | None
    y1: StepFunction | None
    alpha: np.ndarray

    def __post_init__(self):
        dims = {y.dim for y in (self.y0, self.y1) if y is not None}
        alpha = _as_vector(self.alpha)
        if dims - {alpha.size}:
            raise ValueError("densities and alpha must share the dimension")
        object.__setattr__(self, "alpha", alpha)

    @property
    def dim(self) -> int:
        return self.alpha.size


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def pair_measure(f: MeasureFunctional, x: LimFunctionHalf) -> float:
    return math.fsum([integrate(f.mu, x.shifted()), float(f.alpha @ x.limit)])


def pair_extended(g: ExtendedMeasureFunctional, x) -> float:
    return integrate(g.mu_tilde, x)


def to_extended(f) -> ExtendedMeasureFunctional:
    """Move the limit part into atoms at infinity.

    On the half-line the atom at ``inf`` gets ``alpha - mu([0, inf))``; on the
    line ``alpha_neg`` and ``alpha_pos`` become the atoms at ``-inf``/``inf``.
    """
    if isinstance(f, LineMeasureFunctional):
        ends = SignedMeasure.from_atoms("line", [(NEG_INF, f.alpha_neg), (POS_INF, f.alpha_pos)])
        return ExtendedMeasureFunctional(f.mu + ends)
    nu_inf = f.alpha - f.mu.mass()
    mu_tilde = f.mu
    if np.any(nu_inf != 0):
        mu_tilde = mu_tilde + dirac(POS_INF, nu_inf)
    return ExtendedMeasureFunctional(mu_tilde)


def from_extended(g: ExtendedMeasureFunctional):
    """Inverse of :func:`to_extended`."""
    mt = g.mu_tilde
    if mt.domain == "line":
        return LineMeasureFunctional(mt.finite_part(), mt.atom_weight(NEG_INF), mt.atom_weight(POS_INF))
    return MeasureFunctional(mt.finite_part(), mt.mass())


def pair_measure_line(f: LineMeasureFunctional, x: LimFunctionLine) -> float:
    return math.fsum(
        [integrate(f.mu, x), float(f.alpha_neg @ x.limit_neg), float(f.alpha_pos @ x.limit_pos)]
    )


def assemble_line_measure(mu1: SignedMeasure, mu2: SignedMeasure, alpha) -> LineMeasureFunctional:
    """Line functional from the two half-line pieces of the splitting argument.

    ``mu1`` acts on ``x(-t) - x(-inf)``, ``mu2`` on ``x(t) - x(inf)`` and
    ``alpha`` on ``x(inf)``.  The reflected ``mu1`` and ``mu2`` add up; their
    masses move into the weights of the two limits.
    """
    alpha = _as_vector(alpha, mu2.dim)
    mu = mu1.reflect() + mu2.as_domain("line")
    return LineMeasureFunctional(mu, -mu1.mass(), alpha - mu2.mass())


def pair_line_measure_halves(mu1: SignedMeasure, mu2: SignedMeasure, alpha, x: LimFunctionLine) -> float:
    """Evaluate the split form directly on the continuous splitting of ``x``."""
    x1, x2 = split_line(x, continuous=True)
    zero = np.zeros(x.dim)
    return math.fsum(
        [
            pair_measure(MeasureFunctional(mu1, zero), x1),
            pair_measure(MeasureFunctional(mu2, zero), x2),
            float(_as_vector(alpha) @ x.limit_pos),
        ]
    )


def pair_density(f: DensityFunctional, x: LimFunctionHalf) -> float:
    lo, hi = f.y.support()
    return math.fsum([integrate_product(f.y, x.shifted(), lo, hi), float(f.alpha @ x.limit)])


def pair_density_line(f: LineDensityFunctional, x: LimFunctionLine) -> float:
    lo, hi = f.y.support()
    return math.fsum(
        [
            integrate_product(f.y, x, lo, hi),
            float(f.alpha_neg @ x.limit_neg),
            float(f.alpha_pos @ x.limit_pos),
        ]
    )


def assemble_line_density(y1: StepFunction, y2: StepFunction, alpha1, alpha2, q: float = math.inf) -> LineDensityFunctional:
    """``y(t) = y1(-t)`` for ``t < 0``, ``y2(t)`` for ``t > 0``; limit weights lose the masses."""
    y = y1.reflect() + y2
    return LineDensityFunctional(
        y,
        _as_vector(alpha1, y.dim) - y1.integral(),
        _as_vector(alpha2, y.dim) - y2.integral(),
        q,
    )


def pair_line_density_halves(y1, y2, alpha1, alpha2, x: LimFunctionLine, q: float = math.inf) -> float:
    """Sum of the two half-line density pairings on the plain splitting of ``x``."""
    x1, x2 = split_line(x)
    return math.fsum(
        [pair_density(DensityFunctional(y1, alpha1, q), x1), pair_density(DensityFunctional(y2, alpha2, q), x2)]
    )


def pair_sequence(f: SequenceFunctional, x: LimSequence) -> float:
    k = min(f.y.size, x.head.size)
    return math.fsum(list(f.y[:k] * x.head[:k]) + [f.alpha * x.limit])


def derivative(core: GridFunction) -> StepFunction | None:
    """Weak derivative of a continuous core as a step function."""
    if core.has_jumps():
        raise ValueError("core has jumps; its derivative is not a function")
    k = core.knots()
    if k.size < 2:
        return None
    _, _, slopes = core.slopes()
    return StepFunction(k, slopes)


def pair_sobolev(f: SobolevFunctional, x: LimFunctionHalf) -> float:
    terms = [float(f.alpha @ x.limit)]
    core = x.shifted()
    if f.y0 is not None:
        terms.append(integrate_product(f.y0, core, *f.y0.support()))
    if f.y1 is not None:
        dx = derivative(x.core)
        if dx is not None:
            lo = max(f.y1.support()[0], dx.support()[0])
            hi = min(f.y1.support()[1], dx.support()[1])
            terms.append(integrate_product(f.y1, dx, lo, hi))
    return math.fsum(terms)


def pair(f, x) -> float:
    """Dispatch to the pairing matching the functional's form."""
    if isinstance(f, MeasureFunctional):
        return pair_measure(f, x)
    if isinstance(f, LineMeasureFunctional):
        return pair_measure_line(f, x)
    if isinstance(f, ExtendedMeasureFunctional):
        return pair_extended(f, x)
    if isinstance(f, DensityFunctional):
        return pair_density(f, x)
    if isinstance(f, LineDensityFunctional):
        return pair_density_line(f, x)
    if isinstance(f, SequenceFunctional):
        return pair_sequence(f, x)
    if isinstance(f, SobolevFunctional):
        return pair_sobolev(f, x)
    raise TypeError(f"unknown functional {type(f).__name__}")


def recover_alpha(functional: Callable[[LimFunctionHalf], float], dim: int) -> np.ndarray:
    """Read ``alpha`` off a functional by evaluating it at the constant unit vectors."""
    return np.array([functional(LimFunctionHalf.constant(e)) for e in np.eye(dim)])


# ---------------------------------------------------------------------------
# dual-norm oracle
# ---------------------------------------------------------------------------

@dataclass
class OracleReport:
    value: float
    certified: bool
    witness: list
    restarts: int = 0
    gap: float | None = None

    def to_dict(self) -> dict:
        return {"value": self.value, "certified": self.certified, "witness": list(self.witness)}


@dataclass
class _CompositeNorm:
    """Norm on ``(v, a)`` with ``v`` the core coordinates and ``a`` a scalar limit."""

    core_value: Callable
    core_grad: Callable
    combine: str
    p: float
    core_vertices: Callable | None = None
    _fd_step: float = field(default=1e-7, repr=False)

    def parts(self, z):
        return self.core_value(z[:-1]), abs(z[-1])

    def value(self, z) -> float:
        c, a = self.parts(z)
        return x_norm_parts(c, a, self.combine if self.combine != "p" else self.p)

    def grad(self, z) -> np.ndarray:
        c, a = self.parts(z)
        gc = self.core_grad(z[:-1])
        ga = math.copysign(1.0, z[-1]) if z[-1] != 0 else 0.0
        if self.combine == "sum":
            wc, wa = 1.0, 1.0
        elif self.combine == "max":
            wc, wa = (1.0, 0.0) if c >= a else (0.0, 1.0)
        else:
            n = self.value(z)
            wc = (c / n) ** (self.p - 1) if c > 0 else 0.0
            wa = (a / n) ** (self.p - 1) if a > 0 else 0.0
        return np.append(wc * gc, wa * ga)

    def vertices(self) -> np.ndarray | None:
        if self.core_vertices is None:
            return None
        combine = self.combine
        if combine == "p" and self.p == 1:
            combine = "sum"
        elif combine == "p" and self.p == math.inf:
            combine = "max"
        if combine not in ("sum", "max"):
            return None
        core = self.core_vertices()
        if combine == "sum":
            core_part = np.hstack([core, np.zeros((len(core), 1))])
            lim_part = np.zeros((2, core.shape[1] + 1))
            lim_part[:, -1] = (1.0, -1.0)
            return np.vstack([core_part, lim_part])
        return np.vstack([np.hstack([core, np.full((len(core), 1), s)]) for s in (1.0, -1.0)])


def _lp_core(p: float, size: int):
    def value(v):
        v = np.abs(v)
        if v.size == 0:
            return 0.0
        if p == math.inf:
            return float(v.max())
        return float(np.sum(v**p) ** (1.0 / p))

    def grad(v):
        if v.size == 0:
            return v
        if p == math.inf:
            g = np.zeros_like(v)
            i = int(np.argmax(np.abs(v)))
            g[i] = math.copysign(1.0, v[i])
            return g
        if p == 1:
            return np.sign(v)
        n = value(v)
        if n == 0:
            return np.zeros_like(v)
        return np.sign(v) * (np.abs(v) / n) ** (p - 1)

    verts = None
    if p == 1:
        verts = np.vstack([np.eye(size), -np.eye(size)])
    elif p == math.inf:
        verts = np.array(list(itertools.product((1.0, -1.0), repeat=size)))
    return value, grad, (None if verts is None else lambda: verts)


def _core_norm(kind: str, p: float, size: int, grid=None):
    """Value, gradient and (for polyhedral balls) vertex generator of the core norm."""
    if kind == "sup":
        p = math.inf
        kind = "lp"
    if kind == "lp":
        return _lp_core(p, size)
    # L_p norm of the piecewise-linear core spanned by hats on ``grid``
    grid = np.asarray(grid, dtype=float)

    def build(v):
        return GridFunction(grid, np.append(v, 0.0))

    if p == 2:
        h = np.diff(grid)
        M = np.zeros((grid.size, grid.size))
        for i, hh in enumerate(h):
            M[i, i] += hh / 3
            M[i + 1, i + 1] += hh / 3
            M[i, i + 1] += hh / 6
            M[i + 1, i] += hh / 6
        M = M[:-1, :-1]

        def value(v):
            return float(math.sqrt(max(v @ M @ v, 0.0)))

        def grad(v):
            n = value(v)
            return M @ v / n if n > 0 else np.zeros_like(v)

        return value, grad, None

    def value(v):
        return core_lp_norm(build(v), p)

    def grad(v):
        g = np.empty_like(v)
        for i in range(v.size):
            e = np.zeros_like(v)
            e[i] = 1e-7
            g[i] = (value(v + e) - value(v - e)) / 2e-7
        return g

    return value, grad, None


def _hat_basis(grid: np.ndarray) -> list[GridFunction]:
    hats = []
    for i in range(grid.size - 1):
        left = grid[i - 1] if i > 0 else grid[0]
        hats.append(GridFunction.hat(left, grid[i], grid[i + 1]))
    return hats


def _coefficients(f, grid):
    """Coordinates of ``f`` on the truncated primal space: core slots then the limit slot."""
    if isinstance(f, SequenceFunctional):
        if f.y.size > 8:
            raise ValueError("sequence truncation is limited to 8 terms")
        return np.append(f.y, f.alpha)
    if isinstance(f, ExtendedMeasureFunctional):
        f = from_extended(f)
    if f.dim != 1:
        raise ValueError("the oracle handles scalar functionals only")
    if grid is None:
        raise ValueError("function functionals need a breakpoint grid")
    grid = np.asarray(grid, dtype=float)
    if grid.size > 8 or grid.size < 2 or grid[0] != 0.0:
        raise ValueError("grid must start at 0 and have 2 to 8 breakpoints")
    core = [pair(f, LimFunctionHalf(h, [0.0])) for h in _hat_basis(grid)]
    return np.append(core, pair(f, LimFunctionHalf.constant([1.0])))


def _composite(f, primal: str, p: float, flavor: str, grid) -> _CompositeNorm:
    if primal not in ("p", "sum", "max"):
        raise ValueError("primal norm must be 'p', 'sum' or 'max'")
    if p < 1:
        raise ValueError("exponent must be at least 1")
    if isinstance(f, SequenceFunctional):
        value, grad, verts = _core_norm("lp", p, f.y.size)
    elif flavor == "C":
        value, grad, verts = _core_norm("sup", p, len(grid) - 1)
    elif flavor == "L":
        value, grad, verts = _core_norm("pl", p, len(grid) - 1, grid)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return _CompositeNorm(value, grad, primal, float(p), verts)


def _ascend(c: np.ndarray, norm: _CompositeNorm, rng: np.random.Generator):
    """Maximize ``<c, z> / N(z)`` from a random start; returns the value and a unit-norm witness."""

    def objective(z):
        n = norm.value(z)
        if n == 0:
            return 0.0, np.zeros_like(z)
        v = float(c @ z)
        return -v / n, -(c / n - v * norm.grad(z) / (n * n))

    z0 = rng.standard_normal(c.size)
    res = _optimize.minimize(
        objective, z0 / norm.value(z0), jac=True, method="L-BFGS-B",
        options={"maxiter": 2000, "ftol": 1e-16, "gtol": 1e-13},
    )
    z = res.x / norm.value(res.x)
    return float(c @ z), z


def dual_norm_oracle(
    f,
    primal: str = "p",
    p: float = 1.0,
    *,
    grid=None,
    flavor: str = "C",
    restarts: int = 64,
    seed: int = 0,
) -> OracleReport:
    """Supremum of ``<f, x>`` over the unit ball of a truncated primal space.

    Sequence functionals act on heads of length ``len(y) <= 8``; function
    functionals act on piecewise-linear cores spanned by hats on ``grid``
    (at most 8 breakpoints) plus the constant.  ``primal`` picks the
    p-composite (``"p"``), ``"sum"`` or ``"max"`` combination of the core
    norm (l_p / sup / L_p per ``flavor``) with ``|a|``.

    Polyhedral balls are enumerated over their vertices, which certifies the
    value.  Otherwise a normalized gradient ascent with ``restarts`` random
    starts reports the best value found, a lower bound.
    """
    c = _coefficients(f, grid)
    norm = _composite(f, primal, p, flavor, grid)
    verts = norm.vertices()
    if verts is not None:
        vals = verts @ c
        i = int(np.argmax(vals))
        return OracleReport(float(vals[i]), True, verts[i].tolist(), 0, 0.0)
    rng = np.random.default_rng(seed)
    best, witness = -math.inf, None
    for _ in range(restarts):
        val, z = _ascend(c, norm, rng)
        if val > best:
            best, witness = val, z
    return OracleReport(float(best), False, witness.tolist(), restarts, None)


def dual_norm_formulas(f, primal: str = "p", p: float = 1.0, *, grid=None, flavor: str = "C", tol: float = 1e-9, **kw) -> dict:
    """Oracle value next to the sum formula and the q-composite formula.

    The core dual norm is the oracle value of ``f`` with its limit weight set
    to zero under the max combination, whose dual is the plain core dual norm.
    """
    report = dual_norm_oracle(f, primal, p, grid=grid, flavor=flavor, **kw)
    c = _coefficients(f, grid)
    alpha = abs(float(c[-1]))
    core_only = c.copy()
    core_only[-1] = 0.0
    norm = _composite(f, "max", p, flavor, grid)
    verts = norm.vertices()
    if verts is not None:
        core_dual = float(np.max(verts @ core_only))
    elif isinstance(f, SequenceFunctional):
        core_dual = float(np.linalg.norm(f.y, conjugate_exponent(p)))
    else:
        rng = np.random.default_rng(kw.get("seed", 0))
        core_dual = max(_ascend(core_only, norm, rng)[0] for _ in range(kw.get("restarts", 64)))
    q = conjugate_exponent(p)
    sum_formula = core_dual + alpha
    q_composite = max(core_dual, alpha) if q == math.inf else (core_dual**q + alpha**q) ** (1.0 / q)
    matches = [name for name, v in (("sum", sum_formula), ("q_composite", q_composite)) if abs(v - report.value) <= tol]
    return {
        "oracle": report.to_dict(),
        "core_dual_norm": core_dual,
        "alpha_norm": alpha,
        "sum_formula": sum_formula,
        "q_composite_formula": q_composite,
        "q": q,
        "matches": matches,
    }
