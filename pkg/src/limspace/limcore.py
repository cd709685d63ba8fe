"""Functions and sequences converging at infinity.

A half-line element is stored as ``x(t) = core(t) + a`` where the core is a
compactly supported piecewise-linear function and ``a`` is the limit vector.
A line element carries two limits, ``x(t) = core(t) + a1`` for ``t < 0`` and
``core(t) + a2`` for ``t >= 0``.  Because the step sits at ``t = 0`` the core
may itself jump there; a jump is encoded by repeating a breakpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate as _integrate

__all__ = [
    "GridFunction",
    "LimFunctionHalf",
    "LimFunctionLine",
    "LimSequence",
    "NormEquivalence",
    "Perturbation",
    "vector_norm",
    "integrate_product",
    "integrate_linear",
    "core_lp_norm",
    "sup_norm",
    "x_norm",
    "check_norm_equivalence",
    "split_line",
    "join_line",
    "check_lambda_limit",
    "degenerate_perturbation",
]


def vector_norm(v) -> float:
    return float(np.linalg.norm(np.asarray(v, dtype=float)))


def _as_matrix(values, rows: int | None = None) -> np.ndarray:
    v = np.array(values, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1, 1)
    elif v.ndim == 1:
        v = v[:, None]
    if rows is not None and v.shape[0] != rows:
        raise ValueError(f"expected {rows} rows of values, got {v.shape[0]}")
    return v


def _as_vector(a, dim: int | None = None) -> np.ndarray:
    v = np.atleast_1d(np.array(a, dtype=float))
    if v.ndim != 1:
        raise ValueError("limit must be a vector")
    if dim is not None and v.size != dim:
        raise ValueError(f"limit has dimension {v.size}, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("limit must be finite")
    v.setflags(write=False)
    return v


def _from_sides(pts: np.ndarray, left: np.ndarray, right: np.ndarray) -> "GridFunction":
    """Assemble a GridFunction from one-sided limits at sorted distinct points.

    The left limit at the first point is the implicit zero outside the support
    and is dropped.
    """
    breaks = [pts[0]]
    values = [right[0]]
    for t, lv, rv in zip(pts[1:], left[1:], right[1:]):
        if np.array_equal(lv, rv):
            breaks.append(t)
            values.append(rv)
        else:
            breaks.extend((t, t))
            values.extend((lv, rv))
    return GridFunction(np.array(breaks), np.array(values))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Compactly supported piecewise-linear vector function.

    ``breaks`` is nondecreasing; a breakpoint listed twice marks a jump, the
    first value being the left limit and the second the value.  The function
    is zero outside ``[breaks[0], breaks[-1]]`` and ``values[-1]`` must vanish.
    """

    breaks: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.array(self.breaks, dtype=float).reshape(-1)
        v = _as_matrix(self.values, b.size)
        if b.size == 0:
            raise ValueError("a GridFunction needs at least one breakpoint")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(v))):
            raise ValueError("breakpoints and values must be finite")
        d = np.diff(b)
        if np.any(d < 0):
            raise ValueError("breakpoints must be nondecreasing")
        if np.any((d[:-1] == 0) & (d[1:] == 0)):
            raise ValueError("a breakpoint may appear at most twice")
        if np.any(v[-1] != 0):
            raise ValueError("value at the last breakpoint must be zero (compact support)")
        b.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, dim: int = 1, at: float = 0.0) -> "GridFunction":
        return cls(np.array([at]), np.zeros((1, dim)))

    @classmethod
    def hat(cls, left: float, peak: float, right: float, height=1.0) -> "GridFunction":
        h = np.atleast_1d(np.asarray(height, dtype=float))
        z = np.zeros_like(h)
        if left == peak:
            return cls([peak, right], [h, z])
        return cls([left, peak, right], [z, h, z])

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def knots(self) -> np.ndarray:
        return np.unique(self.breaks)

    def right(self, t) -> np.ndarray:
        """Right-continuous values at the points ``t``; shape ``(len(t), dim)``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        b, v = self.breaks, self.values
        out = np.zeros((t.size, self.dim))
        inside = (t >= b[0]) & (t < b[-1])
        if np.any(inside):
            ti = t[inside]
            i = np.searchsorted(b, ti, side="right") - 1
            w = ((ti - b[i]) / (b[i + 1] - b[i]))[:, None]
            out[inside] = (1.0 - w) * v[i] + w * v[i + 1]
        return out

    def left(self, t) -> np.ndarray:
        """Left limits at the points ``t``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        b, v = self.breaks, self.values
        out = np.zeros((t.size, self.dim))
        inside = (t > b[0]) & (t <= b[-1])
        if np.any(inside):
            ti = t[inside]
            i = np.searchsorted(b, ti, side="left")
            w = ((ti - b[i - 1]) / (b[i] - b[i - 1]))[:, None]
            out[inside] = (1.0 - w) * v[i - 1] + w * v[i]
        return out

    def __call__(self, t: float) -> np.ndarray:
        return self.right([t])[0]

    def pieces(self):
        """Linear pieces as ``(l, r, value_at_l, value_at_r)`` arrays."""
        b, v = self.breaks, self.values
        keep = np.diff(b) > 0
        return b[:-1][keep], b[1:][keep], v[:-1][keep], v[1:][keep]

    def slopes(self):
        l, r, vl, vr = self.pieces()
        return l, r, (vr - vl) / (r - l)[:, None]

    def has_jumps(self) -> bool:
        """True when some repeated breakpoint carries two different values."""
        b, v = self.breaks, self.values
        return any(not np.array_equal(v[i], v[i + 1]) for i in np.flatnonzero(np.diff(b) == 0))

    def support(self) -> tuple[float, float]:
        return float(self.breaks[0]), float(self.breaks[-1])

    def _combine(self, other: "GridFunction", op) -> "GridFunction":
        pts = np.union1d(self.breaks, other.breaks)
        left = op(self.left(pts), other.left(pts))
        right = op(self.right(pts), other.right(pts))
        return _from_sides(pts, left, right)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self._combine(other, np.add)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self._combine(other, np.subtract)

    def __mul__(self, c: float) -> "GridFunction":
        return GridFunction(self.breaks, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return self * -1.0


@dataclass(frozen=True, eq=False)
class LimFunctionHalf:
    """``x(t) = core(t) + limit`` on ``[0, inf)``; evaluation at ``inf`` gives the limit.

    A core whose first breakpoint lies right of 0 is padded with a zero node at 0.
    """

    core: GridFunction
    limit: np.ndarray

    def __post_init__(self):
        b0 = self.core.breaks[0]
        if b0 < 0.0:
            raise ValueError("a half-line core must live on [0, inf)")
        if b0 > 0.0:
            pts = np.concatenate([[0.0], self.core.knots()])
            object.__setattr__(self, "core", _from_sides(pts, self.core.left(pts), self.core.right(pts)))
        object.__setattr__(self, "limit", _as_vector(self.limit, self.core.dim))

    @classmethod
    def constant(cls, a) -> "LimFunctionHalf":
        a = _as_vector(a)
        return cls(GridFunction.zero(a.size), a)

    @property
    def dim(self) -> int:
        return self.core.dim

    def knots(self) -> np.ndarray:
        return self.core.knots()

    def right(self, t) -> np.ndarray:
        return self.core.right(t) + self.limit

    def left(self, t) -> np.ndarray:
        return self.core.left(t) + self.limit

    def __call__(self, t: float) -> np.ndarray:
        if t == math.inf:
            return np.array(self.limit)
        if t < 0:
            raise ValueError("half-line function evaluated at a negative point")
        return self.right([t])[0]

    def shifted(self) -> "LimFunctionHalf":
        """``x - x(inf)``, the core as an element of the same space."""
        return LimFunctionHalf(self.core, np.zeros(self.dim))

    def __add__(self, other: "LimFunctionHalf") -> "LimFunctionHalf":
        return LimFunctionHalf(self.core + other.core, self.limit + other.limit)

    def __sub__(self, other: "LimFunctionHalf") -> "LimFunctionHalf":
        return LimFunctionHalf(self.core - other.core, self.limit - other.limit)

    def __mul__(self, c: float) -> "LimFunctionHalf":
        return LimFunctionHalf(self.core * c, self.limit * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "LimFunctionHalf":
        return self * -1.0


@dataclass(frozen=True, eq=False)
class LimFunctionLine:
    """``x(t) = core(t) + limit_neg`` for ``t < 0`` and ``core(t) + limit_pos`` for ``t >= 0``."""

    core: GridFunction
    limit_neg: np.ndarray
    limit_pos: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "limit_neg", _as_vector(self.limit_neg, self.core.dim))
        object.__setattr__(self, "limit_pos", _as_vector(self.limit_pos, self.core.dim))

    @property
    def dim(self) -> int:
        return self.core.dim

    def knots(self) -> np.ndarray:
        return np.union1d(self.core.knots(), [0.0])

    def right(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        step = np.where((t < 0)[:, None], self.limit_neg, self.limit_pos)
        return self.core.right(t) + step

    def left(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        step = np.where((t <= 0)[:, None], self.limit_neg, self.limit_pos)
        return self.core.left(t) + step

    def __call__(self, t: float) -> np.ndarray:
        if t == math.inf:
            return np.array(self.limit_pos)
        if t == -math.inf:
            return np.array(self.limit_neg)
        return self.right([t])[0]

    def jump_sizes(self) -> np.ndarray:
        k = self.knots()
        return np.linalg.norm(self.right(k) - self.left(k), axis=1)

    def is_continuous(self, tol: float = 0.0) -> bool:
        """True when no knot (including the switch point 0) carries a jump."""
        return bool(np.all(self.jump_sizes() <= tol))

    def __add__(self, other: "LimFunctionLine") -> "LimFunctionLine":
        return LimFunctionLine(
            self.core + other.core,
            self.limit_neg + other.limit_neg,
            self.limit_pos + other.limit_pos,
        )

    def __sub__(self, other: "LimFunctionLine") -> "LimFunctionLine":
        return self + other * -1.0

    def __mul__(self, c: float) -> "LimFunctionLine":
        c = float(c)
        return LimFunctionLine(self.core * c, self.limit_neg * c, self.limit_pos * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class LimSequence:
    """``x_n = head_n + limit`` with ``head_n = 0`` beyond the stored head."""

    head: np.ndarray
    limit: float

    def __post_init__(self):
        h = np.array(self.head, dtype=float).reshape(-1)
        if not np.all(np.isfinite(h)) or not math.isfinite(self.limit):
            raise ValueError("sequence entries must be finite")
        h.setflags(write=False)
        object.__setattr__(self, "head", h)
        object.__setattr__(self, "limit", float(self.limit))

    def terms(self, count: int) -> np.ndarray:
        out = np.full(count, self.limit)
        k = min(count, self.head.size)
        out[:k] += self.head[:k]
        return out

    def lp_norm(self, p: float = 2.0) -> float:
        return x_norm_parts(_lp(self.head, p), abs(self.limit), p)


def _lp(v: np.ndarray, p: float) -> float:
    v = np.abs(np.asarray(v, dtype=float))
    if v.size == 0:
        return 0.0
    if p == math.inf:
        return float(v.max())
    return float(np.sum(v**p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# exact quadrature of piecewise-linear products
# ---------------------------------------------------------------------------

def _segment_points(funcs, lo: float, hi: float) -> np.ndarray:
    pts = [np.array([lo, hi])]
    for f in funcs:
        k = f.knots()
        pts.append(k[(k > lo) & (k < hi)])
    return np.unique(np.concatenate(pts))


def integrate_product(f, g, lo: float, hi: float) -> float:
    """Exact ``int_lo^hi <f(t), g(t)> dt`` for piecewise-linear ``f`` and ``g``.

    Both arguments expose ``knots()``, ``left(t)`` and ``right(t)``; step
    functions qualify as linear pieces of slope zero.
    """
    if hi <= lo:
        return 0.0
    pts = _segment_points((f, g), lo, hi)
    a, b = pts[:-1], pts[1:]
    fa, fb = f.right(a), f.left(b)
    ga, gb = g.right(a), g.left(b)
    terms = 2 * fa * ga + fa * gb + fb * ga + 2 * fb * gb
    return float(np.sum((b - a) / 6.0 * terms.sum(axis=1)))


def integrate_linear(f, lo: float, hi: float) -> np.ndarray:
    """Exact vector integral of a piecewise-linear ``f`` over ``[lo, hi]``."""
    if hi <= lo:
        return np.zeros(f.dim)
    pts = _segment_points((f,), lo, hi)
    a, b = pts[:-1], pts[1:]
    return np.sum(((b - a) / 2.0)[:, None] * (f.right(a) + f.left(b)), axis=0)


def _abs_power_integral(u: float, w: float, h: float, p: float) -> float:
    """``int_0^h |u + (w - u) s / h|^p ds`` in closed form."""
    au, aw = abs(u), abs(w)
    if u * w < 0:
        z = h * au / (au + aw)
        return (z * au**p + (h - z) * aw**p) / (p + 1)
    if au == aw:
        return h * au**p
    return h * (aw ** (p + 1) - au ** (p + 1)) / ((p + 1) * (aw - au))


def core_lp_norm(g: GridFunction, p: float) -> float:
    """L_p norm of a core with the Euclidean norm on R^n.

    Scalar cores and ``p = 2`` use closed forms; vector cores with ``p != 2``
    fall back to adaptive quadrature on each linear piece (abs. tol 1e-13).
    """
    if p < 1:
        raise ValueError("norm exponent must be at least 1")
    if p == math.inf:
        return float(np.max(np.linalg.norm(g.values, axis=1)))
    l, r, vl, vr = g.pieces()
    if l.size == 0:
        return 0.0
    h = r - l
    if p == 2:
        s = np.sum(h / 3.0 * np.sum(vl * vl + vl * vr + vr * vr, axis=1))
        return float(math.sqrt(max(s, 0.0)))
    if g.dim == 1:
        s = sum(_abs_power_integral(u, w, hh, p) for u, w, hh in zip(vl[:, 0], vr[:, 0], h))
        return float(s ** (1.0 / p))
    s = 0.0
    for u, w, hh in zip(vl, vr, h):
        val, _ = _integrate.quad(
            lambda s_: np.linalg.norm(u + (w - u) * s_) ** p, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13
        )
        s += hh * val
    return float(s ** (1.0 / p))


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def sup_norm(x) -> float:
    """Sup norm over the closed half-line or line, including the limits.

    The Euclidean norm is convex, so the supremum of a piecewise-linear
    function is reached at a knot (as a one-sided value) or at infinity.
    """
    if isinstance(x, LimFunctionHalf):
        at_knots = np.linalg.norm(x.core.values + x.limit, axis=1).max()
        return float(max(at_knots, vector_norm(x.limit)))
    k = x.knots()
    vals = np.vstack([x.left(k), x.right(k), x.limit_neg, x.limit_pos])
    return float(np.linalg.norm(vals, axis=1).max())


def x_norm_parts(core: float, lim: float, p) -> float:
    if p == "sum":
        return core + lim
    if p == "max":
        return max(core, lim)
    p = float(p)
    if p < 1:
        raise ValueError("norm exponent must be at least 1")
    if p == math.inf:
        return max(core, lim)
    return (core**p + lim**p) ** (1.0 / p)


def x_norm(x: LimFunctionHalf, p=2.0, flavor: str = "C", core_p: float | None = None) -> float:
    """Composite norm combining the core norm and ``|a|``.

    ``p`` is a number ``>= 1`` (p-composite), ``"sum"`` or ``"max"``.  The
    core norm is the sup norm for ``flavor="C"`` and the L_p norm for
    ``flavor="L"``, with exponent ``core_p`` (default ``p``).
    """
    if not isinstance(p, str) and float(p) < 1:
        raise ValueError("norm exponent must be at least 1")
    if flavor == "C":
        core = core_lp_norm(x.core, math.inf)
    elif flavor == "L":
        if core_p is None:
            if isinstance(p, str):
                raise ValueError("L flavor with a sum/max composite needs core_p")
            core_p = float(p)
        core = core_lp_norm(x.core, core_p)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return x_norm_parts(core, vector_norm(x.limit), p)


class NormEquivalence(NamedTuple):
    sup: float
    composite: float
    ratio: float

    @property
    def holds(self) -> bool:
        return 1.0 - 1e-12 <= self.ratio <= 3.0 + 1e-12


def check_norm_equivalence(x: LimFunctionHalf) -> NormEquivalence:
    """Compare ``||x||_inf`` with ``||x0||_inf + |a|``; the ratio lies in [1, 3]."""
    s = sup_norm(x)
    c = x_norm(x, "sum", "C")
    ratio = 1.0 if s == 0.0 and c == 0.0 else c / s
    return NormEquivalence(s, c, ratio)


# ---------------------------------------------------------------------------
# splitting between the line and two half-lines
# ---------------------------------------------------------------------------

def _reflect_negative(core: GridFunction) -> GridFunction:
    """Core of ``t -> core(-t)`` restricted to ``t >= 0``."""
    k = np.union1d(core.knots(), [0.0])
    neg = k[k <= 0]
    s = -neg[::-1]
    return _from_sides(s, core.right(-s), core.left(-s))


def _positive_part(core: GridFunction) -> GridFunction:
    k = np.union1d(core.knots(), [0.0])
    pos = k[k >= 0]
    return _from_sides(pos, core.left(pos), core.right(pos))


def split_line(x: LimFunctionLine, continuous: bool = False):
    """Split ``x`` into ``(x(-t), x(t))`` on the half-line.

    With ``continuous=True`` both halves are shifted by ``-x(0)``.  The
    reflected half takes its value at 0 from the left limit ``x(0-)``.
    """
    core1 = _reflect_negative(x.core)
    core2 = _positive_part(x.core)
    a1, a2 = x.limit_neg, x.limit_pos
    if continuous:
        x0 = x(0.0)
        a1, a2 = a1 - x0, a2 - x0
    return LimFunctionHalf(core1, a1), LimFunctionHalf(core2, a2)


def join_line(
    x1: LimFunctionHalf, x2: LimFunctionHalf, x_at_0=None, continuous: bool = False, tol: float = 1e-12
) -> LimFunctionLine:
    """Inverse of :func:`split_line`.

    The continuous variant needs ``x1(0) = x2(0) = 0`` (up to ``tol`` times
    the scale of ``x(0)``, absorbing the rounding of the shift) and the value
    ``x(0)`` that was subtracted; the plain variant ignores ``x_at_0``.
    """
    if continuous:
        if x_at_0 is None:
            raise ValueError("continuous join needs x_at_0")
        x0 = _as_vector(x_at_0, x1.dim)
        bound = tol * max(1.0, vector_norm(x0), vector_norm(x1.limit), vector_norm(x2.limit))
        if vector_norm(x1(0.0)) > bound or vector_norm(x2(0.0)) > bound:
            raise ValueError("continuous join requires x1(0) = x2(0) = 0")
        a1, a2 = x1.limit + x0, x2.limit + x0
    else:
        a1, a2 = x1.limit, x2.limit
    c1, c2 = x1.core, x2.core
    s = c1.knots()
    neg = -s[::-1]
    pos = c2.knots()
    pts = np.union1d(neg, pos)
    left = np.empty((pts.size, c1.dim))
    right = np.empty_like(left)
    m = pts < 0
    left[m], right[m] = c1.right(-pts[m]), c1.left(-pts[m])
    m = pts > 0
    left[m], right[m] = c2.left(pts[m]), c2.right(pts[m])
    m = pts == 0
    left[m], right[m] = c1.right([0.0]), c2.right([0.0])
    return LimFunctionLine(_from_sides(pts, left, right), a1, a2)


# ---------------------------------------------------------------------------
# convergence in measure
# ---------------------------------------------------------------------------

def _violation_fraction(u: np.ndarray, w: np.ndarray, eps: float, s0: float, s1: float) -> float:
    """Length of ``{s in [s0, s1] : |u + s (w - u)| >= eps}``."""
    d = w - u
    A = float(d @ d)
    B = 2.0 * float(u @ d)
    C = float(u @ u) - eps * eps
    if A == 0.0:
        return s1 - s0 if C >= 0 else 0.0
    disc = B * B - 4 * A * C
    if disc <= 0:
        return s1 - s0
    sq = math.sqrt(disc)
    q = -0.5 * (B + math.copysign(sq, B))
    r1, r2 = sorted((q / A, C / q))
    inside = max(0.0, min(s1, r2) - max(s0, r1))
    return (s1 - s0) - inside


def check_lambda_limit(breaks, values, a, eps: float, N: float) -> float:
    """Lebesgue measure of ``{t in [N, T] : |x(t) - a| >= eps}``.

    ``(breaks, values)`` are raw samples of a piecewise-linear function on
    ``[breaks[0], T = breaks[-1]]``; each linear piece is resolved exactly by
    solving the quadratic ``|x(t) - a|^2 = eps^2``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    b = np.asarray(breaks, dtype=float).reshape(-1)
    v = _as_matrix(values, b.size) - _as_vector(a)
    if not (b[0] <= N <= b[-1]):
        raise ValueError("N must lie in the sampled interval")
    total = 0.0
    for i in range(b.size - 1):
        l, r = b[i], b[i + 1]
        if r <= N or r == l:
            continue
        s0 = max(0.0, (N - l) / (r - l))
        total += (r - l) * _violation_fraction(v[i], v[i + 1], eps, s0, 1.0)
    return total


# ---------------------------------------------------------------------------
# the C_0 perturbation
# ---------------------------------------------------------------------------

class Perturbation(NamedTuple):
    z_n: Callable
    sup_dist: float
    witness: float


def degenerate_perturbation(z: Callable, n: int) -> Perturbation:
    """Quadratic bump of height ``2|z(2n)|`` on ``[2n-1, 2n+1]`` added to ``z``.

    For a strictly negative ``z`` vanishing at infinity the perturbed function
    is positive at ``2n`` while its sup distance to ``z`` tends to zero.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    lo, mid, hi = 2 * n - 1, 2 * n, 2 * n + 1
    amp = 2.0 * abs(float(z(mid)))

    def z_n(t):
        t = np.asarray(t, dtype=float)
        bump = np.where((t >= lo) & (t <= hi), amp * (t - lo) * (hi - t), 0.0)
        return z(t) + bump

    return Perturbation(z_n, amp, float(z_n(float(mid))))
