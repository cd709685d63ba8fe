"""Signed measures on the extended half-line and line.

A measure is a finite list of atoms, possibly sitting at ``-inf`` or ``+inf``,
plus a piecewise-constant density with compact support.  Integrals against
piecewise-linear functions are therefore exact.  Extended reals are plain
floats: ``math.inf`` and ``-math.inf`` stand for the two infinite points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate as _integrate

from .limcore import LimFunctionHalf, LimFunctionLine, _as_matrix, integrate_product

__all__ = [
    "POS_INF",
    "NEG_INF",
    "DOMAINS",
    "DomainMismatchError",
    "extended_real",
    "StepFunction",
    "SignedMeasure",
    "dirac",
    "total_variation",
    "jordan_decompose",
    "integrate",
    "integrate_function",
    "compactify",
    "decompactify_point",
    "decompactify",
    "pushforward_compactify",
]

POS_INF = math.inf
NEG_INF = -math.inf
DOMAINS = ("half", "line", "finite")


class DomainMismatchError(ValueError):
    """A measure and a function live on incompatible index sets."""


def extended_real(v) -> float:
    """Coerce a number or one of ``"inf"``, ``"+inf"``, ``"-inf"`` to a float."""
    if isinstance(v, str):
        key = v.strip().lower()
        if key in ("inf", "+inf", "infinity"):
            return POS_INF
        if key in ("-inf", "-infinity"):
            return NEG_INF
        raise ValueError(f"not an extended real: {v!r}")
    f = float(v)
    if math.isnan(f):
        raise ValueError("NaN is not an extended real")
    return f


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Piecewise-constant function: ``values[i]`` on ``[breaks[i], breaks[i+1])``, zero elsewhere."""

    breaks: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.array(self.breaks, dtype=float).reshape(-1)
        if b.size < 2:
            raise ValueError("a step function needs at least one cell")
        v = _as_matrix(self.values, b.size - 1)
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(v))):
            raise ValueError("density grid and values must be finite")
        if np.any(np.diff(b) <= 0):
            raise ValueError("density breakpoints must be strictly increasing")
        b.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breaks)

    def knots(self) -> np.ndarray:
        return self.breaks

    def support(self) -> tuple[float, float]:
        return float(self.breaks[0]), float(self.breaks[-1])

    def _lookup(self, t, side: str) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        i = np.searchsorted(self.breaks, t, side=side) - 1
        ok = (i >= 0) & (i < self.values.shape[0])
        out = np.zeros((t.size, self.dim))
        out[ok] = self.values[i[ok]]
        return out

    def right(self, t) -> np.ndarray:
        return self._lookup(t, "right")

    def left(self, t) -> np.ndarray:
        return self._lookup(t, "left")

    def __call__(self, t: float) -> np.ndarray:
        return self.right([t])[0]

    def integral(self) -> np.ndarray:
        return self.widths @ self.values

    def lq_norm(self, q: float) -> float:
        """L_q norm with the Euclidean norm on R^n; ``q = inf`` gives the essential sup."""
        pointwise = np.linalg.norm(self.values, axis=1)
        if q == math.inf:
            return float(pointwise.max())
        return float((self.widths @ pointwise**q) ** (1.0 / q))

    def map_values(self, fn) -> "StepFunction":
        return StepFunction(self.breaks, fn(self.values))

    def reflect(self) -> "StepFunction":
        """``t -> self(-t)`` (cells are half-open, so endpoints move sides)."""
        return StepFunction(-self.breaks[::-1], self.values[::-1])

    def restrict(self, lo: float, hi: float) -> "StepFunction | None":
        pts = np.union1d(self.breaks, [lo, hi])
        pts = pts[(pts >= lo) & (pts <= hi)]
        if pts.size < 2:
            return None
        return StepFunction(pts, self.right(pts[:-1]))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        pts = np.union1d(self.breaks, other.breaks)
        return StepFunction(pts, self.right(pts[:-1]) + other.right(pts[:-1]))

    def __mul__(self, c: float) -> "StepFunction":
        return StepFunction(self.breaks, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "StepFunction":
        return self * -1.0


def _merge_atoms(locs, weights, dim):
    locs = np.array([extended_real(t) for t in np.ravel(np.asarray(locs, dtype=object))], dtype=float)
    w = np.array(weights, dtype=float)
    if locs.size == 0:
        n = dim if dim is not None else (w.shape[1] if w.ndim == 2 else 1)
        return np.zeros(0), np.zeros((0, n))
    w = _as_matrix(w, locs.size)
    if not np.all(np.isfinite(w)):
        raise ValueError("atom weights must be finite")
    order = np.argsort(locs, kind="stable")
    locs, w = locs[order], w[order]
    uniq, start = np.unique(locs, return_index=True)
    if uniq.size == locs.size:
        return locs, w
    return uniq, np.add.reduceat(w, start, axis=0)


@dataclass(frozen=True, eq=False)
class SignedMeasure:
    """Atoms ``(locs[i], weights[i])`` plus an optional step-function density.

    ``domain`` is ``"half"`` for ``[0, inf]``, ``"line"`` for ``[-inf, inf]``
    and ``"finite"`` for a bounded subset of R.  Atoms at equal locations are
    merged on construction by summing their weights.
    """

    domain: str
    locs: np.ndarray
    weights: np.ndarray
    density: StepFunction | None = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"domain must be one of {DOMAINS}")
        dim = self.density.dim if self.density is not None else None
        locs, w = _merge_atoms(self.locs, self.weights, dim)
        if dim is not None and w.shape[1] != dim:
            raise ValueError("atoms and density must share the dimension")
        if self.domain == "half":
            if np.any(locs < 0):
                raise ValueError("half-line measure with an atom below 0")
            if self.density is not None and self.density.breaks[0] < 0:
                raise ValueError("half-line density must live on [0, inf)")
        if self.domain == "finite" and np.any(np.isinf(locs)):
            raise ValueError("finite-domain measure with an atom at infinity")
        locs.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "locs", locs)
        object.__setattr__(self, "weights", w)

    @classmethod
    def zero(cls, domain: str, dim: int = 1) -> "SignedMeasure":
        return cls(domain, np.zeros(0), np.zeros((0, dim)))

    @classmethod
    def from_atoms(cls, domain: str, atoms: Iterable, density: StepFunction | None = None, dim: int | None = None):
        atoms = list(atoms)
        if not atoms:
            d = dim if dim is not None else (density.dim if density is not None else 1)
            return cls(domain, np.zeros(0), np.zeros((0, d)), density)
        locs = [extended_real(t) for t, _ in atoms]
        w = np.array([np.atleast_1d(np.asarray(v, dtype=float)) for _, v in atoms])
        return cls(domain, np.array(locs), w, density)

    @property
    def dim(self) -> int:
        return self.weights.shape[1]

    def atoms(self):
        return list(zip(self.locs.tolist(), self.weights))

    def atom_weight(self, loc) -> np.ndarray:
        hit = self.locs == extended_real(loc)
        return self.weights[hit].sum(axis=0) if np.any(hit) else np.zeros(self.dim)

    def is_atomic(self) -> bool:
        return self.density is None

    def finite_part(self) -> "SignedMeasure":
        keep = np.isfinite(self.locs)
        return SignedMeasure(self.domain, self.locs[keep], self.weights[keep], self.density)

    def mass(self) -> np.ndarray:
        """Total signed mass per component, atoms at infinity included."""
        m = self.weights.sum(axis=0)
        if self.density is not None:
            m = m + self.density.integral()
        return m

    def as_domain(self, domain: str) -> "SignedMeasure":
        return SignedMeasure(domain, self.locs, self.weights, self.density)

    def reflect(self) -> "SignedMeasure":
        """Image under ``t -> -t``; the result lives on the line."""
        dens = self.density.reflect() if self.density is not None else None
        return SignedMeasure("line", -self.locs, self.weights, dens)

    def __add__(self, other: "SignedMeasure") -> "SignedMeasure":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        doms = {self.domain, other.domain}
        domain = "line" if "line" in doms else "half" if "half" in doms else "finite"
        if self.density is None:
            dens = other.density
        elif other.density is None:
            dens = self.density
        else:
            dens = self.density + other.density
        return SignedMeasure(
            domain,
            np.concatenate([self.locs, other.locs]),
            np.vstack([self.weights, other.weights]),
            dens,
        )

    def __mul__(self, c: float) -> "SignedMeasure":
        dens = self.density * c if self.density is not None else None
        return SignedMeasure(self.domain, self.locs, self.weights * float(c), dens)

    __rmul__ = __mul__

    def __neg__(self) -> "SignedMeasure":
        return self * -1.0

    def __sub__(self, other: "SignedMeasure") -> "SignedMeasure":
        return self + other * -1.0


def dirac(loc, weight=1.0, domain: str = "half") -> SignedMeasure:
    return SignedMeasure.from_atoms(domain, [(loc, weight)])


def total_variation(mu: SignedMeasure, per_component: bool = False):
    """Mass of ``|mu|``: absolute atom weights plus the integral of ``|density|``."""
    comp = np.abs(mu.weights).sum(axis=0)
    if mu.density is not None:
        comp = comp + mu.density.widths @ np.abs(mu.density.values)
    if per_component:
        return comp
    return float(comp.sum())


def jordan_decompose(mu: SignedMeasure) -> tuple[SignedMeasure, SignedMeasure]:
    """Split a scalar measure into nonnegative parts with ``mu = plus - minus``."""
    if mu.dim != 1:
        raise ValueError("Jordan decomposition is defined here for scalar measures only")
    w = mu.weights[:, 0]
    pos, neg = w > 0, w < 0
    plus_d = minus_d = None
    if mu.density is not None:
        plus_d = mu.density.map_values(lambda v: np.maximum(v, 0.0))
        minus_d = mu.density.map_values(lambda v: np.maximum(-v, 0.0))
    plus = SignedMeasure(mu.domain, mu.locs[pos], mu.weights[pos], plus_d)
    minus = SignedMeasure(mu.domain, mu.locs[neg], -mu.weights[neg], minus_d)
    return plus, minus


def _check_compatible(mu: SignedMeasure, x) -> None:
    if isinstance(x, LimFunctionHalf):
        if mu.domain == "line":
            raise DomainMismatchError("line measure paired with a half-line function")
        if np.any(mu.locs < 0) or (mu.density is not None and mu.density.breaks[0] < 0):
            raise DomainMismatchError("measure charges negative times")
    elif isinstance(x, LimFunctionLine):
        if mu.domain == "half":
            raise DomainMismatchError("half-line measure paired with a line function")
    else:
        raise TypeError(f"cannot integrate against {type(x).__name__}")
    if mu.dim != x.dim:
        raise DomainMismatchError("dimension mismatch between measure and function")


def integrate(mu: SignedMeasure, x) -> float:
    """``int <x(t), dmu(t)>``; atoms at infinity read the limits of ``x``."""
    _check_compatible(mu, x)
    terms = [float(w @ x(t)) for t, w in zip(mu.locs, mu.weights)]
    if mu.density is not None:
        lo, hi = mu.density.support()
        terms.append(integrate_product(mu.density, x, lo, hi))
    return math.fsum(terms)


def integrate_function(mu: SignedMeasure, f: Callable) -> float:
    """``int <f(t), dmu(t)>`` for an arbitrary vector callable ``f``.

    Atoms are exact; density cells use adaptive quadrature.
    """
    terms = [float(np.dot(w, np.atleast_1d(f(t)))) for t, w in zip(mu.locs, mu.weights)]
    if mu.density is not None:
        b, v = mu.density.breaks, mu.density.values
        for lo, hi, c in zip(b[:-1], b[1:], v):
            val, _ = _integrate.quad_vec(lambda t: np.atleast_1d(f(t)), lo, hi, epsabs=1e-13)
            terms.append(float(np.dot(val, c)))
    return math.fsum(terms)


def compactify(s) -> float:
    """``s / (1 + s)`` mapping ``[0, inf]`` onto ``[0, 1]``."""
    s = extended_real(s)
    if s < 0:
        raise ValueError("compactification is defined on [0, inf]")
    return 1.0 if s == POS_INF else s / (1.0 + s)


def decompactify_point(tau: float) -> float:
    """``tau / (1 - tau)``, the inverse of :func:`compactify`."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    return POS_INF if tau == 1.0 else tau / (1.0 - tau)


def decompactify(x: LimFunctionHalf) -> Callable:
    """The function ``tau -> x(tau / (1 - tau))`` on ``[0, 1]``."""
    return lambda tau: x(decompactify_point(float(tau)))


def pushforward_compactify(mu: SignedMeasure, refine: int = 1) -> SignedMeasure:
    """Image of a half-line measure under ``s -> s / (1 + s)``.

    Atoms move to the image point (``inf`` goes to 1).  Each density cell,
    split into ``refine`` equal subcells, maps to its image cell with the
    value rescaled so that the cell mass is unchanged.
    """
    if mu.domain != "half":
        raise DomainMismatchError("compactification pushes forward half-line measures")
    locs = np.array([compactify(t) for t in mu.locs])
    dens = None
    if mu.density is not None:
        b, v = mu.density.breaks, mu.density.values
        src, vals = [], []
        for lo, hi, c in zip(b[:-1], b[1:], v):
            sub = np.linspace(lo, hi, refine + 1)
            src.append(sub[:-1])
            vals.extend([c] * refine)
        src = np.append(np.concatenate(src), b[-1])
        img = src / (1.0 + src)
        scale = np.diff(src) / np.diff(img)
        dens = StepFunction(img, np.array(vals) * scale[:, None])
    return SignedMeasure("finite", locs, mu.weights, dens)
