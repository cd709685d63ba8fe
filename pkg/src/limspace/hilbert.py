"""Hilbert structure of L_2,lim on the half-line.

The orthonormal system is the limit unit ``(0, 1)`` followed by the Haar
system on ``[0, T]``: the scaling function and the wavelets of levels
``0 .. J-1``, ordered level by level.  Inner products with piecewise-linear
cores reduce to exact cell integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .limcore import GridFunction, LimFunctionHalf, LimFunctionLine, _from_sides, integrate_product, split_line

__all__ = [
    "BasisElement",
    "Coefficients",
    "ParsevalResult",
    "inner_product",
    "haar_basis",
    "basis_function",
    "gram_matrix",
    "project",
    "reconstruct",
    "parseval_check",
    "expand_line",
]


@dataclass(frozen=True)
class BasisElement:
    """``kind`` is ``"limit"`` or ``"core"``.

    Core elements are ``sqrt(scale2) * pattern`` where the pattern is the
    indicator of ``[start, stop)`` (level ``-1``, the scaling function) or
    ``+1`` on the first half and ``-1`` on the second half (wavelets).
    ``scale2`` is the squared amplitude, kept separately so that norms of
    dyadic elements are computed without a square root.
    """

    kind: str
    index: int = -1
    level: int = -1
    position: int = 0
    start: float = 0.0
    stop: float = 0.0
    scale2: float = 1.0


class Coefficients(NamedTuple):
    limit: np.ndarray
    core: np.ndarray

    def to_dict(self) -> dict:
        if self.limit.size == 1:
            return {"limit": float(self.limit[0]), "core": self.core[:, 0].tolist()}
        return {"limit": self.limit.tolist(), "core": self.core.tolist()}


class ParsevalResult(NamedTuple):
    lhs: float
    rhs: float
    gap: float


def inner_product(x: LimFunctionHalf, y: LimFunctionHalf) -> float:
    """``<x0, y0>_{L2} + a^T b``."""
    lo = 0.0
    hi = max(x.core.support()[1], y.core.support()[1])
    core = integrate_product(x.core, y.core, lo, hi)
    return math.fsum([core, float(x.limit @ y.limit)])


def haar_basis(J: int, T: float) -> list[BasisElement]:
    """Limit unit followed by the ``2**J`` Haar functions of depth ``J`` on ``[0, T]``."""
    if J < 0 or T <= 0:
        raise ValueError("depth must be nonnegative and T positive")
    basis = [BasisElement("limit")]
    basis.append(BasisElement("core", 0, -1, 0, 0.0, float(T), 1.0 / T))
    for j in range(J):
        width = T / 2**j
        for k in range(2**j):
            basis.append(BasisElement("core", 2**j + k, j, k, k * width, (k + 1) * width, 2.0**j / T))
    return basis


def basis_function(e: BasisElement, dim: int = 1) -> LimFunctionHalf:
    if e.kind == "limit":
        return LimFunctionHalf.constant(np.ones(dim))
    amp = math.sqrt(e.scale2)
    ones = np.ones(dim)
    if e.level < 0:
        pts = np.array([e.start, e.stop])
        left = np.array([0 * ones, amp * ones])
        right = np.array([amp * ones, 0 * ones])
    else:
        mid = 0.5 * (e.start + e.stop)
        pts = np.array([e.start, mid, e.stop])
        left = np.array([0 * ones, amp * ones, -amp * ones])
        right = np.array([amp * ones, -amp * ones, 0 * ones])
    if pts[0] > 0:
        pts = np.insert(pts, 0, 0.0)
        left = np.vstack([0 * ones, left])
        right = np.vstack([0 * ones, right])
    return LimFunctionHalf(_from_sides(pts, left, right), np.zeros(dim))


def gram_matrix(J: int, T: float) -> np.ndarray:
    """Gram matrix of :func:`haar_basis` from exact cell overlaps.

    Unit patterns are tabulated on the ``2**J`` finest cells; their overlap
    integrals are sums of equal dyadic widths, and the amplitudes enter as
    ``sqrt(scale2_i * scale2_j)``.
    """
    basis = haar_basis(J, T)[1:]
    cells = 2**J
    width = T / cells
    P = np.zeros((len(basis), cells))
    scale2 = np.empty(len(basis))
    for r, e in enumerate(basis):
        scale2[r] = e.scale2
        if e.level < 0:
            P[r] = 1.0
            continue
        span = cells >> e.level
        s = e.position * span
        P[r, s : s + span // 2] = 1.0
        P[r, s + span // 2 : s + span] = -1.0
    overlap = (P @ P.T) * width
    G = np.sqrt(np.outer(scale2, scale2)) * overlap
    out = np.zeros((len(basis) + 1, len(basis) + 1))
    out[0, 0] = 1.0
    out[1:, 1:] = G
    return out


def _cell_moments(core: GridFunction, J: int, T: float):
    """Exact integrals of the core and of its square over the ``2**J`` cells of ``[0, T]``."""
    cells = 2**J
    dyadic = np.linspace(0.0, T, cells + 1)
    pts = np.union1d(dyadic, core.knots()[(core.knots() > 0) & (core.knots() < T)])
    a, b = pts[:-1], pts[1:]
    fa, fb = core.right(a), core.left(b)
    h = (b - a)[:, None]
    first = h * (fa + fb) / 2.0
    second = h * (fa * fa + fa * fb + fb * fb) / 3.0
    idx = np.minimum((a / (T / cells)).astype(int), cells - 1)
    m1 = np.zeros((cells, core.dim))
    m2 = np.zeros((cells, core.dim))
    np.add.at(m1, idx, first)
    np.add.at(m2, idx, second)
    return m1, m2


def project(x: LimFunctionHalf, J: int, T: float) -> Coefficients:
    """Coefficients on :func:`haar_basis`: ``limit`` is ``a``, ``core[k] = <x0, phi_k>``."""
    if x.core.support()[1] > T:
        raise ValueError("core support exceeds [0, T]")
    cells = 2**J
    m1, _ = _cell_moments(x.core, J, T)
    S = np.vstack([np.zeros((1, x.dim)), np.cumsum(m1, axis=0)])
    core = np.zeros((cells, x.dim))
    core[0] = S[-1] / math.sqrt(T)
    for j in range(J):
        span = cells >> j
        k = np.arange(2**j)
        s = k * span
        first = S[s + span // 2] - S[s]
        second = S[s + span] - S[s + span // 2]
        core[2**j + k] = math.sqrt(2.0**j / T) * (first - second)
    return Coefficients(np.array(x.limit), core)


def reconstruct(coeffs: Coefficients, J: int, T: float) -> LimFunctionHalf:
    """Synthesis ``sum c_k phi_k + c_limit`` as a step-function core."""
    cells = 2**J
    width = T / cells
    dim = coeffs.core.shape[1]
    vals = np.tile(coeffs.core[0] / math.sqrt(T), (cells, 1))
    for j in range(J):
        span = cells >> j
        amp = math.sqrt(2.0**j / T)
        for k in range(2**j):
            c = amp * coeffs.core[2**j + k]
            s = k * span
            vals[s : s + span // 2] += c
            vals[s + span // 2 : s + span] -= c
    pts = np.arange(cells + 1) * width
    left = np.vstack([np.zeros((1, dim)), vals])
    right = np.vstack([vals, np.zeros((1, dim))])
    return LimFunctionHalf(_from_sides(pts, left, right), coeffs.limit)


def parseval_check(x: LimFunctionHalf, J: int, T: float) -> ParsevalResult:
    """``||x||^2`` against the sum of squared coefficients at depth ``J``.

    The gap is the energy of ``x0`` orthogonal to the depth-``J`` span,
    computed cell by cell as ``int x0^2 - (int x0)^2 / width``; it equals
    ``lhs - rhs`` and is nonnegative by construction.
    """
    coeffs = project(x, J, T)
    m1, m2 = _cell_moments(x.core, J, T)
    width = T / 2**J
    lhs = inner_product(x, x)
    rhs = float(np.sum(coeffs.core**2) + np.sum(coeffs.limit**2))
    residual = np.maximum(m2 - m1 * m1 / width, 0.0)
    return ParsevalResult(lhs, rhs, float(residual.sum()))


def expand_line(x: LimFunctionLine, J: int, T: float) -> tuple[Coefficients, Coefficients]:
    """Plain splitting followed by separate expansions of the two halves."""
    x1, x2 = split_line(x)
    return project(x1, J, T), project(x2, J, T)
