"""Seeded random instances for the property suites and tests."""

from __future__ import annotations

import numpy as np

from .limcore import GridFunction, LimFunctionHalf, LimFunctionLine, LimSequence
from .measures import SignedMeasure, StepFunction

__all__ = [
    "random_points",
    "random_core",
    "random_half",
    "random_hat_half",
    "random_line",
    "random_step",
    "random_measure",
    "random_sequence",
]


def random_points(rng: np.random.Generator, lo: float, hi: float, k: int) -> np.ndarray:
    """``k`` distinct sorted points strictly inside ``(lo, hi)``."""
    while True:
        pts = np.sort(rng.uniform(lo, hi, k))
        if k < 2 or np.all(np.diff(pts) > 1e-9):
            if k == 0 or (pts[0] > lo and pts[-1] < hi):
                return pts


def random_core(rng, dim: int = 1, T: float = 8.0, knots: int | None = None, scale: float = 2.0) -> GridFunction:
    """Continuous piecewise-linear core on ``[0, b]`` with ``b <= T``; ``x0(0)`` is free."""
    k = int(knots if knots is not None else rng.integers(1, 7))
    pts = np.concatenate([[0.0], random_points(rng, 0.0, T, k)])
    vals = scale * rng.standard_normal((pts.size, dim))
    vals[-1] = 0.0
    return GridFunction(pts, vals)


def random_half(rng, dim: int = 1, T: float = 8.0, scale: float = 2.0) -> LimFunctionHalf:
    return LimFunctionHalf(random_core(rng, dim, T, scale=scale), scale * rng.standard_normal(dim))


def random_hat_half(rng, T: float = 8.0, hats: int = 3) -> LimFunctionHalf:
    """Scalar sum of random hat functions inside ``[0, T]`` plus a random limit."""
    core = GridFunction.zero(1)
    for _ in range(hats):
        a, c = np.sort(rng.uniform(0.0, T, 2))
        b = rng.uniform(a, c)
        core = core + GridFunction.hat(a, b, c, rng.standard_normal())
    return LimFunctionHalf(core, [rng.standard_normal()])


def random_line(rng, dim: int = 1, T: float = 8.0, continuous: bool = True, scale: float = 2.0) -> LimFunctionLine:
    """Piecewise-linear function on the line with two random limits.

    The continuous variant vanishes at both ends of its core and compensates
    the switch between the limits with a core jump at 0.  The plain variant
    also carries random jumps at 0 and at the ends of the core.
    """
    a1 = scale * rng.standard_normal(dim)
    a2 = scale * rng.standard_normal(dim)
    neg = -random_points(rng, 0.0, T, int(rng.integers(1, 5)))[::-1]
    pos = random_points(rng, 0.0, T, int(rng.integers(1, 5)))
    vneg = scale * rng.standard_normal((neg.size, dim))
    vpos = scale * rng.standard_normal((pos.size, dim))
    v0 = scale * rng.standard_normal(dim)
    vpos[-1] = 0.0
    if continuous:
        vneg[0] = 0.0
        v0_right = v0 + a1 - a2
    else:
        v0_right = scale * rng.standard_normal(dim)
    pts = np.concatenate([neg, [0.0, 0.0], pos])
    vals = np.vstack([vneg, v0, v0_right, vpos])
    return LimFunctionLine(GridFunction(pts, vals), a1, a2)


def random_step(rng, lo: float, hi: float, dim: int = 1, cells: int | None = None, scale: float = 1.0) -> StepFunction:
    k = int(cells if cells is not None else rng.integers(1, 6))
    pts = np.concatenate([[lo], random_points(rng, lo, hi, k - 1), [hi]])
    return StepFunction(pts, scale * rng.standard_normal((k, dim)))


def random_measure(
    rng,
    domain: str = "half",
    dim: int = 1,
    T: float = 8.0,
    atoms: int | None = None,
    density: bool = True,
    at_infinity: bool = False,
) -> SignedMeasure:
    """Random atoms in ``[0, T]`` (or ``[-T, T]``) and an optional step density.

    ``at_infinity`` adds atoms at the infinite endpoints of the domain.
    """
    n = int(atoms if atoms is not None else rng.integers(0, 5))
    lo = -T if domain == "line" else 0.0
    locs = list(rng.uniform(lo, T, n))
    if at_infinity:
        locs.append(np.inf)
        if domain == "line":
            locs.append(-np.inf)
    w = rng.standard_normal((len(locs), dim))
    dens = random_step(rng, lo, T, dim) if density else None
    return SignedMeasure(domain, np.array(locs, dtype=float), w, dens)


def random_sequence(rng, N: int | None = None, scale: float = 2.0) -> LimSequence:
    n = int(N if N is not None else rng.integers(1, 9))
    return LimSequence(scale * rng.standard_normal(n), scale * rng.standard_normal())
