"""The max functional on the closed half-line and its subdifferential.

``f(x) = max_{t in [0, inf]} x(t)`` is convex on the scalar half-line space.
Its subgradients at ``x`` are the nonnegative unit-mass measures carried by
the argmax set; the extreme ones are the Dirac masses returned here.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import linprog

from .duals import ExtendedMeasureFunctional, pair_extended
from .limcore import GridFunction, LimFunctionHalf
from .measures import POS_INF, dirac, total_variation

__all__ = [
    "ARGMAX_TOL",
    "SupResult",
    "sup_functional",
    "subdifferential_extreme_points",
    "subgradient_check",
    "find_subgradient_counterexample",
    "cone_interior_margin",
    "degeneracy_check",
]

ARGMAX_TOL = 1e-9


class SupResult(NamedTuple):
    value: float
    argmax: list


def _scalar(x: LimFunctionHalf) -> None:
    if x.dim != 1:
        raise ValueError("the max functional is defined for scalar functions")


def sup_functional(x: LimFunctionHalf, tol: float = ARGMAX_TOL) -> SupResult:
    """Maximum over ``[0, inf]`` and every knot (or ``inf``) within ``tol`` of it.

    Knot values include one-sided limits at jumps.  Maximizers are sorted
    ascending with ``inf`` last.  With compact cores the last knot always
    carries the limit value, so it ties with ``inf`` whenever ``inf`` attains
    the maximum.
    """
    _scalar(x)
    k = x.knots()
    vals = x.right(k)[:, 0]
    if k.size > 1:
        vals[1:] = np.maximum(vals[1:], x.left(k[1:])[:, 0])
    a = float(x.limit[0])
    value = max(float(vals.max()), a)
    argmax = [float(t) for t in k[vals >= value - tol]]
    if a >= value - tol:
        argmax.append(POS_INF)
    return SupResult(value, argmax)


def subdifferential_extreme_points(x: LimFunctionHalf) -> list[ExtendedMeasureFunctional]:
    """Dirac masses on the argmax set; the subdifferential is their closed convex hull."""
    return [ExtendedMeasureFunctional(dirac(t, 1.0)) for t in sup_functional(x).argmax]


def subgradient_check(mu: ExtendedMeasureFunctional, x: LimFunctionHalf, y: LimFunctionHalf, tol: float = 1e-12) -> bool:
    """``f(y) >= f(x) + <mu, y - x>`` up to ``tol``."""
    lhs = sup_functional(y).value
    rhs = sup_functional(x).value + pair_extended(mu, y - x)
    return lhs >= rhs - tol


def _lipschitz(x: LimFunctionHalf) -> float:
    _, _, s = x.core.slopes()
    return float(np.abs(s).max()) if s.size else 0.0


def find_subgradient_counterexample(s: float, x: LimFunctionHalf, height: float = 1.0):
    """A ``y`` violating the subgradient inequality for ``delta_s``, or ``None``.

    A Dirac mass at a point that does not attain the maximum fails: lift
    ``x`` by ``height`` near ``s`` (a narrow hat, or a ramp to ``height`` at
    infinity) while staying away from the maximizers.
    """
    _scalar(x)
    top = sup_functional(x)
    gap = top.value - float(x(s)[0])
    if gap <= ARGMAX_TOL:
        return None
    if s == POS_INF:
        R = float(x.knots()[-1]) + 1.0
        core = GridFunction([0.0, R, R + 1.0], [-height, -height, 0.0])
        p = LimFunctionHalf(core, [height])
    else:
        finite = [t for t in top.argmax if t != POS_INF]
        dist = min((abs(t - s) for t in finite), default=1.0)
        delta = min(0.5 * dist, gap / (2.0 * _lipschitz(x) + 1e-300), 1.0)
        p = LimFunctionHalf(GridFunction.hat(max(s - delta, 0.0), s, s + delta, height), [0.0])
    y = x + p
    mu = ExtendedMeasureFunctional(dirac(s, 1.0))
    return None if subgradient_check(mu, x, y) else y


def cone_interior_margin(x: LimFunctionHalf) -> float:
    """``-max x``: positive exactly when ``x`` is interior to the nonpositive cone.

    Every perturbation of sup norm below the margin keeps ``x`` in the cone.
    """
    return -sup_functional(x).value


def degeneracy_check(z: Callable, grid) -> dict:
    """Subgradients of ``f`` at a strictly negative ``z`` vanishing at infinity.

    Candidate measures are nonnegative weights on ``grid``.  Without the point
    at infinity (C_0 model: mass at most 1, ``<mu, z> = sup z = 0``) the
    largest feasible mass is 0, so ``mu = 0``.  With it (mass exactly 1,
    ``z(inf) = 0``) all mass is forced to infinity, ``mu = delta_inf``.
    """
    t = np.asarray(grid, dtype=float)
    zt = np.asarray(z(t), dtype=float)
    if np.any(zt >= 0):
        raise ValueError("z must be strictly negative on the grid")
    m = t.size
    c0 = linprog(
        -np.ones(m), A_ub=np.ones((1, m)), b_ub=[1.0], A_eq=zt[None, :], b_eq=[0.0],
        bounds=[(0, None)] * m, method="highs",
    )
    A_eq = np.vstack([np.ones(m + 1), np.append(zt, 0.0)])
    clim = linprog(
        -np.append(np.ones(m), 0.0), A_eq=A_eq, b_eq=[1.0, 0.0],
        bounds=[(0, None)] * (m + 1), method="highs",
    )
    c0_mass = float(-c0.fun)
    clim_finite = float(-clim.fun)
    mass_inf = float(clim.x[-1])
    delta_inf = ExtendedMeasureFunctional(dirac(POS_INF, mass_inf))
    return {
        "c0": {"max_mass": c0_mass, "mu_is_zero": c0_mass <= 1e-12},
        "clim": {
            "max_finite_mass": clim_finite,
            "mass_at_inf": mass_inf,
            "total_variation": total_variation(delta_inf.mu_tilde),
            "mu_is_delta_inf": clim_finite <= 1e-12 and abs(mass_inf - 1.0) <= 1e-12,
        },
    }
