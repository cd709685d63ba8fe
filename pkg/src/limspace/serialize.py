"""JSON round trips for measures, functions and functionals.

Infinite locations and exponents are written as the strings ``"inf"`` and
``"-inf"``.  :func:`dumps` sorts keys and prints floats with 17 significant
digits so that reports are byte-stable.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import duals as D
from .limcore import GridFunction, LimFunctionHalf, LimFunctionLine, LimSequence
from .measures import SignedMeasure, StepFunction, extended_real

__all__ = [
    "dumps",
    "measure_to_dict",
    "measure_from_dict",
    "step_to_dict",
    "step_from_dict",
    "function_to_dict",
    "function_from_dict",
    "sequence_to_dict",
    "sequence_from_dict",
    "functional_to_dict",
    "functional_from_dict",
]


def _ext(v: float):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _rows(a: np.ndarray) -> list:
    return np.asarray(a, dtype=float).tolist()


def _encode(o, indent, level) -> str:
    if o is None or isinstance(o, bool):
        return json.dumps(o)
    if isinstance(o, (int, np.integer)):
        return str(int(o))
    if isinstance(o, (float, np.floating)):
        f = float(o)
        if math.isnan(f):
            return '"nan"'
        if math.isinf(f):
            return '"inf"' if f > 0 else '"-inf"'
        return format(f + 0.0, ".17g")
    if isinstance(o, str):
        return json.dumps(o)
    if isinstance(o, np.ndarray):
        o = o.tolist()
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = ", " if indent is None else ","
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(o[k], indent, level + 1)}" for k in sorted(o, key=str)]
        return "{" + sep.join(items) + end + "}"
    if isinstance(o, (list, tuple)):
        if not o:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in o]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot encode {type(o).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return _encode(obj, indent, 0)


def step_to_dict(y: StepFunction | None):
    if y is None:
        return None
    return {"breaks": _rows(y.breaks), "values": _rows(y.values)}


def step_from_dict(d) -> StepFunction | None:
    if d is None:
        return None
    return StepFunction(np.asarray(d["breaks"], dtype=float), np.asarray(d["values"], dtype=float))


def measure_to_dict(mu: SignedMeasure) -> dict:
    return {
        "domain": mu.domain,
        "atoms": [{"loc": _ext(t), "w": _rows(w)} for t, w in zip(mu.locs, mu.weights)],
        "density": step_to_dict(mu.density),
    }


def measure_from_dict(d: dict, dim: int | None = None) -> SignedMeasure:
    atoms = [(extended_real(a["loc"]), np.atleast_1d(np.asarray(a["w"], dtype=float))) for a in d.get("atoms", [])]
    return SignedMeasure.from_atoms(d.get("domain", "half"), atoms, step_from_dict(d.get("density")), dim=dim)


def function_to_dict(x) -> dict:
    out = {"breaks": _rows(x.core.breaks), "values": _rows(x.core.values)}
    if isinstance(x, LimFunctionLine):
        out["limit"] = _rows(x.limit_pos)
        out["limit_neg"] = _rows(x.limit_neg)
    else:
        out["limit"] = _rows(x.limit)
    return out


def function_from_dict(d: dict):
    core = GridFunction(np.asarray(d["breaks"], dtype=float), np.asarray(d["values"], dtype=float))
    if "limit_neg" in d:
        return LimFunctionLine(core, d["limit_neg"], d["limit"])
    return LimFunctionHalf(core, d["limit"])


def sequence_to_dict(x: LimSequence) -> dict:
    return {"head": _rows(x.head), "limit": x.limit}


def sequence_from_dict(d: dict) -> LimSequence:
    return LimSequence(d["head"], d["limit"])


def functional_to_dict(f) -> dict:
    if isinstance(f, D.MeasureFunctional):
        return {"kind": "measure", "mu": measure_to_dict(f.mu), "alpha": _rows(f.alpha)}
    if isinstance(f, D.LineMeasureFunctional):
        return {
            "kind": "measure_line",
            "mu": measure_to_dict(f.mu),
            "alpha_neg": _rows(f.alpha_neg),
            "alpha_pos": _rows(f.alpha_pos),
        }
    if isinstance(f, D.ExtendedMeasureFunctional):
        return {"kind": "extended_measure", "mu_tilde": measure_to_dict(f.mu_tilde)}
    if isinstance(f, D.DensityFunctional):
        return {"kind": "density", "y": step_to_dict(f.y), "alpha": _rows(f.alpha), "q": _ext(f.q)}
    if isinstance(f, D.LineDensityFunctional):
        return {
            "kind": "density_line",
            "y": step_to_dict(f.y),
            "alpha_neg": _rows(f.alpha_neg),
            "alpha_pos": _rows(f.alpha_pos),
            "q": _ext(f.q),
        }
    if isinstance(f, D.SequenceFunctional):
        return {"kind": "sequence", "y": _rows(f.y), "alpha": f.alpha}
    if isinstance(f, D.SobolevFunctional):
        return {"kind": "sobolev", "y0": step_to_dict(f.y0), "y1": step_to_dict(f.y1), "alpha": _rows(f.alpha)}
    raise TypeError(f"unknown functional {type(f).__name__}")


def functional_from_dict(d: dict):
    kind = d["kind"]
    if kind == "measure":
        alpha = np.atleast_1d(np.asarray(d["alpha"], dtype=float))
        return D.MeasureFunctional(measure_from_dict(d["mu"], alpha.size), alpha)
    if kind == "measure_line":
        a1 = np.atleast_1d(np.asarray(d["alpha_neg"], dtype=float))
        return D.LineMeasureFunctional(measure_from_dict(d["mu"], a1.size), a1, d["alpha_pos"])
    if kind == "extended_measure":
        return D.ExtendedMeasureFunctional(measure_from_dict(d["mu_tilde"]))
    if kind == "density":
        return D.DensityFunctional(step_from_dict(d["y"]), d["alpha"], extended_real(d.get("q", "inf")))
    if kind == "density_line":
        return D.LineDensityFunctional(
            step_from_dict(d["y"]), d["alpha_neg"], d["alpha_pos"], extended_real(d.get("q", "inf"))
        )
    if kind == "sequence":
        return D.SequenceFunctional(d["y"], d["alpha"])
    if kind == "sobolev":
        return D.SobolevFunctional(step_from_dict(d.get("y0")), step_from_dict(d.get("y1")), d["alpha"])
    raise ValueError(f"unknown functional kind {kind!r}")
