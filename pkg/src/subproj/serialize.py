"""JSON-shaped records for sets, functions, and problem files.

Only descriptions without user callables are serializable: the catalog atoms
plus Scale, PowerComp, RightLinear, and MoreauEnv.  Parsing is strict: unknown
keys are rejected before any numerics run.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .errors import SchemaError, SubprojError
from .feasibility import ControlSequence, Cyclic, Explicit, Problem, QuasiCyclic
from .functions import (
    AffineMax,
    Dist,
    FunctionSpec,
    Hyperbolic,
    Indicator,
    Linear,
    NegLog,
    NormPow,
    PowerComp,
    Scale,
    SqDist,
    SqrtShift,
    RightLinear,
)
from .prox import MoreauEnv
from .sets import Ball, Box, ConvexSet, Halfspace, Point


def _require_keys(record: dict, required: set[str], optional: set[str], where: str):
    if not isinstance(record, dict):
        raise SchemaError(f"{where}: expected an object, got {type(record).__name__}")
    keys = set(record)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")


def _number(record: dict, key: str, where: str) -> float:
    v = record[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}.{key}: expected a number")
    return float(v)


def _vector(record: dict, key: str, where: str) -> list[float]:
    v = record[key]
    if not isinstance(v, list) or not v or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        raise SchemaError(f"{where}.{key}: expected a nonempty list of numbers")
    return [float(t) for t in v]


# ---------------------------------------------------------------------------
# sets
# ---------------------------------------------------------------------------

def set_to_record(s: ConvexSet) -> dict:
    if isinstance(s, Ball):
        return {"type": "ball", "center": s.center.tolist(), "radius": s.radius}
    if isinstance(s, Halfspace):
        return {"type": "halfspace", "normal": s.normal.tolist(), "offset": s.offset}
    if isinstance(s, Box):
        return {"type": "box", "lo": s.lo.tolist(), "hi": s.hi.tolist()}
    if isinstance(s, Point):
        return {"type": "point", "c": s.c.tolist()}
    raise SchemaError(f"unserializable set {type(s).__name__}")


def set_from_record(record: Any, where: str = "set") -> ConvexSet:
    if not isinstance(record, dict) or "type" not in record:
        raise SchemaError(f"{where}: expected an object with a 'type' tag")
    tag = record["type"]
    try:
        if tag == "ball":
            _require_keys(record, {"type", "center", "radius"}, set(), where)
            return Ball(_vector(record, "center", where), _number(record, "radius", where))
        if tag == "halfspace":
            _require_keys(record, {"type", "normal", "offset"}, set(), where)
            return Halfspace(_vector(record, "normal", where), _number(record, "offset", where))
        if tag == "box":
            _require_keys(record, {"type", "lo", "hi"}, set(), where)
            return Box(_vector(record, "lo", where), _vector(record, "hi", where))
        if tag == "point":
            _require_keys(record, {"type", "c"}, set(), where)
            return Point(_vector(record, "c", where))
    except (ValueError, SubprojError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{where}: {exc}") from exc
    raise SchemaError(f"{where}: unknown set type {tag!r}")


# ---------------------------------------------------------------------------
# functions
# ---------------------------------------------------------------------------

def function_to_record(f: FunctionSpec) -> dict:
    if isinstance(f, Linear):
        return {"type": "linear", "u": f.u.tolist()}
    if isinstance(f, Dist):
        return {"type": "dist", "set": set_to_record(f.set)}
    if isinstance(f, SqDist):
        return {"type": "sqdist", "set": set_to_record(f.set)}
    if isinstance(f, NormPow):
        return {"type": "normpow", "p": f.p, "dim": f.dim}
    if isinstance(f, NegLog):
        return {"type": "neglog"}
    if isinstance(f, SqrtShift):
        return {"type": "sqrtshift", "eta": f.eta}
    if isinstance(f, Hyperbolic):
        return {"type": "hyperbolic", "eta": f.eta}
    if isinstance(f, AffineMax):
        pieces = [{"a": a.tolist(), "b": b} for a, b in zip(f.slopes, f.offsets)]
        return {"type": "affinemax", "pieces": pieces}
    if isinstance(f, Indicator):
        return {"type": "indicator", "set": set_to_record(f.set)}
    if isinstance(f, Scale):
        return {"type": "scale", "factor": f.lam, "inner": function_to_record(f.inner)}
    if isinstance(f, PowerComp):
        return {"type": "power", "alpha": f.alpha, "inner": function_to_record(f.inner)}
    if isinstance(f, RightLinear):
        return {"type": "rightlinear", "matrix": f.L.tolist(),
                "inner": function_to_record(f.inner)}
    if isinstance(f, MoreauEnv):
        return {"type": "moreau", "gamma": f.gamma, "inner": function_to_record(f.inner)}
    raise SchemaError(f"unserializable function {type(f).__name__}")


def function_from_record(record: Any, where: str = "function") -> FunctionSpec:
    if not isinstance(record, dict) or "type" not in record:
        raise SchemaError(f"{where}: expected an object with a 'type' tag")
    tag = record["type"]
    try:
        if tag == "linear":
            _require_keys(record, {"type", "u"}, set(), where)
            return Linear(_vector(record, "u", where))
        if tag == "dist":
            _require_keys(record, {"type", "set"}, set(), where)
            return Dist(set_from_record(record["set"], where + ".set"))
        if tag == "sqdist":
            _require_keys(record, {"type", "set"}, set(), where)
            return SqDist(set_from_record(record["set"], where + ".set"))
        if tag == "normpow":
            _require_keys(record, {"type", "p"}, {"dim"}, where)
            dim = int(record.get("dim", 1))
            return NormPow(_number(record, "p", where), dim=dim)
        if tag == "neglog":
            _require_keys(record, {"type"}, set(), where)
            return NegLog()
        if tag == "sqrtshift":
            _require_keys(record, {"type", "eta"}, set(), where)
            return SqrtShift(_number(record, "eta", where))
        if tag == "hyperbolic":
            _require_keys(record, {"type", "eta"}, set(), where)
            return Hyperbolic(_number(record, "eta", where))
        if tag == "affinemax":
            _require_keys(record, {"type", "pieces"}, set(), where)
            pieces = record["pieces"]
            if not isinstance(pieces, list) or not pieces:
                raise SchemaError(f"{where}.pieces: expected a nonempty list")
            parsed = []
            for i, p in enumerate(pieces):
                _require_keys(p, {"a", "b"}, set(), f"{where}.pieces[{i}]")
                parsed.append((_vector(p, "a", f"{where}.pieces[{i}]"),
                               _number(p, "b", f"{where}.pieces[{i}]")))
            return AffineMax(parsed)
        if tag == "indicator":
            _require_keys(record, {"type", "set"}, set(), where)
            return Indicator(set_from_record(record["set"], where + ".set"))
        if tag == "scale":
            _require_keys(record, {"type", "factor", "inner"}, set(), where)
            return Scale(_number(record, "factor", where),
                         function_from_record(record["inner"], where + ".inner"))
        if tag == "power":
            _require_keys(record, {"type", "alpha", "inner"}, set(), where)
            return PowerComp(_number(record, "alpha", where),
                             function_from_record(record["inner"], where + ".inner"))
        if tag == "rightlinear":
            _require_keys(record, {"type", "matrix", "inner"}, set(), where)
            mat = record["matrix"]
            if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
                raise SchemaError(f"{where}.matrix: expected a list of rows")
            return RightLinear(np.array(mat, dtype=float),
                               function_from_record(record["inner"], where + ".inner"))
        if tag == "moreau":
            _require_keys(record, {"type", "gamma", "inner"}, set(), where)
            return MoreauEnv(_number(record, "gamma", where),
                             function_from_record(record["inner"], where + ".inner"))
    except (ValueError, SubprojError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{where}: {exc}") from exc
    raise SchemaError(f"{where}: unknown function type {tag!r}")


# ---------------------------------------------------------------------------
# control sequences and problem files
# ---------------------------------------------------------------------------

def control_to_record(c: ControlSequence) -> dict:
    if isinstance(c, Cyclic):
        return {"type": "cyclic"}
    if isinstance(c, QuasiCyclic):
        return {"type": "quasicyclic", "windows": list(c.window_bounds)}
    if isinstance(c, Explicit):
        rec = {"type": "explicit", "indices": list(c.index_list)}
        if c.window_bounds is not None:
            rec["windows"] = list(c.window_bounds)
        return rec
    raise SchemaError(f"unserializable control {type(c).__name__}")


def _int_list(record: dict, key: str, where: str) -> list[int]:
    v = record[key]
    if not isinstance(v, list) or not v or not all(
            isinstance(t, int) and not isinstance(t, bool) for t in v):
        raise SchemaError(f"{where}.{key}: expected a nonempty list of integers")
    return [int(t) for t in v]


def control_from_record(record: Any, where: str = "control") -> ControlSequence:
    if not isinstance(record, dict) or "type" not in record:
        raise SchemaError(f"{where}: expected an object with a 'type' tag")
    tag = record["type"]
    try:
        if tag == "cyclic":
            _require_keys(record, {"type"}, set(), where)
            return Cyclic()
        if tag == "quasicyclic":
            _require_keys(record, {"type", "windows"}, set(), where)
            return QuasiCyclic(_int_list(record, "windows", where))
        if tag == "explicit":
            _require_keys(record, {"type", "indices"}, {"windows"}, where)
            windows = _int_list(record, "windows", where) if "windows" in record else None
            return Explicit(_int_list(record, "indices", where), windows)
    except (ValueError, SubprojError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{where}: {exc}") from exc
    raise SchemaError(f"{where}: unknown control type {tag!r}")


PROBLEM_REQUIRED = {"dimension", "functions", "control", "relaxation",
                    "epsilon", "x0", "tol", "max_iter"}
PROBLEM_OPTIONAL = {"feasible_witness"}


def problem_to_record(p: Problem) -> dict:
    rec = {
        "dimension": p.dimension,
        "functions": [function_to_record(f) for f in p.functions],
        "control": control_to_record(p.control),
        "relaxation": (p.relaxation if isinstance(p.relaxation, (int, float))
                       else [float(v) for v in p.relaxation]),
        "epsilon": p.epsilon,
        "x0": p.x0.tolist(),
        "tol": p.tol,
        "max_iter": p.max_iter,
    }
    if p.feasible_witness is not None:
        rec["feasible_witness"] = p.feasible_witness.tolist()
    return rec


def parse_problem_file(record: Any) -> dict:
    """Schema-validate a problem record and instantiate its parts.

    Returns a plain dict of constructor-ready fields.  Solver-specific
    invariants (full domains, relaxation range) are enforced when a Problem
    is built from the parts, not here, so projection and analysis commands
    can run on files whose functions have restricted domains.
    """
    _require_keys(record, PROBLEM_REQUIRED, PROBLEM_OPTIONAL, "problem")
    dim = record["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError("problem.dimension: expected a positive integer")
    funcs_rec = record["functions"]
    if not isinstance(funcs_rec, list) or not funcs_rec:
        raise SchemaError("problem.functions: expected a nonempty list")
    functions = [function_from_record(r, f"problem.functions[{i}]")
                 for i, r in enumerate(funcs_rec)]
    control = control_from_record(record["control"], "problem.control")
    relax = record["relaxation"]
    if isinstance(relax, bool) or not isinstance(relax, (int, float, list)):
        raise SchemaError("problem.relaxation: expected a number or list of numbers")
    if isinstance(relax, list):
        if not relax or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                                for v in relax):
            raise SchemaError("problem.relaxation: expected a nonempty list of numbers")
        relax = [float(v) for v in relax]
    else:
        relax = float(relax)
    epsilon = _number(record, "epsilon", "problem")
    x0 = _vector(record, "x0", "problem")
    tol = _number(record, "tol", "problem")
    max_iter = record["max_iter"]
    if isinstance(max_iter, bool) or not isinstance(max_iter, int) or max_iter < 1:
        raise SchemaError("problem.max_iter: expected a positive integer")
    witness = None
    if "feasible_witness" in record:
        witness = _vector(record, "feasible_witness", "problem")
    return {
        "dimension": dim,
        "functions": functions,
        "x0": x0,
        "control": control,
        "relaxation": relax,
        "epsilon": epsilon,
        "tol": tol,
        "max_iter": max_iter,
        "feasible_witness": witness,
    }


def problem_from_record(record: Any) -> Problem:
    """Parse a record into a solver-ready Problem; every failure is a SchemaError."""
    parts = parse_problem_file(record)
    try:
        return Problem(**parts)
    except SubprojError as exc:
        raise SchemaError(f"problem: {exc}") from exc
