"""JSON problem file schema: loading, validation and canonical dumping.

The document holds dimension, objective text, set atoms, the domain
window, optional constraints/ground set for the inequality-constrained
form, an optional known solution and tolerance overrides.  Unknown keys
are rejected.  Dumping is canonical (fixed key order, shortest
round-trip decimals), so load/dump round-trips byte-identically.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Tuple, Union

from .config import DEFAULT_CONFIG, Config
from .core import ConstrainedProblem, Problem
from .errors import ProblemFormatError
from .expr import parse, pretty
from .sets import (
    Atom,
    Ball,
    Box,
    ConvexSetDescriptor,
    Halfspace,
    LinearEquality,
    contains,
    sample_grid,
)

_TOP_KEYS = {
    "dimension",
    "objective",
    "feasible_set",
    "domain_window",
    "constraints",
    "ground_set",
    "known_solution",
    "config",
}
_CONFIG_KEYS = {
    "eps_grad",
    "eps_dir",
    "eps_act",
    "eps_feas",
    "eps_lp",
    "eps_opt",
    "h_fd",
    "delta_open",
    "seed",
}


def _reals(value, name: str, dim: Optional[int] = None) -> Tuple[float, ...]:
    if not isinstance(value, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise ProblemFormatError(f"{name} must be a list of reals")
    if dim is not None and len(value) != dim:
        raise ProblemFormatError(f"{name} must have length {dim}")
    return tuple(float(v) for v in value)


def _atom_from_json(obj: dict, dim: int) -> Atom:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ProblemFormatError("each set atom must be a tagged object")
    kind = obj["type"]
    keys = set(obj) - {"type"}
    if kind == "box":
        if keys != {"lo", "hi"}:
            raise ProblemFormatError(f"box atom has wrong keys: {sorted(keys)}")
        return Box(_reals(obj["lo"], "box.lo", dim), _reals(obj["hi"], "box.hi", dim))
    if kind == "halfspace":
        if keys != {"a", "b"}:
            raise ProblemFormatError(f"halfspace atom has wrong keys: {sorted(keys)}")
        return Halfspace(_reals(obj["a"], "halfspace.a", dim), float(obj["b"]))
    if kind == "ball":
        if keys != {"center", "radius"}:
            raise ProblemFormatError(f"ball atom has wrong keys: {sorted(keys)}")
        return Ball(_reals(obj["center"], "ball.center", dim), float(obj["radius"]))
    if kind == "linear_equality":
        if keys != {"a", "b"}:
            raise ProblemFormatError(
                f"linear_equality atom has wrong keys: {sorted(keys)}"
            )
        return LinearEquality(_reals(obj["a"], "linear_equality.a", dim), float(obj["b"]))
    raise ProblemFormatError(f"unknown atom type {kind!r}")


def _atom_to_json(atom: Atom) -> dict:
    if isinstance(atom, Box):
        return {"type": "box", "lo": list(atom.lo), "hi": list(atom.hi)}
    if isinstance(atom, Halfspace):
        return {"type": "halfspace", "a": list(atom.a), "b": atom.b}
    if isinstance(atom, Ball):
        return {"type": "ball", "center": list(atom.center), "radius": atom.radius}
    if isinstance(atom, LinearEquality):
        return {"type": "linear_equality", "a": list(atom.a), "b": atom.b}
    raise TypeError(f"unknown atom {atom!r}")


def _window_from_json(obj, dim: int) -> Box:
    if not isinstance(obj, dict) or set(obj) != {"lo", "hi"}:
        raise ProblemFormatError("domain_window must be {lo: [...], hi: [...]}")
    return Box(_reals(obj["lo"], "window.lo", dim), _reals(obj["hi"], "window.hi", dim))


def config_from_json(obj: dict, base: Config = DEFAULT_CONFIG) -> Config:
    if not isinstance(obj, dict):
        raise ProblemFormatError("config must be an object")
    unknown = set(obj) - _CONFIG_KEYS
    if unknown:
        raise ProblemFormatError(f"unknown config keys: {sorted(unknown)}")
    return base.with_overrides(**obj)


def load_problem(doc: dict):
    """Build a Problem or ConstrainedProblem from a parsed JSON document.

    Returns (problem, known_solution, config).
    """
    if not isinstance(doc, dict):
        raise ProblemFormatError("problem document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ProblemFormatError(f"unknown keys: {sorted(unknown)}")
    for key in ("dimension", "objective", "feasible_set", "domain_window"):
        if key not in doc:
            raise ProblemFormatError(f"missing required key {key!r}")
    dim = doc["dimension"]
    if not isinstance(dim, int) or dim < 1:
        raise ProblemFormatError("dimension must be a positive integer")
    if not isinstance(doc["objective"], str):
        raise ProblemFormatError("objective must be an expression string")
    objective = parse(doc["objective"], dim)
    if not isinstance(doc["feasible_set"], list):
        raise ProblemFormatError("feasible_set must be a list of atoms")
    atoms = tuple(_atom_from_json(a, dim) for a in doc["feasible_set"])
    window = _window_from_json(doc["domain_window"], dim)
    cfg = config_from_json(doc.get("config", {}))

    known = None
    if "known_solution" in doc:
        known = _reals(doc["known_solution"], "known_solution", dim)

    if "constraints" in doc:
        if not isinstance(doc["constraints"], list) or not doc["constraints"]:
            raise ProblemFormatError("constraints must be a nonempty list of strings")
        if atoms:
            raise ProblemFormatError(
                "constrained problems take their set atoms in ground_set; "
                "feasible_set must be empty"
            )
        constraints = tuple(parse(g, dim) for g in doc["constraints"])
        ground_atoms = tuple(
            _atom_from_json(a, dim) for a in doc.get("ground_set", [])
        )
        problem = ConstrainedProblem(
            objective,
            constraints,
            ConvexSetDescriptor(dim, ground_atoms),
            dim,
            window,
        )
    else:
        if "ground_set" in doc:
            raise ProblemFormatError("ground_set requires constraints")
        problem = Problem(objective, ConvexSetDescriptor(dim, atoms), dim, window)
        _probe_nonempty(problem.feasible_set, window, known)
    return problem, known, cfg


def _probe_nonempty(S: ConvexSetDescriptor, window: Box, known):
    if known is not None:
        if not contains(S, known, 1e-9):
            raise ProblemFormatError("known_solution is not in the feasible set")
        return
    if not sample_grid(S, window, 9):
        raise ProblemFormatError(
            "feasible set appears empty on a coarse window probe"
        )


def dump_problem(
    problem,
    known_solution=None,
    config: Optional[dict] = None,
) -> dict:
    """Canonical JSON document for a problem (inverse of load_problem)."""
    doc: Dict[str, object] = {
        "dimension": problem.dimension,
        "objective": pretty(problem.objective),
    }
    if isinstance(problem, ConstrainedProblem):
        doc["feasible_set"] = []
        doc["constraints"] = [pretty(g) for g in problem.constraints]
        doc["ground_set"] = [_atom_to_json(a) for a in problem.ground_set.atoms]
    else:
        doc["feasible_set"] = [_atom_to_json(a) for a in problem.feasible_set.atoms]
    doc["domain_window"] = {
        "lo": list(problem.domain_window.lo),
        "hi": list(problem.domain_window.hi),
    }
    if known_solution is not None:
        doc["known_solution"] = [float(v) for v in known_solution]
    if config:
        doc["config"] = dict(config)
    return doc


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON: {exc}") from exc
    return load_problem(doc)


def dumps(problem, known_solution=None, config=None) -> str:
    return json.dumps(dump_problem(problem, known_solution, config), indent=2)
