"""Subdifferential comparison routes.

Greenberg-Pierskalla membership is decided by grid falsification; the
Martinez-Legaz subdifferential is implemented in one dimension only,
where the infimum over a halfline is computable.  Both routes are used to
cross-check the gradient-based characterizations on the same instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .core import Problem, as_point
from .errors import DimensionError
from .expr import ExprAst, evaluate, grad
from .sets import Box, grid_nodes


@dataclass(frozen=True)
class MLPair:
    """One element (v, t) of the 1-D Martinez-Legaz subdifferential."""

    v: float
    t: float


def _grid_values(f: ExprAst, window: Box, resolution: int):
    pts = grid_nodes(window, resolution)
    return pts, np.array([evaluate(f, x) for x in pts])


def gp_member(
    f: ExprAst,
    x0,
    v,
    window: Box,
    resolution: int = 21,
    cfg: Config = DEFAULT_CONFIG,
    _grid=None,
) -> bool:
    """Sampled test of v in the Greenberg-Pierskalla subdifferential at x0.

    False iff some grid point x has v.(x - x0) >= 0 and f(x) < f(x0),
    within tolerances.  A precomputed (points, values) pair can be passed
    to amortize the grid evaluation over many calls.
    """
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    x0v = np.asarray(x0, dtype=float)
    vv = np.asarray(v, dtype=float)
    f0 = evaluate(f, x0v)
    pts, vals = _grid if _grid is not None else _grid_values(f, window, resolution)
    for x, fx in zip(pts, vals):
        if float(vv @ (x - x0v)) >= -cfg.eps_feas and fx < f0 - cfg.eps_feas:
            return False
    return True


def default_gp_candidates(
    f: ExprAst, xbar, x, dimension: int, cfg: Config = DEFAULT_CONFIG
) -> List[np.ndarray]:
    """Structural candidate directions: coordinate rays, positive-orthant
    samples, and the gradient directions at the two points when nonzero."""
    cands: List[np.ndarray] = []
    for i in range(dimension):
        unit = np.zeros(dimension)
        unit[i] = 1.0
        cands.append(unit)
    if dimension >= 2:
        for combo in ((1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (1.0, 3.0), (3.0, 1.0)):
            vec = np.ones(dimension)
            vec[0], vec[1] = combo
            cands.append(vec)
    for point in (xbar, x):
        g = grad(f, np.asarray(point, dtype=float), dimension)
        nrm = float(np.linalg.norm(g))
        if nrm > cfg.eps_grad:
            cands.append(g / nrm)
    return cands


def gp_solution_check(
    p: Problem,
    xbar,
    x,
    candidate_vs: Optional[Sequence] = None,
    window: Optional[Box] = None,
    resolution: int = 21,
    cfg: Config = DEFAULT_CONFIG,
    _grid=None,
) -> bool:
    """Existence of a shared GP subgradient orthogonal to x - xbar.

    True certifies membership through a finite witness; False means no
    witness was found in the candidate family.
    """
    window = window or p.domain_window
    xb = as_point(xbar, p.dimension)
    xv = as_point(x, p.dimension)
    if candidate_vs is None:
        candidate_vs = default_gp_candidates(p.objective, xb, xv, p.dimension, cfg)
    grid = _grid if _grid is not None else _grid_values(p.objective, window, resolution)
    for v in candidate_vs:
        vv = np.asarray(v, dtype=float)
        if abs(float(vv @ (xv - xb))) > cfg.eps_feas:
            continue
        if gp_member(p.objective, xb, vv, window, resolution, cfg, _grid=grid) and (
            gp_member(p.objective, xv, vv, window, resolution, cfg, _grid=grid)
        ):
            return True
    return False


def _halfline_inf(
    f: ExprAst, pair: MLPair, window: Box, resolution: int, cfg: Config
) -> float:
    """Infimum of f over {y : v y >= t} clipped to the window grid.

    When the true region extends past a window edge, a monotone trend at
    that edge approximates the unbounded tail: if f still decreases
    outward at the edge the infimum is flagged as -inf.  This is a
    documented heuristic, not a proof.
    """
    lo, hi = window.lo[0], window.hi[0]
    ys = np.linspace(lo, hi, resolution)
    v, t = pair.v, pair.t
    if v > 0.0:
        cut = t / v
        mask = ys >= cut - cfg.eps_feas
        tail_edges = ["hi"] + (["lo"] if cut < lo else [])
    elif v < 0.0:
        cut = t / v
        mask = ys <= cut + cfg.eps_feas
        tail_edges = ["lo"] + (["hi"] if cut > hi else [])
    else:
        if t > 0.0:
            return float("inf")  # empty constraint region
        mask = np.ones_like(ys, dtype=bool)
        tail_edges = ["lo", "hi"]
    if not np.any(mask):
        # region lies entirely outside the window; fall back to the
        # nearest edge trend
        tail_edges = ["lo" if (v > 0 and t / v < lo) else "hi"]
        mask = np.zeros_like(ys, dtype=bool)

    step = (hi - lo) / (resolution - 1)
    for edge in tail_edges:
        if edge == "lo":
            outer, inner = lo, lo + step
        else:
            outer, inner = hi, hi - step
        if evaluate(f, [outer]) < evaluate(f, [inner]) - cfg.eps_feas:
            return float("-inf")

    if not np.any(mask):
        return float("inf")
    return float(min(evaluate(f, [y]) for y in ys[mask]))


def ml_member_1d(
    f: ExprAst,
    x: float,
    pair: MLPair,
    window: Box,
    resolution: int = 201,
    cfg: Config = DEFAULT_CONFIG,
) -> bool:
    """(v, t) in the Martinez-Legaz subdifferential of a 1-D function at x."""
    if len(window.lo) != 1:
        raise DimensionError("Martinez-Legaz route is implemented for n=1 only")
    if pair.v * x < pair.t - cfg.eps_feas:
        return False
    fx = evaluate(f, [x])
    inf_val = _halfline_inf(f, pair, window, resolution, cfg)
    return inf_val >= fx - cfg.eps_feas


def default_ml_pairs(
    window: Box, vs=(0.5, 1.0, 2.0), t_count: int = 21
) -> List[MLPair]:
    """Candidate (v, t) pairs: a few positive slopes with thresholds
    spanning v * window (zero always included)."""
    lo, hi = window.lo[0], window.hi[0]
    pairs = []
    for v in vs:
        ts = set(np.linspace(v * lo, v * hi, t_count))
        ts.add(0.0)
        for t in sorted(ts):
            pairs.append(MLPair(float(v), float(t)))
    return pairs


def ml_solution_check_1d(
    p: Problem,
    xbar: float,
    x: float,
    candidate_pairs: Optional[Sequence[MLPair]] = None,
    window: Optional[Box] = None,
    resolution: int = 201,
    cfg: Config = DEFAULT_CONFIG,
    form: str = "M2",
) -> bool:
    """Solution test through the 1-D Martinez-Legaz subdifferential.

    M2 (default): some candidate pair lies in the subdifferential at x and
    satisfies v * xbar >= t.  M1: some candidate lies in the
    subdifferential at both x and xbar.
    """
    if p.dimension != 1:
        raise DimensionError("Martinez-Legaz route is implemented for n=1 only")
    window = window or p.domain_window
    if candidate_pairs is None:
        candidate_pairs = default_ml_pairs(window)
    for pair in candidate_pairs:
        if not ml_member_1d(p.objective, x, pair, window, resolution, cfg):
            continue
        if form == "M2":
            if pair.v * xbar >= pair.t - cfg.eps_feas:
                return True
        elif form == "M1":
            if ml_member_1d(p.objective, xbar, pair, window, resolution, cfg):
                return True
        else:
            raise ValueError("form must be 'M1' or 'M2'")
    return False
