"""Sampled verification of generalized-convexity hypotheses.

These checks are falsifiers, not proofs: "holds" means no violation was
found on the sampled pairs; a returned counterexample always re-evaluates
to a violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .expr import ExprAst, evaluate, grad
from .sets import Box


@dataclass(frozen=True)
class ConvexityReport:
    holds: bool
    checked: int
    counterexample: Optional[tuple] = None  # (x, y, t) or (x, y)


def _sample_box(window: Box, rng: np.random.Generator, margin: float) -> np.ndarray:
    lo = np.asarray(window.lo) + margin
    hi = np.asarray(window.hi) - margin
    return rng.uniform(lo, hi)


def check_quasiconvex(
    f: ExprAst,
    window: Box,
    pairs: int = 500,
    t_steps: int = 10,
    cfg: Config = DEFAULT_CONFIG,
) -> ConvexityReport:
    """Sample segments and test f(x + t(y-x)) <= max(f(x), f(y))."""
    rng = np.random.default_rng(cfg.seed)
    ts = np.linspace(0.0, 1.0, t_steps + 1)
    for _ in range(pairs):
        x = _sample_box(window, rng, cfg.delta_open)
        y = _sample_box(window, rng, cfg.delta_open)
        bound = max(evaluate(f, x), evaluate(f, y))
        for t in ts:
            z = x + t * (y - x)
            if evaluate(f, z) > bound + cfg.eps_feas:
                return ConvexityReport(False, pairs, (tuple(x), tuple(y), float(t)))
    return ConvexityReport(True, pairs)


def check_levelset_convex(
    f: ExprAst,
    alpha: float,
    window: Box,
    resolution: int = 11,
    cfg: Config = DEFAULT_CONFIG,
) -> bool:
    """Midpoint convexity of the lower level set {f <= alpha} on the grid."""
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    from .sets import grid_nodes

    level = [x for x in grid_nodes(window, resolution) if evaluate(f, x) <= alpha]
    for i, u in enumerate(level):
        for v in level[i + 1:]:
            mid = 0.5 * (u + v)
            if evaluate(f, mid) > alpha + cfg.eps_feas:
                return False
    return True


def check_first_order_qcx(
    f: ExprAst,
    window: Box,
    pairs: int = 500,
    cfg: Config = DEFAULT_CONFIG,
) -> ConvexityReport:
    """Test the implication f(y) <= f(x)  =>  grad f(x) . (y - x) <= 0."""
    rng = np.random.default_rng(cfg.seed)
    for _ in range(pairs):
        x = _sample_box(window, rng, cfg.delta_open)
        y = _sample_box(window, rng, cfg.delta_open)
        if evaluate(f, y) <= evaluate(f, x):
            if float(grad(f, x) @ (y - x)) > cfg.eps_feas:
                return ConvexityReport(False, pairs, (tuple(x), tuple(y)))
    return ConvexityReport(True, pairs)


def check_pseudoconvex_at(
    f: ExprAst,
    x,
    window: Box,
    samples: int = 500,
    cfg: Config = DEFAULT_CONFIG,
) -> bool:
    """Pointwise pseudoconvexity at x: f(y) < f(x) forces a strict descent
    direction y - x."""
    rng = np.random.default_rng(cfg.seed)
    xv = np.asarray(x, dtype=float)
    fx = evaluate(f, xv)
    g = grad(f, xv)
    for _ in range(samples):
        y = _sample_box(window, rng, cfg.delta_open)
        if evaluate(f, y) < fx - cfg.eps_feas:
            gap = float(g @ (y - xv))
            if gap >= -cfg.eps_feas * float(np.linalg.norm(y - xv)):
                return False
    return True
