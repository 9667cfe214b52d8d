"""Inequality-constrained machinery: active sets, constraint
qualifications, Lagrange multipliers and the multiplier-based
characterizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .alternatives import solve_lp, strict_feasibility
from .charac import membership as plain_membership
from .charac import _cosine_distance, check_anchor_hypothesis
from .config import DEFAULT_CONFIG, Config
from .core import (
    CharacVariant,
    ConstrainedProblem,
    MembershipVerdict,
    MultiplierVector,
    Problem,
    as_point,
)
from .errors import (
    HypothesisViolatedError,
    InfeasibleError,
    NoMultiplierError,
    NotOpenGroundSetError,
)
from .expr import evaluate, grad
from .sets import (
    Box,
    ConvexSetDescriptor,
    contains,
    grid_nodes,
    normal_cone_generators,
    tangent_polar_at,
)


@dataclass(frozen=True)
class ActiveSetReport:
    active: tuple            # indices i with |g_i(x)| <= eps_act (0-based)
    strictly_positive: tuple  # active indices with lambda_i > eps_lp


@dataclass(frozen=True)
class CQReport:
    holds: bool
    direction: Optional[tuple]


def constraint_values(cp: ConstrainedProblem, x) -> np.ndarray:
    xv = as_point(x, cp.dimension)
    return np.array([evaluate(g, xv) for g in cp.constraints])


def is_feasible(cp: ConstrainedProblem, x, cfg: Config = DEFAULT_CONFIG) -> bool:
    xv = as_point(x, cp.dimension)
    if not contains(cp.ground_set, xv, cfg.eps_feas):
        return False
    return bool(np.all(constraint_values(cp, xv) <= cfg.eps_feas))


def feasible_grid(
    cp: ConstrainedProblem, resolution: int, cfg: Config = DEFAULT_CONFIG
) -> List[np.ndarray]:
    return [
        x
        for x in grid_nodes(cp.domain_window, resolution)
        if is_feasible(cp, x, cfg)
    ]


def active_set(
    cp: ConstrainedProblem,
    x,
    lam: Optional[MultiplierVector] = None,
    cfg: Config = DEFAULT_CONFIG,
) -> ActiveSetReport:
    """Indices of active constraints at a feasible point."""
    xv = as_point(x, cp.dimension)
    if not is_feasible(cp, xv, cfg):
        raise InfeasibleError(f"point {tuple(xv)} is infeasible")
    vals = constraint_values(cp, xv)
    active = tuple(i for i, v in enumerate(vals) if abs(v) <= cfg.eps_act)
    positive = ()
    if lam is not None:
        positive = tuple(i for i in active if lam.lambdas[i] > cfg.eps_lp)
    return ActiveSetReport(active, positive)


def check_gmfcq(
    cp: ConstrainedProblem, xbar, cfg: Config = DEFAULT_CONFIG
) -> CQReport:
    """Generalized MFCQ: a tangent direction strictly decreasing every
    active constraint."""
    xb = as_point(xbar, cp.dimension)
    report = active_set(cp, xb, cfg=cfg)
    if not report.active:
        return CQReport(True, tuple(0.0 for _ in range(cp.dimension)))
    strict_rows = [grad(cp.constraints[i], xb, cp.dimension) for i in report.active]
    cone = tangent_polar_at(cp.ground_set, xb, cfg.eps_act)
    A_le = [list(row) for row in cone.rows] or None
    b_le = [0.0] * len(cone.rows) if cone.rows else None
    res = strict_feasibility(A_le, b_le, strict_rows, [0.0] * len(strict_rows), cfg)
    if res.point is None:
        return CQReport(False, None)
    return CQReport(True, tuple(float(v) for v in res.point))


def solve_multipliers(
    cp: ConstrainedProblem, xbar, cfg: Config = DEFAULT_CONFIG
) -> MultiplierVector:
    """One KKT multiplier vector at xbar, by linear feasibility.

    Inactive multipliers are pinned to zero.  For an unconstrained ground
    set the stationarity equation is solved exactly; for a polyhedral one
    the residual is required to lie in the normal cone at xbar.
    """
    xb = as_point(xbar, cp.dimension)
    report = active_set(cp, xb, cfg=cfg)
    gf = grad(cp.objective, xb, cp.dimension)
    active_grads = [grad(cp.constraints[i], xb, cp.dimension) for i in report.active]
    normals = normal_cone_generators(cp.ground_set, xb, cfg.eps_act)

    cols = active_grads + normals
    k = len(active_grads)
    if not cols:
        if float(np.linalg.norm(gf)) > cfg.eps_lp:
            raise NoMultiplierError(
                "stationarity cannot hold: nonzero gradient, no active "
                "constraints, unconstrained ground set"
            )
        return MultiplierVector(tuple(0.0 for _ in range(cp.m)))

    # Solve sum_i mu_i col_i = -grad f(xbar), mu >= 0.
    A_eq = np.column_stack(cols)
    res = solve_lp(
        np.zeros(len(cols)), A_eq=A_eq, b_eq=-gf, tol=cfg.eps_lp
    )
    if res.status != "optimal":
        raise NoMultiplierError(
            f"no multiplier exists at {tuple(xb)} within tolerance"
        )
    lambdas = [0.0] * cp.m
    for idx, i in enumerate(report.active):
        lambdas[i] = float(res.x[idx])
    rank = int(np.linalg.matrix_rank(A_eq)) if cols else 0
    return MultiplierVector(tuple(lambdas), rank_deficient=rank < len(cols))


def stationarity_residual(
    cp: ConstrainedProblem, xbar, lam: MultiplierVector, cfg: Config = DEFAULT_CONFIG
) -> float:
    """Norm of grad f + sum lambda_i grad g_i modulo the normal cone at xbar."""
    xb = as_point(xbar, cp.dimension)
    resid = grad(cp.objective, xb, cp.dimension).copy()
    for i, g in enumerate(cp.constraints):
        if lam.lambdas[i] != 0.0:
            resid += lam.lambdas[i] * grad(g, xb, cp.dimension)
    normals = normal_cone_generators(cp.ground_set, xb, cfg.eps_act)
    if not normals:
        return float(np.max(np.abs(resid))) if resid.size else 0.0
    # Distance of -resid to the normal cone, via nonnegative least squares
    # replaced by LP feasibility at tolerance.
    res = solve_lp(
        np.zeros(len(normals)),
        A_eq=np.column_stack(normals),
        b_eq=-resid,
        tol=cfg.eps_lp,
    )
    if res.status == "optimal":
        recon = np.column_stack(normals) @ res.x
        return float(np.max(np.abs(recon + resid)))
    return float(np.max(np.abs(resid)))


def strict_index_set(
    cp: ConstrainedProblem, xbar, lam: MultiplierVector, cfg: Config = DEFAULT_CONFIG
) -> tuple:
    """Active indices with strictly positive multipliers."""
    return active_set(cp, xbar, lam, cfg).strictly_positive


def member_X1(
    cp: ConstrainedProblem,
    xbar,
    lam: MultiplierVector,
    x,
    cfg: Config = DEFAULT_CONFIG,
) -> bool:
    """x in X1(lambda): strict-multiplier constraints hold with equality,
    the rest with inequality, and x is in the ground set."""
    xv = as_point(x, cp.dimension)
    if not contains(cp.ground_set, xv, cfg.eps_feas):
        return False
    tilde = set(strict_index_set(cp, xbar, lam, cfg))
    vals = constraint_values(cp, xv)
    for i, v in enumerate(vals):
        if i in tilde:
            if abs(v) > cfg.eps_act:
                return False
        elif v > cfg.eps_feas:
            return False
    return True


def _as_plain_problem(cp: ConstrainedProblem) -> Problem:
    """The (PI) feasible set as a plain problem for the unconstrained
    predicates; constraint atoms are enforced separately via is_feasible."""
    return Problem(
        objective=cp.objective,
        feasible_set=cp.ground_set,
        dimension=cp.dimension,
        domain_window=cp.domain_window,
    )


def membership_constrained(
    cp: ConstrainedProblem,
    xbar,
    lam: MultiplierVector,
    x,
    variant: CharacVariant,
    cfg: Config = DEFAULT_CONFIG,
) -> MembershipVerdict:
    """Membership for the primed and double-primed variants."""
    xb = as_point(xbar, cp.dimension)
    xv = as_point(x, cp.dimension)
    g0 = grad(cp.objective, xb, cp.dimension)
    if float(np.linalg.norm(g0)) <= cfg.eps_grad:
        raise HypothesisViolatedError(
            f"variant {variant.value} requires a nonzero gradient at the anchor"
        )

    residuals: Dict[str, float] = {}
    in_x1 = member_X1(cp, xbar, lam, xv, cfg)
    residuals["in_X1"] = 0.0 if in_x1 else 1.0

    if variant in (CharacVariant.SHATPP1, CharacVariant.SHATPP2):
        if cp.ground_set.atoms:
            raise NotOpenGroundSetError(
                "double-primed variants need an open (unconstrained) ground set"
            )
        ok = in_x1
        tilde = strict_index_set(cp, xbar, lam, cfg)
        for i in tilde:
            dot = float(grad(cp.constraints[i], xb, cp.dimension) @ (xv - xb))
            residuals[f"active_gradient_dot_{i}"] = dot
            if variant is CharacVariant.SHATPP1:
                ok = ok and abs(dot) <= cfg.eps_feas
            else:
                ok = ok and dot >= -cfg.eps_feas
        g = grad(cp.objective, xv, cp.dimension)
        gnorm = float(np.linalg.norm(g))
        residuals["gradient_norm"] = gnorm
        ok = ok and gnorm > cfg.eps_grad
        if gnorm > cfg.eps_grad:
            cd = _cosine_distance(g, g0)
            residuals["cosine_distance"] = cd
            ok = ok and cd <= cfg.eps_dir
        return MembershipVerdict(tuple(float(c) for c in xv), variant, ok, residuals)

    base = variant.unconstrained_base
    plain = plain_membership(_as_plain_problem(cp), xb, xv, base, cfg)
    feas = bool(np.all(constraint_values(cp, xv) <= cfg.eps_feas))
    residuals.update(plain.residuals)
    residuals["constraints_feasible"] = 0.0 if feas else 1.0
    return MembershipVerdict(
        tuple(float(c) for c in xv), variant, in_x1 and feas and plain.member, residuals
    )


def enumerate_constrained(
    cp: ConstrainedProblem,
    xbar,
    lam: MultiplierVector,
    variant: CharacVariant,
    resolution: int,
    cfg: Config = DEFAULT_CONFIG,
) -> List[tuple]:
    """Grid enumeration of a primed/double-primed characterization."""
    out = []
    for x in feasible_grid(cp, resolution, cfg):
        if membership_constrained(cp, xbar, lam, x, variant, cfg).member:
            out.append(tuple(float(c) for c in x))
    return out


def lagrangian(cp: ConstrainedProblem, lam: MultiplierVector, x) -> float:
    xv = as_point(x, cp.dimension)
    val = evaluate(cp.objective, xv)
    for coeff, g in zip(lam.lambdas, cp.constraints):
        if coeff != 0.0:
            val += coeff * evaluate(g, xv)
    return val


def lagrangian_constancy(
    cp: ConstrainedProblem,
    xbar,
    lam: MultiplierVector,
    solutions: Sequence,
    cfg: Config = DEFAULT_CONFIG,
) -> bool:
    """The Lagrangian takes one value over the listed solutions."""
    base = lagrangian(cp, lam, xbar)
    return all(
        abs(lagrangian(cp, lam, x) - base) <= cfg.eps_feas for x in solutions
    )
