"""Solution-set characterizations from a known solution.

Implements the gradient dichotomy classifier and the membership
predicates for the hat/tilde/numbered S-families and the T-families,
plus windowed enumeration and cross-variant agreement reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .alternatives import collinearity_factor
from .config import DEFAULT_CONFIG, Config
from .core import CharacVariant, DichotomyReport, MembershipVerdict, Problem, as_point
from .errors import HypothesisViolatedError, InconsistentDichotomyError
from .expr import evaluate, grad
from .sets import contains, sample_grid


def _cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    return 1.0 - float(a @ b) / (float(np.linalg.norm(a)) * float(np.linalg.norm(b)))


def classify_dichotomy(
    p: Problem, known_solutions: Sequence, cfg: Config = DEFAULT_CONFIG
) -> DichotomyReport:
    """Classify the solution set by the gradient dichotomy.

    Alternative I: every inspected gradient is nonzero and the normalized
    gradients agree pairwise; II: every gradient is zero.  A mix raises
    InconsistentDichotomyError (bad inputs or miscalibrated tolerances).
    """
    if not known_solutions:
        raise ValueError("need at least one known solution")
    pts = [as_point(x, p.dimension) for x in known_solutions]
    for x in pts:
        if not contains(p.feasible_set, x, cfg.eps_feas):
            raise ValueError(f"claimed solution {tuple(x)} is not feasible")
    grads = [grad(p.objective, x, p.dimension) for x in pts]
    norms = [float(np.linalg.norm(g)) for g in grads]
    witnesses = tuple((tuple(float(v) for v in x), nrm) for x, nrm in zip(pts, norms))

    if all(nrm <= cfg.eps_grad for nrm in norms):
        return DichotomyReport("II", None, witnesses)
    if any(nrm <= cfg.eps_grad for nrm in norms):
        raise InconsistentDichotomyError(
            "solutions mix zero and nonzero gradients; inputs are not all "
            "minimizers or tolerances are miscalibrated"
        )
    units = [g / nrm for g, nrm in zip(grads, norms)]
    for i in range(len(units)):
        for j in range(i + 1, len(units)):
            if _cosine_distance(units[i], units[j]) > cfg.eps_dir:
                raise InconsistentDichotomyError(
                    f"normalized gradients at {tuple(pts[i])} and "
                    f"{tuple(pts[j])} differ beyond tolerance"
                )
    mean = np.mean(units, axis=0)
    common = mean / np.linalg.norm(mean)
    return DichotomyReport("I", tuple(float(c) for c in common), witnesses)


_NEEDS_ANCHOR_GRADIENT = {
    CharacVariant.SHAT1,
    CharacVariant.SHAT2,
    CharacVariant.S1,
    CharacVariant.S2,
    CharacVariant.S3,
    CharacVariant.S4,
    CharacVariant.S5,
}


def check_anchor_hypothesis(
    p: Problem, xbar, variant: CharacVariant, cfg: Config = DEFAULT_CONFIG
) -> np.ndarray:
    """Validate the anchor point and return its gradient."""
    xb = as_point(xbar, p.dimension)
    if not contains(p.feasible_set, xb, cfg.eps_feas):
        raise HypothesisViolatedError(f"anchor {tuple(xb)} is not feasible")
    g0 = grad(p.objective, xb, p.dimension)
    if variant in _NEEDS_ANCHOR_GRADIENT and np.linalg.norm(g0) <= cfg.eps_grad:
        raise HypothesisViolatedError(
            f"variant {variant.value} requires a nonzero gradient at the anchor"
        )
    return g0


def membership(
    p: Problem,
    xbar,
    x,
    variant: CharacVariant,
    cfg: Config = DEFAULT_CONFIG,
) -> MembershipVerdict:
    """Per-point membership verdict for one characterization variant.

    Residuals are signed slacks, one per named condition; the verdict is
    positive iff every condition holds within its tolerance.
    """
    if variant.requires_multiplier or variant in (
        CharacVariant.SHATPP1,
        CharacVariant.SHATPP2,
    ):
        raise ValueError(
            f"{variant.value} needs a multiplier; use kkt.membership_constrained"
        )
    g0 = check_anchor_hypothesis(p, xbar, variant, cfg)
    xb = as_point(xbar, p.dimension)
    xv = as_point(x, p.dimension)
    g = grad(p.objective, xv, p.dimension)
    d = xv - xb

    residuals: Dict[str, float] = {}
    conds: List[bool] = []

    in_S = contains(p.feasible_set, xv, cfg.eps_feas)
    residuals["in_feasible_set"] = 0.0 if in_S else 1.0
    conds.append(in_S)

    gnorm = float(np.linalg.norm(g))
    g0norm = float(np.linalg.norm(g0))
    anchor_dot = float(g0 @ d)      # grad f(xbar) . (x - xbar)
    point_dot = float(g @ (-d))    # grad f(x) . (xbar - x)

    def nonzero_gradient():
        residuals["gradient_norm"] = gnorm
        conds.append(gnorm > cfg.eps_grad)

    def same_direction():
        if gnorm <= cfg.eps_grad or g0norm <= cfg.eps_grad:
            residuals["cosine_distance"] = 2.0
            conds.append(False)
        else:
            cd = _cosine_distance(g, g0)
            residuals["cosine_distance"] = cd
            conds.append(cd <= cfg.eps_dir)

    def positive_factor():
        # T-hat family: exists p > 0 with grad f(x) = p grad f(xbar).
        if g0norm <= cfg.eps_grad and gnorm <= cfg.eps_grad:
            residuals["collinearity_gap"] = 0.0
            conds.append(True)
        elif g0norm <= cfg.eps_grad or gnorm <= cfg.eps_grad:
            residuals["collinearity_gap"] = float("inf")
            conds.append(False)
        else:
            factor = collinearity_factor(g0, g, cfg)
            if factor is None:
                residuals["collinearity_gap"] = float("inf")
                conds.append(False)
            else:
                residuals["collinearity_gap"] = 0.0
                residuals["collinearity_factor"] = factor
                conds.append(True)

    v = variant
    if v is CharacVariant.SHAT1:
        residuals["anchor_gradient_dot"] = anchor_dot
        conds.append(abs(anchor_dot) <= cfg.eps_feas)
        same_direction()
        nonzero_gradient()
    elif v is CharacVariant.SHAT2:
        residuals["anchor_gradient_dot"] = anchor_dot
        conds.append(anchor_dot <= cfg.eps_feas)
        same_direction()
        nonzero_gradient()
    elif v is CharacVariant.STILDE:
        residuals["gradient_norm"] = gnorm
        conds.append(gnorm <= cfg.eps_grad)
    elif v in (CharacVariant.S1, CharacVariant.T1):
        residuals["point_gradient_dot"] = point_dot
        conds.append(abs(point_dot) <= cfg.eps_feas)
        if v is CharacVariant.S1:
            nonzero_gradient()
    elif v in (CharacVariant.S2, CharacVariant.T2):
        residuals["point_gradient_dot"] = point_dot
        conds.append(point_dot >= -cfg.eps_feas)
        if v is CharacVariant.S2:
            nonzero_gradient()
    elif v in (CharacVariant.S3, CharacVariant.T3):
        residuals["dot_gap"] = point_dot - anchor_dot
        conds.append(abs(point_dot - anchor_dot) <= cfg.eps_feas)
        if v is CharacVariant.S3:
            nonzero_gradient()
    elif v in (CharacVariant.S4, CharacVariant.T4):
        residuals["dot_gap"] = point_dot - anchor_dot
        conds.append(point_dot - anchor_dot >= -cfg.eps_feas)
        if v is CharacVariant.S4:
            nonzero_gradient()
    elif v in (CharacVariant.S5, CharacVariant.T5):
        residuals["point_gradient_dot"] = point_dot
        residuals["anchor_gradient_dot"] = anchor_dot
        conds.append(abs(point_dot) <= cfg.eps_feas)
        conds.append(abs(anchor_dot) <= cfg.eps_feas)
        if v is CharacVariant.S5:
            nonzero_gradient()
    elif v is CharacVariant.THAT1:
        residuals["anchor_gradient_dot"] = anchor_dot
        conds.append(abs(anchor_dot) <= cfg.eps_feas)
        positive_factor()
    elif v is CharacVariant.THAT2:
        residuals["anchor_gradient_dot"] = anchor_dot
        conds.append(anchor_dot <= cfg.eps_feas)
        positive_factor()
    else:
        raise ValueError(f"unhandled variant {v!r}")

    return MembershipVerdict(tuple(float(c) for c in xv), v, all(conds), residuals)


def enumerate_solution_set(
    p: Problem,
    xbar,
    variant: CharacVariant,
    resolution: int,
    cfg: Config = DEFAULT_CONFIG,
) -> List[tuple]:
    """Grid points of the domain window whose membership verdict is positive."""
    check_anchor_hypothesis(p, xbar, variant, cfg)
    pts = sample_grid(p.feasible_set, p.domain_window, resolution, cfg.eps_feas)
    out = []
    for x in pts:
        if membership(p, xbar, x, variant, cfg).member:
            out.append(tuple(float(c) for c in x))
    return out


@dataclass(frozen=True)
class AgreementReport:
    agree: bool
    sets: Dict[str, tuple]
    differences: Dict[str, tuple]  # "V1/V2" -> (only_in_v1, only_in_v2)


def variant_agreement(
    p: Problem,
    xbar,
    variants: Sequence[CharacVariant],
    resolution: int,
    cfg: Config = DEFAULT_CONFIG,
) -> AgreementReport:
    """Pairwise symmetric differences of enumerated sets."""
    enumerated = {
        v.value: tuple(enumerate_solution_set(p, xbar, v, resolution, cfg))
        for v in variants
    }
    diffs: Dict[str, tuple] = {}
    agree = True
    names = [v.value for v in variants]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            sa, sb = set(enumerated[a]), set(enumerated[b])
            only_a = tuple(sorted(sa - sb))
            only_b = tuple(sorted(sb - sa))
            if only_a or only_b:
                agree = False
                diffs[f"{a}/{b}"] = (only_a, only_b)
    return AgreementReport(agree, enumerated, diffs)


def convex_gradient_constancy(
    p: Problem, xbar, solutions: Sequence, cfg: Config = DEFAULT_CONFIG
) -> bool:
    """For convex f the gradient is constant over the solution set."""
    xb = as_point(xbar, p.dimension)
    g0 = grad(p.objective, xb, p.dimension)
    scale = cfg.eps_dir * (1.0 + float(np.linalg.norm(g0)))
    for x in solutions:
        g = grad(p.objective, as_point(x, p.dimension), p.dimension)
        if float(np.linalg.norm(g - g0)) > scale:
            return False
    return True
