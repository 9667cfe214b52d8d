"""Gordan's theorem of the alternative and the collinearity test.

Both are backed by a self-contained dense two-phase simplex kernel with
Bland's anti-cycling rule.  Systems here are tiny (a handful of rows and
columns), so the tableau form is more than adequate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .errors import KernelError, ZeroVectorError

_MAX_ITER = 10_000


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[np.ndarray]
    objective: float


def _run_simplex(T, basis, cost, allowed, tol):
    """Minimize cost over the tableau in place; Bland's rule throughout."""
    m = T.shape[0]
    for _ in range(_MAX_ITER):
        cb = cost[basis]
        # reduced costs r_j = c_j - c_B . B^-1 A_j  (tableau already reduced)
        reduced = cost - cb @ T[:, :-1]
        entering = -1
        for j in range(T.shape[1] - 1):
            if allowed[j] and reduced[j] < -tol:
                entering = j
                break
        if entering < 0:
            return
        ratio = math.inf
        leaving = -1
        for i in range(m):
            a = T[i, entering]
            if a > tol:
                r = T[i, -1] / a
                if r < ratio - tol or (
                    abs(r - ratio) <= tol
                    and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    ratio = r
                    leaving = i
        if leaving < 0:
            raise _Unbounded()
        piv = T[leaving, entering]
        T[leaving] /= piv
        for i in range(m):
            if i != leaving and T[i, entering] != 0.0:
                T[i] -= T[i, entering] * T[leaving]
        basis[leaving] = entering
    raise KernelError("simplex iteration cap exceeded")


class _Unbounded(Exception):
    pass


def solve_lp(
    c: Sequence[float],
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    tol: float = 1e-9,
) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    c = np.asarray(c, dtype=float)
    n = c.size
    A_ub = np.empty((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, float))
    b_ub = np.empty(0) if b_ub is None else np.atleast_1d(np.asarray(b_ub, float))
    A_eq = np.empty((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, float))
    b_eq = np.empty(0) if b_eq is None else np.atleast_1d(np.asarray(b_eq, float))
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    n_slack = m_ub
    n_total = n + n_slack + m  # artificials for every row, unused ones stay 0
    A = np.zeros((m, n_total))
    b = np.concatenate([b_ub, b_eq])
    A[:m_ub, :n] = A_ub
    A[m_ub:, :n] = A_eq
    for i in range(m_ub):
        A[i, n + i] = 1.0
    for i in range(m):
        if b[i] < 0:
            A[i] *= -1.0
            b = b.copy()
            b[i] *= -1.0
    art_start = n + n_slack
    basis: List[int] = []
    for i in range(m):
        # use the slack as the initial basic variable when it survived the
        # sign flip with coefficient +1
        if i < m_ub and A[i, n + i] == 1.0:
            basis.append(n + i)
            A[i, art_start + i] = 0.0
        else:
            A[i, art_start + i] = 1.0
            basis.append(art_start + i)

    T = np.hstack([A, b.reshape(-1, 1)])
    allowed = np.ones(n_total, dtype=bool)

    # Phase 1: minimize the sum of artificials.
    cost1 = np.zeros(n_total)
    cost1[art_start:] = 1.0
    if any(bi >= art_start for bi in basis):
        try:
            _run_simplex(T, basis, cost1, allowed, tol)
        except _Unbounded:  # phase-1 objective is bounded below by zero
            raise KernelError("phase-1 reported unbounded")
        obj1 = float(cost1[basis] @ T[:, -1])
        if obj1 > tol:
            return LPResult("infeasible", None, math.nan)
        # Drive leftover zero-level artificials out of the basis.
        for i in range(m):
            if basis[i] >= art_start:
                piv_col = -1
                for j in range(art_start):
                    if abs(T[i, j]) > tol:
                        piv_col = j
                        break
                if piv_col >= 0:
                    piv = T[i, piv_col]
                    T[i] /= piv
                    for k in range(m):
                        if k != i and T[k, piv_col] != 0.0:
                            T[k] -= T[k, piv_col] * T[i]
                    basis[i] = piv_col
    allowed[art_start:] = False

    # Phase 2: maximize c.x == minimize (-c).x.
    cost2 = np.zeros(n_total)
    cost2[:n] = -c
    try:
        _run_simplex(T, basis, cost2, allowed, tol)
    except _Unbounded:
        return LPResult("unbounded", None, math.inf)
    x = np.zeros(n_total)
    for i, bi in enumerate(basis):
        x[bi] = T[i, -1]
    return LPResult("optimal", x[:n], float(c @ x[:n]))


# ---------------------------------------------------------------------------
# Strict feasibility (maximized margin over the unit box)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeasibilityResult:
    point: Optional[np.ndarray]
    margin: float


def strict_feasibility(
    A_le=None,
    b_le=None,
    A_strict=None,
    b_strict=None,
    cfg: Config = DEFAULT_CONFIG,
) -> FeasibilityResult:
    """Find y in [-1,1]^n with A_le y <= b_le and A_strict y < b_strict.

    Strictness is realized by maximizing the margin eps subject to
    A_strict y <= b_strict - eps; the result is a witness when the optimal
    margin exceeds eps_lp, otherwise point is None.
    """
    A_le = None if A_le is None or len(A_le) == 0 else np.atleast_2d(np.asarray(A_le, float))
    A_strict = (
        None
        if A_strict is None or len(A_strict) == 0
        else np.atleast_2d(np.asarray(A_strict, float))
    )
    if A_le is None and A_strict is None:
        return FeasibilityResult(np.zeros(0), math.inf)
    n = (A_le if A_le is not None else A_strict).shape[1]

    if A_strict is None:
        # Pure feasibility over the box; y = 0 first, then the kernel.
        b_le = np.atleast_1d(np.asarray(b_le, float))
        if np.all(b_le >= -cfg.eps_lp):
            return FeasibilityResult(np.zeros(n), math.inf)
        res = _box_lp(np.zeros(n + 1), A_le, b_le, None, None, n, cfg)
        if res.status != "optimal":
            return FeasibilityResult(None, -math.inf)
        return FeasibilityResult(res.x[:n] - 1.0, math.inf)

    b_strict = np.atleast_1d(np.asarray(b_strict, float))
    b_le = (
        np.atleast_1d(np.asarray(b_le, float)) if A_le is not None else None
    )
    # Variables: z = y + 1 in [0,2]^n, plus eps >= 0; maximize eps.
    c = np.zeros(n + 1)
    c[n] = 1.0
    res = _box_lp(c, A_le, b_le, A_strict, b_strict, n, cfg)
    if res.status != "optimal":
        return FeasibilityResult(None, -math.inf)
    margin = res.objective
    if margin <= cfg.eps_lp:
        return FeasibilityResult(None, margin)
    return FeasibilityResult(res.x[:n] - 1.0, margin)


def _box_lp(c, A_le, b_le, A_strict, b_strict, n, cfg) -> LPResult:
    rows = []
    rhs = []
    ones = np.ones(n)
    if A_le is not None:
        for a, b in zip(A_le, b_le):
            rows.append(np.concatenate([a, [0.0]]))
            rhs.append(b + float(a @ ones))
    if A_strict is not None:
        for a, b in zip(A_strict, b_strict):
            rows.append(np.concatenate([a, [1.0]]))
            rhs.append(b + float(a @ ones))
    for i in range(n):  # z_i <= 2
        unit = np.zeros(n + 1)
        unit[i] = 1.0
        rows.append(unit)
        rhs.append(2.0)
    # eps is bounded by the strict rows plus the box, but cap it anyway so
    # the degenerate all-zero-rows case stays bounded
    cap = np.zeros(n + 1)
    cap[n] = 1.0
    if A_strict is not None:
        bound = 1.0 + max(
            abs(float(b)) + float(np.abs(a).sum())
            for a, b in zip(A_strict, b_strict)
        )
    else:
        bound = 1.0
    rows.append(cap)
    rhs.append(bound)
    return solve_lp(c, np.array(rows), np.array(rhs), tol=cfg.eps_lp)


# ---------------------------------------------------------------------------
# Gordan's alternative
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GordanResult:
    branch: str  # "primal" | "dual"
    witness: np.ndarray
    margin: float


def gordan_alternative(A, cfg: Config = DEFAULT_CONFIG) -> GordanResult:
    """Decide which branch of Gordan's alternative holds for the matrix A.

    Primal: x with A x > 0 (componentwise).  Dual: y >= 0, y != 0 with
    A^T y = 0, normalized to sum to one.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix must be finite")
    m, n = A.shape
    res = strict_feasibility(None, None, -A, np.zeros(m), cfg)
    if res.point is not None:
        return GordanResult("primal", res.point, res.margin)
    dual = dual_certificate(A, cfg)
    if dual is None:
        raise KernelError("neither Gordan branch is certifiable at tolerance")
    return GordanResult("dual", dual, res.margin)


def dual_certificate(A, cfg: Config = DEFAULT_CONFIG) -> Optional[np.ndarray]:
    """y >= 0 with A^T y = 0 and sum(y) = 1, or None if infeasible."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    m, n = A.shape
    A_eq = np.vstack([A.T, np.ones((1, m))])
    b_eq = np.concatenate([np.zeros(n), [1.0]])
    res = solve_lp(np.zeros(m), A_eq=A_eq, b_eq=b_eq, tol=cfg.eps_lp)
    if res.status != "optimal":
        return None
    return res.x


def primal_margin(A, cfg: Config = DEFAULT_CONFIG) -> float:
    """Best strict margin of A x > 0 over the unit box (<= eps_lp: infeasible)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    res = strict_feasibility(None, None, -A, np.zeros(A.shape[0]), cfg)
    return res.margin


# ---------------------------------------------------------------------------
# Collinearity with a positive factor
# ---------------------------------------------------------------------------

def collinearity_factor(
    a: Sequence[float], b: Sequence[float], cfg: Config = DEFAULT_CONFIG
) -> Optional[float]:
    """p > 0 with b = p a, when it exists.

    The least-squares factor (a.b)/(a.a) is the only candidate; it is
    verified against ||b - p a|| <= eps_dir * ||b||.
    """
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if np.linalg.norm(av) <= cfg.eps_grad or np.linalg.norm(bv) <= cfg.eps_grad:
        raise ZeroVectorError("collinearity test needs nonzero vectors")
    p = float(np.dot(av, bv) / np.dot(av, av))
    if p <= 0.0:
        return None
    if np.linalg.norm(bv - p * av) > cfg.eps_dir * np.linalg.norm(bv):
        return None
    return p
