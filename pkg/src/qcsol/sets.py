"""Convex set descriptors: membership, grid sampling, polyhedral cones.

A set is the intersection of atoms (boxes, halfspaces, balls, linear
equalities).  Tangent/normal-cone extraction is restricted to polyhedral
atoms; curved sets are supported everywhere else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, NonPolyhedralError


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionError("box lo/hi lengths differ")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise ValueError("box has lo > hi")


@dataclass(frozen=True)
class Halfspace:
    """a . x <= b"""

    a: tuple
    b: float


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float


@dataclass(frozen=True)
class LinearEquality:
    """a . x = b"""

    a: tuple
    b: float


Atom = Union[Box, Halfspace, Ball, LinearEquality]


def _atom_dim(atom: Atom) -> int:
    if isinstance(atom, Box):
        return len(atom.lo)
    if isinstance(atom, (Halfspace, LinearEquality)):
        return len(atom.a)
    return len(atom.center)


def atom_violation(atom: Atom, x: np.ndarray) -> float:
    """Signed violation; <= 0 means the atom is satisfied."""
    if isinstance(atom, Box):
        lo = np.asarray(atom.lo)
        hi = np.asarray(atom.hi)
        return float(max(np.max(lo - x), np.max(x - hi)))
    if isinstance(atom, Halfspace):
        return float(np.dot(atom.a, x) - atom.b)
    if isinstance(atom, Ball):
        return float(np.linalg.norm(x - np.asarray(atom.center)) - atom.radius)
    if isinstance(atom, LinearEquality):
        return float(abs(np.dot(atom.a, x) - atom.b))
    raise TypeError(f"unknown atom {atom!r}")


@dataclass(frozen=True)
class ConvexSetDescriptor:
    dimension: int
    atoms: tuple = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionError("dimension must be >= 1")
        for atom in self.atoms:
            if _atom_dim(atom) != self.dimension:
                raise DimensionError(
                    f"atom {atom!r} has wrong dimension for n={self.dimension}"
                )

    @property
    def polyhedral(self) -> bool:
        return not any(isinstance(a, Ball) for a in self.atoms)


@dataclass(frozen=True)
class ConeRep:
    """Polyhedral cone {y : row . y <= 0 for each row}; equality rows give
    both orientations."""

    rows: tuple  # of coefficient tuples


def contains(S: ConvexSetDescriptor, x: Sequence[float], tol: float = 1e-9) -> bool:
    xv = np.asarray(x, dtype=float)
    if xv.size != S.dimension:
        raise DimensionError(
            f"point has dimension {xv.size}, set expects {S.dimension}"
        )
    return all(atom_violation(atom, xv) <= tol for atom in S.atoms)


def grid_nodes(window: Box, resolution: int) -> List[np.ndarray]:
    """All nodes of the regular grid over the window, row-major order."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    axes = [
        np.linspace(lo, hi, resolution) for lo, hi in zip(window.lo, window.hi)
    ]
    return [np.array(node) for node in itertools.product(*axes)]


def sample_grid(
    S: ConvexSetDescriptor, window: Box, resolution: int, tol: float = 1e-9
) -> List[np.ndarray]:
    """Grid nodes of the window that belong to S; deterministic order."""
    return [x for x in grid_nodes(window, resolution) if contains(S, x, tol)]


def tangent_polar_at(
    X: ConvexSetDescriptor, x: Sequence[float], eps_act: float = 1e-9
) -> ConeRep:
    """Tangent cone of a polyhedral X at x, as inequality rows.

    This equals the polar of the normal cone at x: directions y with
    row . y <= 0 for every atom face active at x.
    """
    if not X.polyhedral:
        raise NonPolyhedralError("cone extraction needs a polyhedral set")
    xv = np.asarray(x, dtype=float)
    rows: List[tuple] = []
    n = X.dimension
    for atom in X.atoms:
        if isinstance(atom, Halfspace):
            if abs(np.dot(atom.a, xv) - atom.b) <= eps_act:
                rows.append(tuple(float(c) for c in atom.a))
        elif isinstance(atom, LinearEquality):
            rows.append(tuple(float(c) for c in atom.a))
            rows.append(tuple(-float(c) for c in atom.a))
        elif isinstance(atom, Box):
            for i in range(n):
                unit = [0.0] * n
                if abs(xv[i] - atom.hi[i]) <= eps_act:
                    unit[i] = 1.0
                    rows.append(tuple(unit))
                elif abs(xv[i] - atom.lo[i]) <= eps_act:
                    unit[i] = -1.0
                    rows.append(tuple(unit))
    return ConeRep(tuple(rows))


def normal_cone_generators(
    X: ConvexSetDescriptor, x: Sequence[float], eps_act: float = 1e-9
) -> List[np.ndarray]:
    """Generators of the normal cone of a polyhedral X at x.

    Equality atoms contribute both orientations (free multipliers split
    into a positive pair).
    """
    if not X.polyhedral:
        raise NonPolyhedralError("cone extraction needs a polyhedral set")
    xv = np.asarray(x, dtype=float)
    gens: List[np.ndarray] = []
    n = X.dimension
    for atom in X.atoms:
        if isinstance(atom, Halfspace):
            if abs(np.dot(atom.a, xv) - atom.b) <= eps_act:
                gens.append(np.asarray(atom.a, dtype=float))
        elif isinstance(atom, LinearEquality):
            a = np.asarray(atom.a, dtype=float)
            gens.append(a)
            gens.append(-a)
        elif isinstance(atom, Box):
            for i in range(n):
                unit = np.zeros(n)
                if abs(xv[i] - atom.hi[i]) <= eps_act:
                    unit[i] = 1.0
                    gens.append(unit)
                elif abs(xv[i] - atom.lo[i]) <= eps_act:
                    unit[i] = -1.0
                    gens.append(unit)
    return gens
