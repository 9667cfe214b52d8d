"""Scalar expressions of n variables: parsing, evaluation and gradients.

The grammar (documented in docs/grammar.md) covers infix arithmetic with
integer powers, ``sqrt``, ``abs`` and piecewise expressions whose guards
are conjunctions of linear inequalities.  Gradients are exact, computed by
forward-mode dual numbers, one pass per coordinate; ``grad_fd`` provides
the independent central-difference cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import BoundaryMismatchError, DimensionError, EvalError, ParseError

GUARD_TOL = 1e-12  # absolute slack when deciding whether a guard holds


# ---------------------------------------------------------------------------
# AST nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Sqrt:
    operand: "Expr"


@dataclass(frozen=True)
class Abs:
    operand: "Expr"


@dataclass(frozen=True)
class LinearIneq:
    """coeffs . x <= bound"""

    coeffs: tuple
    bound: float


@dataclass(frozen=True)
class Piecewise:
    branches: tuple  # of (tuple of LinearIneq, Expr)


Expr = Union[Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Abs, Piecewise]

# Parsed expression in n variables; "ExprAst" in problem files.
ExprAst = Expr


# ---------------------------------------------------------------------------
# Dual numbers (forward-mode AD)
# ---------------------------------------------------------------------------

class Dual:
    __slots__ = ("val", "dot")

    def __init__(self, val: float, dot: float = 0.0):
        self.val = val
        self.dot = dot

    def __add__(self, o):
        return Dual(self.val + o.val, self.dot + o.dot)

    def __sub__(self, o):
        return Dual(self.val - o.val, self.dot - o.dot)

    def __mul__(self, o):
        return Dual(self.val * o.val, self.val * o.dot + self.dot * o.val)

    def __truediv__(self, o):
        if o.val == 0.0:
            raise EvalError("division by zero")
        v = self.val / o.val
        return Dual(v, (self.dot - v * o.dot) / o.val)

    def ipow(self, k: int) -> "Dual":
        v = self.val ** k
        if k == 0:
            return Dual(1.0, 0.0)
        return Dual(v, k * self.val ** (k - 1) * self.dot)

    def sqrt(self) -> "Dual":
        if self.val < 0.0:
            raise EvalError("sqrt of negative value")
        r = math.sqrt(self.val)
        if self.dot == 0.0:
            return Dual(r, 0.0)
        if r == 0.0:
            raise EvalError("sqrt not differentiable at zero")
        return Dual(r, self.dot / (2.0 * r))

    def abs(self) -> "Dual":
        if self.val > 0.0:
            return Dual(self.val, self.dot)
        if self.val < 0.0:
            return Dual(-self.val, -self.dot)
        if self.dot == 0.0:
            return Dual(0.0, 0.0)
        raise EvalError("abs not differentiable at zero")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _guard_holds(guard, point) -> bool:
    return all(
        float(np.dot(ineq.coeffs, point)) <= ineq.bound + GUARD_TOL for ineq in guard
    )


def _select_branches(pw: Piecewise, point):
    hit = [br for guard, br in pw.branches if _guard_holds(guard, point)]
    if not hit:
        raise EvalError(f"point {tuple(point)} outside every piecewise guard")
    return hit


def _eval_float(e: Expr, x, eps: float) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return float(x[e.index - 1])
    if isinstance(e, Add):
        return _eval_float(e.left, x, eps) + _eval_float(e.right, x, eps)
    if isinstance(e, Sub):
        return _eval_float(e.left, x, eps) - _eval_float(e.right, x, eps)
    if isinstance(e, Mul):
        return _eval_float(e.left, x, eps) * _eval_float(e.right, x, eps)
    if isinstance(e, Div):
        den = _eval_float(e.right, x, eps)
        if den == 0.0:
            raise EvalError("division by zero")
        return _eval_float(e.left, x, eps) / den
    if isinstance(e, Pow):
        return _eval_float(e.base, x, eps) ** e.exponent
    if isinstance(e, Neg):
        return -_eval_float(e.operand, x, eps)
    if isinstance(e, Sqrt):
        v = _eval_float(e.operand, x, eps)
        if v < 0.0:
            raise EvalError("sqrt of negative value")
        return math.sqrt(v)
    if isinstance(e, Abs):
        return abs(_eval_float(e.operand, x, eps))
    if isinstance(e, Piecewise):
        hit = _select_branches(e, x)
        values = [_eval_float(br, x, eps) for br in hit]
        first = values[0]
        for v in values[1:]:
            if abs(v - first) > eps:
                raise BoundaryMismatchError(
                    f"branch values differ at {tuple(x)}: {values}"
                )
        return first
    raise TypeError(f"unknown node {e!r}")


def _eval_dual(e: Expr, x, seed: int, eps_val: float, eps_dir: float) -> Dual:
    """Evaluate with the seed-th coordinate carrying a unit perturbation."""
    if isinstance(e, Const):
        return Dual(e.value, 0.0)
    if isinstance(e, Var):
        return Dual(float(x[e.index - 1]), 1.0 if e.index - 1 == seed else 0.0)
    if isinstance(e, Add):
        return _eval_dual(e.left, x, seed, eps_val, eps_dir) + _eval_dual(
            e.right, x, seed, eps_val, eps_dir
        )
    if isinstance(e, Sub):
        return _eval_dual(e.left, x, seed, eps_val, eps_dir) - _eval_dual(
            e.right, x, seed, eps_val, eps_dir
        )
    if isinstance(e, Mul):
        return _eval_dual(e.left, x, seed, eps_val, eps_dir) * _eval_dual(
            e.right, x, seed, eps_val, eps_dir
        )
    if isinstance(e, Div):
        return _eval_dual(e.left, x, seed, eps_val, eps_dir) / _eval_dual(
            e.right, x, seed, eps_val, eps_dir
        )
    if isinstance(e, Pow):
        return _eval_dual(e.base, x, seed, eps_val, eps_dir).ipow(e.exponent)
    if isinstance(e, Neg):
        inner = _eval_dual(e.operand, x, seed, eps_val, eps_dir)
        return Dual(-inner.val, -inner.dot)
    if isinstance(e, Sqrt):
        return _eval_dual(e.operand, x, seed, eps_val, eps_dir).sqrt()
    if isinstance(e, Abs):
        return _eval_dual(e.operand, x, seed, eps_val, eps_dir).abs()
    if isinstance(e, Piecewise):
        hit = _select_branches(e, x)
        results = [_eval_dual(br, x, seed, eps_val, eps_dir) for br in hit]
        first = results[0]
        for r in results[1:]:
            if abs(r.val - first.val) > eps_val:
                raise BoundaryMismatchError(
                    f"branch values differ at {tuple(x)}"
                )
            scale = 1.0 + abs(first.dot)
            if abs(r.dot - first.dot) > eps_dir * scale:
                raise BoundaryMismatchError(
                    f"branch gradients differ at {tuple(x)}: "
                    f"{first.dot} vs {r.dot}"
                )
        return first
    raise TypeError(f"unknown node {e!r}")


def evaluate(f: Expr, x: Sequence[float], eps: float = 1e-9) -> float:
    """Value of f at x.  Raises EvalError on domain violations."""
    return _eval_float(f, np.asarray(x, dtype=float), eps)


def grad(f: Expr, x: Sequence[float], dimension: Optional[int] = None,
         eps_val: float = 1e-9, eps_dir: float = 1e-8) -> np.ndarray:
    """Exact gradient via dual numbers, one forward pass per coordinate."""
    xv = np.asarray(x, dtype=float)
    n = dimension if dimension is not None else xv.size
    if xv.size != n:
        raise DimensionError(f"point has dimension {xv.size}, expected {n}")
    return np.array(
        [_eval_dual(f, xv, i, eps_val, eps_dir).dot for i in range(n)]
    )


def grad_fd(f: Expr, x: Sequence[float], h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient, the independent oracle for grad()."""
    xv = np.asarray(x, dtype=float)
    out = np.empty(xv.size)
    for i in range(xv.size):
        xp = xv.copy()
        xm = xv.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (evaluate(f, xp) - evaluate(f, xm)) / (2.0 * h)
    return out


def free_variables(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.index}
    if isinstance(e, (Const,)):
        return set()
    if isinstance(e, (Add, Sub, Mul, Div)):
        return free_variables(e.left) | free_variables(e.right)
    if isinstance(e, Pow):
        return free_variables(e.base)
    if isinstance(e, (Neg, Sqrt, Abs)):
        return free_variables(e.operand)
    if isinstance(e, Piecewise):
        out = set()
        for guard, br in e.branches:
            for ineq in guard:
                out |= {i + 1 for i, c in enumerate(ineq.coeffs) if c != 0.0}
            out |= free_variables(br)
        return out
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_SYMBOLS = ("<=", ">=", "+", "-", "*", "/", "^", "(", ")", "[", "]", ":", ";", "&", ",")


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        two = text[i:i + 2]
        if two in ("<=", ">="):
            tokens.append(("op", two, i))
            i += 2
            continue
        if ch in "+-*/^()[]:;&,":
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Recursive-descent parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, dimension: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.dim = dimension

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, off = self.peek()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", off)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expression()
        kind, text, off = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected trailing input {text!r}", off)
        return e

    def expression(self) -> Expr:
        e = self.term()
        while True:
            kind, text, off = self.peek()
            if text == "+":
                self.advance()
                e = Add(e, self.term())
            elif text == "-":
                self.advance()
                e = Sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, text, off = self.peek()
            if text == "*":
                self.advance()
                e = Mul(e, self.factor())
            elif text == "/":
                self.advance()
                e = Div(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        kind, text, off = self.peek()
        if text == "-":
            self.advance()
            return Neg(self.factor())
        if text == "+":
            self.advance()
            return self.factor()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, text, off = self.peek()
        if text == "^":
            self.advance()
            kind, text, off = self.peek()
            if kind != "num" or not text.isdigit():
                raise ParseError("exponent must be a nonnegative integer literal", off)
            self.advance()
            return Pow(base, int(text))
        return base

    def atom(self) -> Expr:
        kind, text, off = self.advance()
        if kind == "num":
            try:
                return Const(float(text))
            except ValueError:
                raise ParseError(f"bad number literal {text!r}", off)
        if kind == "name":
            if text == "sqrt" or text == "abs":
                self.expect("(")
                inner = self.expression()
                self.expect(")")
                return Sqrt(inner) if text == "sqrt" else Abs(inner)
            if text == "pw":
                return self.piecewise(off)
            if text.startswith("x") and text[1:].isdigit():
                idx = int(text[1:])
                if idx < 1 or idx > self.dim:
                    raise ParseError(
                        f"variable {text} out of range for dimension {self.dim}", off
                    )
                return Var(idx)
            raise ParseError(f"unknown identifier {text!r}", off)
        if text == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(
            f"expected an operand, found {text or 'end of input'!r}", off
        )

    def piecewise(self, off: int) -> Expr:
        self.expect("[")
        branches = []
        while True:
            guard = self.guard()
            self.expect(":")
            branch = self.expression()
            branches.append((tuple(guard), branch))
            kind, text, _ = self.peek()
            if text == ";":
                self.advance()
                continue
            break
        self.expect("]")
        return Piecewise(tuple(branches))

    def guard(self):
        ineqs = [self.comparison()]
        while self.peek()[1] == "&":
            self.advance()
            ineqs.append(self.comparison())
        return ineqs

    def comparison(self) -> LinearIneq:
        start_off = self.peek()[2]
        lhs = self.expression()
        kind, text, off = self.peek()
        if text not in ("<=", ">="):
            raise ParseError("expected '<=' or '>=' in guard", off)
        self.advance()
        rhs = self.expression()
        diff = Sub(lhs, rhs)
        coeffs, const = _extract_linear(diff, self.dim, start_off)
        if text == "<=":
            return LinearIneq(tuple(coeffs), -const)
        return LinearIneq(tuple(-c for c in coeffs), const)


def _extract_linear(e: Expr, dim: int, off: int):
    """Coefficients of a guard expression, which must be affine."""
    zero = np.zeros(dim)
    try:
        c0 = _eval_float(e, zero, 1e-9)
        coeffs = []
        for i in range(dim):
            unit = zero.copy()
            unit[i] = 1.0
            coeffs.append(_eval_float(e, unit, 1e-9) - c0)
        # Affinity probe at a generic point.
        probe = np.array([0.734 + 0.211 * i for i in range(dim)])
        expected = c0 + float(np.dot(coeffs, probe))
        actual = _eval_float(e, probe, 1e-9)
    except EvalError:
        raise ParseError("guard expression must be affine", off)
    if abs(actual - expected) > 1e-9 * (1.0 + abs(expected)):
        raise ParseError("guard expression must be affine", off)
    return coeffs, c0


def parse(text: str, dimension: int) -> Expr:
    """Parse an expression in variables x1..x{dimension}."""
    if dimension < 1:
        raise DimensionError("dimension must be >= 1")
    return _Parser(text, dimension).parse()


# ---------------------------------------------------------------------------
# Pretty printer (canonical; parse . pretty == identity on ASTs)
# ---------------------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    if isinstance(e, Const) and e.value < 0:
        return 3
    return 5


def _fmt(e: Expr, min_prec: int) -> str:
    s = _fmt_raw(e)
    if _prec(e) < min_prec:
        return f"({s})"
    return s


def _fmt_raw(e: Expr) -> str:
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Add):
        return f"{_fmt(e.left, 1)} + {_fmt(e.right, 2)}"
    if isinstance(e, Sub):
        return f"{_fmt(e.left, 1)} - {_fmt(e.right, 2)}"
    if isinstance(e, Mul):
        return f"{_fmt(e.left, 2)} * {_fmt(e.right, 3)}"
    if isinstance(e, Div):
        return f"{_fmt(e.left, 2)} / {_fmt(e.right, 3)}"
    if isinstance(e, Neg):
        return f"-{_fmt(e.operand, 4)}"
    if isinstance(e, Pow):
        return f"{_fmt(e.base, 5)}^{e.exponent}"
    if isinstance(e, Sqrt):
        return f"sqrt({_fmt(e.operand, 0)})"
    if isinstance(e, Abs):
        return f"abs({_fmt(e.operand, 0)})"
    if isinstance(e, Piecewise):
        parts = []
        for guard, br in e.branches:
            gtxt = " & ".join(_fmt_ineq(ineq) for ineq in guard)
            parts.append(f"{gtxt}: {_fmt(br, 0)}")
        return "pw[" + "; ".join(parts) + "]"
    raise TypeError(f"unknown node {e!r}")


def _fmt_ineq(ineq: LinearIneq) -> str:
    terms = " + ".join(
        f"{_fmt_coeff(c)}*x{i + 1}" for i, c in enumerate(ineq.coeffs)
    )
    return f"{terms} <= {_fmt_coeff(ineq.bound)}"


def _fmt_coeff(c: float) -> str:
    return f"({c!r})" if c < 0 else repr(c)


def pretty(e: Expr) -> str:
    """Canonical text form; re-parsing it reproduces the AST."""
    return _fmt(e, 0)
