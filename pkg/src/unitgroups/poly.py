"""Sparse multivariate polynomials with exact coefficients.

Coefficients are ints, Fractions, or :class:`CycNumber` values; rational
cyclotomic numbers are demoted to Fraction/int so equal polynomials always
have identical term dictionaries.  Terms are ordered graded
lexicographically for printing and for the division algorithm.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

from .cyclotomic import CycNumber


def normalize_coeff(c):
    if isinstance(c, CycNumber):
        return c.simplify()
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return normalize_coeff(Fraction(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational, CycNumber)) and not isinstance(x, bool)


def grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


def default_names(m: int) -> tuple:
    if m == 1:
        return ("x",)
    if m == 2:
        return ("x", "y")
    return tuple(f"x{i + 1}" for i in range(m))


class MultiPoly:
    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple, object] | None = None):
        self.m = m
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != m:
                raise ValueError(f"exponent {exp} has wrong length for {m} variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            c = normalize_coeff(c)
            if c != 0:
                clean[exp] = c
        self.terms = clean

    @classmethod
    def constant(cls, m: int, c) -> MultiPoly:
        return cls(m, {(0,) * m: c})

    @classmethod
    def zero(cls, m: int) -> MultiPoly:
        return cls(m, {})

    @classmethod
    def one(cls, m: int) -> MultiPoly:
        return cls.constant(m, 1)

    @classmethod
    def variable(cls, m: int, i: int) -> MultiPoly:
        exp = [0] * m
        exp[i] = 1
        return cls(m, {tuple(exp): 1})

    @classmethod
    def gens(cls, m: int) -> tuple:
        return tuple(cls.variable(m, i) for i in range(m))

    @classmethod
    def univariate(cls, coeffs: Iterable) -> MultiPoly:
        """Polynomial in one variable from coefficients, lowest degree first."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.m, 0)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def leading_coeff(self):
        return self.leading_term()[1]

    def is_rational(self) -> bool:
        return not any(isinstance(c, CycNumber) for c in self.terms.values())

    def map_coeffs(self, fn: Callable) -> MultiPoly:
        return MultiPoly(self.m, {e: fn(c) for e, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.m != self.m:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if _is_scalar(other):
            return MultiPoly.constant(self.m, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return MultiPoly(self.m, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        inv = Fraction(1) / other if not isinstance(other, CycNumber) else other.inverse()
        return self * inv

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.m == other.m and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == MultiPoly.constant(self.m, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def divmod(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Division by one polynomial under grlex.

        The remainder has no term divisible by the leading monomial of the
        divisor.  A single polynomial is a Gröbner basis of its ideal, so
        the remainder is zero exactly when the divisor divides self.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lexp, lc = divisor.leading_term()
        inv = Fraction(1) / lc if not isinstance(lc, CycNumber) else lc.inverse()
        rest = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        while rest:
            exp = max(rest, key=grlex_key)
            c = rest.pop(exp)
            if all(a >= b for a, b in zip(exp, lexp)):
                qexp = tuple(a - b for a, b in zip(exp, lexp))
                qc = normalize_coeff(c * inv)
                quot[qexp] = quot.get(qexp, 0) + qc
                for de, dc in divisor.terms.items():
                    if de == lexp:
                        continue
                    e = tuple(a + b for a, b in zip(qexp, de))
                    v = rest.get(e, 0) - qc * dc
                    v = normalize_coeff(v)
                    if v == 0:
                        rest.pop(e, None)
                    else:
                        rest[e] = v
            else:
                rem[exp] = c
        return MultiPoly(self.m, quot), MultiPoly(self.m, rem)

    def exact_div(self, divisor: MultiPoly) -> MultiPoly | None:
        q, r = self.divmod(divisor)
        return q if r.is_zero() else None

    def derivative(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.m, out)

    def univariate_coeffs(self) -> list:
        if self.m != 1:
            raise ValueError("not a univariate polynomial")
        d = self.total_degree()
        return [self.terms.get((i,), 0) for i in range(d + 1)]

    # -- io --------------------------------------------------------------

    def format(self, names: tuple | None = None) -> str:
        names = names or default_names(self.m)
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            if isinstance(c, CycNumber):
                coeff = f"({c})"
                neg = False
            else:
                neg = c < 0
                coeff = str(abs(c))
                if "/" in coeff and mono:
                    coeff = f"({coeff})"
            if mono:
                body = mono if coeff == "1" else f"{coeff}*{mono}"
            else:
                body = coeff
            pieces.append(("- " if neg else "+ ") + body)
        s = " ".join(pieces)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.m}, {self.format()!r})"

    def to_json(self, conductor: int | None = None) -> list:
        out = []
        for exp, c in self.sorted_terms():
            if isinstance(c, CycNumber):
                coeff = c.to_json()
            else:
                f = Fraction(c)
                coeff = {"den": str(f.denominator), "nums": [str(f.numerator)]}
            out.append({"exponents": list(exp), "coeff": coeff})
        return out

    @classmethod
    def from_json(cls, m: int, doc: list, conductor: int | None = None) -> MultiPoly:
        terms = {}
        for t in doc:
            coeff = t["coeff"]
            nums = coeff["nums"]
            den = int(coeff["den"])
            if len(nums) == 1:
                c = Fraction(int(nums[0]), den)
            else:
                if conductor is None:
                    raise ValueError("cyclotomic coefficient needs a conductor")
                c = CycNumber.from_json(conductor, coeff)
            terms[tuple(t["exponents"])] = c
        return cls(m, terms)


class ExpressionError(ValueError):
    pass


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def evaluate_expression(text: str, namespace: Mapping[str, object]):
    """Evaluate a polynomial expression such as ``z^2 - (x*y-1)*(x*y+1)``.

    Only + - * ^ (or **), integer literals, parentheses, division by
    nonzero constants and the names in ``namespace`` are accepted.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in namespace:
                raise ExpressionError(f"unknown name {node.id!r}")
            return namespace[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not _is_scalar(b):
                    raise ExpressionError("division is only allowed by constants")
                if isinstance(a, int):
                    return Fraction(a, b)
                return a / b
            if not isinstance(b, int) or b < 0:
                raise ExpressionError("exponents must be nonnegative integer literals")
            return a ** b
        raise ExpressionError(f"unsupported syntax in {text!r}: {type(node).__name__}")

    return ev(tree)


def parse_poly(text: str, names: tuple) -> MultiPoly:
    m = len(names)
    ns = dict(zip(names, MultiPoly.gens(m)))
    value = evaluate_expression(text, ns)
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.constant(m, value)
