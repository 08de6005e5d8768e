"""Cyclic covering rings T = A[z]/(z^n - f) with A = Q(ζ_n)[x_1, ..., x_m].

σ acts by z -> ζz and fixes A.  The norm N(u) = u·σ(u)···σ^(n-1)(u)
lands in A; it is computed both as that product and as the determinant
of multiplication by u on the A-basis 1, z, ..., z^(n-1).

The working field is Q(ζ_n) rather than an algebraically closed field, so
a unit found here is a unit everywhere, while an empty search only says
nothing exists over the searched field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNumber
from .poly import MultiPoly, _is_scalar, default_names, evaluate_expression, parse_poly


class RingMismatch(ValueError):
    pass


class NormError(AssertionError):
    """The conjugate product left nonzero z-components: an arithmetic bug, never bad input."""


@dataclass(frozen=True, eq=False)
class CoverRing:
    """T = A[z]/(z^n - f) together with a declared factorization f = f_1 ··· f_ν."""

    m: int
    n: int
    f: MultiPoly
    factors: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cover degree must be positive")
        if self.f.m != self.m:
            raise ValueError("f lives in the wrong number of variables")
        if self.f.is_constant():
            raise ValueError("f must be non-constant")
        factors = tuple(self.factors) or (self.f,)
        prod = MultiPoly.one(self.m)
        for g in factors:
            if g.m != self.m:
                raise ValueError("factor lives in the wrong number of variables")
            if g.is_constant():
                raise ValueError("declared factors must be non-constant")
            prod = prod * g
        if prod != self.f:
            raise ValueError("product of the declared factors is not f")
        for i, g in enumerate(factors):
            for h in factors[i + 1:]:
                q = g.exact_div(h)
                if q is not None and q.is_constant():
                    raise ValueError("declared factors repeat (f must be square-free)")
        if self.m == 1 and not is_squarefree(self.f):
            raise ValueError("f is not square-free")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "names", tuple(self.names) or default_names(self.m))
        if "z" in self.names:
            raise ValueError("'z' is reserved for the cover variable")

    @classmethod
    def parse(cls, f: str, n: int, names: Sequence[str], factors: Sequence[str] = ()) -> CoverRing:
        names = tuple(names)
        fp = parse_poly(f, names)
        fs = tuple(parse_poly(g, names) for g in factors)
        return cls(len(names), n, fp, fs, names)

    @property
    def zeta(self):
        return CycNumber.zeta(self.n).simplify()

    def element(self, *components) -> CoverElement:
        comps = [self._poly(c) for c in components]
        if len(comps) > self.n:
            raise ValueError(f"at most {self.n} components")
        comps += [MultiPoly.zero(self.m)] * (self.n - len(comps))
        return CoverElement(self, tuple(comps))

    def _poly(self, c) -> MultiPoly:
        if isinstance(c, MultiPoly):
            if c.m != self.m:
                raise ValueError("component lives in the wrong number of variables")
            return c
        return MultiPoly.constant(self.m, c)

    @property
    def one(self) -> CoverElement:
        return self.element(1)

    @property
    def z(self) -> CoverElement:
        if self.n == 1:
            return self.element(self.f)
        return self.element(0, 1)

    def gens(self) -> tuple:
        return tuple(self.element(x) for x in MultiPoly.gens(self.m))

    def parse_element(self, text: str) -> CoverElement:
        ns = dict(zip(self.names, self.gens()))
        ns["z"] = self.z
        value = evaluate_expression(text, ns)
        if isinstance(value, CoverElement):
            return value
        return self.element(value)

    def format_poly(self, p: MultiPoly) -> str:
        return p.format(self.names)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "variables": list(self.names),
            "f": self.f.to_json(),
            "factors": [g.to_json() for g in self.factors],
        }


class CoverElement:
    """Σ u_i z^i with u_i in A, i < n."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: CoverRing, components: tuple):
        if len(components) != ring.n:
            raise ValueError(f"expected {ring.n} components, got {len(components)}")
        self.ring = ring
        self.components = tuple(components)

    def _coerce(self, other):
        if isinstance(other, CoverElement):
            if other.ring is not self.ring:
                raise RingMismatch("elements of different cover rings")
            return other
        if isinstance(other, MultiPoly) or _is_scalar(other):
            return self.ring.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CoverElement(self.ring, tuple(a + b for a, b in zip(self.components, o.components)))

    __radd__ = __add__

    def __neg__(self):
        return CoverElement(self.ring, tuple(-a for a in self.components))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, MultiPoly):
            return CoverElement(self.ring, tuple(a * other for a in self.components))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return cover_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return CoverElement(self.ring, tuple(a / other for a in self.components))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers must be nonnegative integers")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = cover_mul(result, base)
            base = cover_mul(base, base)
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CoverElement):
            return self.ring is other.ring and self.components == other.components
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.components == o.components

    def __hash__(self):
        return hash(self.components)

    def is_in_base(self) -> bool:
        return all(c.is_zero() for c in self.components[1:])

    def is_constant(self) -> bool:
        return self.is_in_base() and self.components[0].is_constant()

    def format(self) -> str:
        pieces = []
        for i, c in enumerate(self.components):
            if c.is_zero():
                continue
            body = self.ring.format_poly(c)
            if i == 0:
                pieces.append(body)
                continue
            zpow = "z" if i == 1 else f"z^{i}"
            if body == "1":
                pieces.append(zpow)
            elif body == "-1":
                pieces.append(f"-{zpow}")
            else:
                pieces.append(f"({body})*{zpow}")
        return " + ".join(pieces).replace("+ -", "- ") if pieces else "0"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CoverElement({self.format()!r})"

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


def cover_mul(u: CoverElement, v: CoverElement) -> CoverElement:
    """Product in T, reducing z^n to f."""
    if u.ring is not v.ring:
        raise RingMismatch("elements of different cover rings")
    ring = u.ring
    n = ring.n
    high = [MultiPoly.zero(ring.m) for _ in range(2 * n - 1)]
    for i, a in enumerate(u.components):
        if a.is_zero():
            continue
        for j, b in enumerate(v.components):
            if b.is_zero():
                continue
            high[i + j] = high[i + j] + a * b
    out = high[:n]
    for k in range(n, 2 * n - 1):
        if not high[k].is_zero():
            out[k - n] = out[k - n] + ring.f * high[k]
    return CoverElement(ring, tuple(out))


def sigma(u: CoverElement, power: int = 1) -> CoverElement:
    """σ^power(u): component i is multiplied by ζ^(i·power)."""
    n = u.ring.n
    comps = []
    for i, c in enumerate(u.components):
        e = (i * power) % n
        if e == 0 or c.is_zero():
            comps.append(c)
        else:
            comps.append(c * CycNumber.zeta(n, e).simplify())
    return CoverElement(u.ring, tuple(comps))


def conjugate_product(u: CoverElement, start: int = 0) -> CoverElement:
    """σ^start(u) · σ^(start+1)(u) ··· σ^(n-1)(u)."""
    out = u.ring.one
    for i in range(start, u.ring.n):
        out = cover_mul(out, sigma(u, i))
    return out


def norm_product(u: CoverElement) -> MultiPoly:
    prod = conjugate_product(u)
    if not prod.is_in_base():
        raise NormError(f"conjugate product of {u} has z-components")
    return prod.components[0]


def multiplication_matrix(u: CoverElement) -> list[list[MultiPoly]]:
    """Matrix of v -> u·v on the basis 1, z, ..., z^(n-1); column j is u·z^j."""
    ring = u.ring
    n = ring.n
    comps = u.components
    M = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if k >= j:
                M[k][j] = comps[k - j]
            else:
                M[k][j] = ring.f * comps[k - j + n]
    return M


def poly_det(M: list[list[MultiPoly]], m: int) -> MultiPoly:
    """Division-free determinant by Laplace expansion memoized on column sets."""
    n = len(M)
    if n == 0:
        return MultiPoly.one(m)
    memo = {}

    def minor(row: int, cols: tuple) -> MultiPoly:
        if row == n:
            return MultiPoly.one(m)
        key = cols
        if key in memo:
            return memo[key]
        total = MultiPoly.zero(m)
        for pos, j in enumerate(cols):
            entry = M[row][j]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def norm_det(u: CoverElement) -> MultiPoly:
    return poly_det(multiplication_matrix(u), u.ring.m)


def norm(u: CoverElement, method: str = "product") -> MultiPoly:
    """N(u) = u·σ(u)···σ^(n-1)(u).

    ``method`` is "product", "determinant", or "both" (computes both and
    raises NormError if they disagree).
    """
    if method == "product":
        return norm_product(u)
    if method == "determinant":
        return norm_det(u)
    if method == "both":
        a, b = norm_product(u), norm_det(u)
        if a != b:
            raise NormError(f"norm methods disagree on {u}: {a} vs {b}")
        return a
    raise ValueError(f"unknown norm method {method!r}")


def is_unit(u: CoverElement) -> bool:
    """u is a unit of T iff N(u) is a nonzero constant (u divides N(u) in T)."""
    N = norm_det(u)
    return N.is_constant() and not N.is_zero()


def inverse(u: CoverElement) -> CoverElement:
    """u^-1 = σ(u)···σ^(n-1)(u) / N(u), checked by multiplication."""
    N = norm_det(u)
    if not N.is_constant() or N.is_zero():
        raise ValueError(f"{u} is not a unit of T")
    c = N.constant_value()
    inv = conjugate_product(u, start=1) / c
    if cover_mul(u, inv) != u.ring.one:
        raise NormError(f"inverse check failed for {u}")
    return inv


def localization_exponents(u: CoverElement):
    """Write N(u) = c · Π f_i^(a_i) by trial division, or return None.

    Returns (c, [a_1, ..., a_ν]).
    """
    N = norm_det(u)
    if N.is_zero():
        return None
    exps = []
    for g in u.ring.factors:
        a = 0
        while not N.is_constant():
            q = N.exact_div(g)
            if q is None:
                break
            N = q
            a += 1
        exps.append(a)
    if not N.is_constant():
        return None
    return N.constant_value(), exps


def is_unit_in_localization(u: CoverElement) -> bool:
    """u is a unit of S = T[1/z] iff N(u) is a constant times a monomial in the f_i."""
    return localization_exponents(u) is not None


def is_squarefree(f: MultiPoly) -> bool:
    """Univariate square-freeness: gcd(f, f') is constant."""
    if f.m != 1:
        raise ValueError("square-freeness is only decided for univariate f")
    return univariate_gcd(f, f.derivative(0)).is_constant()


def univariate_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a / a.leading_coeff()


def rational_value(c) -> Fraction:
    if isinstance(c, CycNumber):
        return c.to_rational()
    return Fraction(c)
