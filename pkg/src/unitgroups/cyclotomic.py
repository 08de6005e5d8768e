"""Exact arithmetic in the cyclotomic field Q(ζ_n) = Q[t]/Φ_n(t).

ζ is fixed as the residue of t.  Elements are coefficient vectors of
length deg Φ_n = φ(n) with Fraction entries.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


# dense univariate helpers over Q, coefficient lists lowest degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pdivmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lc = Fraction(b[-1])
    while len(r) >= len(b) and r:
        c = r[-1] / lc
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] -= c * y
        r = _trim(r)
    return _trim(q), r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Φ_n as an integer coefficient tuple, lowest degree first.

    Computed as (t^n - 1) divided exactly by Φ_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _pdivmod(num, list(cyclotomic_poly(d)))
            assert not r, "cyclotomic division left a remainder"
            num = q
    out = tuple(int(c) for c in num)
    assert all(Fraction(c) == int(c) for c in num)
    return out


def totient_degree(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(p, n):
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    p = list(p)
    # Φ_n is monic
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if c:
            for i in range(d + 1):
                p[k - d + i] -= c * phi[i]
    p = p[:d] + [0] * max(0, d - len(p))
    return p


class CycNumber:
    """An element of Q(ζ_n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        d = totient_degree(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            cs = _reduce(cs, n)
        cs = cs + [Fraction(0)] * (d - len(cs))
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> CycNumber:
        power %= n
        return cls(n, _reduce([0] * power + [1], n))

    @classmethod
    def rational(cls, n: int, value) -> CycNumber:
        return cls(n, [value])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def simplify(self):
        """Return a plain int or Fraction when the value is rational."""
        if self.is_rational():
            c = self.coeffs[0]
            return int(c) if c.denominator == 1 else c
        return self

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.n != self.n:
                return _lift_pair(self, other)
            return self, other
        if isinstance(other, (int, Rational)):
            return self, CycNumber(self.n, [other])
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNumber):
            return CycNumber(self.n, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.n, _reduce(_pmul(a.coeffs, b.coeffs) or [0], a.n))

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        """Inverse via the extended Euclidean algorithm against Φ_n."""
        a = _trim(self.coeffs)
        if not a:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0, r1 = [Fraction(c) for c in cyclotomic_poly(self.n)], [Fraction(c) for c in a]
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        return CycNumber(self.n, _reduce([x / c for x in s1] or [0], self.n))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNumber):
            return CycNumber(self.n, [x / other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycNumber(self.n, [other]) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber(self.n, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if other.n != self.n:
                a, b = _lift_pair(self, other)
                return a.coeffs == b.coeffs
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycNumber({self.n}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "ζ" if i == 1 else f"ζ^{i}"
                terms.append(mon if c == 1 else f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return {"den": str(den), "nums": [str(int(c * den)) for c in self.coeffs]}

    @classmethod
    def from_json(cls, n: int, doc: dict) -> CycNumber:
        den = int(doc["den"])
        return cls(n, [Fraction(int(x), den) for x in doc["nums"]])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lift_pair(a: CycNumber, b: CycNumber):
    """Embed two cyclotomic numbers into a common field Q(ζ_lcm)."""
    n = a.n * b.n // _gcd(a.n, b.n)
    return _lift(a, n), _lift(b, n)


def _lift(x: CycNumber, n: int) -> CycNumber:
    if x.n == n:
        return x
    step = n // x.n
    z = CycNumber.zeta(n, step)
    out = CycNumber(n, [0])
    power = CycNumber(n, [1])
    for c in x.coeffs:
        if c:
            out = out + power * c
        power = power * z
    return out


def as_cyc(value, n: int) -> CycNumber:
    if isinstance(value, CycNumber):
        return value if value.n == n else _lift(value, n)
    return CycNumber(n, [value])
