"""Bounded unit searches in cyclic covers.

For n = 2 over one variable the units of Q[x, z]/(z^2 - f) are the
solutions of a^2 - f·b^2 = c, and every solution appears as a convergent
of the continued fraction of sqrt(f) in Q((1/x)).  Other covers are
searched by enumerating small-support candidates and testing their norm.

Nothing found means nothing found within the bound and over the field the
search runs in, never more.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import MultiPoly
from .ring import CoverElement, CoverRing, is_squarefree, norm_det

DEFAULT_CANDIDATE_GUARD = 250_000

SCOPE_NOTE = (
    "units found are certified by an exact norm computation; an empty result "
    "only rules out units among the enumerated candidates over the rationals "
    "(adjoined with the n-th roots of unity)"
)


class PellPreconditionError(ValueError):
    pass


class SearchGuardError(ValueError):
    pass


@dataclass(frozen=True)
class PellResult:
    a: MultiPoly | None
    b: MultiPoly | None
    c: Fraction | None
    steps: int
    bound: int

    @property
    def found(self) -> bool:
        return self.a is not None

    @property
    def bound_reached(self) -> bool:
        return not self.found


def _rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def polynomial_sqrt_part(f: MultiPoly) -> MultiPoly:
    """The polynomial part s of sqrt(f): deg(f - s^2) < deg(f)/2."""
    deg = f.total_degree()
    if deg % 2:
        raise PellPreconditionError("f has odd degree")
    d = deg // 2
    lead = _rational_sqrt(f.leading_coeff())
    if lead is None:
        raise PellPreconditionError(f"leading coefficient {f.leading_coeff()} is not a rational square")
    s = MultiPoly.univariate([0] * d + [lead])
    for k in range(d - 1, -1, -1):
        rest = f - s * s
        c = rest.terms.get((d + k,), 0)
        if c:
            s = s + MultiPoly.univariate([0] * k + [Fraction(c) / (2 * lead)])
    return s


def check_pell_preconditions(f: MultiPoly) -> None:
    if f.m != 1:
        raise PellPreconditionError("f must be univariate")
    if not f.is_rational():
        raise PellPreconditionError("f must have rational coefficients")
    deg = f.total_degree()
    if deg < 2 or deg % 2:
        raise PellPreconditionError(f"f must have even degree >= 2, got {deg}")
    if _rational_sqrt(f.leading_coeff()) is None:
        raise PellPreconditionError(f"leading coefficient {f.leading_coeff()} is not a rational square")
    if not is_squarefree(f):
        raise PellPreconditionError("f is not square-free")


def pell_solve(f: MultiPoly, bound: int = 20, cancel: threading.Event | None = None) -> PellResult:
    """Smallest a^2 - f·b^2 = c in Q^* reachable within ``bound`` partial quotients.

    The solution is scaled so that b is monic.
    """
    check_pell_preconditions(f)
    a0 = polynomial_sqrt_part(f)
    one = MultiPoly.one(1)
    p_prev, p = one, a0
    q_prev, q = MultiPoly.zero(1), one
    P, Q, ak = MultiPoly.zero(1), one, a0
    for step in range(bound + 1):
        if cancel is not None and cancel.is_set():
            break
        val = p * p - f * q * q
        if val.is_constant() and not val.is_zero():
            lam = Fraction(1) / Fraction(q.leading_coeff())
            a, b, c = p * lam, q * lam, Fraction(val.constant_value()) * lam * lam
            if a * a - f * b * b != MultiPoly.constant(1, c):
                raise AssertionError("Pell certificate failed to verify")
            return PellResult(a, b, c, step, bound)
        P = ak * Q - P
        Q_next = (f - P * P).exact_div(Q)
        if Q_next is None or Q_next.is_zero():
            raise AssertionError("continued fraction recurrence broke down")
        Q = Q_next
        ak, _ = (P + a0).divmod(Q)
        p_prev, p = p, ak * p + p_prev
        q_prev, q = q, ak * q + q_prev
    return PellResult(None, None, None, bound, bound)


@dataclass
class SearchResult:
    units: list = field(default_factory=list)
    method: str = ""
    degree_bound: int = 0
    support_bound: int = 0
    coefficients: tuple = ()
    candidates_tested: int = 0
    exhausted: bool = True
    note: str = SCOPE_NOTE

    def summary(self) -> dict:
        return {
            "method": self.method,
            "degree_bound": self.degree_bound,
            "support_bound": self.support_bound,
            "coefficients": [str(c) for c in self.coefficients],
            "candidates_tested": self.candidates_tested,
            "exhausted": self.exhausted,
            "units": [u.format() for u in self.units],
            "note": self.note,
        }


def _monomials(m: int, degree_bound: int) -> list[tuple]:
    out = []
    for total in range(degree_bound + 1):
        for exp in itertools.product(range(total + 1), repeat=m):
            if sum(exp) == total:
                out.append(exp)
    return out


def _small_polys(m: int, degree_bound: int, support_bound: int, coefficients) -> list[MultiPoly]:
    monos = _monomials(m, degree_bound)
    polys = [MultiPoly.zero(m)]
    for k in range(1, support_bound + 1):
        for support in itertools.combinations(monos, k):
            for cs in itertools.product(coefficients, repeat=k):
                polys.append(MultiPoly(m, dict(zip(support, cs))))
    return polys


def count_candidates(ring: CoverRing, degree_bound: int, support_bound: int, coefficients=(-1, 1)) -> int:
    monos = len(_monomials(ring.m, degree_bound))
    per = sum(math.comb(monos, k) * len(coefficients) ** k for k in range(support_bound + 1))
    return per ** ring.n


def unit_search(
    ring: CoverRing,
    degree_bound: int = 2,
    support_bound: int = 2,
    coefficients=(-1, 1),
    pell_bound: int = 20,
    guard: int = DEFAULT_CANDIDATE_GUARD,
    cancel: threading.Event | None = None,
) -> SearchResult:
    """Look for non-constant units of T among small candidates.

    Candidates are Σ u_i z^i where every u_i has total degree at most
    ``degree_bound``, at most ``support_bound`` terms and coefficients from
    ``coefficients``.  Elements of A are skipped (A has no non-constant
    units).  For n = 2 and one variable the Pell solver is used instead.
    """
    if ring.n == 2 and ring.m == 1 and ring.f.is_rational():
        deg = ring.f.total_degree()
        if deg % 2:
            # deg a^2 and deg f·b^2 have different parity, so a^2 - f b^2 is never constant
            return SearchResult([], "odd-degree", degree_bound, support_bound, tuple(coefficients), 0, True)
        try:
            res = pell_solve(ring.f, pell_bound, cancel)
        except PellPreconditionError:
            res = None
        if res is not None:
            units = [ring.element(res.a, res.b)] if res.found else []
            return SearchResult(
                units, "pell", pell_bound, 0, (), res.steps + 1, cancel is None or not cancel.is_set()
            )

    total = count_candidates(ring, degree_bound, support_bound, coefficients)
    if total > guard:
        raise SearchGuardError(f"{total} candidates exceed the guard of {guard}")
    polys = _small_polys(ring.m, degree_bound, support_bound, coefficients)
    result = SearchResult([], "enumeration", degree_bound, support_bound, tuple(coefficients))
    for comps in itertools.product(polys, repeat=ring.n):
        if cancel is not None and cancel.is_set():
            result.exhausted = False
            break
        if all(c.is_zero() for c in comps[1:]):
            continue
        result.candidates_tested += 1
        u = CoverElement(ring, comps)
        N = norm_det(u)
        if N.is_constant() and not N.is_zero():
            result.units.append(u)
    return result
