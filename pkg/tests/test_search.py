import threading
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from pell_oracle import no_solution_with_deg_b
from unitgroups.poly import MultiPoly, parse_poly
from unitgroups.ring import CoverRing, is_unit
from unitgroups.search import (
    PellPreconditionError,
    SearchGuardError,
    count_candidates,
    pell_solve,
    polynomial_sqrt_part,
    unit_search,
)

X = ("x",)


def P(text):
    return parse_poly(text, X)


def test_pell_quartic_plus_x():
    r = pell_solve(P("x^4 + x"))
    assert r.found
    assert (r.a, r.b, r.c) == (P("x^3 + 1/2"), P("x"), Fraction(1, 4))


def test_pell_quartic_minus_one():
    r = pell_solve(P("x^4 - 1"))
    assert (r.a, r.b, r.c) == (P("x^2"), P("1"), 1)


def test_pell_generic_quartic_reaches_bound():
    r = pell_solve(P("x^4 + x + 1"), 20)
    assert not r.found and r.bound_reached and r.bound == 20


def test_pell_generic_quartic_agrees_with_groebner_oracle():
    x = sp.symbols("x")
    assert all(no_solution_with_deg_b(x**4 + x + 1, x, k) for k in range(9))


def test_oracle_finds_known_solutions():
    x = sp.symbols("x")
    assert not no_solution_with_deg_b(x**4 + x, x, 1)
    assert not no_solution_with_deg_b(x**4 - 1, x, 0)


def test_pell_preconditions():
    for bad in ["x^3 + 1", "2*x^2 + 1", "(x^2 + 1)^2", "x"]:
        with pytest.raises(PellPreconditionError):
            pell_solve(P(bad))
    with pytest.raises(PellPreconditionError):
        pell_solve(parse_poly("x^2 + y^2", ("x", "y")))


def test_sqrt_part():
    assert polynomial_sqrt_part(P("x^4 + x")) == P("x^2")
    assert polynomial_sqrt_part(P("x^4 + 2*x^3 + 5")) == P("x^2 + x - 1/2")
    assert polynomial_sqrt_part(P("4*x^2 + 1")) == P("2*x")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.sampled_from([1, 4, 9]))
def test_pell_certificates_always_verify(low, lead):
    f = MultiPoly.univariate(low + [lead])
    try:
        r = pell_solve(f, 8)
    except PellPreconditionError:
        return
    if r.found:
        assert r.a * r.a - f * r.b * r.b == MultiPoly.constant(1, r.c)
        assert r.b.leading_coeff() == 1


def test_search_odd_degree_is_empty():
    res = unit_search(CoverRing.parse("x", 2, X))
    assert res.units == [] and res.method == "odd-degree"


def test_search_finds_two_component_unit():
    R = CoverRing.parse("(x*y - 1)*(x*y + 1)", 2, ("x", "y"), ["x*y - 1", "x*y + 1"])
    res = unit_search(R, degree_bound=2, support_bound=1)
    assert R.parse_element("z - x*y") in res.units
    assert all(is_unit(u) for u in res.units)


def test_search_hyperelliptic_uses_pell():
    R = CoverRing.parse("x^4 + x", 2, X)
    res = unit_search(R)
    assert res.method == "pell"
    assert res.units == [R.parse_element("x^3 + 1/2 + x*z")]


def test_search_guard():
    R = CoverRing.parse("x1^3 + x2^3 + 1", 3, ("x1", "x2"))
    assert count_candidates(R, 3, 3) > 250_000
    with pytest.raises(SearchGuardError):
        unit_search(R, 3, 3)


def test_search_cancellation():
    R = CoverRing.parse("x1^2 + x2^2 - 1", 2, ("x1", "x2"))
    ev = threading.Event()
    ev.set()
    res = unit_search(R, 2, 2, cancel=ev)
    assert not res.exhausted and res.candidates_tested == 0


def test_search_summary_records_bounds():
    R = CoverRing.parse("x1^2 + x2^2 - 1", 2, ("x1", "x2"))
    s = unit_search(R, 1, 1).summary()
    assert s["degree_bound"] == 1 and s["support_bound"] == 1 and "note" in s
