"""Independent check that a^2 - f b^2 = c has no solution for small deg b.

If a^2 - f b^2 = c is a nonzero constant then a - b·sqrt(f) has negative
degree, so a is the polynomial part of b·sqrt(f).  That part is linear in
the coefficients of b, which leaves a polynomial system in those
coefficients.  A reduced Groebner basis equal to [1] means the system has
no solution over any field extension of Q.
"""

from __future__ import annotations

import sympy as sp


def no_solution_with_deg_b(f_expr, x, k: int) -> bool:
    t = sp.symbols("t", positive=True)
    d = sp.degree(f_expr, x) // 2
    # sqrt(f) = x^d * sqrt(f(1/t) t^(2d)) with t = 1/x
    inner = sp.expand(f_expr.subs(x, 1 / t) * t ** (2 * d))
    series = sp.series(sp.sqrt(inner), t, 0, k + d + 1).removeO()
    bs = sp.symbols(f"b0:{k}") if k else ()
    b = x**k + sum(c * x**i for i, c in enumerate(bs))
    laurent = sp.expand(b * x**d * series.subs(t, 1 / x))
    a = sp.Integer(0)
    for term in sp.Add.make_args(laurent):
        _, e = term.as_coeff_exponent(x)
        if e >= 0:
            a += term
    a = sp.expand(a)
    rest = sp.Poly(sp.expand(a**2 - f_expr * b**2), x)
    eqs = [c for (e,), c in rest.terms() if e > 0]
    c0 = rest.coeff_monomial(1)
    if not bs:
        return bool(any(e != 0 for e in eqs) or c0 == 0)
    # add u*c0 - 1 so that the constant term is forced nonzero
    u = sp.symbols("u")
    G = sp.groebner([*eqs, u * c0 - 1], *bs, u, order="grevlex", domain="QQ")
    return G.exprs == [1]
