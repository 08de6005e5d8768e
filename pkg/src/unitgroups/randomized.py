"""Random instance generators for the property suites.

All generators take a ``random.Random`` so runs are reproducible from a seed.
"""

from __future__ import annotations

import random

from .cohomology import CyclicGModule
from .cyclotomic import cyclotomic_poly
from .lattice import IntMatrix, Presentation
from .poly import MultiPoly
from .ring import CoverElement, CoverRing


def random_matrix(rng: random.Random, max_dim: int = 6, lo: int = -20, hi: int = 20) -> IntMatrix:
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng: random.Random, k: int, steps: int = 6) -> tuple[IntMatrix, IntMatrix]:
    """A random product of elementary matrices and its inverse."""
    U, Uinv = IntMatrix.identity(k), IntMatrix.identity(k)
    if k < 2:
        return U, Uinv
    for _ in range(steps):
        i, j = rng.sample(range(k), 2)
        c = rng.choice([-2, -1, 1, 2])
        E = [[int(a == b) for b in range(k)] for a in range(k)]
        Einv = [row[:] for row in E]
        E[i][j], Einv[i][j] = c, -c
        U = IntMatrix.from_rows(E) @ U
        Uinv = Uinv @ IntMatrix.from_rows(Einv)
    return U, Uinv


def _companion(d: int) -> list[list[int]]:
    phi = cyclotomic_poly(d)
    k = len(phi) - 1
    M = [[0] * k for _ in range(k)]
    for i in range(1, k):
        M[i][i - 1] = 1
    for i in range(k):
        M[i][k - 1] = -phi[i]
    return M


def _cycle(d: int) -> list[list[int]]:
    return [[1 if i == (j + 1) % d else 0 for j in range(d)] for i in range(d)]


def _block_diag(blocks) -> list[list[int]]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[at + i][at: at + len(row)] = row
        at += len(b)
    return out


def random_action(rng: random.Random, n: int, max_rank: int = 4) -> IntMatrix:
    """Integer matrix with σ^n = 1: blocks of ±1, cyclic shifts and cyclotomic companions."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    blocks, size = [], 0
    target = rng.randint(1, max_rank)
    while size < target:
        kind = rng.choice(["one", "minus", "cycle", "companion"])
        d = rng.choice(divisors)
        if kind == "one" or (kind == "minus" and n % 2):
            b = [[1]]
        elif kind == "minus":
            b = [[-1]]
        elif kind == "cycle":
            b = _cycle(d)
        else:
            b = _companion(d) if d > 1 else [[1]]
        if size + len(b) > max_rank:
            b = [[1]]
        blocks.append(b)
        size += len(b)
    A = IntMatrix.from_rows(_block_diag(blocks))
    U, Uinv = random_unimodular(rng, A.rows)
    return U @ A @ Uinv


def random_finite_module(rng: random.Random, max_n: int = 6, max_order: int = 10_000,
                         allow_trivial: bool = False) -> CyclicGModule:
    """A finite Z[G]-module Z^m / R with R = c·Z^m plus σ-orbits of random vectors.

    Trivial quotients are redrawn unless ``allow_trivial`` is set.
    """
    while True:
        n = rng.randint(2, max_n)
        action = random_action(rng, n)
        m = action.rows
        c_max = 2
        while (c_max + 1) ** m <= max_order:
            c_max += 1
        c = rng.randint(2, c_max)
        rels = [[c if i == j else 0 for i in range(m)] for j in range(m)]
        for _ in range(rng.randint(0, 2)):
            v = [rng.randint(-c, c) for _ in range(m)]
            for _ in range(n):
                rels.append(list(v))
                v = list(action.apply(v))
        M = CyclicGModule(n, Presentation(m, IntMatrix.from_columns(rels, rows=m)), action)
        if allow_trivial or not M.underlying_group().is_trivial:
            return M


def random_poly(rng: random.Random, m: int = 2, degree: int = 1, lo: int = -3, hi: int = 3,
                nonconstant: bool = False) -> MultiPoly:
    while True:
        terms = {}
        for total in range(degree + 1):
            for exp in _exponents(m, total):
                if rng.random() < 0.6:
                    terms[exp] = rng.randint(lo, hi)
        p = MultiPoly(m, terms)
        if not nonconstant or not p.is_constant():
            return p


def _exponents(m: int, total: int):
    if m == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponents(m - 1, total - first):
            yield (first,) + rest


def random_cover_ring(rng: random.Random, n: int, m: int = 2) -> CoverRing:
    f = random_poly(rng, m, degree=2, nonconstant=True)
    return CoverRing(m, n, f)


def random_element(rng: random.Random, ring: CoverRing, degree: int = 1) -> CoverElement:
    return CoverElement(ring, tuple(random_poly(rng, ring.m, degree) for _ in range(ring.n)))
