"""Exact integer lattice algebra.

Hermite and Smith normal forms over Z, integer kernels and cokernels,
lattice indices, and the finitely generated abelian group type that every
class group and cohomology group in this package is reported as.

All arithmetic uses Python integers, so nothing overflows or rounds.

>>> snf(IntMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])).factors
(1, 3, 0)
>>> cokernel(IntMatrix.diagonal([2, 3]))
FgAbelianGroup(free_rank=0, torsion=(6,))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

INFINITE = math.inf

MINORS_GUARD = 8


def _rows_copy(rows):
    return [list(r) for r in rows]


def _identity_rows(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ents = tuple(int(e) for e in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged row list")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length does not match row count")
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls.from_rows(_identity_rows(k), cols=k)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        ents = [0] * (rows * cols)
        for i, d in enumerate(diag):
            ents[i * cols + i] = d
        return cls(rows, cols, tuple(ents))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), cols=self.rows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a = self.to_rows()
        bt = other.columns()
        out = [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(x * y for x, y in zip(self.row(i), v)) for i in range(self.rows))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __pow__(self, k: int) -> IntMatrix:
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows([x + y for x, y in zip(a, b)], cols=self.cols + other.cols)

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix.from_columns([self.column(j) for j in idx], rows=self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        h, _ = _hnf_rows(self.to_rows(), self.cols)
        return sum(1 for r in h if any(r))

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(e) for e in r] for r in self.to_rows()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> IntMatrix:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        ents = doc["entries"]
        if len(ents) != rows:
            raise ValueError("entries row count does not match 'rows'")
        return cls.from_rows([[int(e) for e in r] for r in ents], cols=cols)

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(f"{e:>4}" for e in r) + "]" for r in self.to_rows())


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    factors: tuple

    def verify(self, A: IntMatrix) -> None:
        """Raise AssertionError unless U·A·V = S with unimodular U, V and a valid diagonal."""
        assert self.U @ A @ self.V == self.S, "U·A·V != S"
        assert abs(self.U.det()) == 1, "U is not unimodular"
        assert abs(self.V.det()) == 1, "V is not unimodular"
        k = min(self.S.rows, self.S.cols)
        for i in range(self.S.rows):
            for j in range(self.S.cols):
                if i != j:
                    assert self.S[i, j] == 0, "S is not diagonal"
        diag = tuple(self.S[i, i] for i in range(k))
        assert diag == self.factors, "factors differ from diag(S)"
        _check_invariant_factor_order(diag)


def _check_invariant_factor_order(diag):
    seen_zero = False
    prev = 1
    for d in diag:
        if d == 0:
            seen_zero = True
            continue
        assert not seen_zero, "nonzero factor after a zero factor"
        assert d >= 1, "negative invariant factor"
        assert d % prev == 0, "divisibility chain broken"
        prev = d


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk with d1 | d2 | ... | dk and every di ≥ 2.

    Use :meth:`from_orders` to build one from an arbitrary list of cyclic
    orders; the constructor itself only accepts the canonical form so that
    equality of values is equality of groups.
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion {tors} is not in divisibility order")
        if any(d < 2 for d in tors):
            raise ValueError(f"torsion entries must be >= 2, got {tors}")

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> FgAbelianGroup:
        """Canonicalize ⊕ Z/orders (0 means Z, 1 means trivial)."""
        orders = [abs(int(d)) for d in orders]
        free_rank += sum(1 for d in orders if d == 0)
        finite = [d for d in orders if d > 1]
        if not finite:
            return cls(free_rank, ())
        factors = snf(IntMatrix.diagonal(finite)).factors
        return cls(free_rank, tuple(d for d in factors if d > 1))

    @classmethod
    def trivial(cls) -> FgAbelianGroup:
        return cls(0, ())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> int | float:
        if self.free_rank:
            return INFINITE
        return math.prod(self.torsion)

    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion free)."""
        return self.torsion[-1] if self.torsion else 1

    def direct_sum(self, other: FgAbelianGroup) -> FgAbelianGroup:
        return FgAbelianGroup.from_orders(self.free_rank + other.free_rank, self.torsion + other.torsion)

    __add__ = direct_sum

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, doc: dict) -> FgAbelianGroup:
        return cls.from_orders(int(doc.get("rank", 0)), [int(d) for d in doc.get("torsion", [])])

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Presentation:
    """Abelian group on ``generator_count`` generators modulo the columns of ``relations``."""

    generator_count: int
    relations: IntMatrix = field(default=None)

    def __post_init__(self):
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix.zeros(self.generator_count, 0))
        if self.relations.rows != self.generator_count:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows, expected {self.generator_count}"
            )

    @classmethod
    def free(cls, k: int) -> Presentation:
        return cls(k, IntMatrix.zeros(k, 0))

    @classmethod
    def cyclic(cls, *orders: int) -> Presentation:
        """⊕ Z/orders, one generator per entry (0 gives a free generator)."""
        k = len(orders)
        cols = [[o if i == j else 0 for i in range(k)] for j, o in enumerate(orders) if o != 0]
        return cls(k, IntMatrix.from_columns(cols, rows=k))

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> Presentation:
        m = int(doc["generators"])
        rel = doc.get("relations")
        if rel is None:
            return cls.free(m)
        return cls(m, IntMatrix.from_json(rel))


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_rows(rows, ncols):
    """Row-style HNF on a list of integer rows.

    Returns (H, U) as lists of rows with U·A = H.
    """
    H = _rows_copy(rows)
    m = len(H)
    U = _identity_rows(m)
    pr = 0
    for j in range(ncols):
        if pr >= m:
            break
        while True:
            nz = [i for i in range(pr, m) if H[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][j]))
            if piv != pr:
                H[pr], H[piv] = H[piv], H[pr]
                U[pr], U[piv] = U[piv], U[pr]
            p = H[pr][j]
            done = True
            for i in range(pr + 1, m):
                if H[i][j]:
                    q = H[i][j] // p
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[pr])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
                    if H[i][j]:
                        done = False
            if done:
                break
        if all(H[i][j] == 0 for i in range(pr, m)):
            continue
        if H[pr][j] < 0:
            H[pr] = [-a for a in H[pr]]
            U[pr] = [-a for a in U[pr]]
        p = H[pr][j]
        for i in range(pr):
            q = H[i][j] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pr])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
        pr += 1
    return H, U


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Hermite normal form: returns (H, U) with U·A = H and U unimodular.

    H is in row echelon form, each pivot is positive and the entries above a
    pivot lie in [0, pivot).  Zero rows come last.
    """
    H, U = _hnf_rows(A.to_rows(), A.cols)
    return IntMatrix.from_rows(H, cols=A.cols), IntMatrix.from_rows(U, cols=A.rows)


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Echelon (HNF) basis of the Z-span of ``vectors`` in Z^dim."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    H, _ = _hnf_rows(vecs, dim)
    return [r for r in H if any(r)]


def echelon_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in an echelon basis, or None if v is not in the lattice."""
    rest = list(v)
    coords = []
    for b in basis:
        j = next(k for k, x in enumerate(b) if x)
        q, r = divmod(rest[j], b[j])
        if r:
            return None
        coords.append(q)
        if q:
            rest = [a - q * c for a, c in zip(rest, b)]
    if any(rest):
        return None
    return coords


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return echelon_coordinates(basis, v) is not None


# ---------------------------------------------------------------------------
# Smith normal form


def _min_abs_position(S, t, m, n):
    best = None
    for i in range(t, m):
        row = S[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def snf(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms: U·A·V = S.

    Pivots are chosen by minimum absolute value.  Nonzero invariant factors
    come first in divisibility order; zeros follow.
    """
    m, n = A.rows, A.cols
    S = A.to_rows()
    U = _identity_rows(m)
    Vt = _identity_rows(n)  # rows of Vt are columns of V

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        Vt[j], Vt[k] = Vt[k], Vt[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in S:
            r[dst] -= q * r[src]
        Vt[dst] = [a - q * b for a, b in zip(Vt[dst], Vt[src])]

    for t in range(min(m, n)):
        best = _min_abs_position(S, t, m, n)
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
            col_rest = [(abs(S[i][t]), i) for i in range(t + 1, m) if S[i][t]]
            row_rest = [(abs(S[t][j]), j) for j in range(t + 1, n) if S[t][j]]
            if col_rest or row_rest:
                # a remainder smaller than the pivot survived; move it in
                ci = min(col_rest) if col_rest else None
                rj = min(row_rest) if row_rest else None
                if rj is None or (ci is not None and ci[0] <= rj[0]):
                    swap_rows(t, ci[1])
                else:
                    swap_cols(t, rj[1])
                continue
            bad = None
            for i in range(t + 1, m):
                if any(S[i][j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]

    k = min(m, n)
    factors = tuple(S[i][i] for i in range(k))
    V = [[Vt[j][i] for j in range(n)] for i in range(n)]
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, cols=m),
        S=IntMatrix.from_rows(S, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
        factors=factors,
    )


def minors_gcd_factors(A: IntMatrix) -> tuple:
    """Invariant factors from gcds of k×k minors: d_k = g_k / g_{k-1}.

    Independent of :func:`snf`; exponential cost, so only matrices up to
    8×8 are accepted.
    """
    if A.rows > MINORS_GUARD or A.cols > MINORS_GUARD:
        raise ValueError(
            f"minor enumeration limited to {MINORS_GUARD}x{MINORS_GUARD}, got {A.rows}x{A.cols}"
        )
    rows = A.to_rows()
    k_max = min(A.rows, A.cols)
    factors = []
    prev_g = 1
    for k in range(1, k_max + 1):
        g = 0
        for ri in combinations(range(A.rows), k):
            for ci in combinations(range(A.cols), k):
                sub = IntMatrix.from_rows([[rows[i][j] for j in ci] for i in ri], cols=k)
                g = math.gcd(g, sub.det())
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            factors.extend([0] * (k_max - k + 1))
            break
        factors.append(g // prev_g)
        prev_g = g
    return tuple(factors)


# ---------------------------------------------------------------------------
# Kernels, cokernels, indices


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Saturated basis (as columns) of {v in Z^cols : A·v = 0}, HNF-reduced."""
    H, U = _hnf_rows(A.T.to_rows(), A.rows)
    kern = [u for h, u in zip(H, U) if not any(h)]
    basis = lattice_basis(kern, A.cols)
    return IntMatrix.from_columns(basis, rows=A.cols)


def cokernel(A: IntMatrix) -> FgAbelianGroup:
    """Z^rows / (column span of A) in canonical form."""
    if A.cols == 0:
        return FgAbelianGroup(A.rows, ())
    factors = snf(A).factors
    nonzero = [d for d in factors if d]
    return FgAbelianGroup(A.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def presentation_to_group(P: Presentation) -> FgAbelianGroup:
    return cokernel(P.relations)


def lattice_index(sub: IntMatrix, sup: IntMatrix) -> int | float:
    """[span(sup) : span(sub)] for column lattices, or INFINITE on rank deficiency.

    Raises ValueError when a column of ``sub`` is not an integer combination
    of the columns of ``sup`` (the index is then undefined).
    """
    if sub.rows != sup.rows:
        raise ValueError("lattices live in different ambient dimensions")
    dim = sup.rows
    basis = lattice_basis(sup.columns(), dim)
    coords = []
    for j, c in enumerate(sub.columns()):
        x = echelon_coordinates(basis, c)
        if x is None:
            raise ValueError(f"column {j} of the sublattice {list(c)} is not in the superlattice")
        coords.append(x)
    k = len(basis)
    if k == 0:
        return 1
    X = IntMatrix.from_columns(coords, rows=k) if coords else IntMatrix.zeros(k, 0)
    if X.cols == 0:
        return INFINITE
    factors = snf(X).factors
    if any(d == 0 for d in factors) or len(factors) < k:
        return INFINITE
    return math.prod(factors)


def subquotient(numer: Iterable[Sequence[int]], denom: Iterable[Sequence[int]], dim: int) -> FgAbelianGroup:
    """The group span(numer) / span(denom), for lattices span(denom) ⊆ span(numer) in Z^dim."""
    basis = lattice_basis(numer, dim)
    k = len(basis)
    coords = []
    for v in denom:
        x = echelon_coordinates(basis, v)
        if x is None:
            raise ValueError(f"vector {list(v)} of the denominator lies outside the numerator")
        coords.append(x)
    if k == 0:
        return FgAbelianGroup.trivial()
    if not coords:
        return FgAbelianGroup(k, ())
    return cokernel(IntMatrix.from_columns(coords, rows=k))


# ---------------------------------------------------------------------------
# Functors on finitely generated abelian groups


def tensor_mod(G: FgAbelianGroup, n: int) -> FgAbelianGroup:
    """G ⊗ Z/n."""
    if n < 1:
        raise ValueError("modulus must be positive")
    return FgAbelianGroup.from_orders(0, [n] * G.free_rank + [math.gcd(d, n) for d in G.torsion])


def tor1_mod(G: FgAbelianGroup, n: int) -> FgAbelianGroup:
    """Tor_1(G, Z/n); free summands contribute nothing."""
    if n < 1:
        raise ValueError("modulus must be positive")
    return FgAbelianGroup.from_orders(0, [math.gcd(d, n) for d in G.torsion])


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
