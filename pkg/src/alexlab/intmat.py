"""Exact integer linear algebra: Bareiss determinants, Hermite and Smith forms.

Matrices are plain lists of rows of Python ints. Lattices are row spans.

The Hermite normal form used everywhere is the *row* form: pivots move
strictly right going down, pivots are positive, entries above a pivot lie
in ``[0, pivot)`` and zero rows are dropped. Two generating sets span the
same lattice iff their canonical forms are equal, which is what turns ideal
equality into tuple equality.

Several routines accept a ``modulus`` D > 0. It promises that D*Z^ncols is
contained in the lattice being built (and is in fact added to it), which
lets all off-pivot arithmetic happen modulo D and keeps entries small.
"""
from __future__ import annotations

from math import gcd
from typing import Callable, Sequence

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def bareiss_det(matrix: Sequence[Sequence], *, zero=0, one=1,
                div: Callable | None = None):
    """Fraction-free determinant over any exact integral domain.

    ``div`` must perform exact division in the ring; it defaults to ``//``
    which is right for ints. Row swaps are made only when a pivot vanishes.
    """
    n = len(matrix)
    if n == 0:
        return one
    if div is None:
        div = _int_exact_div
    M = [list(row) for row in matrix]
    if any(len(row) != n for row in M):
        raise ValueError("bareiss_det needs a square matrix")
    negate = False
    prev = one
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    negate = not negate
                    break
            else:
                return zero
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = div(row_i[j] * pivot - lead * row_k[j], prev)
            row_i[k] = zero
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if negate else det


def _int_exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, "Bareiss step was not exact"
    return q


class _Echelon:
    """Incremental row echelon basis; one pivot row per pivot column."""

    __slots__ = ("ncols", "modulus", "piv")

    def __init__(self, ncols: int, modulus: int = 0):
        self.ncols = ncols
        self.modulus = modulus
        self.piv: list[list[int] | None] = [None] * ncols
        if modulus:
            for j in range(ncols):
                row = [0] * ncols
                row[j] = modulus
                self.piv[j] = row

    def add(self, vec: Sequence[int]) -> None:
        D = self.modulus
        n = self.ncols
        v = [x % D for x in vec] if D else list(vec)
        piv = self.piv
        for j in range(n):
            b = v[j]
            if not b:
                continue
            p = piv[j]
            if p is None:
                if b < 0:
                    v = [-x for x in v]
                piv[j] = v
                return
            a = p[j]
            if b % a == 0:
                q = b // a
                for k in range(j, n):
                    v[k] -= q * p[k]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                newp = p[:j] + [x * p[k] + y * v[k] for k in range(j, n)]
                v = v[:j] + [ag * v[k] - bg * p[k] for k in range(j, n)]
                if D:
                    for k in range(j + 1, n):
                        newp[k] %= D
                piv[j] = newp
            if D:
                for k in range(j + 1, n):
                    v[k] %= D
        # v reduced to zero

    def canonical(self) -> list[tuple[int, ...]]:
        piv = self.piv
        n = self.ncols
        cols = [j for j in range(n) if piv[j] is not None]
        for idx, j in enumerate(cols):
            p = piv[j]
            a = p[j]
            for i in cols[:idx]:
                r = piv[i]
                q = r[j] // a
                if q:
                    for k in range(j, n):
                        r[k] -= q * p[k]
        return [tuple(piv[j]) for j in cols]


def hnf(rows: Sequence[Sequence[int]], ncols: int, modulus: int = 0) -> list[tuple[int, ...]]:
    """Canonical row HNF of the span of ``rows`` (plus ``modulus*Z^ncols``)."""
    ech = _Echelon(ncols, modulus)
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row length {len(r)} != {ncols}")
        ech.add(r)
    return ech.canonical()


def left_kernel(rows: Sequence[Sequence[int]], ncols: int, modulus: int = 0) -> list[tuple[int, ...]]:
    """HNF of ``{x : x @ A = 0 (mod modulus)}`` where ``A`` has the given rows.

    With ``modulus == 0`` this is the integer left kernel.
    """
    r = len(rows)
    aug = []
    for i, row in enumerate(rows):
        unit = [0] * r
        unit[i] = 1
        aug.append(list(row) + unit)
    H = hnf(aug, ncols + r, modulus)
    ker = [row[ncols:] for row in H if not any(row[:ncols])]
    return hnf(ker, r, modulus)


def intersect(basis_a: Sequence[Sequence[int]], basis_b: Sequence[Sequence[int]],
              ncols: int, modulus: int = 0) -> list[tuple[int, ...]]:
    """HNF of the intersection of two lattices in Z^ncols."""
    aug = [list(r) + list(r) for r in basis_a]
    aug += [list(r) + [0] * ncols for r in basis_b]
    H = hnf(aug, 2 * ncols, modulus)
    inter = [row[ncols:] for row in H if not any(row[:ncols])]
    return hnf(inter, ncols, modulus)


def contains(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership test against a row echelon basis (e.g. an HNF)."""
    v = list(vec)
    n = len(v)
    for row in basis:
        j = next(k for k, x in enumerate(row) if x)
        if any(v[:j]):
            return False
        q, r = divmod(v[j], row[j])
        if r:
            return False
        for k in range(j, n):
            v[k] -= q * row[k]
    return not any(v)


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariants ``d1 | d2 | ...`` (all positive) of a matrix.

    Pivot choice is deterministic: smallest nonzero absolute value, ties
    broken by lowest (row, column) index. The diagonal found by elimination
    is then brought into divisibility order by gcd/lcm exchanges.
    """
    A = [list(r) for r in rows if any(r)]
    diag: list[int] = []
    while A:
        best = _min_entry(A, range(len(A)), range(len(A[0])))
        if best is None:
            break
        _move_to_origin(A, *best)
        while True:
            p = A[0][0]
            clean = True
            for i in range(1, len(A)):
                row_i = A[i]
                q = row_i[0] // p
                if q:
                    row0 = A[0]
                    for k in range(len(row_i)):
                        row_i[k] -= q * row0[k]
                if row_i[0]:
                    clean = False
            row0 = A[0]
            for j in range(1, len(row0)):
                q = row0[j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[0]
                if row0[j]:
                    clean = False
            if clean:
                break
            # a remainder smaller than |p| sits in row 0 or column 0
            cand = [(abs(A[i][0]), i, 0) for i in range(1, len(A)) if A[i][0]]
            cand += [(abs(row0[j]), 0, j) for j in range(1, len(row0)) if row0[j]]
            _, bi, bj = min(cand)
            _move_to_origin(A, bi, bj)
        diag.append(abs(A[0][0]))
        A = [r[1:] for r in A[1:]]
        A = [r for r in A if any(r)]
    return _divisibility_chain(diag)


def _min_entry(A, row_range, col_range):
    best = None
    best_val = 0
    for i in row_range:
        row = A[i]
        for j in col_range:
            x = row[j]
            if x:
                ax = abs(x)
                if best is None or ax < best_val:
                    best, best_val = (i, j), ax
                    if ax == 1:
                        return best
    return best


def _move_to_origin(A: Matrix, i: int, j: int) -> None:
    if i:
        A[0], A[i] = A[i], A[0]
    if j:
        for r in A:
            r[0], r[j] = r[j], r[0]


def _divisibility_chain(diag: list[int]) -> list[int]:
    d = sorted(diag)
    n = len(d)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a // g * b
                    changed = True
        d.sort()
    return d


def determinantal_divisors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """gcd of all k x k minors for k = 1..rank. Brute force; test oracle only."""
    from itertools import combinations

    rows = [list(r) for r in matrix]
    if not rows:
        return []
    nr, nc = len(rows), len(rows[0])
    out = []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, bareiss_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g)
    return out
