"""Smith normal form over Z and the derived linear algebra over Z_m.

All arithmetic is exact. Z_m data comes from the integer Smith form: if
U M V = diag(s_1, ..., s_t) with U, V unimodular, then U and V stay invertible
modulo m, so the invariant divisors over Z_m are gcd(s_i, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .matrix import IntegerMatrix

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]
    U: IntegerMatrix | None = None
    V: IntegerMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class ZmDivisors:
    modulus: int
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _as_matrix(M) -> IntegerMatrix:
    return M if isinstance(M, IntegerMatrix) else IntegerMatrix(M)


def integer_snf(M, want_transforms: bool = False) -> SnfResult:
    """Smith normal form of an integer matrix.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken by row-major index. With ``want_transforms`` the result carries
    unimodular U, V such that U @ M @ V is the diagonal Smith form.
    """
    M = _as_matrix(M)
    nr, nc = M.shape
    A = M.tolist()
    U = [[int(i == j) for j in range(nr)] for i in range(nr)] if want_transforms else None
    V = [[int(i == j) for j in range(nc)] for i in range(nc)] if want_transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        if V is not None:
            for row in V:
                row[dst] += c * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        if U is not None:
            U[i] = [-a for a in U[i]]

    factors = []
    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = A[i][j]
                if a and (pivot is None or abs(a) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            clean = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        clean = False
            if clean:
                # row and column cleared; enforce divisibility of the rest
                p = A[t][t]
                bad = next(
                    (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # a remainder survived: move the smallest entry of row/col t to the pivot
            best, where = abs(A[t][t]), None
            for i in range(t + 1, nr):
                if A[i][t] and abs(A[i][t]) < best:
                    best, where = abs(A[i][t]), ("r", i)
            for j in range(t + 1, nc):
                if A[t][j] and abs(A[t][j]) < best:
                    best, where = abs(A[t][j]), ("c", j)
            if where is not None:
                if where[0] == "r":
                    swap_rows(t, where[1])
                else:
                    swap_cols(t, where[1])
        if A[t][t] < 0:
            negate_row(t)
        factors.append(A[t][t])
        t += 1

    if not want_transforms:
        return SnfResult(tuple(factors))
    return SnfResult(tuple(factors), IntegerMatrix(U, nr), IntegerMatrix(V, nc))


def zm_invariant_divisors(M, m: int) -> ZmDivisors:
    """Invariant divisors d_1 | ... | d_r of M over Z_m (zero diagonal entries dropped)."""
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    divs = tuple(d for d in (gcd(s, m) for s in integer_snf(M).invariant_factors) if d != m)
    return ZmDivisors(m, divs)


def kernel_count_zm(M, m: int) -> int:
    """Number of x in Z_m^n with M x = 0 over Z_m, i.e. m^(n-r) * prod(d_i)."""
    M = _as_matrix(M)
    zd = zm_invariant_divisors(M, m)
    return m ** (M.ncols - zd.rank) * prod(zd.divisors)


def solve_linear_zm(M, b: Sequence[int], m: int) -> list[int] | None:
    """Some x with M x = b over Z_m, or None when the system is inconsistent."""
    M = _as_matrix(M)
    if len(b) != M.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {M.nrows} rows")
    snf = integer_snf(M, want_transforms=True)
    c = [x % m for x in snf.U.apply(list(b))]
    y = [0] * M.ncols
    for i, s in enumerate(snf.invariant_factors):
        g = gcd(s, m)
        if c[i] % g:
            return None
        mg = m // g
        y[i] = (c[i] // g) * pow(s // g, -1, mg) % mg if mg > 1 else 0
    if any(c[i] for i in range(snf.rank, M.nrows)):
        return None
    return [v % m for v in snf.V.apply(y)]


def _candidate_blocks(n: int, m: int, fix_first_zero: bool, block: int = 1 << 16):
    free = n - 1 if fix_first_zero and n else n
    total = m**free
    powers = m ** np.arange(free - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, block):
        idx = np.arange(start, min(total, start + block), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % m
        if fix_first_zero and n:
            digits = np.hstack([np.zeros((len(idx), 1), dtype=np.int64), digits])
        yield digits


def enumerate_kernel_zm(
    M, m: int, fix_first_zero: bool = False, budget: int = DEFAULT_BUDGET
) -> list[tuple[int, ...]]:
    """Brute-force list of kernel vectors over Z_m, in lexicographic order.

    With ``fix_first_zero`` only vectors with x_1 = 0 are scanned; for the
    incidence matrix of a connected hypergraph this is the PS_0 model.
    """
    M = _as_matrix(M)
    n = M.ncols
    free = n - 1 if fix_first_zero and n else n
    if m**free > budget:
        raise BudgetExceeded(f"{m}^{free} candidates exceed budget {budget}")
    A = np.array(M.tolist(), dtype=np.int64).reshape(M.nrows, n) % m
    out = []
    for X in _candidate_blocks(n, m, fix_first_zero):
        ok = ~((X @ A.T) % m).any(axis=1) if M.nrows else np.ones(len(X), dtype=bool)
        out.extend(tuple(int(a) for a in row) for row in X[ok])
    return out


def brute_force_solve_zm(
    M, b: Sequence[int], m: int, budget: int = DEFAULT_BUDGET
) -> list[int] | None:
    """Exhaustive search for a solution of M x = b over Z_m (first in lex order)."""
    M = _as_matrix(M)
    n = M.ncols
    if m**n > budget:
        raise BudgetExceeded(f"{m}^{n} candidates exceed budget {budget}")
    A = np.array(M.tolist(), dtype=np.int64).reshape(M.nrows, n) % m
    target = np.array([x % m for x in b], dtype=np.int64)
    for X in _candidate_blocks(n, m, False):
        hit = ~(((X @ A.T) % m) != target).any(axis=1)
        if hit.any():
            return [int(a) for a in X[np.argmax(hit)]]
    return None
