"""Exact integer matrices (Python ints, no floating point)."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Dimensions are stored explicitly so that empty matrices (0 x n or n x 0)
    keep their shape.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(a) for a in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntegerMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def parse(cls, text: str) -> IntegerMatrix:
        """Read the `rows cols` header followed by row-major entries."""
        from .errors import ParseError

        tokens = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0]
            tokens.extend((tok, lineno) for tok in line.split())
        if len(tokens) < 2:
            raise ParseError("expected header 'rows cols'", 1)
        try:
            vals = [int(tok) for tok, _ in tokens]
        except ValueError as exc:
            bad = next(t for t in tokens if not _is_int(t[0]))
            raise ParseError(f"not an integer: {bad[0]!r}", bad[1]) from exc
        r, c = vals[0], vals[1]
        if r < 0 or c < 0:
            raise ParseError("negative dimension", tokens[0][1])
        body = vals[2:]
        if len(body) != r * c:
            raise ParseError(f"expected {r * c} entries, found {len(body)}", tokens[-1][1])
        return cls([body[i * c:(i + 1) * c] for i in range(r)], c)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.tolist()!r}, ncols={self.ncols})"

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntegerMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix([[-a for a in r] for r in self._rows], self.ncols)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows], other.ncols
        )

    def apply(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.ncols:
            raise ValueError(f"vector of length {len(x)} for {self.ncols} columns")
        return [sum(a * b for a, b in zip(r, x)) for r in self._rows]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def mod(self, m: int) -> IntegerMatrix:
        return IntegerMatrix([[a % m for a in r] for r in self._rows], self.ncols)

    def kron(self, other: IntegerMatrix) -> IntegerMatrix:
        p, q = other.shape
        out = [[0] * (self.ncols * q) for _ in range(self.nrows * p)]
        for i, r in enumerate(self._rows):
            for j, a in enumerate(r):
                if a == 0:
                    continue
                for s in range(p):
                    orow = out[i * p + s]
                    brow = other._rows[s]
                    for t in range(q):
                        orow[j * q + t] = a * brow[t]
        return IntegerMatrix(out, self.ncols * q)

    def direct_sum(self, other: IntegerMatrix) -> IntegerMatrix:
        width = self.ncols + other.ncols
        top = [list(r) + [0] * other.ncols for r in self._rows]
        bottom = [[0] * self.ncols + list(r) for r in other._rows]
        return IntegerMatrix(top + bottom, width)

    def take(self, row_order: Sequence[int], col_order: Sequence[int]) -> IntegerMatrix:
        """Submatrix (or permutation) selecting the given rows and columns."""
        return IntegerMatrix(
            [[self._rows[i][j] for j in col_order] for i in row_order], len(col_order)
        )

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)


def _is_int(tok: str) -> bool:
    try:
        int(tok)
    except ValueError:
        return False
    return True
