"""Polynomial matrices, the family composition ``B A + D C``, and determinants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DimensionError, MalformedInputError
from .kharitonov import IntervalPolynomial
from .poly import ONE, ZERO, Polynomial, eval_complex

MAX_SYMBOLIC_N = 8


def _square(rows, kind):
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError(f"{kind} must be a non-empty square grid")
    return rows


@dataclass(frozen=True)
class PolynomialMatrix:
    entries: tuple

    def __init__(self, entries: Sequence[Sequence]):
        rows = _square(entries, "polynomial matrix")
        rows = tuple(
            tuple(e if isinstance(e, Polynomial) else Polynomial(np.atleast_1d(e)) for e in r) for r in rows
        )
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, n: int) -> "PolynomialMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "PolynomialMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @property
    def max_degree(self) -> int:
        return max(e.degree for r in self.entries for e in r)

    def __add__(self, other: "PolynomialMatrix") -> "PolynomialMatrix":
        _check_dims(self, other)
        return PolynomialMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __matmul__(self, other: "PolynomialMatrix") -> "PolynomialMatrix":
        _check_dims(self, other)
        n = self.n
        out = []
        for i in range(n):
            row = []
            for k in range(n):
                acc = ZERO
                for j in range(n):
                    acc = acc + self.entries[i][j] * other.entries[j][k]
                row.append(acc)
            out.append(row)
        return PolynomialMatrix(out)

    def swap_rows(self, i: int, j: int) -> "PolynomialMatrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return PolynomialMatrix(rows)

    def to_array(self, length: int | None = None) -> np.ndarray:
        """Coefficient array of shape (n, n, length)."""
        length = length or self.max_degree + 1
        out = np.zeros((self.n, self.n, length))
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                out[i, j, : len(e.coeffs)] = e.coeffs
        return out

    def to_json(self) -> list:
        return [[e.to_list() for e in r] for r in self.entries]


@dataclass(frozen=True)
class IntervalPolynomialMatrix:
    entries: tuple

    def __init__(self, entries: Sequence[Sequence]):
        rows = _square(entries, "interval polynomial matrix")
        for r in rows:
            for e in r:
                if not isinstance(e, IntervalPolynomial):
                    raise MalformedInputError("entries must be IntervalPolynomial instances")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> IntervalPolynomial:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def point(cls, m: PolynomialMatrix) -> "IntervalPolynomialMatrix":
        return cls([[IntervalPolynomial.point(e) for e in r] for r in m.entries])

    @property
    def center(self) -> PolynomialMatrix:
        return PolynomialMatrix([[e.center for e in r] for r in self.entries])

    @property
    def max_degree(self) -> int:
        return max(e.degree for r in self.entries for e in r)

    def contains(self, m: PolynomialMatrix, slack: float = 0.0) -> bool:
        return all(
            self.entries[i][j].contains(m.entries[i][j], slack) for i in range(self.n) for j in range(self.n)
        )

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.entries]


def _check_dims(*mats) -> None:
    sizes = {m.n for m in mats}
    if len(sizes) != 1:
        raise DimensionError(f"matrix dimensions disagree: {sorted(sizes)}")


def compose_family_member(B, A, D, C) -> PolynomialMatrix:
    """``B A + D C`` with polynomial entry arithmetic."""
    _check_dims(B, A, D, C)
    return (B @ A) + (D @ C)


def determinant(M: PolynomialMatrix, max_n: int = MAX_SYMBOLIC_N) -> Polynomial:
    """Exact polynomial determinant by row expansion over memoized column subsets."""
    n = M.n
    if n > max_n:
        raise CapacityError(f"symbolic determinant limited to n <= {max_n} (got {n})")
    memo = {0: ONE}
    # minor(mask): rows n-popcount(mask).. n-1 against the columns in mask
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        row = n - len(cols)
        acc = ZERO
        for pos, j in enumerate(cols):
            entry = M.entries[row][j]
            if entry.is_zero:
                continue
            term = entry * memo[mask & ~(1 << j)]
            acc = acc - term if pos % 2 else acc + term
        memo[mask] = acc
    return memo[(1 << n) - 1]


def eval_matrix(M: PolynomialMatrix, z: complex) -> np.ndarray:
    return np.array([[eval_complex(e, z) for e in r] for r in M.entries], dtype=complex)


def complex_det(M) -> complex:
    """LU with partial pivoting (LAPACK); singular input gives ~0."""
    return complex(np.linalg.det(np.asarray(M, dtype=complex)))
