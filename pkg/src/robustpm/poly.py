"""Real univariate polynomials and the strict Hurwitz test.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``s**k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError, MalformedInputError

DEFAULT_ROUTH_TOL = 1e-9

#: Reason tags reported by :func:`is_hurwitz` for non-stable polynomials.
NEGATIVE_PIVOT = "negative_pivot"
ZERO_PIVOT = "zero_pivot"
ZERO_LEADING = "zero_leading"
REASONS = (NEGATIVE_PIVOT, ZERO_PIVOT, ZERO_LEADING)


def _trim(values: Sequence[float]) -> tuple:
    end = len(values)
    while end > 1 and values[end - 1] == 0.0:
        end -= 1
    return tuple(values[:end]) if end else (0.0,)


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial with exact-zero trimming of the leading terms."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[float] = (0.0,)):
        values = []
        for c in coeffs:
            v = float(c)
            if not math.isfinite(v):
                raise MalformedInputError(f"non-finite polynomial coefficient {c!r}")
            values.append(v)
        object.__setattr__(self, "coeffs", _trim(values))

    @classmethod
    def constant(cls, c: float) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: float = 1.0) -> "Polynomial":
        return cls([0.0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[k] if k < len(b) else 0.0) for k, x in enumerate(a)])

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        out = [0.0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0.0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c: float) -> "Polynomial":
        c = float(c)
        if not math.isfinite(c):
            raise MalformedInputError(f"non-finite scale factor {c!r}")
        return Polynomial([c * x for x in self.coeffs])

    def __call__(self, z):
        return eval_complex(self, z)

    def to_list(self) -> list:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


ZERO = Polynomial((0.0,))
ONE = Polynomial((1.0,))


def poly_arith(p: Polynomial, q: Optional[Polynomial], op: str, c: float = 1.0) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``q`` ignored for scale)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(c)
    raise ValueError(f"unknown polynomial operation {op!r}")


def eval_complex(p: Polynomial, z: complex) -> complex:
    """Horner evaluation at a complex (or real) point."""
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class HurwitzResult:
    stable: bool
    reason: Optional[str] = None
    row: Optional[int] = None

    def __bool__(self) -> bool:
        return self.stable


def routh_first_column(coeffs: Sequence[float]) -> list:
    """First column of the Routh array for ascending ``coeffs``.

    The leading coefficient is made positive first. Stops early (and returns
    the partial column) when a pivot is exactly zero.
    """
    a = [float(x) for x in reversed(_trim(list(coeffs)))]
    if a[0] < 0:
        a = [-x for x in a]
    deg = len(a) - 1
    prev = a[0::2]
    cur = a[1::2]
    cur = cur + [0.0] * (len(prev) - len(cur))
    column = [prev[0]]
    for _ in range(deg):
        pivot = cur[0]
        column.append(pivot)
        if pivot == 0.0:
            break
        nxt = [
            (pivot * (prev[k + 1] if k + 1 < len(prev) else 0.0) - prev[0] * (cur[k + 1] if k + 1 < len(cur) else 0.0))
            / pivot
            for k in range(len(prev) - 1)
        ]
        nxt = nxt + [0.0] * (len(cur) - len(nxt))
        prev, cur = cur, nxt
    return column


def is_hurwitz(p: Polynomial, tol: float = DEFAULT_ROUTH_TOL) -> HurwitzResult:
    """Strict Hurwitz test by the Routh array.

    Every first-column entry must exceed ``tol * max|coeff|``. Imaginary-axis
    roots therefore fail with ``zero_pivot``. A nonzero constant is stable.
    """
    if p.is_zero:
        raise MalformedInputError("the zero polynomial has no Hurwitz classification")
    scale = max(abs(c) for c in p.coeffs)
    threshold = tol * scale
    if abs(p.leading) <= threshold:
        return HurwitzResult(False, ZERO_LEADING, 0)
    column = routh_first_column(p.coeffs)
    for row, v in enumerate(column[1:], start=1):
        if v < -threshold:
            return HurwitzResult(False, NEGATIVE_PIVOT, row)
        if v <= threshold:
            return HurwitzResult(False, ZERO_PIVOT, row)
    return HurwitzResult(True)


def cauchy_root_bound(p: Polynomial) -> float:
    """``1 + max_k |c_k / c_deg|``; every root lies strictly inside this radius."""
    if p.degree < 1:
        raise DomainError("Cauchy bound needs degree >= 1")
    lead = p.leading
    return 1.0 + max(abs(c / lead) for c in p.coeffs[:-1])


def from_roots(roots: Iterable[complex]) -> Polynomial:
    """Monic real polynomial with the given roots (complex roots need conjugates)."""
    out = [1.0 + 0j]
    for r in roots:
        nxt = [0j] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k + 1] += c
            nxt[k] -= r * c
        out = nxt
    return Polynomial([c.real for c in out])
