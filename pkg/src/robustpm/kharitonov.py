"""Interval polynomials with their Kharitonov vertex and edge sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import MalformedInputError
from .poly import Polynomial

# Bound chosen at k mod 4 == 0, 1, 2, 3 for K1..K4 ("L" lower, "U" upper).
VERTEX_PATTERNS = (
    ("L", "L", "U", "U"),
    ("L", "U", "U", "L"),
    ("U", "L", "L", "U"),
    ("U", "U", "L", "L"),
)
# Vertex index pairs (1-based) joined by the four Kharitonov edges, in order.
EDGE_PAIRS = ((1, 2), (2, 4), (4, 3), (3, 1))


@dataclass(frozen=True)
class IntervalPolynomial:
    """Per-degree closed coefficient intervals, ascending degree order."""

    bounds: tuple

    def __init__(self, bounds: Iterable[Sequence[float]]):
        pairs = []
        for k, pair in enumerate(bounds):
            try:
                lo, hi = (float(x) for x in pair)
            except (TypeError, ValueError) as exc:
                raise MalformedInputError(f"coefficient {k}: expected a [lo, hi] pair, got {pair!r}") from exc
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise MalformedInputError(f"coefficient {k}: non-finite bound")
            if lo > hi:
                raise MalformedInputError(f"coefficient {k}: lo {lo} > hi {hi}")
            pairs.append((lo, hi))
        if not pairs:
            raise MalformedInputError("interval polynomial needs at least one coefficient")
        # exact-zero trailing intervals carry no information
        while len(pairs) > 1 and pairs[-1] == (0.0, 0.0):
            pairs.pop()
        object.__setattr__(self, "bounds", tuple(pairs))

    @classmethod
    def point(cls, p: Polynomial | Sequence[float]) -> "IntervalPolynomial":
        coeffs = p.coeffs if isinstance(p, Polynomial) else p
        return cls([(c, c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.bounds) - 1

    @property
    def lower(self) -> tuple:
        return tuple(lo for lo, _ in self.bounds)

    @property
    def upper(self) -> tuple:
        return tuple(hi for _, hi in self.bounds)

    @property
    def center(self) -> Polynomial:
        return Polynomial([(lo + hi) / 2 for lo, hi in self.bounds])

    @property
    def invariant_degree(self) -> bool:
        """True when the top coefficient interval cannot reach zero."""
        lo, hi = self.bounds[-1]
        return lo == hi or (lo > 0 and hi > 0) or (lo < 0 and hi < 0)

    def contains(self, p: Polynomial, slack: float = 0.0) -> bool:
        if p.degree > self.degree and not p.is_zero:
            return False
        for k, (lo, hi) in enumerate(self.bounds):
            c = p.coeffs[k] if k < len(p.coeffs) else 0.0
            if c < lo - slack or c > hi + slack:
                return False
        return True

    def to_json(self) -> list:
        return [[lo, hi] for lo, hi in self.bounds]


@dataclass(frozen=True)
class EdgeSegment:
    """``lam * start + (1 - lam) * end`` for ``lam`` in [0, 1]."""

    start: Polynomial
    end: Polynomial
    pair: tuple = (1, 2)

    def at(self, lam: float) -> Polynomial:
        return self.start.scale(lam) + self.end.scale(1.0 - lam)

    @property
    def degenerate(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class Degeneracy:
    full_point: bool
    flags: tuple


def kharitonov_vertices(ip: IntervalPolynomial) -> tuple:
    """The four Kharitonov polynomials K1..K4."""
    out = []
    for pattern in VERTEX_PATTERNS:
        coeffs = [lo if pattern[k % 4] == "L" else hi for k, (lo, hi) in enumerate(ip.bounds)]
        out.append(Polynomial(coeffs))
    return tuple(out)


def kharitonov_edges(ip: IntervalPolynomial) -> tuple:
    """Segments for the pairs (1,2), (2,4), (4,3), (3,1); endpoints included."""
    v = kharitonov_vertices(ip)
    return tuple(EdgeSegment(v[i - 1], v[j - 1], (i, j)) for i, j in EDGE_PAIRS)


def is_degenerate(ip: IntervalPolynomial) -> Degeneracy:
    flags = tuple(lo == hi for lo, hi in ip.bounds)
    return Degeneracy(all(flags), flags)


def distinct_vertex_indices(ip: IntervalPolynomial) -> tuple:
    """1-based indices of pairwise distinct vertices, first occurrence kept."""
    seen = {}
    for idx, v in enumerate(kharitonov_vertices(ip), start=1):
        seen.setdefault(v.coeffs, idx)
    return tuple(seen.values())


def distinct_edge_indices(ip: IntervalPolynomial) -> tuple:
    """1-based indices of distinct non-degenerate edges (unordered endpoints)."""
    seen = {}
    for idx, e in enumerate(kharitonov_edges(ip), start=1):
        if e.degenerate:
            continue
        seen.setdefault(frozenset((e.start.coeffs, e.end.coeffs)), idx)
    return tuple(seen.values())


def sample(ip: IntervalPolynomial, rng: np.random.Generator) -> Polynomial:
    """Independent uniform draw of every coefficient inside its interval."""
    lo = np.array(ip.lower)
    hi = np.array(ip.upper)
    return Polynomial(lo + (hi - lo) * rng.random(len(lo)))
