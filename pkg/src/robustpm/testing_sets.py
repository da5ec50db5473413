"""Testing-set enumeration for interval polynomial matrix families.

A *pattern* fixes which entry positions of (B, D) carry a one-parameter
Kharitonov edge; every other position carries a Kharitonov vertex. A
*configuration* additionally fixes which vertex or edge is used at each
position. Positions are 0-based internally and 1-based in serialized output.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .errors import CapacityError, DimensionError, DomainError
from .kharitonov import (
    distinct_edge_indices,
    distinct_vertex_indices,
    is_degenerate,
    kharitonov_edges,
    kharitonov_vertices,
)

METHODS = ("prop1", "thm1_row", "thm1_column")
FULL_MODE_MAX_N = 2


class Position(NamedTuple):
    side: str  # "B" or "D"
    i: int
    j: int

    def label(self) -> str:
        return f"{self.side}{self.i + 1}{self.j + 1}"

    def to_json(self) -> list:
        return [self.side, self.i + 1, self.j + 1]


def all_positions(n: int) -> tuple:
    return tuple(Position(side, i, j) for side in "BD" for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Pattern:
    """Edge-position skeleton. ``edges`` is sorted and defines the lambda order."""

    n: int
    edges: tuple
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(Position(*p) for p in self.edges)))

    @property
    def arity(self) -> int:
        return len(self.edges)

    def label(self) -> str:
        return "{" + ",".join(p.label() for p in self.edges) + "}"

    def to_json(self) -> dict:
        return {
            "edges": [p.to_json() for p in self.edges],
            "arity": self.arity,
            "meta": _jsonable(self.meta),
        }


class Selection(NamedTuple):
    kind: str  # "V" vertex or "E" edge
    index: Optional[int]  # 1-based Kharitonov index; None in a skeleton


@dataclass(frozen=True)
class EdgeConfiguration:
    """Full selection over every position of (B, D), canonical position order."""

    pattern: Pattern
    selections: tuple

    @property
    def edge_positions(self) -> tuple:
        return self.pattern.edges

    @property
    def arity(self) -> int:
        return self.pattern.arity

    @property
    def is_skeleton(self) -> bool:
        return any(s.index is None for s in self.selections)

    def selection(self, pos: Position) -> Selection:
        n = self.pattern.n
        offset = (0 if pos.side == "B" else n * n) + pos.i * n + pos.j
        return self.selections[offset]

    def to_json(self) -> dict:
        positions = all_positions(self.pattern.n)
        return {
            "pattern": self.pattern.label(),
            "edges": [p.to_json() for p in self.edge_positions],
            "arity": self.arity,
            "vertices": {p.label(): s.index for p, s in zip(positions, self.selections) if s.kind == "V"},
            "edge_indices": {p.label(): s.index for p, s in zip(positions, self.selections) if s.kind == "E"},
        }


def _jsonable(meta: dict) -> dict:
    out = {}
    for k, v in meta.items():
        if isinstance(v, tuple):
            v = [list(x) if isinstance(x, tuple) else x for x in v]
        out[k] = v
    return out


def _check_pair(B, D) -> int:
    if B.n != D.n:
        raise DimensionError(f"B is {B.n}x{B.n} but D is {D.n}x{D.n}")
    return B.n


# ---------------------------------------------------------------------------
# Pattern generators (structure only, independent of the interval data)


def prop1_patterns(n: int) -> list:
    """One pattern per permutation pair: B edges at (i, s(i)), D edges at (i, s'(i))."""
    out = []
    for sigma in itertools.permutations(range(n)):
        for sigma_p in itertools.permutations(range(n)):
            edges = [Position("B", i, sigma[i]) for i in range(n)]
            edges += [Position("D", i, sigma_p[i]) for i in range(n)]
            meta = {"method": "prop1", "sigma": _one_based(sigma), "sigma_prime": _one_based(sigma_p)}
            out.append(Pattern(n, tuple(edges), meta))
    return out


def _one_based(perm) -> tuple:
    return tuple(k + 1 for k in perm)


def _side_assignments(n: int):
    """Yield (sides, targets): one side per index and pairwise distinct targets per side."""
    for sides in itertools.product("BD", repeat=n):
        b_idx = [k for k in range(n) if sides[k] == "B"]
        d_idx = [k for k in range(n) if sides[k] == "D"]
        for b_targets in itertools.permutations(range(n), len(b_idx)):
            for d_targets in itertools.permutations(range(n), len(d_idx)):
                targets = [0] * n
                for k, t in zip(b_idx, b_targets):
                    targets[k] = t
                for k, t in zip(d_idx, d_targets):
                    targets[k] = t
                yield sides, tuple(targets)


def thm1_patterns(n: int, variant: str = "row") -> list:
    """Reduced patterns with one edge per row (``row``) or per column (``column``)."""
    if variant not in ("row", "column"):
        raise ValueError(f"unknown variant {variant!r}")
    out = []
    for sides, targets in _side_assignments(n):
        if variant == "row":
            edges = [Position(sides[i], i, targets[i]) for i in range(n)]
            meta = {"method": "thm1_row", "sides": sides, "columns": _one_based(targets)}
        else:
            edges = [Position(sides[j], targets[j], j) for j in range(n)]
            meta = {"method": "thm1_column", "sides": sides, "rows": _one_based(targets)}
        out.append(Pattern(n, tuple(edges), meta))
    return out


def lemma2_patterns(n: int, i: int, side_mode: str) -> list:
    """Row-``i`` patterns: ``N_i`` puts a B edge at k1 and a D edge at k2;
    ``N_i_E`` puts a single edge at column k on one side. ``i`` is 1-based."""
    if not 1 <= i <= n:
        raise DomainError(f"row index {i} outside 1..{n}")
    r = i - 1
    if side_mode == "N_i":
        return [
            Pattern(n, (Position("B", r, k1), Position("D", r, k2)), {"method": "lemma2", "row": i, "k1": k1 + 1, "k2": k2 + 1})
            for k1 in range(n)
            for k2 in range(n)
        ]
    if side_mode == "N_i_E":
        return [
            Pattern(n, (Position(side, r, k),), {"method": "lemma2_E", "row": i, "k": k + 1, "side": side})
            for k in range(n)
            for side in "BD"
        ]
    raise ValueError(f"unknown side mode {side_mode!r}")


def method_patterns(n: int, method: str) -> list:
    if method == "prop1":
        return prop1_patterns(n)
    if method == "thm1_row":
        return thm1_patterns(n, "row")
    if method == "thm1_column":
        return thm1_patterns(n, "column")
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


# ---------------------------------------------------------------------------
# Collapse and expansion against concrete interval data


def _entry(B, D, pos: Position):
    return (B if pos.side == "B" else D).entries[pos.i][pos.j]


def point_positions(B, D) -> frozenset:
    n = _check_pair(B, D)
    return frozenset(p for p in all_positions(n) if is_degenerate(_entry(B, D, p)).full_point)


@dataclass
class CollapseResult:
    patterns: list
    before: int
    merged: dict  # collapsed label -> labels of the raw patterns it absorbs

    @property
    def after(self) -> int:
        return len(self.patterns)


def collapse_patterns(patterns: Sequence[Pattern], B, D) -> CollapseResult:
    """Drop edges on point entries, merge identical patterns, remove subsumed ones.

    A pattern whose edge set is a subset of another's describes a subfamily of
    it, since every Kharitonov vertex lies on a Kharitonov edge. Survivors keep
    the order of their first appearance.
    """
    points = point_positions(B, D)
    reduced = {}
    for p in patterns:
        edges = tuple(e for e in p.edges if e not in points)
        key = frozenset(edges)
        if key not in reduced:
            meta = dict(p.meta)
            meta["collapsed_from"] = p.label()
            reduced[key] = (Pattern(p.n, edges, meta), [p.label()])
        else:
            reduced[key][1].append(p.label())
    keys = list(reduced)
    survivors = []
    merged = {}
    for key in keys:
        supersets = [k for k in keys if key < k]
        if supersets:
            host = next(k for k in keys if key < k and not any(k < q for q in keys))
            merged.setdefault(host, []).extend(reduced[key][1])
            continue
        survivors.append(key)
    out = []
    merged_labels = {}
    for key in survivors:
        pat, labels = reduced[key]
        merged_labels[pat.label()] = labels + merged.get(key, [])
        out.append(pat)
    return CollapseResult(out, len(patterns), merged_labels)


@dataclass(frozen=True)
class Expansion:
    """Per-position choice lists for one collapsed pattern, canonical order."""

    pattern: Pattern
    choices: tuple  # per position: tuple of Selection

    @property
    def size(self) -> int:
        return math.prod(len(c) for c in self.choices)

    def configuration(self, index: int) -> EdgeConfiguration:
        """Mixed-radix decode; the last position varies fastest."""
        sel = [None] * len(self.choices)
        for k in range(len(self.choices) - 1, -1, -1):
            index, r = divmod(index, len(self.choices[k]))
            sel[k] = self.choices[k][r]
        return EdgeConfiguration(self.pattern, tuple(sel))

    def index_array(self, start: int, stop: int) -> np.ndarray:
        """Choice indices for configurations ``start..stop-1``, shape (K, P)."""
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.zeros((len(idx), len(self.choices)), dtype=np.int64)
        for k in range(len(self.choices) - 1, -1, -1):
            radix = len(self.choices[k])
            out[:, k] = idx % radix
            idx //= radix
        return out

    def __iter__(self) -> Iterator[EdgeConfiguration]:
        for combo in itertools.product(*self.choices):
            yield EdgeConfiguration(self.pattern, combo)


def expand(pattern: Pattern, B, D, collapse: bool = True) -> Expansion:
    """Choice lists for a pattern. With ``collapse`` only distinct vertices and
    distinct non-degenerate edges are kept; point entries hold vertex 1."""
    n = _check_pair(B, D)
    edges = set(pattern.edges)
    choices = []
    for pos in all_positions(n):
        ip = _entry(B, D, pos)
        if not collapse:
            kind = "E" if pos in edges else "V"
            choices.append(tuple(Selection(kind, k) for k in range(1, 5)))
            continue
        if pos in edges:
            idx = distinct_edge_indices(ip)
            if idx:
                choices.append(tuple(Selection("E", k) for k in idx))
                continue
        choices.append(tuple(Selection("V", k) for k in distinct_vertex_indices(ip)))
    return Expansion(pattern, tuple(choices))


def skeleton(pattern: Pattern) -> EdgeConfiguration:
    edges = set(pattern.edges)
    sel = tuple(Selection("E" if p in edges else "V", None) for p in all_positions(pattern.n))
    return EdgeConfiguration(pattern, sel)


def _stream(patterns, B, D, mode, allow_large):
    n = _check_pair(B, D)
    if mode == "patterns_only":
        for p in patterns:
            yield skeleton(p)
        return
    if mode != "full":
        raise ValueError(f"unknown mode {mode!r}")
    if n > FULL_MODE_MAX_N and not allow_large:
        raise CapacityError(f"full enumeration for n={n} needs allow_large=True (4^(2n^2) growth)")
    for p in patterns:
        yield from expand(p, B, D, collapse=False)


def prop1_enumerate(B, D, mode: str = "patterns_only", allow_large: bool = False) -> Iterator[EdgeConfiguration]:
    return _stream(prop1_patterns(_check_pair(B, D)), B, D, mode, allow_large)


def thm1_enumerate(B, D, variant: str = "row", mode: str = "patterns_only", allow_large: bool = False):
    return _stream(thm1_patterns(_check_pair(B, D), variant), B, D, mode, allow_large)


def lemma2_enumerate(B, D, i: int, side_mode: str, mode: str = "patterns_only", allow_large: bool = False):
    return _stream(lemma2_patterns(_check_pair(B, D), i, side_mode), B, D, mode, allow_large)


def _config_key(cfg: EdgeConfiguration, B, D) -> tuple:
    """Canonical endpoint-coefficient key of the family a configuration induces."""
    n = cfg.pattern.n
    key = []
    for pos, sel in zip(all_positions(n), cfg.selections):
        ip = _entry(B, D, pos)
        if sel.kind == "E":
            seg = kharitonov_edges(ip)[sel.index - 1]
            if not seg.degenerate:
                key.append(("E", frozenset((seg.start.coeffs, seg.end.coeffs))))
                continue
            key.append(("V", seg.start.coeffs))
        else:
            key.append(("V", kharitonov_vertices(ip)[sel.index - 1].coeffs))
    return tuple(key)


@dataclass
class CollapseReport:
    configurations: list
    patterns_before: int
    patterns_after: int
    configs_before: int
    configs_after: int


def collapse_degenerate(configs: Iterable[EdgeConfiguration], B, D) -> CollapseReport:
    """Skeletons collapse at pattern level; concrete configurations by exact
    comparison of the endpoint polynomials they induce."""
    configs = list(configs)
    if configs and all(c.is_skeleton for c in configs):
        res = collapse_patterns([c.pattern for c in configs], B, D)
        return CollapseReport([skeleton(p) for p in res.patterns], res.before, res.after, len(configs), res.after)
    seen = {}
    for cfg in configs:
        seen.setdefault(_config_key(cfg, B, D), cfg)
    kept = list(seen.values())
    pattern_keys = {frozenset(k for k in key if k[0] == "E") for key in seen}
    raw_patterns = {c.pattern.edges for c in configs}
    return CollapseReport(kept, len(raw_patterns), len(pattern_keys), len(configs), len(kept))


# ---------------------------------------------------------------------------
# Counting


def count_formulas(n: int) -> dict:
    """Exact testing-set sizes: the permutation-pair form and the reduced form."""
    if n < 1:
        raise DomainError("n must be positive")
    fact = math.factorial(n)
    per = 4 ** (2 * n * n)
    thm1_patterns_count = sum(math.comb(n, t) ** 2 for t in range(n + 1)) * fact
    return {
        "prop1": per * fact * fact,
        "thm1": per * thm1_patterns_count,
        "prop1_patterns": fact * fact,
        "thm1_patterns": thm1_patterns_count,
    }


def uniform_count(pattern: Pattern, B, D) -> int:
    """Four choices for every non-point entry, as the closed-form counts assume."""
    points = point_positions(B, D)
    return 4 ** sum(1 for p in all_positions(pattern.n) if p not in points)


@dataclass
class TestingPlan:
    method: str
    raw_patterns: list
    collapse: CollapseResult
    expansions: list

    @property
    def patterns(self) -> list:
        return self.collapse.patterns

    @property
    def total(self) -> int:
        return sum(e.size for e in self.expansions)


def testing_plan(B, D, method: str, patterns: Optional[Sequence[Pattern]] = None) -> TestingPlan:
    """Collapsed patterns for a method plus their per-position choice lists."""
    n = _check_pair(B, D)
    raw = list(patterns) if patterns is not None else method_patterns(n, method)
    res = collapse_patterns(raw, B, D)
    return TestingPlan(method, raw, res, [expand(p, B, D) for p in res.patterns])


# keep pytest from collecting these by name
TestingPlan.__test__ = False
testing_plan.__test__ = False


def extends_to_permutation(pattern: Pattern) -> bool:
    """Both sides' edge positions are partial injections (extendable to permutations)."""
    for side in "BD":
        rows = [p.i for p in pattern.edges if p.side == side]
        cols = [p.j for p in pattern.edges if p.side == side]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            return False
    return True
