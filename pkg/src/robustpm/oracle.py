"""Sampling falsifier, independent of the testing-set machinery.

Draws uniform coefficient samples from the (B, D) boxes, composes ``M`` and
tests the determinant with a vectorized Routh array. Small problems also get
exhaustive checking of every Kharitonov-vertex matrix combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _batch
from .kharitonov import distinct_vertex_indices, kharitonov_vertices
from .poly import is_hurwitz
from .polymatrix import PolynomialMatrix, compose_family_member, determinant
from .problem import Problem


@dataclass
class OracleResult:
    witness: Optional[dict]
    samples: int
    vertices: int
    vertex_exhaustive: bool

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "witness": self.witness,
            "samples": self.samples,
            "vertices": self.vertices,
            "vertex_exhaustive": self.vertex_exhaustive,
        }


def _bounds(ipm) -> tuple:
    n = ipm.n
    L = ipm.max_degree + 1
    lo = np.zeros((n, n, L))
    hi = np.zeros((n, n, L))
    for i in range(n):
        for j in range(n):
            ip = ipm[i, j]
            lo[i, j, : len(ip.lower)] = ip.lower
            hi[i, j, : len(ip.upper)] = ip.upper
    return lo, hi


def _to_matrix(arr: np.ndarray) -> PolynomialMatrix:
    return PolynomialMatrix([[list(arr[i, j]) for j in range(arr.shape[1])] for i in range(arr.shape[0])])


def _confirm(problem: Problem, B: np.ndarray, D: np.ndarray, tol: float, source: str) -> Optional[dict]:
    Bm, Dm = _to_matrix(B), _to_matrix(D)
    det = determinant(compose_family_member(Bm, problem.A, Dm, problem.C))
    if det.is_zero:
        reason = "zero_determinant"
    else:
        check = is_hurwitz(det, tol)
        if check.stable:
            return None
        reason = check.reason
    return {
        "source": source,
        "routh_reason": reason,
        "determinant": det.to_list(),
        "entries": {"B": Bm.to_json(), "D": Dm.to_json()},
    }


def _first_failure(problem, Bs, Ds, A, C, tol, source):
    dets = _batch.det(_batch.compose(Bs, A, Ds, C))
    for k in np.flatnonzero(~_batch.routh_batch(dets, tol)):
        w = _confirm(problem, Bs[k], Ds[k], tol, source)
        if w is not None:
            return w
    return None


def vertex_combinations(problem: Problem) -> int:
    n = problem.n
    count = 1
    for ipm in (problem.B, problem.D):
        for i in range(n):
            for j in range(n):
                count *= len(distinct_vertex_indices(ipm[i, j]))
    return count


def oracle_falsify(problem: Problem, samples: int = 10_000, seed: int = 0, vertex_budget: int = 100_000,
                   batch: int = 8192, tol: float = 1e-9) -> OracleResult:
    """First unstable member found by vertex exhaustion or uniform sampling."""
    n = problem.n
    A = problem.A.to_array()
    C = problem.C.to_array()
    total = vertex_combinations(problem)
    exhaustive = total <= vertex_budget
    tested = 0
    if exhaustive:
        tables, radices = [], []
        for ipm in (problem.B, problem.D):
            L = ipm.max_degree + 1
            for i in range(n):
                for j in range(n):
                    ip = ipm[i, j]
                    verts = kharitonov_vertices(ip)
                    rows = np.zeros((4, L))
                    for k, idx in enumerate(distinct_vertex_indices(ip)):
                        rows[k, : len(verts[idx - 1].coeffs)] = verts[idx - 1].coeffs
                    tables.append(rows)
                    radices.append(len(distinct_vertex_indices(ip)))
        nn = n * n
        for start in range(0, total, batch):
            ids = np.arange(start, min(total, start + batch))
            rem = ids.copy()
            picks = []
            for r in reversed(radices):
                picks.append(rem % r)
                rem //= r
            picks.reverse()
            Bs = np.stack([tables[p][picks[p]] for p in range(nn)], axis=1)
            Ds = np.stack([tables[nn + p][picks[nn + p]] for p in range(nn)], axis=1)
            Bs = Bs.reshape(len(ids), n, n, -1)
            Ds = Ds.reshape(len(ids), n, n, -1)
            tested += len(ids)
            w = _first_failure(problem, Bs, Ds, A, C, tol, "vertex")
            if w is not None:
                return OracleResult(w, 0, tested, True)
    rng = np.random.default_rng(seed)
    blo, bhi = _bounds(problem.B)
    dlo, dhi = _bounds(problem.D)
    drawn = 0
    while drawn < samples:
        k = min(batch, samples - drawn)
        Bs = blo + (bhi - blo) * rng.random((k,) + blo.shape)
        Ds = dlo + (dhi - dlo) * rng.random((k,) + dlo.shape)
        drawn += k
        w = _first_failure(problem, Bs, Ds, A, C, tol, "sample")
        if w is not None:
            return OracleResult(w, drawn, tested, exhaustive)
    return OracleResult(None, drawn, tested, exhaustive)


def scalar_kharitonov_check(ip, tol: float = 1e-9) -> bool:
    """Direct four-vertex test for one interval polynomial."""
    return all(is_hurwitz(v, tol).stable for v in kharitonov_vertices(ip) if not v.is_zero)


def nominal_stable(problem: Problem, tol: float = 1e-9) -> bool:
    det = determinant(compose_family_member(problem.B.center, problem.A, problem.D.center, problem.C))
    return not det.is_zero and is_hurwitz(det, tol).stable

