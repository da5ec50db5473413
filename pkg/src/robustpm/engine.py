"""Robust-stability decisions for lambda-parametrized determinant families.

Each testing-set configuration defines a family whose determinant is
multilinear in its edge parameters. A family is certified stable when one
member is Hurwitz and the convex hull of the corner determinant values at
``j*omega`` excludes the origin for every frequency (zero exclusion with the
multilinear mapping theorem). The frequency axis and, when needed, the
parameter box are refined adaptively by the kernel in ``_kernels``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _batch
from ._kernels import BACKEND, INCONCLUSIVE, PENDING, REASONS, STABLE, UNSTABLE, kernel
from .errors import BracketError, CapacityError, DomainError
from .kharitonov import kharitonov_edges, kharitonov_vertices
from .poly import Polynomial, is_hurwitz
from .polymatrix import PolynomialMatrix, complex_det, compose_family_member, determinant, eval_matrix
from .problem import Problem, ProblemSpec
from .testing_sets import (
    EdgeConfiguration,
    Expansion,
    Pattern,
    Position,
    TestingPlan,
    all_positions,
    testing_plan,
)

VERDICTS = {STABLE: "stable", UNSTABLE: "unstable", INCONCLUSIVE: "inconclusive"}
SEVERITY = {"stable": 0, "inconclusive": 1, "unstable": 2}
MAX_HULL_ARITY = 20
MAX_GRID_POINTS = 2_000_000


@dataclass
class EngineOptions:
    tol: float = 1e-9
    hull_tol: float = 1e-9
    freq_floor: float = 1e-6
    lam_floor: float = 1e-6
    max_tasks: int = 200_000
    grid_steps: Optional[int] = None
    max_configs: Optional[int] = None
    seed: int = 0
    jobs: int = 1
    chunk: int = 2048
    degree_sample: int = 4096

    def echo(self) -> dict:
        out = asdict(self)
        out.pop("jobs")
        out.pop("chunk")
        return out


# ---------------------------------------------------------------------------
# Parametrized families


def _entry(problem: Problem, pos: Position):
    return (problem.B if pos.side == "B" else problem.D).entries[pos.i][pos.j]


@dataclass(frozen=True)
class ParamFamily:
    """One configuration of (B, D) with its fixed factors A and C."""

    problem: Problem
    config: EdgeConfiguration

    @property
    def arity(self) -> int:
        return self.config.arity

    def members(self) -> dict:
        """Position -> fixed vertex polynomial or EdgeSegment."""
        out = {}
        for pos, sel in zip(all_positions(self.problem.n), self.config.selections):
            ip = _entry(self.problem, pos)
            if sel.kind == "E":
                out[pos] = kharitonov_edges(ip)[sel.index - 1]
            else:
                out[pos] = kharitonov_vertices(ip)[sel.index - 1]
        return out

    def instantiate(self, lam: Sequence[float]) -> tuple:
        lam = [float(x) for x in lam]
        if len(lam) != self.arity:
            raise DomainError(f"expected {self.arity} parameters, got {len(lam)}")
        if any(not (0.0 <= x <= 1.0) for x in lam):
            raise DomainError(f"parameters must lie in [0, 1]: {lam}")
        n = self.problem.n
        members = self.members()
        grids = {"B": [[None] * n for _ in range(n)], "D": [[None] * n for _ in range(n)]}
        order = {p: k for k, p in enumerate(self.config.edge_positions)}
        for pos, mem in members.items():
            if pos in order:
                grids[pos.side][pos.i][pos.j] = mem.at(lam[order[pos]])
            else:
                grids[pos.side][pos.i][pos.j] = mem
        return PolynomialMatrix(grids["B"]), PolynomialMatrix(grids["D"])

    def matrix(self, lam: Sequence[float]) -> PolynomialMatrix:
        B, D = self.instantiate(lam)
        return compose_family_member(B, self.problem.A, D, self.problem.C)

    def determinant(self, lam: Sequence[float]) -> Polynomial:
        return determinant(self.matrix(lam))

    def corner_polys(self) -> np.ndarray:
        """Determinant coefficients at all ``2**m`` corners, shape (2**m, L)."""
        m = self.arity
        dets = [self.determinant([float(c >> e & 1) for e in range(m)]) for c in range(1 << m)]
        L = max(len(p.coeffs) for p in dets)
        out = np.zeros((len(dets), L))
        for k, p in enumerate(dets):
            out[k, : len(p.coeffs)] = p.coeffs
        return out


class CornerBuilder:
    """Vectorized corner determinants for many configurations of one pattern."""

    def __init__(self, problem: Problem, expansion: Expansion):
        self.problem = problem
        self.expansion = expansion
        n = problem.n
        self.m = expansion.pattern.arity
        self.C = 1 << self.m
        self.length = {"B": problem.B.max_degree + 1, "D": problem.D.max_degree + 1}
        self.positions = all_positions(n)
        order = {p: k for k, p in enumerate(expansion.pattern.edges)}
        self.edge_slot = [order.get(p, -1) for p in self.positions]
        self.tables = []
        for pos, choices in zip(self.positions, expansion.choices):
            ip = _entry(problem, pos)
            L = self.length[pos.side]
            start = np.zeros((len(choices), L))
            end = np.zeros((len(choices), L))
            verts = kharitonov_vertices(ip)
            edges = kharitonov_edges(ip)
            for k, sel in enumerate(choices):
                if sel.kind == "E":
                    a, b = edges[sel.index - 1].start, edges[sel.index - 1].end
                else:
                    a = b = verts[sel.index - 1]
                start[k, : len(a.coeffs)] = a.coeffs
                end[k, : len(b.coeffs)] = b.coeffs
            self.tables.append((start, end))
        self.bits = ((np.arange(self.C)[:, None] >> np.arange(max(self.m, 1))) & 1).astype(bool)
        self.A = problem.A.to_array()
        self.Cm = problem.C.to_array()

    def build(self, idx: np.ndarray) -> np.ndarray:
        K = idx.shape[0]
        n = self.problem.n
        mats = {
            side: np.zeros((K, self.C, n, n, self.length[side])) for side in "BD"
        }
        for p, pos in enumerate(self.positions):
            start, end = self.tables[p]
            s = start[idx[:, p]]
            slot = self.edge_slot[p]
            if slot >= 0:
                e = end[idx[:, p]]
                val = np.where(self.bits[None, :, slot, None], s[:, None, :], e[:, None, :])
            else:
                val = s[:, None, :]
            mats[pos.side][:, :, pos.i, pos.j, :] = val
        M = _batch.compose(mats["B"], self.A, mats["D"], self.Cm)
        return _batch.det(M)


# ---------------------------------------------------------------------------
# Certificates on single families


@dataclass
class Certificate:
    verdict: str
    reason: Optional[str] = None
    margin: Optional[float] = None
    witness_lambda: Optional[list] = None
    witness_omega: Optional[float] = None
    tasks: int = 0
    evidence: dict = field(default_factory=dict)


@dataclass
class HullResult:
    points: list
    hull: list
    distance: float


def convex_hull(points: Sequence[complex]) -> list:
    """Counter-clockwise hull vertices of planar points given as complex numbers."""
    pts = sorted({(p.real, p.imag) for p in points})
    if len(pts) <= 2:
        return [complex(*p) for p in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [complex(*p) for p in lower[:-1] + upper[:-1]]


def value_set_hull(family: ParamFamily, omega: float) -> HullResult:
    """Hull of ``det M(j*omega)`` over the corners of the parameter box.

    The multilinear value set over the whole box lies inside this polygon.
    ``distance`` is signed: positive when the origin lies outside.
    """
    m = family.arity
    if m > MAX_HULL_ARITY:
        raise CapacityError(f"arity {m} exceeds {MAX_HULL_ARITY}; use grid_check instead")
    z = 1j * omega
    pts = []
    for c in range(1 << m):
        M = family.matrix([float(c >> e & 1) for e in range(m)])
        pts.append(complex_det(eval_matrix(M, z)))
    dist = kernel.hull_distance([p.real for p in pts], [p.imag for p in pts])
    return HullResult(pts, convex_hull(pts), float(dist))


def _certificate(v, r, q, lam, w, t) -> Certificate:
    verdict = VERDICTS[int(v)]
    return Certificate(
        verdict,
        REASONS[int(r)],
        None if not math.isfinite(q) else float(q),
        [float(x) for x in lam] if verdict == "unstable" else None,
        float(w) if math.isfinite(w) else None,
        int(t),
    )


def zero_exclusion_sweep(family: ParamFamily, opts: Optional[EngineOptions] = None) -> Certificate:
    """Certify one family; unstable witnesses are replayed symbolically."""
    opts = opts or EngineOptions()
    P = family.corner_polys()
    res = kernel.certify_one(
        P, family.arity, opts.tol, opts.hull_tol, opts.freq_floor, opts.lam_floor, opts.max_tasks
    )
    cert = _certificate(*res)
    if cert.verdict == "unstable":
        check = is_hurwitz(family.determinant(cert.witness_lambda), opts.tol)
        if check.stable:
            return Certificate("inconclusive", "witness_not_reproduced", tasks=cert.tasks)
        cert.evidence["routh_reason"] = check.reason
    return cert


def grid_points(m: int, steps: int) -> np.ndarray:
    if steps < 1:
        raise DomainError("steps must be positive")
    count = (steps + 1) ** m
    if count > MAX_GRID_POINTS:
        raise CapacityError(f"grid of {count} points exceeds the cap {MAX_GRID_POINTS}")
    axes = [np.linspace(0.0, 1.0, steps + 1)] * m
    if m == 0:
        return np.zeros((1, 0))
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m)


def multilinear_weights(lams: np.ndarray, m: int) -> np.ndarray:
    """Weights of the ``2**m`` corners for each parameter row, shape (G, 2**m)."""
    bits = (np.arange(1 << m)[:, None] >> np.arange(m)) & 1
    w = np.ones((lams.shape[0], 1 << m))
    for e in range(m):
        w *= np.where(bits[None, :, e] == 1, lams[:, e : e + 1], 1.0 - lams[:, e : e + 1])
    return w


def grid_check(family: ParamFamily, steps: int, opts: Optional[EngineOptions] = None) -> Certificate:
    """Hurwitz test on the uniform ``(steps+1)**m`` grid.

    Never certifies: a clean grid comes back ``inconclusive`` with reason
    ``stable_on_grid``.
    """
    opts = opts or EngineOptions()
    m = family.arity
    lams = grid_points(m, steps)
    P = family.corner_polys()
    polys = multilinear_weights(lams, m) @ P
    ok = _batch.routh_batch(polys, opts.tol)
    for g in np.flatnonzero(~ok):
        lam = [float(x) for x in lams[g]]
        check = is_hurwitz(family.determinant(lam), opts.tol)
        if not check.stable:
            return Certificate("unstable", check.reason, witness_lambda=lam, tasks=len(lams),
                               evidence={"routh_reason": check.reason, "grid_steps": steps})
    return Certificate("inconclusive", "stable_on_grid", tasks=len(lams), evidence={"grid_steps": steps})


# ---------------------------------------------------------------------------
# Degree invariance


@dataclass
class DegreeCheck:
    ok: bool
    degree: Optional[int]
    evidence: dict = field(default_factory=dict)


def _config_indices(total: int, cap: Optional[int], seed: int) -> Optional[np.ndarray]:
    if cap is None or total <= cap:
        return None
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(total, size=cap, replace=False))


def degree_invariance_check(problem: Problem, method: Union[str, TestingPlan] = "thm1_row",
                            tol: float = 1e-9, cap: int = 4096, seed: int = 0) -> DegreeCheck:
    """Determinant degree and leading sign at every parameter-box corner of every
    configuration (a seeded subsample above ``cap``) plus the nominal center."""
    plan = method if isinstance(method, TestingPlan) else testing_plan(problem.B, problem.D, method)
    center = determinant(compose_family_member(problem.B.center, problem.A, problem.D.center, problem.C))
    if center.is_zero:
        return DegreeCheck(False, None, {"where": "nominal", "detail": "zero determinant"})
    deg = center.degree
    sign = math.copysign(1.0, center.leading)
    offsets = np.cumsum([0] + [e.size for e in plan.expansions])
    chosen = _config_indices(int(offsets[-1]), cap, seed)
    checked = 0
    for p, exp in enumerate(plan.expansions):
        if chosen is None:
            local = np.arange(exp.size)
        else:
            local = chosen[(chosen >= offsets[p]) & (chosen < offsets[p + 1])] - offsets[p]
        if len(local) == 0:
            continue
        builder = CornerBuilder(problem, exp)
        for s in range(0, len(local), 2048):
            part = local[s : s + 2048]
            idx = np.stack([exp.index_array(int(i), int(i) + 1)[0] for i in part])
            dets = builder.build(idx)
            checked += len(part)
            L = dets.shape[-1]
            if L - 1 > deg and np.any(dets[..., deg + 1 :] != 0.0):
                bad = np.argwhere(np.any(dets[..., deg + 1 :] != 0.0, axis=-1))[0]
                return DegreeCheck(False, deg, _drop_evidence(plan, p, exp, int(part[bad[0]]), int(bad[1]), "degree_rise"))
            lead = dets[..., deg] * sign
            scale = np.abs(dets).max(axis=-1)
            low = lead <= tol * scale
            if np.any(low):
                bad = np.argwhere(low)[0]
                return DegreeCheck(False, deg, _drop_evidence(plan, p, exp, int(part[bad[0]]), int(bad[1]), "degree_drop"))
    return DegreeCheck(True, deg, {"configurations_checked": checked, "subsampled": chosen is not None})


def _drop_evidence(plan, p, exp, index, corner, kind):
    cfg = exp.configuration(index)
    m = cfg.arity
    return {
        "kind": kind,
        "pattern": plan.patterns[p].label(),
        "configuration": cfg.to_json(),
        "lambda": [float(corner >> e & 1) for e in range(m)],
    }


# ---------------------------------------------------------------------------
# Aggregation over testing sets


@dataclass
class ChunkResult:
    pattern: int
    start: int
    checked: int
    counts: dict
    tasks: int
    min_margin: float
    reasons: dict
    witness: Optional[dict]
    grid_clean: int = 0


def _problem_label(problem: Problem) -> dict:
    return {"name": problem.name, "n": problem.n, "eps": problem.eps}


def _run_chunk(problem: Problem, expansion: Expansion, pattern_idx: int, start: int, indices,
               opts: EngineOptions) -> ChunkResult:
    builder = CornerBuilder(problem, expansion)
    if indices is None:
        idx = expansion.index_array(start, start + opts.chunk)
        idx = idx[: max(0, min(opts.chunk, expansion.size - start))]
        global_ids = np.arange(start, start + len(idx))
    else:
        global_ids = np.asarray(indices)
        idx = np.concatenate([expansion.index_array(int(i), int(i) + 1) for i in global_ids])
    dets = builder.build(idx)
    m = builder.m
    counts = {"stable": 0, "unstable": 0, "inconclusive": 0}
    reasons: dict = {}
    tasks = 0
    min_margin = math.inf
    witness = None
    grid_clean = 0
    pos = 0
    K = len(idx)
    while pos < K:
        v, r, q, lam, w, t = kernel.certify_batch(
            dets[pos:], m, opts.tol, opts.hull_tol, opts.freq_floor, opts.lam_floor, opts.max_tasks, True
        )
        done = int(np.count_nonzero(v != PENDING))
        tasks += int(t[:done].sum())
        for k in range(done):
            verdict = VERDICTS[int(v[k])]
            if math.isfinite(q[k]):
                min_margin = min(min_margin, float(q[k]))
            if verdict == "unstable":
                cfg = expansion.configuration(int(global_ids[pos + k]))
                family = ParamFamily(problem, cfg)
                lam_k = [float(x) for x in lam[k]]
                check = is_hurwitz(family.determinant(lam_k), opts.tol)
                if check.stable:
                    verdict = "inconclusive"
                    reasons["witness_not_reproduced"] = reasons.get("witness_not_reproduced", 0) + 1
                else:
                    source = {5: "zero_crossing"}.get(int(r[k]), "corner_or_center")
                    witness = _witness_dict(family, lam_k, float(w[k]), check.reason, source, pattern_idx)
            elif verdict == "inconclusive":
                reason = REASONS[int(r[k])]
                if opts.grid_steps:
                    cfg = expansion.configuration(int(global_ids[pos + k]))
                    cert = grid_check(ParamFamily(problem, cfg), opts.grid_steps, opts)
                    if cert.verdict == "unstable":
                        verdict = "unstable"
                        witness = _witness_dict(ParamFamily(problem, cfg), cert.witness_lambda, float("nan"),
                                                cert.reason, "grid", pattern_idx)
                    else:
                        grid_clean += 1
                if verdict == "inconclusive":
                    reasons[reason] = reasons.get(reason, 0) + 1
            counts[verdict] += 1
            if witness is not None:
                return ChunkResult(pattern_idx, start, pos + k + 1, counts, tasks, min_margin, reasons, witness,
                                   grid_clean)
        pos += done
    return ChunkResult(pattern_idx, start, K, counts, tasks, min_margin, reasons, None, grid_clean)


def _witness_dict(family: ParamFamily, lam, omega, reason, source, pattern_idx) -> dict:
    B, D = family.instantiate(lam)
    return {
        "pattern": family.config.pattern.label(),
        "pattern_index": pattern_idx,
        "configuration": family.config.to_json(),
        "lambda": [float(x) for x in lam],
        "omega": omega if math.isfinite(omega) else None,
        "routh_reason": reason,
        "source": source,
        "determinant": family.determinant(lam).to_list(),
        "entries": {"B": B.to_json(), "D": D.to_json()},
    }


_WORKER: dict = {}


def _worker_init(problem, expansions, opts):
    _WORKER["problem"] = problem
    _WORKER["expansions"] = expansions
    _WORKER["opts"] = opts


def _worker_chunk(item):
    p, start, indices = item
    return _run_chunk(_WORKER["problem"], _WORKER["expansions"][p], p, start, indices, _WORKER["opts"])


@dataclass
class AnalysisReport:
    method: str
    verdict: str
    problem: dict
    patterns: dict
    configurations: dict
    counts: dict
    witness: Optional[dict]
    sweep: dict
    diagnostics: list
    settings: dict
    timing: dict = field(default_factory=dict)

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("timing")
        return out


def _work_items(plan: TestingPlan, opts: EngineOptions):
    offsets = np.cumsum([0] + [e.size for e in plan.expansions])
    chosen = _config_indices(int(offsets[-1]), opts.max_configs, opts.seed)
    items = []
    for p, exp in enumerate(plan.expansions):
        if chosen is None:
            for s in range(0, exp.size, opts.chunk):
                items.append((p, s, None))
        else:
            local = chosen[(chosen >= offsets[p]) & (chosen < offsets[p + 1])] - offsets[p]
            for s in range(0, len(local), opts.chunk):
                part = local[s : s + opts.chunk]
                items.append((p, int(part[0]), [int(x) for x in part]))
    return items, chosen is not None


def analyze(problem: Problem, method: str = "thm1_row", opts: Optional[EngineOptions] = None,
            patterns: Optional[Sequence[Pattern]] = None) -> AnalysisReport:
    """Robust stability verdict over a method's collapsed testing set."""
    opts = opts or EngineOptions()
    t0 = time.perf_counter()
    plan = testing_plan(problem.B, problem.D, method, patterns)
    pattern_info = {
        "raw": len(plan.raw_patterns),
        "collapsed": plan.collapse.after,
        "list": [
            {"label": p.label(), "arity": p.arity, "configurations": e.size}
            for p, e in zip(plan.patterns, plan.expansions)
        ],
    }
    settings = {"method": method, "backend": BACKEND, **opts.echo()}
    diagnostics = []
    degree = degree_invariance_check(problem, plan, opts.tol, opts.degree_sample, opts.seed)
    if not degree.ok:
        diagnostics.append({"degree_invariance": degree.evidence})
        return AnalysisReport(method, "inconclusive", _problem_label(problem), pattern_info,
                              {"total": plan.total, "checked": 0, "subsampled": False},
                              {"stable": 0, "unstable": 0, "inconclusive": 0}, None,
                              {"tasks": 0, "min_margin": None, "inconclusive_reasons": {"degree_drop": 1}},
                              diagnostics, settings, {"wall_seconds": time.perf_counter() - t0})
    items, subsampled = _work_items(plan, opts)
    results = []
    if opts.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(opts.jobs, initializer=_worker_init,
                                 initargs=(problem, plan.expansions, opts)) as pool:
            for res in pool.map(_worker_chunk, items):
                results.append(res)
                if res.witness is not None:
                    break
    else:
        for p, s, indices in items:
            res = _run_chunk(problem, plan.expansions[p], p, s, indices, opts)
            results.append(res)
            if res.witness is not None:
                break
    counts = {"stable": 0, "unstable": 0, "inconclusive": 0}
    reasons: dict = {}
    tasks = 0
    checked = 0
    min_margin = math.inf
    witness = None
    grid_clean = 0
    for res in results:
        for k, v in res.counts.items():
            counts[k] += v
        for k, v in res.reasons.items():
            reasons[k] = reasons.get(k, 0) + v
        tasks += res.tasks
        checked += res.checked
        min_margin = min(min_margin, res.min_margin)
        grid_clean += res.grid_clean
        if res.witness is not None:
            witness = res.witness
            break
    if witness is not None:
        verdict = "unstable"
    elif counts["inconclusive"] or subsampled:
        verdict = "inconclusive"
        if subsampled:
            diagnostics.append({"subsampled": f"{checked} of {plan.total} configurations checked"})
    else:
        verdict = "stable"
    sweep = {
        "tasks": tasks,
        "min_margin": None if not math.isfinite(min_margin) else min_margin,
        "inconclusive_reasons": reasons,
    }
    if opts.grid_steps:
        sweep["stable_on_grid"] = grid_clean
    return AnalysisReport(
        method,
        verdict,
        _problem_label(problem),
        pattern_info,
        {"total": plan.total, "checked": checked, "subsampled": subsampled},
        counts,
        witness,
        sweep,
        diagnostics,
        settings,
        {"wall_seconds": time.perf_counter() - t0},
    )


def replay_witness(problem: Problem, witness: dict, tol: float = 1e-9):
    """Recompose the witness matrices and rerun the Hurwitz test."""
    B = PolynomialMatrix(witness["entries"]["B"])
    D = PolynomialMatrix(witness["entries"]["D"])
    det = determinant(compose_family_member(B, problem.A, D, problem.C))
    return is_hurwitz(det, tol), problem.B.contains(B, 1e-12) and problem.D.contains(D, 1e-12)


# ---------------------------------------------------------------------------
# Robust margin


@dataclass
class MarginResult:
    eps_stable: float
    eps_unstable: float
    method: str
    history: list

    @property
    def eps_star(self) -> float:
        return self.eps_stable

    def to_json(self) -> dict:
        return asdict(self)


def robust_margin(template: Union[ProblemSpec, Callable[[float], Problem]], bracket: tuple,
                  method: str = "thm1_row", tol: float = 1e-4,
                  opts: Optional[EngineOptions] = None) -> MarginResult:
    """Bisection on the uncertainty scale. Inconclusive counts as not stable."""
    make = template.instantiate if isinstance(template, ProblemSpec) else template
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"invalid bracket [{lo}, {hi}]")
    history = []

    def verdict(eps):
        rep = analyze(make(eps), method, opts)
        history.append([eps, rep.verdict])
        return rep.verdict

    v_lo, v_hi = verdict(lo), verdict(hi)
    if v_lo != "stable" or v_hi == "stable":
        raise BracketError(f"bracket does not straddle the boundary: {lo} -> {v_lo}, {hi} -> {v_hi}", v_lo, v_hi)
    while hi - lo > tol:
        midpoint = 0.5 * (lo + hi)
        if verdict(midpoint) == "stable":
            lo = midpoint
        else:
            hi = midpoint
    return MarginResult(lo, hi, method, history)
