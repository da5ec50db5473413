"""Frequency-domain checks for right-factored transfer matrices ``G = B D^-1``.

The H-infinity bound, strict positive realness and the sector positivity
condition are checked over every member of a testing set. None of these
quantities is multilinear in the edge parameters, so each family is sampled at
all parameter corners plus a uniform interior grid, and each member is swept
over a log-spaced frequency grid with local refinement around the worst point.
Passing results are therefore grid certificates and are labelled as such.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .engine import AnalysisReport, EngineOptions, ParamFamily, _config_indices, analyze, grid_points
from .errors import ConvergenceError, DimensionError, DomainError, PreconditionError
from .poly import cauchy_root_bound, is_hurwitz
from .polymatrix import PolynomialMatrix, determinant, eval_matrix
from .problem import Problem
from .testing_sets import testing_plan

SINGULAR_TOL = 1e-12


@dataclass
class TransferEval:
    G: Optional[np.ndarray]
    omega: float
    singular: bool


def transfer_eval(B: PolynomialMatrix, D: PolynomialMatrix, omega: float) -> TransferEval:
    """``G(j*omega) = B(j*omega) D(j*omega)^-1``; singular ``D`` is flagged."""
    if B.n != D.n:
        raise DimensionError(f"B is {B.n}x{B.n} but D is {D.n}x{D.n}")
    z = 1j * omega
    Bv = eval_matrix(B, z)
    Dv = eval_matrix(D, z)
    G = _right_divide(Bv[None], Dv[None])
    if G is None:
        return TransferEval(None, omega, True)
    return TransferEval(G[0], omega, False)


def _right_divide(Bv: np.ndarray, Dv: np.ndarray) -> Optional[np.ndarray]:
    """Batched ``B D^-1``; None if any ``D`` is numerically singular."""
    s = np.linalg.svd(Dv, compute_uv=False)
    if np.any(s[..., -1] <= SINGULAR_TOL * np.maximum(s[..., 0], 1e-300)):
        return None
    # G D = B  <=>  D^T G^T = B^T; LAPACK solve uses partial pivoting
    return np.swapaxes(np.linalg.solve(np.swapaxes(Dv, -1, -2), np.swapaxes(Bv, -1, -2)), -1, -2)


def sigma_max(M, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Largest singular value by power iteration on ``M^H M``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DimensionError("sigma_max expects a matrix")
    if not np.all(np.isfinite(M)):
        raise DomainError("matrix has non-finite entries")
    scale = float(np.abs(M).max()) if M.size else 0.0
    if scale == 0.0:
        return 0.0
    # normalize so M^H M neither underflows nor overflows
    M = M / scale
    H = M.conj().T @ M
    n = H.shape[0]
    # a fixed, non-symmetric start avoids landing orthogonal to the top vector
    v = np.ones(n, dtype=complex) + 0.1j * np.arange(1, n + 1)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(max_iter):
        w = H @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            v = np.roll(v, 1) + 1.0
            v /= np.linalg.norm(v)
            continue
        new = float(np.real(np.vdot(v, w)))
        v = w / nw
        if abs(new - est) <= tol * max(abs(new), 1e-300):
            return scale * math.sqrt(max(new, 0.0))
        est = new
    raise ConvergenceError("power iteration did not converge", scale * math.sqrt(max(est, 0.0)))


def hermitian_pd(H: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Positive definiteness by leading principal minors, batched over leading axes.

    Each minor must exceed ``tol * ||H||^k`` with ``||H||`` the max entry modulus.
    """
    H = np.asarray(H, dtype=complex)
    n = H.shape[-1]
    scale = np.maximum(np.abs(H).max(axis=(-1, -2)), 1e-300)
    ok = np.ones(H.shape[:-2], dtype=bool)
    for k in range(1, n + 1):
        minor = np.real(np.linalg.det(H[..., :k, :k]))
        ok &= minor > tol * scale**k
    return ok


# ---------------------------------------------------------------------------
# Structural checks


@dataclass
class ColumnReduced:
    ok: bool
    column_degrees: list
    leading: list
    det: float


def column_degrees(M: PolynomialMatrix) -> list:
    return [max(M[i, j].degree for i in range(M.n)) for j in range(M.n)]


def leading_column_matrix(M: PolynomialMatrix, degrees: Optional[list] = None) -> np.ndarray:
    degrees = column_degrees(M) if degrees is None else degrees
    out = np.zeros((M.n, M.n))
    for j, d in enumerate(degrees):
        if d < 0:
            continue
        for i in range(M.n):
            c = M[i, j].coeffs
            out[i, j] = c[d] if d < len(c) else 0.0
    return out


def column_reduced_check(D: PolynomialMatrix, tol: float = 1e-9) -> ColumnReduced:
    """Yes iff the highest-column-degree coefficient matrix is nonsingular."""
    degrees = column_degrees(D)
    Lc = leading_column_matrix(D, degrees)
    det = float(np.linalg.det(Lc)) if D.n else 1.0
    scale = max(1.0, float(np.abs(Lc).max())) ** D.n
    ok = all(d >= 0 for d in degrees) and abs(det) > tol * scale
    return ColumnReduced(ok, degrees, Lc.tolist(), det)


def strictly_proper_columns(B: PolynomialMatrix, D: PolynomialMatrix) -> list:
    """Columns where ``B`` does not have strictly lower degree than ``D`` (1-based)."""
    bd, dd = column_degrees(B), column_degrees(D)
    return [j + 1 for j in range(B.n) if bd[j] >= 0 and bd[j] >= dd[j]]


def g_infinity(B: PolynomialMatrix, D: PolynomialMatrix) -> Optional[np.ndarray]:
    """``lim G(j*omega)`` for column-reduced ``D``; None if ``G`` is improper."""
    dd = column_degrees(D)
    bd = column_degrees(B)
    if any(b > d for b, d in zip(bd, dd)):
        return None
    Bh = leading_column_matrix(B, dd)
    Dh = leading_column_matrix(D, dd)
    return np.linalg.solve(Dh.T, Bh.T).T


# ---------------------------------------------------------------------------
# Sweeps


@dataclass
class SectorSpec:
    K: np.ndarray
    eta: float = 0.0

    def __post_init__(self):
        K = np.atleast_2d(np.asarray(self.K, dtype=float))
        if K.shape[0] != K.shape[1]:
            raise DimensionError("sector gain K must be square")
        if not np.allclose(K, K.T, rtol=0, atol=1e-12 * max(1.0, np.abs(K).max())):
            raise DomainError("sector gain K must be symmetric")
        try:
            np.linalg.cholesky(K)
        except np.linalg.LinAlgError:
            raise DomainError("sector gain K must be positive definite") from None
        if not (self.eta >= 0 and math.isfinite(self.eta)):
            raise DomainError(f"multiplier eta must be finite and non-negative, got {self.eta}")
        self.K = K
        self.eta = float(self.eta)


@dataclass
class FreqOptions:
    tol: float = 1e-9
    near_factor: float = 10.0
    points: int = 400
    decades: float = 3.0
    refine: int = 60
    lam_grid: int = 5
    max_members: Optional[int] = 20_000
    seed: int = 0


@dataclass
class FreqReport:
    check: str
    verdict: str
    method: str
    members: int
    worst: Optional[dict]
    violation: Optional[dict]
    diagnostics: list
    settings: dict
    grid: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def _omega_grid(B: PolynomialMatrix, D: PolynomialMatrix, opts: FreqOptions) -> np.ndarray:
    scale = 1.0
    for p in [determinant(D)] + [B[i, j] for i in range(B.n) for j in range(B.n)]:
        if p.degree >= 1:
            scale = max(scale, 1.0 + cauchy_root_bound(p))
    ws = scale * np.logspace(-opts.decades, opts.decades, opts.points)
    return np.concatenate([[0.0], ws])


def _objective(check: str, G: np.ndarray, omega: np.ndarray, sector: Optional[SectorSpec]):
    """Per-frequency scalar to minimize; the check fails where it is ``<= 0``."""
    n = G.shape[-1]
    if check == "hinf":
        return 1.0 - np.linalg.norm(G, ord=2, axis=(-2, -1)), None
    if check == "spr":
        H = 0.5 * (G + np.conj(np.swapaxes(G, -1, -2)))
    else:
        Z = np.eye(n) + (1.0 + 1j * omega * sector.eta)[:, None, None] * (sector.K @ G)
        H = 0.5 * (Z + np.conj(np.swapaxes(Z, -1, -2)))
    return np.linalg.eigvalsh(H)[..., 0], H


def _member_sweep(check, B, D, opts, sector):
    """Worst frequency of one member: (value, omega, matrix) with omega=inf for the limit."""
    ws = _omega_grid(B, D, opts)

    def evaluate(w):
        z = 1j * np.asarray(w)
        Bv = np.stack([eval_matrix(B, x) for x in z])
        Dv = np.stack([eval_matrix(D, x) for x in z])
        G = _right_divide(Bv, Dv)
        if G is None:
            return None, None, None
        val, H = _objective(check, G, np.asarray(w), sector)
        return val, G, H

    val, G, H = evaluate(ws)
    if val is None:
        return {"singular": True}
    k = int(np.argmin(val))
    lo = ws[max(k - 1, 0)]
    hi = ws[min(k + 1, len(ws) - 1)]
    best = (float(val[k]), float(ws[k]), G[k], None if H is None else H[k])
    # golden-section refinement of the worst bracket
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    for _ in range(opts.refine):
        x1 = b - g * (b - a)
        x2 = a + g * (b - a)
        v, Gs, Hs = evaluate([x1, x2])
        if v is None:
            return {"singular": True}
        for idx, x in ((0, x1), (1, x2)):
            if v[idx] < best[0]:
                best = (float(v[idx]), float(x), Gs[idx], None if Hs is None else Hs[idx])
        if v[0] < v[1]:
            b = x2
        else:
            a = x1
    out = {"value": best[0], "omega": best[1], "G": best[2], "H": best[3]}
    if check in ("hinf", "spr"):
        Ginf = g_infinity(B, D)
        if Ginf is None:
            return {"value": -math.inf, "omega": math.inf, "G": None, "H": None, "improper": True}
        vinf, Hinf = _objective(check, Ginf[None].astype(complex), np.zeros(1), sector)
        if check == "spr" and np.allclose(Ginf, 0.0):
            # strictly proper: the limit is zero, not a strict failure; tail left to the grid
            vinf = np.array([math.inf])
        if vinf[0] < out["value"]:
            out = {"value": float(vinf[0]), "omega": math.inf, "G": Ginf, "H": None if Hinf is None else Hinf[0]}
    return out


def _members(problem: Problem, method: str, opts: FreqOptions):
    plan = testing_plan(problem.B, problem.D, method)
    fams = []
    for exp in plan.expansions:
        for k in range(exp.size):
            fams.append(exp.configuration(k))
    lam_sets = {}
    total = 0
    for cfg in fams:
        m = cfg.arity
        if m not in lam_sets:
            lam_sets[m] = grid_points(m, max(opts.lam_grid - 1, 1))
        total += len(lam_sets[m])
    chosen = _config_indices(total, opts.max_members, opts.seed)
    chosen = None if chosen is None else set(chosen.tolist())
    g = 0
    for cfg in fams:
        fam = ParamFamily(problem, cfg)
        for lam in lam_sets[cfg.arity]:
            if chosen is None or g in chosen:
                yield fam, [float(x) for x in lam]
            g += 1


def _run_check(check: str, problem: Problem, method: str, opts: FreqOptions,
               sector: Optional[SectorSpec] = None) -> FreqReport:
    diagnostics = []
    worst = None
    count = 0
    for fam, lam in _members(problem, method, opts):
        B, D = fam.instantiate(lam)
        count += 1
        tag = {"configuration": fam.config.to_json(), "pattern": fam.config.pattern.label(), "lambda": lam}
        if check == "sector":
            bad = strictly_proper_columns(B, D)
            if bad:
                raise PreconditionError(f"G(inf) != 0: column {bad[0]} of B is not of lower degree than D")
        cr = column_reduced_check(D, opts.tol)
        detD = determinant(D)
        if not cr.ok or detD.is_zero or not is_hurwitz(detD, opts.tol).stable:
            diagnostics.append({**tag, "precondition": "column_reduced" if not cr.ok else "stable_denominator"})
            continue
        res = _member_sweep(check, B, D, opts, sector)
        if res.get("singular"):
            return _report(check, "violated", method, count, None, {**tag, "singular": True}, diagnostics, opts, sector)
        entry = {**tag, "omega": res["omega"], "value": res["value"]}
        if check == "hinf":
            entry["sigma"] = 1.0 - res["value"] if math.isfinite(res["value"]) else math.inf
            if res["G"] is not None and math.isfinite(res["omega"]):
                entry["sigma"] = sigma_max(res["G"])
        if worst is None or res["value"] < worst["value"]:
            worst = entry
        failed = res["value"] <= opts.tol
        if check != "hinf" and res.get("H") is not None:
            failed = failed or not bool(hermitian_pd(res["H"], opts.tol))
        if failed:
            return _report(check, "violated", method, count, worst, entry, diagnostics, opts, sector)
    if diagnostics:
        verdict = "inconclusive"
    elif worst is not None and worst["value"] < opts.near_factor * opts.tol:
        verdict = "inconclusive"
    else:
        verdict = "certified" if check == "sector" else "holds"
    return _report(check, verdict, method, count, worst, None, diagnostics, opts, sector)


def _report(check, verdict, method, count, worst, violation, diagnostics, opts, sector):
    settings = {"check": check, "method": method, **asdict(opts)}
    if sector is not None:
        settings["sector"] = {"K": sector.K.tolist(), "eta": sector.eta}
    grid = {"basis": "parameter corners and interior grid", "lam_grid": opts.lam_grid, "omega_points": opts.points}
    return FreqReport(check, verdict, method, count, worst, violation, diagnostics, settings, grid)


def hinf_lt_one(problem: Problem, method: str = "thm1_row", opts: Optional[FreqOptions] = None) -> FreqReport:
    """``sup_omega sigma_max(G(j*omega)) < 1`` over the testing set, including omega -> inf."""
    return _run_check("hinf", problem, method, opts or FreqOptions())


def spr_check(problem: Problem, method: str = "thm1_row", opts: Optional[FreqOptions] = None) -> FreqReport:
    """Hermitian part of ``G(j*omega)`` positive definite over the testing set."""
    return _run_check("spr", problem, method, opts or FreqOptions())


def sector_positivity(problem: Problem, sector: SectorSpec, method: str = "thm1_row",
                      opts: Optional[FreqOptions] = None) -> FreqReport:
    """Hermitian part of ``I + (1 + j*omega*eta) K G(j*omega)`` positive definite.

    Requires ``G(inf) = 0``. Sufficient for absolute stability only; no converse.
    """
    if sector.K.shape[0] != problem.n:
        raise DimensionError(f"K is {sector.K.shape[0]}x{sector.K.shape[0]}, problem is {problem.n}x{problem.n}")
    return _run_check("sector", problem, method, opts or FreqOptions(), sector)


def closed_loop_stable(problem: Problem, method: str = "thm1_row",
                       opts: Optional[EngineOptions] = None) -> AnalysisReport:
    """Closed loop of plant ``B D^-1`` and controller factors ``A``, ``C``: stability of ``B A + D C``."""
    return analyze(problem, method, opts)


__all__ = [
    "ColumnReduced", "FreqOptions", "FreqReport", "SectorSpec", "TransferEval", "closed_loop_stable",
    "column_reduced_check", "g_infinity", "hermitian_pd", "hinf_lt_one", "sector_positivity", "sigma_max",
    "spr_check", "strictly_proper_columns", "transfer_eval",
]
