"""Pure-Python certification kernel (reference and fallback).

Mirrors ``_ckernel.pyx`` operation for operation so both backends return the
same verdicts. Inputs are the determinant polynomials of a multilinear
family evaluated at the ``2**m`` corners of its parameter box; bit ``e`` of a
corner index is the value (0 or 1) of parameter ``e`` at that corner.
"""

import math

import numpy as np

STABLE, UNSTABLE, INCONCLUSIVE = 0, 1, 2
PENDING = -1

R_NONE = 0
R_NEGATIVE_PIVOT = 1
R_ZERO_PIVOT = 2
R_ZERO_LEADING = 3
R_DEGREE_DROP = 4
R_ZERO_CROSSING = 5
R_RESOLUTION = 6
R_BUDGET = 7

BACKEND = "python"


def routh(coeffs, tol):
    """Routh code for ascending ``coeffs``: 0 stable, else 1/2/3 as R_*."""
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0.0:
        d -= 1
    scale = 0.0
    for k in range(d + 1):
        if abs(coeffs[k]) > scale:
            scale = abs(coeffs[k])
    if scale == 0.0:
        return R_ZERO_LEADING
    thr = tol * scale
    sign = 1.0 if coeffs[d] > 0 else -1.0
    if abs(coeffs[d]) <= thr:
        return R_ZERO_LEADING
    if d == 0:
        return R_NONE
    width = d // 2 + 1
    prev = [0.0] * width
    cur = [0.0] * width
    for k in range(d + 1):
        v = sign * coeffs[d - k]
        if k % 2 == 0:
            prev[k // 2] = v
        else:
            cur[k // 2] = v
    for _ in range(d):
        pivot = cur[0]
        if pivot < -thr:
            return R_NEGATIVE_PIVOT
        if pivot <= thr:
            return R_ZERO_PIVOT
        nxt = [0.0] * width
        for k in range(width - 1):
            nxt[k] = (pivot * prev[k + 1] - prev[0] * cur[k + 1]) / pivot
        prev, cur = cur, nxt
    return R_NONE


def _hyp(x, y):
    # complex abs goes through libm hypot, as the compiled kernel does
    return abs(complex(x, y))


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _seg_dist(ax, ay, bx, by):
    """Distance from the origin to segment a-b."""
    dx, dy = bx - ax, by - ay
    ll = dx * dx + dy * dy
    if ll == 0.0:
        return _hyp(ax, ay)
    t = -(ax * dx + ay * dy) / ll
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return _hyp(ax + t * dx, ay + t * dy)


def hull_distance(xs, ys):
    """Signed distance from the origin to the convex hull of the points.

    Positive outside; zero or negative (minus the distance to the boundary)
    when the origin is inside or on the hull.
    """
    pts = sorted(zip(xs, ys))
    if len(pts) == 1:
        return _hyp(pts[0][0], pts[0][1])
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2][0], lower[-2][1], lower[-1][0], lower[-1][1], p[0], p[1]) <= 0.0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2][0], upper[-2][1], upper[-1][0], upper[-1][1], p[0], p[1]) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    h = len(hull)
    if h == 1:
        return _hyp(hull[0][0], hull[0][1])
    best = math.inf
    inside = h >= 3
    for k in range(h):
        a = hull[k]
        b = hull[(k + 1) % h]
        if h == 2 and k == 1:
            break
        d = _seg_dist(a[0], a[1], b[0], b[1])
        if d < best:
            best = d
        if inside and _cross(a[0], a[1], b[0], b[1], 0.0, 0.0) < 0.0:
            inside = False
    if h == 2:
        return best
    return -best if inside else best


def _restrict(vals, m, lo, hi):
    """Corner values of the sub-box [lo, hi] by separable multilinear interpolation."""
    out = list(vals)
    for e in range(m):
        bit = 1 << e
        for c in range(len(out)):
            if c & bit:
                continue
            v0 = out[c]
            dv = out[c | bit] - v0
            out[c] = v0 + lo[e] * dv
            out[c | bit] = v0 + hi[e] * dv
    return out


def _point_coeffs(P, m, lam, L):
    rows = [list(r) for r in P]
    for e in range(m):
        bit = 1 << e
        for c in range(len(rows)):
            if c & bit:
                continue
            r0, r1 = rows[c], rows[c | bit]
            rows[c] = [r0[k] + lam[e] * (r1[k] - r0[k]) for k in range(L)]
    return rows[0]


def _horner(row, d, w):
    acc = 0j
    z = 1j * w
    for k in range(d, -1, -1):
        acc = acc * z + row[k]
    return acc


def certify_one(P, m, tol_routh=1e-9, tol_hull=1e-9, freq_floor=1e-6, lam_floor=1e-6, max_tasks=200000):
    """Zero-exclusion certificate for one multilinear determinant family.

    Returns ``(verdict, reason, margin, witness_lambda, witness_omega, tasks)``.
    """
    C = len(P)
    L = len(P[0])
    nan = float("nan")
    d = -1
    for c in range(C):
        for k in range(L - 1, -1, -1):
            if P[c][k] != 0.0:
                if k > d:
                    d = k
                break
    if d < 0:
        return INCONCLUSIVE, R_DEGREE_DROP, nan, [0.0] * m, nan, 0
    sign = 1.0 if P[0][d] > 0 else -1.0
    for c in range(C):
        scale = max(abs(P[c][k]) for k in range(d + 1))
        if sign * P[c][d] <= tol_routh * scale:
            return INCONCLUSIVE, R_DEGREE_DROP, nan, [float(c >> e & 1) for e in range(m)], nan, 0
    for c in range(C):
        r = routh(P[c][: d + 1], tol_routh)
        if r != R_NONE:
            return UNSTABLE, r, nan, [float(c >> e & 1) for e in range(m)], nan, 0
    half = [0.5] * m
    r = routh(_point_coeffs(P, m, half, d + 1), tol_routh)
    if r != R_NONE:
        return UNSTABLE, r, nan, half, nan, 0

    min_lead = min(abs(P[c][d]) for c in range(C))
    top = 0.0
    for c in range(C):
        for k in range(d):
            if abs(P[c][k]) > top:
                top = abs(P[c][k])
    wmax = 1.0 + top / min_lead
    dcoef = [0.0] * (d + 1)
    for k in range(1, d + 1):
        dcoef[k] = k * max(abs(P[c][k]) for c in range(C))

    stack = [([0.0] * m, [1.0] * m, 0.0, wmax)]
    tasks = 0
    margin = math.inf
    unresolved = False
    while stack:
        lo, hi, a, b = stack.pop()
        tasks += 1
        if tasks > max_tasks:
            return INCONCLUSIVE, R_BUDGET, margin, [0.0] * m, nan, tasks
        w = 0.5 * (a + b)
        h = 0.5 * (b - a)
        vals = [_horner(P[c], d, w) for c in range(C)]
        sub = _restrict(vals, m, lo, hi)
        dist = hull_distance([v.real for v in sub], [v.imag for v in sub])
        scale = max(abs(v) for v in sub)
        lip = 0.0
        bp = 1.0
        for k in range(1, d + 1):
            lip += dcoef[k] * bp
            bp *= b
        slack = lip * h + tol_hull * scale
        if dist > slack:
            q = (dist - lip * h) / scale
            if q < margin:
                margin = q
            continue
        mid = [0.5 * (lo[e] + hi[e]) for e in range(m)]
        if m > 0 and dist <= 0.0:
            r = routh(_point_coeffs(P, m, mid, d + 1), tol_routh)
            if r != R_NONE:
                return UNSTABLE, R_ZERO_CROSSING, nan, mid, w, tasks
        spread = 0.0
        for v in sub:
            s = abs(v - sub[0])
            if s > spread:
                spread = s
        widest = -1
        width = 0.0
        for e in range(m):
            if hi[e] - lo[e] > width:
                width = hi[e] - lo[e]
                widest = e
        can_w = (b - a) > freq_floor * wmax
        can_l = m > 0 and width > lam_floor
        if can_l and (spread > lip * h or not can_w):
            lo2 = list(lo)
            hi1 = list(hi)
            hi1[widest] = mid[widest]
            lo2[widest] = mid[widest]
            stack.append((lo2, hi, a, b))
            stack.append((lo, hi1, a, b))
        elif can_w:
            stack.append((lo, hi, w, b))
            stack.append((lo, hi, a, w))
        else:
            for c in range(C):
                corner = [hi[e] if c >> e & 1 else lo[e] for e in range(m)]
                r = routh(_point_coeffs(P, m, corner, d + 1), tol_routh)
                if r != R_NONE:
                    return UNSTABLE, R_ZERO_CROSSING, nan, corner, w, tasks
            unresolved = True
            q = (dist - lip * h) / scale if scale > 0 else -math.inf
            if q < margin:
                margin = q
    if unresolved:
        return INCONCLUSIVE, R_RESOLUTION, margin, [0.0] * m, nan, tasks
    return STABLE, R_NONE, margin, [0.0] * m, nan, tasks


def certify_batch(corners, m, tol_routh=1e-9, tol_hull=1e-9, freq_floor=1e-6, lam_floor=1e-6,
                  max_tasks=200000, stop_on_unstable=True):
    """Run :func:`certify_one` over a ``(K, 2**m, L)`` array.

    With ``stop_on_unstable`` the batch halts after the first unstable family;
    later entries keep verdict ``PENDING``.
    """
    corners = np.ascontiguousarray(corners, dtype=np.float64)
    K = corners.shape[0]
    verdict = np.full(K, PENDING, dtype=np.int8)
    reason = np.zeros(K, dtype=np.int8)
    margin = np.full(K, np.nan)
    wit_lam = np.zeros((K, m))
    wit_omega = np.full(K, np.nan)
    tasks = np.zeros(K, dtype=np.int64)
    for k in range(K):
        P = corners[k].tolist()
        v, r, q, lam, w, t = certify_one(P, m, tol_routh, tol_hull, freq_floor, lam_floor, max_tasks)
        verdict[k] = v
        reason[k] = r
        margin[k] = q
        wit_lam[k, :] = lam
        wit_omega[k] = w
        tasks[k] = t
        if stop_on_unstable and v == UNSTABLE:
            break
    return verdict, reason, margin, wit_lam, wit_omega, tasks
