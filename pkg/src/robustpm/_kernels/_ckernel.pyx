# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled certification kernel; see ``_pykernel`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, hypot, INFINITY, NAN
from libc.stdlib cimport malloc, free

cnp.import_array()

DEF R_NONE = 0
DEF R_NEGATIVE_PIVOT = 1
DEF R_ZERO_PIVOT = 2
DEF R_ZERO_LEADING = 3
DEF R_DEGREE_DROP = 4
DEF R_ZERO_CROSSING = 5
DEF R_RESOLUTION = 6
DEF R_BUDGET = 7

STABLE, UNSTABLE, INCONCLUSIVE = 0, 1, 2
PENDING = -1
BACKEND = "cython"


cdef int _routh(const double* coeffs, int L, double tol, double* work) noexcept nogil:
    cdef int d = L - 1
    cdef int k, it, width
    cdef double scale = 0.0, thr, sign, v, pivot
    cdef double* prev
    cdef double* cur
    cdef double* nxt
    cdef double* tmp
    while d > 0 and coeffs[d] == 0.0:
        d -= 1
    for k in range(d + 1):
        if fabs(coeffs[k]) > scale:
            scale = fabs(coeffs[k])
    if scale == 0.0:
        return R_ZERO_LEADING
    thr = tol * scale
    sign = 1.0 if coeffs[d] > 0 else -1.0
    if fabs(coeffs[d]) <= thr:
        return R_ZERO_LEADING
    if d == 0:
        return R_NONE
    width = d // 2 + 1
    prev = work
    cur = work + width
    nxt = work + 2 * width
    for k in range(width):
        prev[k] = 0.0
        cur[k] = 0.0
    for k in range(d + 1):
        v = sign * coeffs[d - k]
        if k % 2 == 0:
            prev[k // 2] = v
        else:
            cur[k // 2] = v
    for it in range(d):
        pivot = cur[0]
        if pivot < -thr:
            return R_NEGATIVE_PIVOT
        if pivot <= thr:
            return R_ZERO_PIVOT
        for k in range(width):
            nxt[k] = 0.0
        for k in range(width - 1):
            nxt[k] = (pivot * prev[k + 1] - prev[0] * cur[k + 1]) / pivot
        tmp = prev
        prev = cur
        cur = nxt
        nxt = tmp
    return R_NONE


cdef inline double _cross(double ox, double oy, double ax, double ay, double bx, double by) noexcept nogil:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


cdef inline double _seg_dist(double ax, double ay, double bx, double by) noexcept nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double ll = dx * dx + dy * dy
    cdef double t
    if ll == 0.0:
        return hypot(ax, ay)
    t = -(ax * dx + ay * dy) / ll
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return hypot(ax + t * dx, ay + t * dy)


cdef double _hull_distance(double* xs, double* ys, int n, double* hx, double* hy) noexcept nogil:
    # insertion sort by (x, y)
    cdef int i, j, h, k, lower_n, start
    cdef double tx, ty, best, dd
    cdef bint inside
    for i in range(1, n):
        tx = xs[i]
        ty = ys[i]
        j = i - 1
        while j >= 0 and (xs[j] > tx or (xs[j] == tx and ys[j] > ty)):
            xs[j + 1] = xs[j]
            ys[j + 1] = ys[j]
            j -= 1
        xs[j + 1] = tx
        ys[j + 1] = ty
    if n == 1:
        return hypot(xs[0], ys[0])
    h = 0
    for i in range(n):
        while h >= 2 and _cross(hx[h - 2], hy[h - 2], hx[h - 1], hy[h - 1], xs[i], ys[i]) <= 0.0:
            h -= 1
        hx[h] = xs[i]
        hy[h] = ys[i]
        h += 1
    lower_n = h
    h -= 1  # drop last point of lower chain
    start = h
    for i in range(n - 1, -1, -1):
        while h - start >= 2 and _cross(hx[h - 2], hy[h - 2], hx[h - 1], hy[h - 1], xs[i], ys[i]) <= 0.0:
            h -= 1
        hx[h] = xs[i]
        hy[h] = ys[i]
        h += 1
    h -= 1  # drop last point of upper chain
    if h == 1:
        return hypot(hx[0], hy[0])
    best = INFINITY
    inside = h >= 3
    for k in range(h):
        if h == 2 and k == 1:
            break
        dd = _seg_dist(hx[k], hy[k], hx[(k + 1) % h], hy[(k + 1) % h])
        if dd < best:
            best = dd
        if inside and _cross(hx[k], hy[k], hx[(k + 1) % h], hy[(k + 1) % h], 0.0, 0.0) < 0.0:
            inside = False
    if h == 2:
        return best
    return -best if inside else best


cdef void _point_coeffs(const double* P, int C, int L, int m, const double* lam, double* rows, double* out) noexcept nogil:
    cdef int e, c, k, bit
    for c in range(C * L):
        rows[c] = P[c]
    for e in range(m):
        bit = 1 << e
        for c in range(C):
            if c & bit:
                continue
            for k in range(L):
                rows[c * L + k] = rows[c * L + k] + lam[e] * (rows[(c | bit) * L + k] - rows[c * L + k])
    for k in range(L):
        out[k] = rows[k]


cdef struct Result:
    int verdict
    int reason
    double margin
    double omega
    long tasks


cdef Result _certify(const double* P, int C, int L, int m, double tol_routh, double tol_hull,
                     double freq_floor, double lam_floor, long max_tasks, double* wit) noexcept nogil:
    cdef Result res
    cdef int c, k, e, d = -1, widest, top_idx
    cdef double sign, scale, min_lead, top, wmax, w, h, dist, lip, bp, slack, q, spread, width, s, a, b
    cdef double vr, vi, tr, dvr, dvi, v0r, v0i
    cdef bint unresolved = False, can_w, can_l
    cdef int r
    cdef long cap
    cdef long sp
    res.verdict = 2
    res.reason = R_NONE
    res.margin = NAN
    res.omega = NAN
    res.tasks = 0
    for e in range(m):
        wit[e] = 0.0
    for c in range(C):
        for k in range(L - 1, -1, -1):
            if P[c * L + k] != 0.0:
                if k > d:
                    d = k
                break
    if d < 0:
        res.reason = R_DEGREE_DROP
        return res
    sign = 1.0 if P[d] > 0 else -1.0
    for c in range(C):
        scale = 0.0
        for k in range(d + 1):
            if fabs(P[c * L + k]) > scale:
                scale = fabs(P[c * L + k])
        if sign * P[c * L + d] <= tol_routh * scale:
            res.reason = R_DEGREE_DROP
            for e in range(m):
                wit[e] = <double>((c >> e) & 1)
            return res

    cdef int W = d // 2 + 1
    cdef double* work = <double*> malloc(3 * W * sizeof(double))
    cdef double* rows = <double*> malloc(C * L * sizeof(double))
    cdef double* pc = <double*> malloc(L * sizeof(double))
    cdef double* dcoef = <double*> malloc((d + 1) * sizeof(double))
    cdef double* vre = <double*> malloc(C * sizeof(double))
    cdef double* vim = <double*> malloc(C * sizeof(double))
    cdef double* sx = <double*> malloc(C * sizeof(double))
    cdef double* sy = <double*> malloc(C * sizeof(double))
    cdef double* hx = <double*> malloc((2 * C + 2) * sizeof(double))
    cdef double* hy = <double*> malloc((2 * C + 2) * sizeof(double))
    cdef double* mid = <double*> malloc((m + 1) * sizeof(double))
    # stack rows: lo[m], hi[m], a, b
    cdef int rec = 2 * m + 2
    cap = 64
    cdef double* stack = <double*> malloc(cap * rec * sizeof(double))
    cdef double* tmpst
    cdef double* cur_t = <double*> malloc(rec * sizeof(double))
    cdef double* lo
    cdef double* hi

    res.verdict = -9
    for c in range(C):
        r = _routh(P + c * L, d + 1, tol_routh, work)
        if r != R_NONE:
            res.verdict = 1
            res.reason = r
            for e in range(m):
                wit[e] = <double>((c >> e) & 1)
            break
    if res.verdict == -9:
        for e in range(m):
            mid[e] = 0.5
        _point_coeffs(P, C, L, m, mid, rows, pc)
        r = _routh(pc, d + 1, tol_routh, work)
        if r != R_NONE:
            res.verdict = 1
            res.reason = r
            for e in range(m):
                wit[e] = 0.5
    if res.verdict == -9:
        min_lead = INFINITY
        top = 0.0
        for c in range(C):
            if fabs(P[c * L + d]) < min_lead:
                min_lead = fabs(P[c * L + d])
            for k in range(d):
                if fabs(P[c * L + k]) > top:
                    top = fabs(P[c * L + k])
        wmax = 1.0 + top / min_lead
        dcoef[0] = 0.0
        for k in range(1, d + 1):
            s = 0.0
            for c in range(C):
                if fabs(P[c * L + k]) > s:
                    s = fabs(P[c * L + k])
            dcoef[k] = k * s
        sp = 0
        for e in range(m):
            stack[e] = 0.0
            stack[m + e] = 1.0
        stack[2 * m] = 0.0
        stack[2 * m + 1] = wmax
        sp = 1
        res.margin = INFINITY
        while sp > 0:
            sp -= 1
            for k in range(rec):
                cur_t[k] = stack[sp * rec + k]
            lo = cur_t
            hi = cur_t + m
            a = cur_t[2 * m]
            b = cur_t[2 * m + 1]
            res.tasks += 1
            if res.tasks > max_tasks:
                res.verdict = 2
                res.reason = R_BUDGET
                for e in range(m):
                    wit[e] = 0.0
                break
            w = 0.5 * (a + b)
            h = 0.5 * (b - a)
            for c in range(C):
                vr = 0.0
                vi = 0.0
                for k in range(d, -1, -1):
                    tr = -(vi * w) + P[c * L + k]
                    vi = vr * w
                    vr = tr
                vre[c] = vr
                vim[c] = vi
            for e in range(m):
                for c in range(C):
                    if c & (1 << e):
                        continue
                    v0r = vre[c]
                    v0i = vim[c]
                    dvr = vre[c | (1 << e)] - v0r
                    dvi = vim[c | (1 << e)] - v0i
                    vre[c] = v0r + lo[e] * dvr
                    vim[c] = v0i + lo[e] * dvi
                    vre[c | (1 << e)] = v0r + hi[e] * dvr
                    vim[c | (1 << e)] = v0i + hi[e] * dvi
            scale = 0.0
            spread = 0.0
            for c in range(C):
                sx[c] = vre[c]
                sy[c] = vim[c]
                s = hypot(vre[c], vim[c])
                if s > scale:
                    scale = s
                s = hypot(vre[c] - vre[0], vim[c] - vim[0])
                if s > spread:
                    spread = s
            dist = _hull_distance(sx, sy, C, hx, hy)
            lip = 0.0
            bp = 1.0
            for k in range(1, d + 1):
                lip = lip + dcoef[k] * bp
                bp = bp * b
            slack = lip * h + tol_hull * scale
            if dist > slack:
                q = (dist - lip * h) / scale
                if q < res.margin:
                    res.margin = q
                continue
            for e in range(m):
                mid[e] = 0.5 * (lo[e] + hi[e])
            if m > 0 and dist <= 0.0:
                _point_coeffs(P, C, L, m, mid, rows, pc)
                r = _routh(pc, d + 1, tol_routh, work)
                if r != R_NONE:
                    res.verdict = 1
                    res.reason = R_ZERO_CROSSING
                    res.omega = w
                    for e in range(m):
                        wit[e] = mid[e]
                    break
            widest = -1
            width = 0.0
            for e in range(m):
                if hi[e] - lo[e] > width:
                    width = hi[e] - lo[e]
                    widest = e
            can_w = (b - a) > freq_floor * wmax
            can_l = m > 0 and width > lam_floor
            if sp + 2 > cap:
                cap = cap * 2
                tmpst = <double*> malloc(cap * rec * sizeof(double))
                for k in range(sp * rec):
                    tmpst[k] = stack[k]
                free(stack)
                stack = tmpst
            if can_l and (spread > lip * h or not can_w):
                # upper half pushed first so the lower half is processed first
                for k in range(rec):
                    stack[sp * rec + k] = cur_t[k]
                stack[sp * rec + widest] = mid[widest]
                sp += 1
                for k in range(rec):
                    stack[sp * rec + k] = cur_t[k]
                stack[sp * rec + m + widest] = mid[widest]
                sp += 1
            elif can_w:
                for k in range(rec):
                    stack[sp * rec + k] = cur_t[k]
                stack[sp * rec + 2 * m] = w
                sp += 1
                for k in range(rec):
                    stack[sp * rec + k] = cur_t[k]
                stack[sp * rec + 2 * m + 1] = w
                sp += 1
            else:
                for c in range(C):
                    for e in range(m):
                        mid[e] = hi[e] if (c >> e) & 1 else lo[e]
                    _point_coeffs(P, C, L, m, mid, rows, pc)
                    r = _routh(pc, d + 1, tol_routh, work)
                    if r != R_NONE:
                        res.verdict = 1
                        res.reason = R_ZERO_CROSSING
                        res.omega = w
                        for e in range(m):
                            wit[e] = mid[e]
                        break
                if res.verdict == 1:
                    break
                unresolved = True
                q = (dist - lip * h) / scale if scale > 0 else -INFINITY
                if q < res.margin:
                    res.margin = q
        if res.verdict == -9:
            if unresolved:
                res.verdict = 2
                res.reason = R_RESOLUTION
            else:
                res.verdict = 0
                res.reason = R_NONE
            for e in range(m):
                wit[e] = 0.0
    if res.verdict == 1:
        res.margin = NAN
    free(work)
    free(rows)
    free(pc)
    free(dcoef)
    free(vre)
    free(vim)
    free(sx)
    free(sy)
    free(hx)
    free(hy)
    free(mid)
    free(stack)
    free(cur_t)
    return res


def routh(coeffs, double tol):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef int L = arr.shape[0]
    cdef double* work = <double*> malloc(3 * (L // 2 + 2) * sizeof(double))
    cdef int r = _routh(&arr[0], L, tol, work)
    free(work)
    return r


def hull_distance(xs, ys):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.array(xs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.array(ys, dtype=np.float64)
    cdef int n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hx = np.empty(2 * n + 2)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hy = np.empty(2 * n + 2)
    return _hull_distance(&x[0], &y[0], n, &hx[0], &hy[0])


def certify_one(P, int m, double tol_routh=1e-9, double tol_hull=1e-9, double freq_floor=1e-6,
                double lam_floor=1e-6, long max_tasks=200000):
    v, r, q, lam, w, t = certify_batch(np.asarray(P, dtype=np.float64)[None], m, tol_routh, tol_hull,
                                       freq_floor, lam_floor, max_tasks, True)
    return int(v[0]), int(r[0]), float(q[0]), [float(x) for x in lam[0]], float(w[0]), int(t[0])


def certify_batch(corners, int m, double tol_routh=1e-9, double tol_hull=1e-9, double freq_floor=1e-6,
                  double lam_floor=1e-6, long max_tasks=200000, bint stop_on_unstable=True):
    cdef cnp.ndarray[cnp.float64_t, ndim=3] arr = np.ascontiguousarray(corners, dtype=np.float64)
    cdef int K = arr.shape[0]
    cdef int C = arr.shape[1]
    cdef int L = arr.shape[2]
    if C != (1 << m):
        raise ValueError("corner count must be 2**m")
    cdef cnp.ndarray[cnp.int8_t, ndim=1] verdict = np.full(K, -1, dtype=np.int8)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] reason = np.zeros(K, dtype=np.int8)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] margin = np.full(K, np.nan)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] wit_lam = np.zeros((K, m if m > 0 else 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wit_omega = np.full(K, np.nan)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tasks = np.zeros(K, dtype=np.int64)
    cdef int k
    cdef Result res
    cdef double* base = &arr[0, 0, 0] if K > 0 else NULL
    with nogil:
        for k in range(K):
            res = _certify(base + k * C * L, C, L, m, tol_routh, tol_hull, freq_floor, lam_floor,
                           max_tasks, &wit_lam[k, 0])
            verdict[k] = res.verdict
            reason[k] = res.reason
            margin[k] = res.margin
            wit_omega[k] = res.omega
            tasks[k] = res.tasks
            if stop_on_unstable and res.verdict == 1:
                break
    return verdict, reason, margin, wit_lam[:, :m], wit_omega, tasks
