"""Vectorized polynomial-matrix arithmetic on coefficient arrays.

Arrays carry polynomial coefficients on the last axis (ascending) and the
matrix indices on the two axes before it: shape ``(..., n, n, L)``.
"""

from __future__ import annotations

import numpy as np


def polymul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting convolution along the last axis."""
    la, lb = a.shape[-1], b.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (la + lb - 1,)
    out = np.zeros(shape)
    for i in range(la):
        out[..., i : i + lb] += a[..., i : i + 1] * b
    return out


def pad(a: np.ndarray, length: int) -> np.ndarray:
    if a.shape[-1] >= length:
        return a
    width = [(0, 0)] * (a.ndim - 1) + [(0, length - a.shape[-1])]
    return np.pad(a, width)


def matmul(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Polynomial matrix product; ``X`` is ``(..., n, n, Lx)``, ``Y`` ``(..., n, n, Ly)``."""
    prods = polymul(X[..., :, :, None, :], Y[..., None, :, :, :])  # (..., i, j, k, L)
    return prods.sum(axis=-3)


def compose(B: np.ndarray, A: np.ndarray, D: np.ndarray, C: np.ndarray) -> np.ndarray:
    left = matmul(B, A)
    right = matmul(D, C)
    length = max(left.shape[-1], right.shape[-1])
    return pad(left, length) + pad(right, length)


def det(M: np.ndarray) -> np.ndarray:
    """Batched polynomial determinant by memoized row expansion."""
    n = M.shape[-2]
    L = M.shape[-1]
    batch = M.shape[:-3]
    one = np.zeros(batch + (1,))
    one[...] = 1.0
    memo = {0: one}
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        row = n - len(cols)
        acc = np.zeros(batch + ((L - 1) * len(cols) + 1,))
        for pos, j in enumerate(cols):
            term = polymul(M[..., row, j, :], memo[mask & ~(1 << j)])
            if pos % 2:
                acc -= term
            else:
                acc += term
        memo[mask] = acc
    return memo[(1 << n) - 1]


def horner(coeffs: np.ndarray, z) -> np.ndarray:
    """Evaluate ascending coefficient arrays at ``z`` (broadcast over leading axes)."""
    acc = np.zeros(coeffs.shape[:-1], dtype=complex)
    for k in range(coeffs.shape[-1] - 1, -1, -1):
        acc = acc * z + coeffs[..., k]
    return acc


def routh_batch(coeffs: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Vectorized strict Hurwitz test; returns a boolean array over the batch.

    Each row of ``coeffs`` (ascending) is judged at its own exact degree.
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
    N, L = coeffs.shape
    stable = np.zeros(N, dtype=bool)
    nz = coeffs != 0.0
    degree = np.where(nz.any(axis=1), L - 1 - np.argmax(nz[:, ::-1], axis=1), -1)
    for d in np.unique(degree):
        idx = np.flatnonzero(degree == d)
        if d < 0:
            continue
        if d == 0:
            stable[idx] = True
            continue
        a = coeffs[idx, d::-1].copy()  # descending, leading first
        a *= np.sign(a[:, :1])
        thr = tol * np.abs(a).max(axis=1)
        ok = a[:, 0] > thr
        width = d // 2 + 1
        prev = np.zeros((len(idx), width))
        cur = np.zeros((len(idx), width))
        prev[:, : len(range(0, d + 1, 2))] = a[:, 0::2]
        cur[:, : len(range(1, d + 1, 2))] = a[:, 1::2]
        for _ in range(d):
            # failed rows may overflow below; their verdict is already fixed
            pivot = cur[:, 0]
            ok &= pivot > thr
            safe = np.where(pivot == 0.0, 1.0, pivot)
            nxt = np.zeros_like(cur)
            with np.errstate(all="ignore"):
                nxt[:, :-1] = (pivot[:, None] * prev[:, 1:] - prev[:, :1] * cur[:, 1:]) / safe[:, None]
            prev, cur = cur, nxt
        stable[idx] = ok
    return stable
