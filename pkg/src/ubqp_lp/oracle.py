"""Exhaustive minimisation over {0,1}^n.

The instance is scaled to integers (common denominator) so every comparison
is exact. The last ``LOW_BITS`` variables are enumerated as one vectorised
block; the remaining variables follow a Gray code, so each step flips one
bit and updates the block's objective values incrementally.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .instance import UbqpInstance

DEFAULT_CAP = 26
LOW_BITS = 12
_INT_LIMIT = 1 << 62


class OracleCapError(ValueError):
    pass


def _scaled(inst: UbqpInstance) -> tuple[np.ndarray, np.ndarray, int]:
    den = 1
    for row in inst.Q:
        for q in row:
            den = math.lcm(den, q.denominator)
    for q in inst.b:
        den = math.lcm(den, q.denominator)
    Q = [[int(q * den) for q in row] for row in inst.Q]
    b = [int(q * den) for q in inst.b]
    bound = sum(abs(q) for row in Q for q in row) + sum(abs(v) for v in b)
    if bound >= _INT_LIMIT:
        raise OverflowError("instance magnitude exceeds the 63-bit accumulator")
    return np.array(Q, dtype=np.int64).reshape(inst.n, inst.n), np.array(b, dtype=np.int64), den


def _low_block(L: int) -> np.ndarray:
    """All 2^L assignments in lexicographic order, first variable most significant."""
    idx = np.arange(1 << L, dtype=np.int64)
    shifts = np.arange(L - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.int64)


def brute_force_min(inst: UbqpInstance, cap: int = DEFAULT_CAP) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Global minimum of f and every minimiser, sorted lexicographically."""
    n = inst.n
    if n > cap:
        raise OracleCapError(f"brute force refused: n = {n} exceeds the cap of {cap}")
    Q, b, den = _scaled(inst)
    L = min(n, LOW_BITS)
    H = n - L
    lo = slice(H, n)
    X = _low_block(L)
    QL = Q[lo, lo]
    base = np.einsum("ki,ij,kj->k", X, QL, X) + X @ b[lo]
    # flipping high bit t on changes the block values by b_t + 2 * (Q_{t,low} . x_low) + 2 * Q_{t,high} . h
    cross = [2 * (X @ Q[t, lo]) for t in range(H)]

    h = [0] * H
    values = base.copy()
    best = None
    hits: list[tuple[tuple[int, ...], np.ndarray]] = []

    def record():
        nonlocal best, hits
        m = int(values.min())
        if best is None or m < best:
            best, hits = m, []
        if m == best:
            hits.append((tuple(h), np.flatnonzero(values == m)))

    record()
    for step in range(1, 1 << H):
        t = H - 1 - ((step & -step).bit_length() - 1)  # Gray code: flip the lowest set bit of step
        sign = 1 - 2 * h[t]
        delta_high = int(b[t]) + 2 * sum(int(Q[t, s]) for s in range(H) if h[s] and s != t)
        values += sign * cross[t]
        values += sign * delta_high
        h[t] ^= 1
        record()

    argmins = []
    for hv, rows in hits:
        for r in rows:
            argmins.append(hv + tuple(int(v) for v in X[r]))
    argmins.sort()
    return Fraction(best, den), argmins
