"""Structural matrices of the lifting and assembly of the block LP.

Dense constant matrices (B, E_n, T_n, L, S_3) are numpy object arrays of
Fractions so that products stay exact. The assembled constraint matrix is a
:class:`SparseCoeffList` with 0-based (row, col) entries.

Column layout of the assembled LP: the first 8N columns are the convex
weights, eight per triplet in lexicographic triplet order; then u (N1
columns) and v (N1 columns), both indexed by iota.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .instance import UbqpInstance
from .layout import Layout, reference_pair
from .lift import phi_triplet
from .numeric import format_rational, parse_rational

HALF = Fraction(1, 2)
_SMALL = {k: Fraction(k) for k in range(-4, 5)}


@dataclass(frozen=True)
class SparseCoeffList:
    """Canonical coordinate list: sorted, duplicates summed, zeros dropped."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...]

    @classmethod
    def build(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, object]]) -> "SparseCoeffList":
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, val in triplets:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if type(val) is not Fraction:
                val = _SMALL.get(val) or Fraction(val) if type(val) is int else Fraction(val)
            key = (r, c)
            prev = acc.get(key)
            acc[key] = val if prev is None else prev + val
        entries = tuple((r, c, v) for (r, c), v in sorted(acc.items()) if v)
        return cls(rows, cols, entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> np.ndarray:
        out = np.full((self.rows, self.cols), Fraction(0), dtype=object)
        for r, c, v in self.entries:
            out[r, c] = v
        return out

    def matvec(self, x: Sequence):
        if len(x) != self.cols:
            raise ValueError(f"vector has length {len(x)}, matrix has {self.cols} columns")
        zero = 0.0 if any(isinstance(t, float) for t in x) else Fraction(0)
        out = [zero] * self.rows
        for r, c, v in self.entries:
            if x[c]:
                out[r] += v * x[c]
        return out

    def columns(self) -> list[list[tuple[int, Fraction]]]:
        cols: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.cols)]
        for r, c, v in self.entries:
            cols[c].append((r, v))
        return cols

    def row_block(self, start: int, stop: int) -> "SparseCoeffList":
        return SparseCoeffList(
            stop - start, self.cols, tuple((r - start, c, v) for r, c, v in self.entries if start <= r < stop)
        )

    def col_block(self, start: int, stop: int) -> "SparseCoeffList":
        return SparseCoeffList(
            self.rows, stop - start, tuple((r, c - start, v) for r, c, v in self.entries if start <= c < stop)
        )


def _frac_matrix(rows) -> np.ndarray:
    return np.array([[Fraction(v) for v in row] for row in rows], dtype=object)


def vertices3() -> list[tuple[int, int, int]]:
    """{0,1}^3 in nested-loop order, x1 outermost."""
    return list(product((0, 1), repeat=3))


@lru_cache(maxsize=None)
def _basic_block() -> tuple:
    return tuple(zip(*(phi_triplet(*p) for p in vertices3())))


def basic_block_B() -> np.ndarray:
    """6x8 block whose column l is phi of the l-th vertex of {0,1}^3."""
    return _frac_matrix(_basic_block())


def build_L3() -> np.ndarray:
    return HALF * _frac_matrix(
        [
            [1, 1, -1, 1, 1, -1],
            [1, -1, 1, 1, -1, 1],
            [-1, 1, 1, -1, 1, 1],
        ]
    )


def build_S3() -> np.ndarray:
    """Selection matrix with alpha(x) = S3 @ kron(xt, xt), xt = (1, x)."""
    S = np.full((6, 16), Fraction(0), dtype=object)
    # (alpha entry, [kron positions]) with kron index 4*a + b for xt[a]*xt[b]
    picks = {0: (1, 4), 1: (6, 9), 2: (7, 13), 3: (2, 8), 4: (11, 14), 5: (3, 12)}
    for row, cols in picks.items():
        for c in cols:
            S[row, c] = HALF
    return S


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of two object matrices, skipping zero entries."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.full((A.shape[0], B.shape[1]), Fraction(0), dtype=object)
    b_rows = [[(c, v) for c, v in enumerate(row) if v != 0] for row in B]
    for r, row in enumerate(A):
        for k, a in enumerate(row):
            if a != 0:
                for c, v in b_rows[k]:
                    out[r, c] += a * v
    return out


def build_E(n: int) -> np.ndarray:
    """n(n-1) x n(n+1)/2 matrix with phi(x) = E_n @ alpha(x)."""
    lay = Layout(n)
    E = np.full((2 * lay.N1, lay.alpha_len), Fraction(0), dtype=object)
    for i, j in lay.pairs:
        p = lay.iota(i, j) - 1
        ci, cj, cij = lay.alpha_pos(i) - 1, lay.alpha_pos(j) - 1, lay.alpha_pos(i, j) - 1
        for row, sign in ((p, 1), (lay.N1 + p, -1)):
            E[row, ci] += HALF
            E[row, cj] += HALF
            E[row, cij] += sign
    return E


def build_T(n: int) -> np.ndarray:
    """n(n+1)/2 x n(n-1) matrix with T_n @ E_n = I.

    Built over the w columns only; the 8N offset of the full variable vector
    is applied when the cost is embedded in :func:`assemble`.
    """
    lay = Layout(n)
    N1 = lay.N1
    T = np.full((lay.alpha_len, 2 * N1), Fraction(0), dtype=object)
    for i in range(1, n + 1):
        row = lay.alpha_pos(i) - 1
        j, k = reference_pair(i)
        for off in (0, N1):
            T[row, off + lay.iota(i, j) - 1] += HALF
            T[row, off + lay.iota(i, k) - 1] += HALF
            T[row, off + lay.iota(j, k) - 1] -= HALF
        for j in range(i + 1, n + 1):
            row = lay.alpha_pos(i, j) - 1
            p = lay.iota(i, j) - 1
            T[row, p] += HALF
            T[row, N1 + p] -= HALF
    return T


def objective_vector(inst: UbqpInstance) -> list[Fraction]:
    """c with f(x) = c . alpha(x): b_i on x_i, 2*Q_ij on x_i*x_j."""
    lay = Layout(inst.n)
    c = [Fraction(0)] * lay.alpha_len
    for i in range(1, inst.n + 1):
        c[lay.alpha_pos(i) - 1] = inst.b[i - 1]
        for j in range(i + 1, inst.n + 1):
            c[lay.alpha_pos(i, j) - 1] = 2 * inst.Q[i - 1][j - 1]
    return c


def transformed_objective(inst: UbqpInstance) -> list[Fraction]:
    """c~ = T_n^T c, the cost on w."""
    c = np.array(objective_vector(inst), dtype=object)
    return [Fraction(v) for v in c @ build_T(inst.n)]


def _convexity_entries(layout: Layout):
    """Raw (row, col, value) lists for A11, A12 and A31; no duplicates, no zeros."""
    N1 = layout.N1
    B = _basic_block()
    minus, one = Fraction(-1), Fraction(1)
    a11, a12, a31 = [], [], []
    for r, (i, j, k) in enumerate(layout.triplets):
        row0, col0 = 6 * r, 8 * r
        for a in range(6):
            for l in range(8):
                if B[a][l]:
                    a11.append((row0 + a, col0 + l, B[a][l]))
        for a, pair in enumerate(((i, j), (i, k), (j, k))):
            p = layout.iota(*pair) - 1
            a12.append((row0 + a, p, minus))
            a12.append((row0 + 3 + a, N1 + p, minus))
        for l in range(8):
            a31.append((r, col0 + l, one))
    return a11, a12, a31


def build_convexity(layout: Layout) -> tuple[SparseCoeffList, SparseCoeffList, SparseCoeffList]:
    """Blocks A11 (6N x 8N), A12 (6N x 2N1) and A31 (N x 8N)."""
    N, N1 = layout.N, layout.N1
    a11, a12, a31 = _convexity_entries(layout)
    return (
        SparseCoeffList.build(6 * N, 8 * N, a11),
        SparseCoeffList.build(6 * N, 2 * N1, a12),
        SparseCoeffList.build(N, 8 * N, a31),
    )


def consistency_pairs(n: int) -> Iterator[tuple[int, tuple[int, int], tuple[int, int]]]:
    """Yield ``(i, reference pair, other pair)`` for every consistency row.

    Pairs are generated one at a time, lexicographically over {1..n} minus {i};
    the first pair is the reference and is skipped.
    """
    for i in range(1, n + 1):
        rest = [s for s in range(1, n + 1) if s != i]
        ref = (rest[0], rest[1])
        for l1 in range(len(rest) - 1):
            for l2 in range(l1 + 1, len(rest)):
                if l1 > 0 or l2 > 1:
                    yield i, ref, (rest[l1], rest[l2])


def build_consistency(layout: Layout) -> SparseCoeffList:
    """A22 = (M1, M1): each row is 2*(g_{i,ref} - g_{i,j,k}) on u and on v."""
    return SparseCoeffList.build(layout.N2, 2 * layout.N1, _consistency_entries(layout))


def _consistency_entries(layout: Layout) -> list:
    N1 = layout.N1
    entries = []
    rows = 0
    for r, (i, (j1, k1), (j, k)) in enumerate(consistency_pairs(layout.n)):
        coeff: dict[int, int] = {}
        for p, s in (
            ((i, j1), 1), ((i, k1), 1), ((j1, k1), -1),
            ((i, j), -1), ((i, k), -1), ((j, k), 1),
        ):
            col = layout.iota(*p) - 1
            coeff[col] = coeff.get(col, 0) + s
        for col, s in coeff.items():
            if s:
                entries.append((r, col, _SMALL[s]))
                entries.append((r, N1 + col, _SMALL[s]))
        rows = r + 1
    if rows != layout.N2:
        raise AssertionError(f"generated {rows} consistency rows, expected {layout.N2}")
    return entries


@dataclass(frozen=True)
class AssembledLp:
    A: SparseCoeffList
    rhs: tuple[Fraction, ...]
    cost: tuple[Fraction, ...]
    layout: Layout
    var_names: list[str] = field(default_factory=list, compare=False, repr=False)


@lru_cache(maxsize=16)
def assemble_constraints(n: int) -> tuple[SparseCoeffList, tuple[Fraction, ...]]:
    """[A11 A12; 0 A22; A31 0] and its right-hand side. Depends on n only."""
    lay = Layout(n)
    N, N1, N2 = lay.N, lay.N1, lay.N2
    a11, a12, a31 = _convexity_entries(lay)
    w0 = 8 * N
    # the four blocks occupy disjoint positions, so no merging is needed
    entries = a11
    entries += [(r, w0 + c, v) for r, c, v in a12]
    entries += [(6 * N + r, w0 + c, v) for r, c, v in _consistency_entries(lay)]
    entries += [(6 * N + N2 + r, c, v) for r, c, v in a31]
    entries.sort(key=lambda e: (e[0], e[1]))
    A = SparseCoeffList(lay.n_rows, lay.n_vars, tuple(entries))
    rhs = (Fraction(0),) * (6 * N + N2) + (Fraction(1),) * N
    return A, rhs


def assemble(inst: UbqpInstance) -> AssembledLp:
    lay = Layout(inst.n)
    A, rhs = assemble_constraints(inst.n)
    cost = (Fraction(0),) * (8 * lay.N) + tuple(transformed_objective(inst))
    return AssembledLp(A, rhs, cost, lay, lay.var_names())


def vertex_point(layout: Layout, x: Sequence[int]) -> list[Fraction]:
    """Feasible 0/1-weight point (lam, w) for a binary x.

    Each triplet puts weight 1 on the vertex (x_i, x_j, x_k).
    """
    from .lift import phi

    if len(x) != layout.n or any(t not in (0, 1) for t in x):
        raise ValueError("x must be a binary vector of length n")
    point = [Fraction(0)] * layout.n_vars
    for r, (i, j, k) in enumerate(layout.triplets, start=1):
        l = 4 * x[i - 1] + 2 * x[j - 1] + x[k - 1] + 1
        point[layout.lam_col(r, l)] = Fraction(1)
    w = phi([Fraction(t) for t in x]).w
    point[8 * layout.N:] = list(w)
    return point


def lp_to_dict(lp: AssembledLp) -> dict:
    return {
        "n": lp.layout.n,
        "rows": lp.A.rows,
        "cols": lp.A.cols,
        "entries": [[r, c, format_rational(v)] for r, c, v in lp.A.entries],
        "rhs": [format_rational(v) for v in lp.rhs],
        "cost": [format_rational(v) for v in lp.cost],
        "var_names": lp.var_names or lp.layout.var_names(),
    }


def lp_from_dict(data: dict):
    """Load an exported LP as ``(A, rhs, cost, var_names)``."""
    A = SparseCoeffList.build(
        data["rows"], data["cols"], ((int(r), int(c), parse_rational(v)) for r, c, v in data["entries"])
    )
    rhs = tuple(parse_rational(v) for v in data["rhs"])
    cost = tuple(parse_rational(v) for v in data["cost"])
    if len(rhs) != A.rows or len(cost) != A.cols:
        raise ValueError("LP file: rhs/cost lengths do not match the matrix shape")
    return A, rhs, cost, data.get("var_names", [])


def write_lp(lp: AssembledLp, path) -> None:
    Path(path).write_text(json.dumps(lp_to_dict(lp)) + "\n", encoding="utf-8")


def read_lp(path):
    return lp_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
