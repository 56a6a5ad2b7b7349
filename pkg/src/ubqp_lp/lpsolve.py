"""Two-phase revised simplex for ``min c.x  s.t.  A x = b, x >= 0``.

Two linear-algebra kernels share one driver:

* float: dense numpy basis inverse with rank-one updates and periodic
  refactorisation;
* exact: basis inverse stored as sparse rows of Fractions.

Exact mode normally runs the float simplex first, reads off its final basis,
and certifies it in rational arithmetic (primal feasibility, dual
feasibility, equal objectives). If the certificate fails the exact simplex
continues from that basis, and as a last resort solves from scratch. The
returned optimum is therefore always exact.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg.blas import dger

from .numeric import DEFAULT_FLOAT_TOL, EXACT, FLOAT, MODES, format_rational
from .reduction import SparseCoeffList

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"

BLAND = "bland"
DANTZIG = "dantzig"

REFACTOR_EVERY = 256
NOISE = 1e-11
_RATIONAL_DENOMS = (64, 4096, 1 << 20)


class DimensionError(ValueError):
    pass


class SingularBasisError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LpProblem:
    A: SparseCoeffList
    rhs: tuple
    cost: tuple

    def __post_init__(self):
        if len(self.rhs) != self.A.rows:
            raise DimensionError(f"rhs has length {len(self.rhs)}, A has {self.A.rows} rows")
        if len(self.cost) != self.A.cols:
            raise DimensionError(f"cost has length {len(self.cost)}, A has {self.A.cols} columns")

    @classmethod
    def from_assembled(cls, lp) -> "LpProblem":
        return cls(lp.A, tuple(lp.rhs), tuple(lp.cost))


@dataclass
class SolveOptions:
    mode: str = EXACT
    pivot: str = BLAND  # "bland" or "dantzig" (falls back to Bland when stalled)
    max_iters: Optional[int] = None  # default 50 * (rows + cols)
    tol: float = DEFAULT_FLOAT_TOL
    crossover: bool = True  # exact mode: float simplex first, exact certificate after

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.pivot not in (BLAND, DANTZIG):
            raise ValueError(f"unknown pivot rule {self.pivot!r}")


@dataclass
class LpSolution:
    status: str
    objective: object = None
    primal: Optional[list] = None
    basis: list = field(default_factory=list)
    iterations: int = 0
    dropped_redundant_rows: list = field(default_factory=list)
    mode: str = EXACT
    method: str = ""

    def to_dict(self) -> dict:
        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else v

        return {
            "status": self.status,
            "objective": None if self.objective is None else fmt(self.objective),
            "primal": None if self.primal is None else [fmt(v) for v in self.primal],
            "dropped_rows": list(self.dropped_redundant_rows),
            "iterations": self.iterations,
            "basis": list(self.basis),
            "mode": self.mode,
            "method": self.method,
        }


def write_solution(sol: LpSolution, path) -> None:
    Path(path).write_text(json.dumps(sol.to_dict(), indent=1) + "\n", encoding="utf-8")


# --------------------------------------------------------------------------
# kernels


class _FloatKernel:
    exact = False

    def __init__(self, cols: list, m: int, tol: float):
        self.cols = cols  # sparse columns, artificials included
        self.m = m
        self.tol = tol
        self.Binv = np.asfortranarray(np.eye(m))
        self.since_refactor = 0

    def basis_matrix(self, basis):
        Bm = np.zeros((self.m, self.m))
        for p, j in enumerate(basis):
            for r, v in self.cols[j]:
                Bm[r, p] = v
        return Bm

    def reset(self, basis):
        self.Binv = np.asfortranarray(np.linalg.inv(self.basis_matrix(basis)))
        self.since_refactor = 0

    def ftran(self, j):
        idx = [r for r, _ in self.cols[j]]
        vals = np.array([v for _, v in self.cols[j]], dtype=float)
        alpha = self.Binv[:, idx] @ vals
        alpha[np.abs(alpha) < NOISE] = 0.0  # cancellation residue
        return alpha

    def btran(self, cb):
        return self.Binv.T @ np.asarray(cb, dtype=float)

    def inverse_row(self, r):
        return self.Binv[r].copy()

    def update(self, r, alpha):
        row = self.Binv[r] / alpha[r]
        self.Binv = dger(-1.0, alpha, row, a=self.Binv, overwrite_a=1)
        self.Binv[r] = row
        self.since_refactor += 1


class _ExactKernel:
    exact = True

    def __init__(self, cols: list, m: int):
        self.cols = cols
        self.m = m
        self.rows = [{i: Fraction(1)} for i in range(m)]

    def reset(self, basis):
        """Gauss-Jordan inverse of the basis matrix, sparse rows."""
        m = self.m
        left = [dict() for _ in range(m)]
        for p, j in enumerate(basis):
            for r, v in self.cols[j]:
                left[r][p] = Fraction(v)
        right = [{i: Fraction(1)} for i in range(m)]
        pivot_row_of = [None] * m
        free = set(range(m))
        # columns in order of sparsity keeps fill low on these block matrices
        col_count = [0] * m
        for row in left:
            for p in row:
                col_count[p] += 1
        for p in sorted(range(m), key=lambda q: (col_count[q], q)):
            cands = [i for i in free if left[i].get(p)]
            if not cands:
                raise SingularBasisError(f"basis is singular at position {p}")
            i = min(cands, key=lambda t: (len(left[t]) + len(right[t]), t))
            free.discard(i)
            piv = left[i][p]
            left[i] = {c: v / piv for c, v in left[i].items()}
            right[i] = {c: v / piv for c, v in right[i].items()}
            for t in range(m):
                if t == i:
                    continue
                f = left[t].get(p)
                if not f:
                    continue
                _axpy(left[t], -f, left[i])
                _axpy(right[t], -f, right[i])
            pivot_row_of[p] = i
        self.rows = [right[pivot_row_of[p]] for p in range(m)]

    def ftran(self, j):
        col = self.cols[j]
        out = [Fraction(0)] * self.m
        for i, row in enumerate(self.rows):
            s = 0
            for r, v in col:
                a = row.get(r)
                if a:
                    s += a * v
            if s:
                out[i] = Fraction(s)
        return out

    def btran(self, cb):
        y: dict[int, Fraction] = {}
        for i, c in enumerate(cb):
            if c:
                _axpy(y, c, self.rows[i])
        return y

    def inverse_row(self, r):
        return dict(self.rows[r])

    def update(self, r, alpha):
        piv = alpha[r]
        row = {c: v / piv for c, v in self.rows[r].items()}
        for i, a in enumerate(alpha):
            if i != r and a:
                _axpy(self.rows[i], -a, row)
        self.rows[r] = row


def _axpy(target: dict, a, source: dict) -> None:
    """target += a * source, dropping exact zeros."""
    for c, v in source.items():
        nv = target.get(c, 0) + a * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


# --------------------------------------------------------------------------
# driver


class _Simplex:
    """Revised simplex over columns ``0..n-1`` plus artificials ``n..n+m-1``."""

    def __init__(self, cols, b, c, n, kernel, opts: SolveOptions, max_iters: int):
        self.cols = cols
        self.b = b
        self.c = c
        self.n = n
        self.m = len(b)
        self.k = kernel
        self.exact = kernel.exact
        self.tol = 0 if self.exact else opts.tol
        self.pivot_rule = opts.pivot
        self.max_iters = max_iters
        self.iterations = 0
        self.basis = list(range(n, n + self.m))
        self.xB = list(b) if self.exact else np.array(b, dtype=float)
        if not self.exact:
            rows, cidx, vals = [], [], []
            for j in range(n):
                for r, v in cols[j]:
                    rows.append(r)
                    cidx.append(j)
                    vals.append(float(v))
            self._AT = sp.csr_matrix((vals, (cidx, rows)), shape=(n, self.m))

    # -- helpers
    def _reduced_costs(self, cost):
        cb = cost[self.basis] if not self.exact else [cost[j] for j in self.basis]
        y = self.k.btran(cb)
        if self.exact:
            d = [None] * self.n
            for j in range(self.n):
                s = cost[j]
                for r, v in self.cols[j]:
                    yr = y.get(r)
                    if yr:
                        s -= yr * v
                d[j] = s
            for j in self.basis:
                if j < self.n:
                    d[j] = 0
            return d
        d = np.asarray(cost[: self.n], dtype=float) - self._AT @ y
        bas = [j for j in self.basis if j < self.n]
        d[bas] = 0.0
        return d

    def _choose_entering(self, d, use_bland):
        tol = self.tol
        if self.exact:
            if use_bland:
                for j, dj in enumerate(d):
                    if dj < 0:
                        return j
                return None
            best, arg = 0, None
            for j, dj in enumerate(d):
                if dj < best:
                    best, arg = dj, j
            return arg
        if use_bland:
            hits = np.flatnonzero(d < -tol)
            return int(hits[0]) if hits.size else None
        j = int(np.argmin(d))
        return j if d[j] < -tol else None

    def _ratio_test(self, alpha):
        best_r, best = None, None
        if self.exact:
            for i, a in enumerate(alpha):
                if a > 0:
                    ratio = self.xB[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[best_r]):
                        best, best_r = ratio, i
            return best_r
        pos = np.flatnonzero(alpha > self.tol)
        if pos.size == 0:
            return None
        ratios = np.maximum(self.xB[pos], 0.0) / alpha[pos]
        lo = ratios.min()
        ties = pos[ratios <= lo + self.tol]
        return int(min(ties, key=lambda i: self.basis[i]))

    def _pivot(self, r, q, alpha):
        theta = self.xB[r] / alpha[r]
        if self.exact:
            for i, a in enumerate(alpha):
                if a:
                    self.xB[i] -= theta * a
            self.xB[r] = theta
        else:
            theta = max(theta, 0.0)
            self.xB -= theta * alpha
            self.xB[r] = theta
        self.k.update(r, alpha)
        self.basis[r] = q
        self.iterations += 1
        if not self.exact and self.k.since_refactor >= REFACTOR_EVERY:
            self.refactor()

    def refactor(self):
        self.k.reset(self.basis)
        if self.exact:
            self.xB = self.k_solve(self.b)
        else:
            self.xB = self.k.Binv @ np.asarray(self.b, dtype=float)
            self.xB[np.abs(self.xB) < 1e-12] = 0.0

    def k_solve(self, b):
        out = []
        for row in self.k.rows:
            s = Fraction(0)
            for c, v in row.items():
                if b[c]:
                    s += v * b[c]
            out.append(s)
        return out

    def objective(self, cost):
        if not self.exact:
            return float(np.asarray(cost, dtype=float)[self.basis] @ self.xB)
        return sum((cost[j] * x for j, x in zip(self.basis, self.xB)), Fraction(0) if self.exact else 0.0)

    def run(self, cost) -> str:
        if not self.exact:
            cost = np.asarray(cost, dtype=float)
        use_bland = self.pivot_rule == BLAND
        stall_limit = 3 * (self.n + self.m)
        stalled, last_obj = 0, None
        while True:
            if self.iterations >= self.max_iters:
                return ITERATION_LIMIT
            d = self._reduced_costs(cost)
            q = self._choose_entering(d, use_bland)
            if q is None:
                return OPTIMAL
            alpha = self.k.ftran(q)
            r = self._ratio_test(alpha)
            if r is None:
                return UNBOUNDED
            self._pivot(r, q, alpha)
            if not use_bland:
                obj = self.objective(cost)
                if last_obj is not None and not (obj < last_obj - self.tol):
                    stalled += 1
                    if stalled > stall_limit:
                        log.debug("objective stalled for %d pivots; switching to Bland", stalled)
                        use_bland = True
                else:
                    stalled = 0
                last_obj = obj

    def drive_out_artificials(self) -> list[int]:
        """Pivot basic artificials out; return rows whose artificial cannot leave."""
        redundant = []
        for r in range(self.m):
            j = self.basis[r]
            if j < self.n:
                continue
            rho = self.k.inverse_row(r)
            basic = set(self.basis)
            entering = None
            for q in range(self.n):
                if q in basic:
                    continue
                if self.exact:
                    val = sum((rho.get(rr, 0) * v for rr, v in self.cols[q]), Fraction(0))
                    ok = val != 0
                else:
                    val = sum(rho[rr] * float(v) for rr, v in self.cols[q])
                    ok = abs(val) > self.tol
                if ok:
                    entering = q
                    break
            if entering is None:
                redundant.append(r)
                continue
            alpha = self.k.ftran(entering)
            self._pivot(r, entering, alpha)
        return redundant


def _normalised(p: LpProblem, exact: bool):
    """Columns with rows sign-flipped so that b >= 0, artificials appended."""
    m, n = p.A.rows, p.A.cols
    sign = [(-1 if v < 0 else 1) for v in p.rhs]
    conv = (lambda v: Fraction(v)) if exact else float
    cols = [[] for _ in range(n + m)]
    for r, c, v in p.A.entries:
        cols[c].append((r, conv(v) * sign[r]))
    for i in range(m):
        cols[n + i].append((i, conv(1)))
    b = [conv(v) * s for v, s in zip(p.rhs, sign)]
    c = [conv(v) for v in p.cost]
    return cols, b, c


def _restrict_rows(cols, b, keep: list[int], n: int):
    """Drop rows not in ``keep`` (and every artificial column)."""
    new_index = {r: i for i, r in enumerate(keep)}
    out = [[(new_index[r], v) for r, v in cols[j] if r in new_index] for j in range(n)]
    return out, [b[r] for r in keep]


def _two_phase(p: LpProblem, opts: SolveOptions, exact: bool, max_iters: int):
    cols, b, c = _normalised(p, exact)
    n, m = p.A.cols, p.A.rows
    kernel = _ExactKernel(cols, m) if exact else _FloatKernel(cols, m, opts.tol)
    s = _Simplex(cols, b, c, n, kernel, opts, max_iters)
    phase1_cost = [0] * n + [1] * m if exact else [0.0] * n + [1.0] * m
    status = s.run(phase1_cost)
    if status == ITERATION_LIMIT:
        return status, s, [], cols, b, c
    infeas = s.objective(phase1_cost)
    if (infeas > 0) if exact else (infeas > max(opts.tol, 1e-7) * max(1.0, float(sum(b)))):
        return INFEASIBLE, s, [], cols, b, c
    redundant_pos = s.drive_out_artificials()
    dropped = sorted(s.basis[r] - n for r in redundant_pos)
    if dropped:
        log.debug("dropping %d redundant rows", len(dropped))
        keep = [i for i in range(m) if i not in set(dropped)]
        cols2, b2 = _restrict_rows(cols, b, keep, n)
        basis = [j for j in s.basis if j < n]
        kernel2 = _ExactKernel(cols2, len(keep)) if exact else _FloatKernel(cols2, len(keep), opts.tol)
        s2 = _Simplex(cols2, b2, c, n, kernel2, opts, max_iters)
        s2.iterations = s.iterations
        s2.basis = basis
        s2.refactor()
        s = s2
    status = s.run(c)
    return status, s, dropped, cols, b, c


def _collect(p: LpProblem, s: _Simplex, status, dropped, mode, method) -> LpSolution:
    n = p.A.cols
    if status != OPTIMAL:
        return LpSolution(status, None, None, list(s.basis), s.iterations, dropped, mode, method)
    zero = Fraction(0) if s.exact else 0.0
    x = [zero] * n
    for j, v in zip(s.basis, s.xB):
        if j < n:
            x[j] = v if s.exact else float(v)
    if s.exact:
        obj = sum((Fraction(cj) * xj for cj, xj in zip(p.cost, x) if xj), Fraction(0))
    else:
        obj = float(sum(float(cj) * xj for cj, xj in zip(p.cost, x) if xj))
    return LpSolution(status, obj, x, list(s.basis), s.iterations, dropped, mode, method)


def _default_max_iters(p: LpProblem, opts: SolveOptions) -> int:
    return opts.max_iters if opts.max_iters is not None else 50 * (p.A.rows + p.A.cols)


def _certify(p: LpProblem, basis: list[int], dropped: list[int], x_float, y_float):
    """Rationalise a float vertex and its duals; return exact x if provably optimal."""
    n, m = p.A.cols, p.A.rows
    keep = [i for i in range(m) if i not in set(dropped)]
    if len(basis) != len(keep) or any(j >= n for j in basis):
        return None
    cols = p.A.columns()
    sign = [(-1 if v < 0 else 1) for v in p.rhs]
    for den in _RATIONAL_DENOMS:
        x = [Fraction(0)] * n
        for j, v in zip(basis, x_float):
            x[j] = Fraction(float(v)).limit_denominator(den)
        if any(v < 0 for v in x):
            continue
        if p.A.matvec(x) != [Fraction(v) for v in p.rhs]:
            continue
        y = [Fraction(0)] * m
        for i, v in zip(keep, y_float):
            y[i] = Fraction(float(v)).limit_denominator(den) * sign[i]
        ok = True
        for j in range(n):
            d = Fraction(p.cost[j]) - sum((y[r] * v for r, v in cols[j]), Fraction(0))
            if d < 0 or (x[j] != 0 and d != 0):
                ok = False
                break
        if not ok:
            continue
        obj = sum((Fraction(c) * v for c, v in zip(p.cost, x) if v), Fraction(0))
        dual = sum((y[i] * Fraction(p.rhs[i]) for i in range(m)), Fraction(0))
        if obj == dual:
            return x, obj
    return None


def _exact_from_basis(p: LpProblem, opts: SolveOptions, basis, dropped, iterations, max_iters):
    n, m = p.A.cols, p.A.rows
    cols, b, c = _normalised(p, True)
    keep = [i for i in range(m) if i not in set(dropped)]
    cols2, b2 = _restrict_rows(cols, b, keep, n)
    kernel = _ExactKernel(cols2, len(keep))
    exact_opts = SolveOptions(mode=EXACT, pivot=BLAND, max_iters=max_iters, tol=0)
    s = _Simplex(cols2, b2, c, n, kernel, exact_opts, max_iters)
    s.iterations = iterations
    s.basis = list(basis)
    try:
        s.refactor()
    except SingularBasisError:
        return None
    if any(v < 0 for v in s.xB):
        return None
    status = s.run(c)
    sol = _collect(p, s, status, dropped, EXACT, "float-guided exact simplex")
    if status == OPTIMAL and p.A.matvec(sol.primal) != [Fraction(v) for v in p.rhs]:
        return None
    return sol


def solve(p: LpProblem, opts: SolveOptions | None = None, **kwargs) -> LpSolution:
    """Minimise ``cost . x`` subject to ``A x = rhs``, ``x >= 0``."""
    if opts is None:
        opts = SolveOptions(**kwargs)
    elif kwargs:
        raise TypeError("pass either opts or keyword options, not both")
    max_iters = _default_max_iters(p, opts)
    if opts.mode == FLOAT:
        status, s, dropped, *_ = _two_phase(p, opts, False, max_iters)
        return _collect(p, s, status, dropped, FLOAT, "float simplex")

    if opts.crossover:
        status, s, dropped, *_ = _two_phase(p, opts, False, max_iters)
        if status == OPTIMAL:
            basis = list(s.basis)
            Bm = s.k.basis_matrix(basis)
            xb = np.linalg.solve(Bm, np.asarray(s.b, dtype=float))
            cb = np.array([float(s.c[j]) for j in basis])
            yb = np.linalg.solve(Bm.T, cb)
            cert = _certify(p, basis, dropped, xb, yb)
            if cert is not None:
                x, obj = cert
                return LpSolution(OPTIMAL, obj, x, basis, s.iterations, dropped, EXACT, "certified float basis")
            log.info("float basis not certified; continuing exactly from it")
            sol = _exact_from_basis(p, opts, basis, dropped, s.iterations, max_iters)
            if sol is not None:
                return sol
        log.info("falling back to a cold exact solve (float status %s)", status)

    status, s, dropped, *_ = _two_phase(p, opts, True, max_iters)
    return _collect(p, s, status, dropped, EXACT, "exact simplex")


@dataclass(frozen=True)
class PointCheck:
    max_eq_residual: object
    min_component: object
    objective: object


def check_point(p: LpProblem, point: Sequence) -> PointCheck:
    """Independent feasibility/objective report for any candidate point."""
    if len(point) != p.A.cols:
        raise DimensionError(f"point has length {len(point)}, problem has {p.A.cols} variables")
    exact = not any(isinstance(v, float) for v in point)
    rhs = [Fraction(v) if exact else float(v) for v in p.rhs]
    Ax = p.A.matvec(list(point))
    residual = max((abs(a - r) for a, r in zip(Ax, rhs)), default=0)
    cost = [Fraction(v) if exact else float(v) for v in p.cost]
    obj = sum((c * x for c, x in zip(cost, point)), Fraction(0) if exact else 0.0)
    return PointCheck(residual, min(point), obj)
