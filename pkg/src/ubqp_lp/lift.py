"""Point-level maps between the hypercube and the lifted (u, v) space."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .layout import Layout, reference_pair

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class LiftedPoint:
    """Primary variables ``u`` and ``v``, each of length N1 and indexed by iota."""

    n: int
    u: tuple
    v: tuple

    def __post_init__(self):
        n1 = self.n * (self.n - 1) // 2
        if len(self.u) != n1 or len(self.v) != n1:
            raise ValueError(f"u and v must have length {n1} for n = {self.n}")

    @classmethod
    def from_w(cls, w: Sequence, n: int | None = None) -> "LiftedPoint":
        if n is None:
            n = _n_from_pairs(len(w) // 2)
        n1 = n * (n - 1) // 2
        if len(w) != 2 * n1:
            raise ValueError(f"w must have length {2 * n1} for n = {n}, got {len(w)}")
        return cls(n, tuple(w[:n1]), tuple(w[n1:]))

    @property
    def w(self) -> tuple:
        return self.u + self.v

    @property
    def layout(self) -> Layout:
        return Layout(self.n)

    def uv(self, i: int, j: int) -> tuple:
        p = self.layout.iota(i, j) - 1
        return self.u[p], self.v[p]

    def triplet_slice(self, i: int, j: int, k: int) -> tuple:
        """(u_ij, u_ik, u_jk, v_ij, v_ik, v_jk)."""
        lay = self.layout
        p = [lay.iota(i, j) - 1, lay.iota(i, k) - 1, lay.iota(j, k) - 1]
        return tuple(self.u[q] for q in p) + tuple(self.v[q] for q in p)


def _n_from_pairs(n1: int) -> int:
    n = (1 + isqrt(1 + 8 * n1)) // 2
    if n * (n - 1) // 2 != n1:
        raise ValueError(f"{n1} is not a pair count C(n, 2)")
    return n


def _check_box(x: Sequence) -> None:
    bad = [i + 1 for i, xi in enumerate(x) if not 0 <= xi <= 1]
    if not bad:
        return
    if all(isinstance(xi, (int, Fraction)) for xi in x):
        raise ValueError(f"x outside [0,1]^n at components {bad}")
    warnings.warn(f"x outside [0,1]^n at components {bad}", RuntimeWarning, stacklevel=3)


def alpha(x: Sequence) -> tuple:
    """(x1, x1x2, ..., x1xn, x2, x2x3, ..., x_{n-1}x_n, x_n)."""
    _check_box(x)
    out = []
    n = len(x)
    for i in range(n):
        out.append(x[i])
        out.extend(x[i] * x[j] for j in range(i + 1, n))
    return tuple(out)


def _half(value):
    return value / 2 if isinstance(value, float) else Fraction(value) / 2


def phi_triplet(xi, xj, xk) -> tuple:
    def up(a, b):
        return _half(a + 2 * a * b + b)

    def down(a, b):
        return _half(a - 2 * a * b + b)

    return (up(xi, xj), up(xi, xk), up(xj, xk), down(xi, xj), down(xi, xk), down(xj, xk))


def phi(x: Sequence) -> LiftedPoint:
    _check_box(x)
    n = len(x)
    lay = Layout(n)
    u = tuple(_half(x[i - 1] + 2 * x[i - 1] * x[j - 1] + x[j - 1]) for i, j in lay.pairs)
    v = tuple(_half(x[i - 1] - 2 * x[i - 1] * x[j - 1] + x[j - 1]) for i, j in lay.pairs)
    return LiftedPoint(n, u, v)


def g(w: LiftedPoint, i: int, j: int, k: int):
    """The value of x_i implied by the triplet {i, j, k}.

    Computed from its explicit formula; over the slice ordering
    (u_ij, u_ik, u_jk, v_ij, v_ik, v_jk) the selector is 1/2*(1, 1, -1, 1, 1, -1).
    """
    if len({i, j, k}) != 3:
        raise IndexError(f"g needs distinct indices, got ({i}, {j}, {k})")
    uij, vij = w.uv(i, j)
    uik, vik = w.uv(i, k)
    ujk, vjk = w.uv(j, k)
    return _half(uij + vij + uik + vik - ujk - vjk)


@dataclass(frozen=True)
class Lemma2Witness:
    lam: tuple  # 8 convex weights, columns of the basic block
    lambda8_interval: tuple  # (lower, upper)
    bounds: dict  # M1, M2, M3, m1, m2, m3


def _triplet_bounds(x1, x2, x3) -> dict:
    s = x1 + x2 + x3 - x1 * x2 - x1 * x3 - x2 * x3
    return {
        "M1": min(1 - x1 * (1 - x2 - x3), 1 - x2 * (1 - x1 - x3), 1 - x3 * (1 - x1 - x2)),
        "M2": min(x1 * x2, x1 * x3, x2 * x3),
        "M3": 1 - s,
        "m1": max(-x1 * (1 - x2 - x3), -x2 * (1 - x1 - x3), -x3 * (1 - x1 - x2)),
        "m2": max(x1 * x2 - 1, x1 * x3 - 1, x2 * x3 - 1),
        "m3": -s,
    }


def lemma2_witness(x3: Sequence, policy="lower", value=None) -> Lemma2Witness:
    """Explicit convex weights ``lam`` with ``B @ lam == phi(x3)``.

    ``policy`` picks the free weight of vertex (1,1,1) inside its feasible
    interval: ``"lower"``, ``"upper"``, ``"midpoint"``, or ``"explicit"`` (with
    ``value``).
    """
    if len(x3) != 3:
        raise ValueError("lemma2_witness takes a point of [0,1]^3")
    _check_box(x3)
    x1, x2, x3_ = (Fraction(t) if not isinstance(t, float) else t for t in x3)
    bd = _triplet_bounds(x1, x2, x3_)
    lower = max(0, bd["m1"])
    upper = min(bd["M1"], bd["M2"], bd["M3"], 1)
    if policy == "lower":
        l8 = lower
    elif policy == "upper":
        l8 = upper
    elif policy == "midpoint":
        l8 = _half(lower + upper)
    elif policy == "explicit":
        if value is None:
            raise ValueError("policy 'explicit' needs a value")
        l8 = Fraction(value) if not isinstance(value, float) else value
        if not lower <= l8 <= upper:
            raise ValueError(f"lambda8 = {l8} outside the feasible interval [{lower}, {upper}]")
    else:
        raise ValueError(f"unknown policy {policy!r}")
    s = x1 + x2 + x3_ - x1 * x2 - x1 * x3_ - x2 * x3_
    lam = (
        1 - (l8 + s),
        l8 + x3_ - x1 * x3_ - x2 * x3_,
        l8 + x2 - x1 * x2 - x2 * x3_,
        x2 * x3_ - l8,
        l8 + x1 - x1 * x2 - x1 * x3_,
        x1 * x3_ - l8,
        x1 * x2 - l8,
        l8,
    )
    return Lemma2Witness(lam, (lower, upper), bd)


class NonBinaryRecoveryError(ValueError):
    """The implied x is not within tolerance of a hypercube vertex."""

    def __init__(self, values, residual, tol):
        self.values = tuple(values)
        self.residual = residual
        self.tol = tol
        super().__init__(f"recovered point is not binary (residual {residual} > {tol}): {self.values}")


@dataclass(frozen=True)
class Recovery:
    x: tuple[int, ...]
    values: tuple  # pre-rounding g values
    residual: object


def implied_x(w: LiftedPoint) -> tuple:
    """x_i = g(w, i, reference pair) for every i."""
    return tuple(g(w, i, *reference_pair(i)) for i in range(1, w.n + 1))


def recover_x(w: LiftedPoint, tol=QUARTER) -> Recovery:
    values = implied_x(w)
    x = tuple(1 if val * 2 >= 1 else 0 for val in values)
    residual = max(abs(val - xi) for val, xi in zip(values, x))
    if residual > tol:
        raise NonBinaryRecoveryError(values, residual, tol)
    return Recovery(x, values, residual)


def nonconvexity_counterexample():
    """A point of conv(phi(V)) that is not the image of any hypercube point.

    Returns ``(w, phi(L w))``; the two differ.
    """
    from .reduction import basic_block_B, build_L3

    B = basic_block_B()
    lam = [Fraction(0)] * 8
    lam[1] = lam[2] = Fraction(1, 2)
    w = tuple(sum((B[r][c] * lam[c] for c in range(8)), Fraction(0)) for r in range(6))
    L = build_L3()
    x = [sum((L[r][c] * w[c] for c in range(6)), Fraction(0)) for r in range(3)]
    image = phi_triplet(*x)
    assert image != w
    return w, image
