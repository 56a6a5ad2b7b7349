"""UBQP instances: f(x) = x^T Q x + b^T x over binary x."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .numeric import DYADIC_BITS, NumericError, as_fraction, format_rational, parse_rational

INTEGER = "integer"
REAL = "real"
DOMAINS = (INTEGER, REAL)


class InstanceError(ValueError):
    """An instance or instance file violates the model invariants."""


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class UbqpInstance:
    """Symmetric, zero-diagonal ``Q`` and linear term ``b``, stored exactly.

    ``Q`` and ``b`` are tuples of Fractions; use :meth:`from_lists` to build
    one from plain numbers.
    """

    Q: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    domain: str = INTEGER

    def __post_init__(self):
        n = len(self.b)
        if n < 3:
            raise InstanceError(f"n must be >= 3 for the triplet reduction, got {n}")
        if len(self.Q) != n or any(len(row) != n for row in self.Q):
            raise InstanceError(f"Q must be {n}x{n}")
        if self.domain not in DOMAINS:
            raise InstanceError(f"unknown domain {self.domain!r}")
        for i in range(n):
            if self.Q[i][i] != 0:
                raise InstanceError(f"nonzero diagonal: Q[{i + 1}][{i + 1}] = {self.Q[i][i]}")
            for j in range(i + 1, n):
                if self.Q[i][j] != self.Q[j][i]:
                    raise InstanceError(
                        f"asymmetric Q: Q[{i + 1}][{j + 1}] = {self.Q[i][j]} "
                        f"but Q[{j + 1}][{i + 1}] = {self.Q[j][i]}"
                    )
        if self.domain == INTEGER:
            for i, row in enumerate(self.Q):
                for j, q in enumerate(row):
                    if q.denominator != 1:
                        raise InstanceError(f"non-integer entry Q[{i + 1}][{j + 1}] = {q}")
            for i, q in enumerate(self.b):
                if q.denominator != 1:
                    raise InstanceError(f"non-integer entry b[{i + 1}] = {q}")

    @classmethod
    def from_lists(cls, Q, b, domain: str = INTEGER) -> "UbqpInstance":
        Qf = tuple(tuple(as_fraction(q) for q in row) for row in Q)
        bf = tuple(as_fraction(v) for v in b)
        return cls(Qf, bf, domain)

    @property
    def n(self) -> int:
        return len(self.b)

    def permuted(self, perm: Sequence[int]) -> "UbqpInstance":
        """Relabel variables: new variable ``k`` is old variable ``perm[k]`` (0-based)."""
        Q = tuple(tuple(self.Q[perm[i]][perm[j]] for j in range(self.n)) for i in range(self.n))
        b = tuple(self.b[p] for p in perm)
        return UbqpInstance(Q, b, self.domain)


def evaluate(inst: UbqpInstance, x: Sequence[int]) -> Fraction:
    """x^T Q x + b^T x for a binary vector ``x``."""
    if len(x) != inst.n:
        raise DimensionError(f"x has length {len(x)}, instance has n = {inst.n}")
    if any(xi not in (0, 1) for xi in x):
        raise ValueError(f"x must be binary, got {tuple(x)}")
    ones = [i for i, xi in enumerate(x) if xi]
    total = sum((inst.b[i] for i in ones), Fraction(0))
    for i in ones:
        row = inst.Q[i]
        total += sum((row[j] for j in ones), Fraction(0))
    return total


def random_instance(n: int, lo=-50, hi=50, domain: str = INTEGER, seed: int = 0) -> UbqpInstance:
    """Uniform random instance; the same arguments always give the same instance.

    Integer entries are drawn from ``[ceil(lo), floor(hi)]``; "real" entries are
    drawn uniformly from the multiples of 2**-20 inside ``[lo, hi]``.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    scale = 1 if domain == INTEGER else 1 << DYADIC_BITS
    klo, khi = math.ceil(lo * scale), math.floor(hi * scale)
    if klo > khi:
        raise ValueError(f"range [{lo}, {hi}] contains no {domain} values")
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(klo, khi), scale)

    Q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            Q[i][j] = Q[j][i] = draw()
    b = [draw() for _ in range(n)]
    return UbqpInstance(tuple(map(tuple, Q)), tuple(b), domain)


def instance_to_dict(inst: UbqpInstance) -> dict:
    return {
        "n": inst.n,
        "Q": [[format_rational(q) for q in row] for row in inst.Q],
        "b": [format_rational(v) for v in inst.b],
        "domain": inst.domain,
    }


def instance_from_dict(data: dict) -> UbqpInstance:
    try:
        n = data["n"]
        rows = data["Q"]
        b_raw = data["b"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"instance is missing field {exc}") from None
    domain = data.get("domain", INTEGER)
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceError(f"n must be an integer, got {n!r}")
    if not isinstance(rows, list) or not isinstance(b_raw, list):
        raise InstanceError("Q and b must be arrays")
    if len(b_raw) != n:
        raise InstanceError(f"b has {len(b_raw)} entries, expected {n}")

    def num(v, where):
        try:
            return parse_rational(v)
        except NumericError as exc:
            raise InstanceError(f"malformed number at {where}: {exc}") from None

    b = tuple(num(v, f"b[{i + 1}]") for i, v in enumerate(b_raw))
    lengths = [len(r) if isinstance(r, list) else -1 for r in rows]
    Q = [[Fraction(0)] * n for _ in range(n)]
    if lengths == [n] * n:
        for i in range(n):
            for j in range(n):
                Q[i][j] = num(rows[i][j], f"Q[{i + 1}][{j + 1}]")
    elif lengths in ([n - 1 - i for i in range(n)], [n - 1 - i for i in range(n - 1)]):
        # strict upper triangle, row i holds Q[i][i+1..n]
        for i, row in enumerate(rows):
            for off, v in enumerate(row):
                j = i + 1 + off
                Q[i][j] = Q[j][i] = num(v, f"Q[{i + 1}][{j + 1}]")
    else:
        raise InstanceError(f"Q must be a full {n}x{n} matrix or its strict upper triangle")
    return UbqpInstance(tuple(map(tuple, Q)), b, domain)


def write_instance(inst: UbqpInstance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst), indent=1) + "\n", encoding="utf-8")


def read_instance(path) -> UbqpInstance:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: not valid JSON ({exc})") from None
    return instance_from_dict(data)
