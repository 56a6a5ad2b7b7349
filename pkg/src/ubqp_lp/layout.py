"""Index arithmetic for the lifted LP.

All public indices (variables, pairs, triplet ranks) are 1-based. The only
0-based quantities are the column/row *offsets* into assembled matrices,
returned by the ``*_col`` methods of :class:`Layout`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb


def dims(n: int) -> tuple[int, int, int]:
    """Return ``(N, N1, N2)``: triplet count, pair count, consistency rows."""
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"the reduction needs n >= 3, got {n!r}")
    return comb(n, 3), comb(n, 2), n * (comb(n - 1, 2) - 1)


@dataclass(frozen=True)
class Layout:
    n: int

    def __post_init__(self):
        dims(self.n)

    @cached_property
    def N(self) -> int:
        return comb(self.n, 3)

    @cached_property
    def N1(self) -> int:
        return comb(self.n, 2)

    @cached_property
    def N2(self) -> int:
        return self.n * (comb(self.n - 1, 2) - 1)

    @cached_property
    def triplets(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(combinations(range(1, self.n + 1), 3))

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(combinations(range(1, self.n + 1), 2))

    @property
    def n_vars(self) -> int:
        return 8 * self.N + 2 * self.N1

    @property
    def n_rows(self) -> int:
        return 7 * self.N + self.N2

    @property
    def alpha_len(self) -> int:
        return self.n * (self.n + 1) // 2

    def _check_var(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} outside 1..{self.n}")

    def iota(self, i: int, j: int) -> int:
        """Position (1..N1) of the pair {i, j} inside u (and inside v)."""
        self._check_var(i)
        self._check_var(j)
        if i == j:
            raise IndexError(f"iota needs distinct indices, got ({i}, {j})")
        if i > j:
            i, j = j, i
        return (i - 1) * (2 * self.n - i) // 2 + (j - i)

    def triplet_rank(self, i: int, j: int, k: int) -> int:
        """Lexicographic rank (1..N) of the triplet i < j < k."""
        if not (1 <= i < j < k <= self.n):
            raise IndexError(f"need 1 <= i < j < k <= {self.n}, got ({i}, {j}, {k})")
        n = self.n
        before = sum(comb(n - a, 2) for a in range(1, i))
        before += sum(n - b for b in range(i + 1, j))
        return before + (k - j)

    def triplet_at(self, r: int) -> tuple[int, int, int]:
        if not 1 <= r <= self.N:
            raise IndexError(f"triplet rank {r} outside 1..{self.N}")
        return self.triplets[r - 1]

    def alpha_pos(self, i: int, j: int | None = None) -> int:
        """1-based position of x_i (or x_i*x_j, i<j) in the alpha ordering."""
        self._check_var(i)
        start = sum(self.n - a + 1 for a in range(1, i)) + 1
        if j is None:
            return start
        self._check_var(j)
        if not i < j:
            raise IndexError(f"alpha_pos needs i < j, got ({i}, {j})")
        return start + (j - i)

    # 0-based offsets into the assembled variable vector (lam, u, v)
    def lam_col(self, r: int, l: int) -> int:
        return 8 * (r - 1) + (l - 1)

    def u_col(self, i: int, j: int) -> int:
        return 8 * self.N + self.iota(i, j) - 1

    def v_col(self, i: int, j: int) -> int:
        return 8 * self.N + self.N1 + self.iota(i, j) - 1

    def var_names(self) -> list[str]:
        names = [f"lam[{r}][{l}]" for r in range(1, self.N + 1) for l in range(1, 9)]
        names += [f"u[{i}][{j}]" for i, j in self.pairs]
        names += [f"v[{i}][{j}]" for i, j in self.pairs]
        return names


def reference_pair(i: int) -> tuple[int, int]:
    """The pair (j, k) that defines x_i in the consistency constraints."""
    if i == 1:
        return (2, 3)
    if i == 2:
        return (1, 3)
    return (1, 2)
