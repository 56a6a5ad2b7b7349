"""Golden checks against the published worked examples."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from . import golden as G
from .instance import UbqpInstance
from .layout import Layout
from .lift import LiftedPoint, lemma2_witness, nonconvexity_counterexample, phi, phi_triplet, recover_x
from .lpsolve import OPTIMAL, LpProblem, solve
from .oracle import brute_force_min
from .reduction import (
    assemble,
    basic_block_B,
    build_consistency,
    build_E,
    build_L3,
    build_T,
    exact_matmul,
    objective_vector,
    transformed_objective,
)


def _eq(a, b) -> bool:
    a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
    return a.shape == b.shape and bool((a == b).all())


def _identity(n: int) -> bool:
    T, E = build_T(n), build_E(n)
    return _eq(exact_matmul(T, E), np.eye(T.shape[0], dtype=int))


def consistency_rows_as_set(n: int = 4) -> set:
    """Rows of the consistency block, sign-normalised, as hashable tuples."""
    A = build_consistency(Layout(n)).to_dense()
    return {_sign_normalise(tuple(row)) for row in A}


def _sign_normalise(row: tuple) -> tuple:
    first = next((v for v in row if v != 0), 0)
    return tuple(-v for v in row) if first < 0 else row


def published_consistency_rows() -> set:
    lay = Layout(4)
    out = set()
    for eq in G.CONSISTENCY_N4:
        row = [Fraction(0)] * (2 * lay.N1)
        for sign, kind, i, j in eq:
            p = lay.iota(i, j) - 1 + (lay.N1 if kind == "v" else 0)
            row[p] += sign
        out.add(_sign_normalise(tuple(row)))
    return out


def check_witnesses() -> bool:
    B = basic_block_B()
    for x, l8, expected in G.WITNESSES:
        wit = lemma2_witness(x, "explicit", l8)
        if tuple(wit.lam) != tuple(Fraction(v) for v in expected):
            return False
        if tuple(B.dot(np.array(wit.lam, dtype=object))) != phi_triplet(*x):
            return False
    # the first three have a single admissible weight for vertex (1,1,1)
    for x, l8, _ in G.WITNESSES[:3]:
        lo, hi = lemma2_witness(x).lambda8_interval
        if not lo == hi == l8:
            return False
    return phi_triplet(*G.WITNESSES[0][0]) == G.PHI_EXAMPLE1


def check_counterexample() -> bool:
    w, image = nonconvexity_counterexample()
    Lw = tuple(build_L3().dot(np.array(w, dtype=object)))
    return w == G.NONCONVEX_W and Lw == G.NONCONVEX_LW and image == G.NONCONVEX_IMAGE and image != w


def printed_counterexample_values() -> bool:
    """The printed L w and its image, checked literally."""
    w, image = nonconvexity_counterexample()
    Lw = tuple(build_L3().dot(np.array(w, dtype=object)))
    return Lw == G.PRINTED_LW and image == G.PRINTED_IMAGE


def end_to_end(Q, b, opt, w_expected, x_expected) -> bool:
    inst = UbqpInstance.from_lists(Q, b)
    lp = assemble(inst)
    sol = solve(LpProblem.from_assembled(lp))
    if sol.status != OPTIMAL or sol.objective != opt:
        return False
    w = tuple(sol.primal[8 * lp.layout.N:])
    if w != tuple(Fraction(v) for v in w_expected):
        return False
    if recover_x(LiftedPoint.from_w(w, inst.n)).x != x_expected:
        return False
    return brute_force_min(inst) == (opt, [x_expected])


def _lp3_objective() -> bool:
    inst = UbqpInstance.from_lists(G.LP3_Q, G.LP3_B)
    return tuple(objective_vector(inst)) == G.LP3_C and tuple(transformed_objective(inst)) == G.LP3_CTILDE


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("T3 E3 = I6", lambda: _identity(3)),
    ("T4 E4 = I10", lambda: _identity(4)),
    ("E3, T3 match printed matrices", lambda: _eq(build_E(3), G.E3) and _eq(build_T(3), G.T3)),
    ("E4, T4 match printed matrices", lambda: _eq(build_E(4), G.E4) and _eq(build_T(4), G.T4)),
    ("n=4 consistency rows", lambda: consistency_rows_as_set(4) == published_consistency_rows()),
    ("triplet witnesses", check_witnesses),
    ("phi(x) on the hypercube matches B columns", lambda: _eq(
        basic_block_B()[:, 7], phi((1, 1, 1)).w)),
    ("non-convexity counterexample: phi(L w) != w", check_counterexample),
    ("printed image equals phi(printed L w)", lambda: phi_triplet(*G.PRINTED_LW) == G.PRINTED_IMAGE),
    ("c and transformed c for the n=3 example", _lp3_objective),
    ("n=3 example end to end (-110)", lambda: end_to_end(G.LP3_Q, G.LP3_B, G.LP3_OPT, G.LP3_W, G.LP3_X)),
    ("n=4 example end to end (-170)", lambda: end_to_end(G.EX5_Q, G.EX5_B, G.EX5_OPT, G.EX5_W, G.EX5_X)),
]


# Published values that disagree with exact arithmetic. Reported, not counted.
KNOWN_DISCREPANCIES: list[tuple[str, Callable[[], bool]]] = [
    ("printed L w = (0, 1/4, 1/4)", printed_counterexample_values),
]


def run_selftest(echo=print) -> bool:
    ok_all = True
    for name, fn in KNOWN_DISCREPANCIES:
        state = "AGREE" if fn() else "DIFF"
        echo(f"{state:5} {name} (known arithmetic slip in the published value)")
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # report, keep going
            ok, detail = False, f" ({type(exc).__name__}: {exc})"
        ok_all &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}{detail}")
    return ok_all
