from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ubqp_lp import golden as G
from ubqp_lp import lpsolve
from ubqp_lp.instance import random_instance
from ubqp_lp.lpsolve import (
    INFEASIBLE,
    ITERATION_LIMIT,
    OPTIMAL,
    UNBOUNDED,
    DimensionError,
    LpProblem,
    SolveOptions,
    check_point,
    solve,
    write_solution,
)
from ubqp_lp.reduction import SparseCoeffList, assemble, vertex_point


def problem(rows, rhs, cost):
    m, n = len(rows), len(rows[0])
    A = SparseCoeffList.build(m, n, ((i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row)))
    return LpProblem(A, tuple(map(Fraction, rhs)), tuple(map(Fraction, cost)))


def lp_of(inst):
    lp = assemble(inst)
    return lp, LpProblem.from_assembled(lp)


EXACT_VARIANTS = [
    dict(mode="exact"),
    dict(mode="exact", crossover=False),
    dict(mode="exact", pivot="dantzig"),
    dict(mode="exact", pivot="dantzig", crossover=False),
]


@pytest.mark.parametrize("opts", EXACT_VARIANTS + [dict(mode="float")])
def test_two_variable_lp(opts):
    sol = solve(problem([[1, 1]], [1], [1, 0]), **opts)
    assert sol.status == OPTIMAL
    assert sol.objective == 0 and list(sol.primal) == [0, 1]


@pytest.mark.parametrize("opts", EXACT_VARIANTS)
def test_lp3_example(lp3_instance, opts):
    lp, p = lp_of(lp3_instance)
    sol = solve(p, **opts)
    assert sol.status == OPTIMAL and sol.objective == G.LP3_OPT
    assert tuple(sol.primal[8:]) == G.LP3_W


@pytest.mark.parametrize("opts", EXACT_VARIANTS)
def test_example5(ex5_instance, opts):
    lp, p = lp_of(ex5_instance)
    sol = solve(p, **opts)
    assert sol.objective == G.EX5_OPT
    assert tuple(sol.primal[32:]) == G.EX5_W
    assert sol.dropped_redundant_rows  # the n=4 system is rank deficient


@pytest.mark.parametrize("opts", EXACT_VARIANTS + [dict(mode="float")])
def test_infeasible(opts):
    assert solve(problem([[1, 0], [1, 0]], [1, 2], [0, 0]), **opts).status == INFEASIBLE
    assert solve(problem([[1, 1]], [-1], [0, 0]), **opts).status == INFEASIBLE


@pytest.mark.parametrize("opts", EXACT_VARIANTS + [dict(mode="float")])
def test_unbounded(opts):
    assert solve(problem([[1, -1]], [0], [-1, 0]), **opts).status == UNBOUNDED


def test_negative_rhs_row():
    sol = solve(problem([[-1, -1, 0], [0, 1, 1]], [-2, 1], [1, 2, 0]))
    assert sol.status == OPTIMAL and sol.objective == 2 and sol.primal == [2, 0, 1]


def test_redundant_rows_dropped_and_still_satisfied():
    p = problem([[1, 1, 0], [2, 2, 0], [0, 1, 1]], [1, 2, 1], [1, 0, 1])
    for opts in EXACT_VARIANTS:
        sol = solve(p, **opts)
        assert sol.status == OPTIMAL and sol.objective == 0
        assert len(sol.dropped_redundant_rows) == 1
        assert check_point(p, sol.primal).max_eq_residual == 0


def test_iteration_limit_is_a_status(lp3_instance):
    _, p = lp_of(lp3_instance)
    for mode in ("exact", "float"):
        sol = solve(p, mode=mode, max_iters=1, crossover=False)
        assert sol.status == ITERATION_LIMIT and sol.primal is None


def test_dimension_mismatch():
    A = SparseCoeffList.build(1, 2, [(0, 0, 1)])
    with pytest.raises(DimensionError):
        LpProblem(A, (1, 2), (0, 0))
    with pytest.raises(DimensionError):
        LpProblem(A, (1,), (0,))


def test_bad_options():
    with pytest.raises(ValueError):
        SolveOptions(mode="approximate")
    with pytest.raises(ValueError):
        SolveOptions(pivot="steepest")


def test_fallback_paths_agree(monkeypatch, ex5_instance):
    _, p = lp_of(ex5_instance)
    reference = solve(p)
    monkeypatch.setattr(lpsolve, "_certify", lambda *a, **k: None)
    resumed = solve(p)
    assert resumed.method == "float-guided exact simplex"
    assert resumed.objective == reference.objective
    monkeypatch.setattr(lpsolve, "_exact_from_basis", lambda *a, **k: None)
    cold = solve(p)
    assert cold.method == "exact simplex" and cold.objective == reference.objective


@pytest.mark.parametrize("opts", EXACT_VARIANTS)
def test_exact_mode_is_deterministic(opts):
    _, p = lp_of(random_instance(5, seed=77))
    a, b = solve(p, **opts), solve(p, **opts)
    assert a.primal == b.primal and a.basis == b.basis and a.iterations == b.iterations


@settings(max_examples=12, deadline=None)
@given(st.integers(3, 6), st.integers(0, 10**9))
def test_exact_float_agree(n, seed):
    _, p = lp_of(random_instance(n, seed=seed))
    ex = solve(p, pivot="dantzig")
    fl = solve(p, mode="float", pivot="dantzig")
    assert ex.status == fl.status == OPTIMAL
    assert abs(float(ex.objective) - fl.objective) <= 1e-6
    chk = check_point(p, ex.primal)
    assert chk.max_eq_residual == 0 and chk.min_component >= 0 and chk.objective == ex.objective


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10**9))
def test_bland_and_dantzig_and_cold_agree(n, seed):
    _, p = lp_of(random_instance(n, seed=seed))
    objs = {solve(p, **opts).objective for opts in EXACT_VARIANTS}
    assert len(objs) == 1


def test_check_point_examples(lp3_instance, ex5_instance):
    _, p = lp_of(lp3_instance)
    assert check_point(p, solve(p).primal).max_eq_residual == 0
    assert check_point(p, [Fraction(0)] * p.A.cols).max_eq_residual == 1
    lp, p4 = lp_of(ex5_instance)
    for x in product((0, 1), repeat=4):
        chk = check_point(p4, vertex_point(lp.layout, x))
        assert chk.max_eq_residual == 0 and chk.min_component == 0
    with pytest.raises(DimensionError):
        check_point(p4, [0])


def test_check_point_float():
    p = problem([[1, 1]], [1], [1, 0])
    chk = check_point(p, [0.25, 0.75])
    assert chk.max_eq_residual == 0.0 and chk.objective == 0.25


def test_solution_json(tmp_path, lp3_instance):
    import json

    _, p = lp_of(lp3_instance)
    sol = solve(p)
    write_solution(sol, tmp_path / "s.json")
    data = json.loads((tmp_path / "s.json").read_text())
    assert {"status", "objective", "primal", "dropped_rows", "iterations"} <= set(data)
    assert data["objective"] == "-110" and data["primal"][-6:] == ["2", "2", "2", "0", "0", "0"]
