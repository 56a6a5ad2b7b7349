from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ubqp_lp.instance import (
    DimensionError,
    InstanceError,
    UbqpInstance,
    evaluate,
    instance_from_dict,
    instance_to_dict,
    random_instance,
    read_instance,
    write_instance,
)
from ubqp_lp.numeric import NumericError, dyadic, format_rational, parse_rational


@pytest.mark.parametrize("text,value", [("3", 3), ("-7/4", Fraction(-7, 4)), ("+2/6", Fraction(1, 3)), (5, 5)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1.5", "1/0", "abc", 1.5, True, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(NumericError):
        parse_rational(bad)


def test_format_roundtrip():
    for q in (Fraction(0), Fraction(-3), Fraction(5, 8)):
        assert parse_rational(format_rational(q)) == q


def test_dyadic_rounding():
    assert dyadic(Fraction(1, 3), 2) == Fraction(1, 4)


def test_evaluate_lp3(lp3_instance):
    assert evaluate(lp3_instance, (1, 1, 1)) == -110
    assert evaluate(lp3_instance, (0, 0, 0)) == 0


def test_evaluate_errors(lp3_instance):
    with pytest.raises(DimensionError):
        evaluate(lp3_instance, (1, 0))
    with pytest.raises(ValueError):
        evaluate(lp3_instance, (1, 2, 0))


def test_validation_messages():
    with pytest.raises(InstanceError, match="nonzero diagonal: Q\\[2\\]\\[2\\]"):
        UbqpInstance.from_lists([[0, 1, 0], [1, 5, 0], [0, 0, 0]], [0, 0, 0])
    with pytest.raises(InstanceError, match="asymmetric Q"):
        UbqpInstance.from_lists([[0, 1, 0], [2, 0, 0], [0, 0, 0]], [0, 0, 0])
    with pytest.raises(InstanceError, match="n must be >= 3"):
        UbqpInstance.from_lists([[0, 1], [1, 0]], [0, 0])
    with pytest.raises(InstanceError, match="non-integer"):
        UbqpInstance.from_lists([[0, Fraction(1, 2), 0], [Fraction(1, 2), 0, 0], [0, 0, 0]], [0, 0, 0])
    # the same matrix is fine in the real domain
    UbqpInstance.from_lists([[0, Fraction(1, 2), 0], [Fraction(1, 2), 0, 0], [0, 0, 0]], [0, 0, 0], "real")


def test_random_instance_deterministic_and_in_range():
    a = random_instance(6, -5, 5, seed=11)
    assert a == random_instance(6, -5, 5, seed=11)
    assert a != random_instance(6, -5, 5, seed=12)
    assert all(-5 <= q <= 5 for row in a.Q for q in row)


def test_random_instance_degenerate_range():
    inst = random_instance(4, 3, 3, seed=0)
    assert all(inst.Q[i][j] == 3 for i in range(4) for j in range(4) if i != j)
    with pytest.raises(ValueError):
        random_instance(4, 3, 2)


def test_real_domain_is_dyadic():
    inst = random_instance(5, -1, 1, "real", seed=4)
    assert all((q * 2**20).denominator == 1 for q in inst.b)
    assert any(q.denominator > 1 for q in inst.b)


def test_json_roundtrip(tmp_path):
    inst = random_instance(5, -1, 1, "real", seed=2)
    path = tmp_path / "i.json"
    write_instance(inst, path)
    assert read_instance(path) == inst


def test_upper_triangle_input():
    data = {"n": 3, "Q": [["-10", "-20"], ["-10"]], "b": ["-2", "-2", "-26"]}
    assert evaluate(instance_from_dict(data), (1, 1, 1)) == -110


def test_malformed_entry_is_located():
    data = {"n": 3, "Q": [["x", "1"], ["2"]], "b": [0, 0, 0]}
    with pytest.raises(InstanceError, match=r"Q\[1\]\[2\]"):
        instance_from_dict(data)


def test_dict_full_matrix():
    inst = random_instance(4, seed=9)
    assert instance_from_dict(instance_to_dict(inst)) == inst


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10**6), st.data())
def test_permuted_preserves_values(n, seed, data):
    inst = random_instance(n, -9, 9, seed=seed)
    perm = data.draw(st.permutations(range(n)))
    x = data.draw(st.tuples(*[st.integers(0, 1)] * n))
    # new variable k is old variable perm[k]
    old_x = [0] * n
    for k, p in enumerate(perm):
        old_x[p] = x[k]
    assert evaluate(inst.permuted(perm), x) == evaluate(inst, old_x)
