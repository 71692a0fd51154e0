from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqw.rng import SplitMix64
from eqw.states import (
    BooleanFunction,
    LinearForm,
    StateVector,
    apply_local_x,
    bv_function,
    complement,
    is_balanced,
    make_function,
    parse_function,
    state_from_function,
    tensor,
    tensor_all,
    uniform_state,
    weight,
)

from conftest import function_from_int


def test_make_function_basic():
    assert make_function(2, "0000").table == (0, 0, 0, 0)
    assert make_function(2, "0110").table == (0, 1, 1, 0)
    assert make_function(2, [0, 1, 1, 0]) == make_function(2, "0110")


def test_make_function_rejects_bad_input():
    with pytest.raises(ValueError):
        make_function(1, "011")
    with pytest.raises(ValueError):
        make_function(0, "1")
    with pytest.raises(ValueError):
        make_function(2, "01a0")
    with pytest.raises(ValueError):
        BooleanFunction(2, (0, 1, 2, 0))


def test_parse_function_hex():
    # table 0110 has ones at x = 1, 2, so the packed value is 2 + 4 = 6
    assert parse_function(2, "0x6") == make_function(2, "0110")
    assert parse_function(2, "0110") == make_function(2, "0110")
    assert parse_function(3, "0X0F") == make_function(3, "11110000")
    with pytest.raises(ValueError):
        parse_function(1, "0x5")  # needs 3 bits, only 2 available
    with pytest.raises(ValueError):
        parse_function(2, "0xZZ")


def test_bv_function_values():
    assert bv_function(LinearForm(2, (0, 0))).bits() == "0000"
    assert bv_function(LinearForm(2, (1, 0))).bits() == "0011"
    assert bv_function(LinearForm(2, (1, 1))).bits() == "0110"


def test_linear_form_value_roundtrip():
    for n in (1, 2, 3, 4):
        for v in range(1 << n):
            assert LinearForm.from_value(n, v).value == v


def test_state_from_function():
    assert state_from_function(make_function(2, "0000")).amps == (1, 1, 1, 1)
    assert state_from_function(make_function(2, "0110")).amps == (1, -1, -1, 1)
    assert state_from_function(make_function(2, "0001")).amps == (1, 1, 1, -1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_uniform_state_is_constant_function_state(n):
    assert uniform_state(n).amps == (1,) * (1 << n)
    assert uniform_state(n) == state_from_function(make_function(n, [0] * (1 << n)))


def test_uniform_state_rejects_zero():
    with pytest.raises(ValueError):
        uniform_state(0)


def test_weight_and_balance():
    assert weight(make_function(2, "0000")) == 0
    assert weight(make_function(2, "0110")) == 2
    assert weight(make_function(2, "0001")) == 1
    assert is_balanced(make_function(2, "0011"))
    assert not is_balanced(make_function(2, "0001"))
    assert not is_balanced(make_function(2, "1111"))


def test_complement():
    assert complement(make_function(2, "0011")).bits() == "1100"
    for fi in range(256):
        f = function_from_int(3, fi)
        assert complement(complement(f)) == f
    for fi in range(1 << 16):
        f = function_from_int(4, fi)
        assert is_balanced(complement(f)) == is_balanced(f)


def test_complement_negates_state_exhaustive_small():
    for n in (1, 2, 3):
        for fi in range(1 << (1 << n)):
            f = function_from_int(n, fi)
            assert (
                state_from_function(complement(f)).amps
                == state_from_function(f).negate().amps
            )


def test_complement_negates_state_sampled_large():
    rng = SplitMix64(2024)
    per_n = 2000
    for n in range(4, 9):
        size = 1 << n
        for _ in range(per_n):
            f = function_from_int(n, rng.below(1 << size))
            assert (
                state_from_function(complement(f)).amps
                == state_from_function(f).negate().amps
            )


def test_plus_minus_counts_track_weight():
    for n in (1, 2, 3):
        for fi in range(1 << (1 << n)):
            f = function_from_int(n, fi)
            s = state_from_function(f)
            assert s.plus_count() == (1 << n) - weight(f)
            assert s.minus_count() == weight(f)


def test_balanced_iff_equal_sign_counts():
    for n in (1, 2, 3, 4):
        for fi in range(1 << (1 << n)):
            f = function_from_int(n, fi)
            s = state_from_function(f)
            assert is_balanced(f) == (s.plus_count() == s.minus_count())


def test_apply_local_x_examples():
    bell = StateVector(2, (1, 0, 0, 1))
    assert apply_local_x(bell, 1).amps == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        apply_local_x(bell, 3)


amps_nonzero = st.integers(min_value=-3, max_value=3)


def small_states(max_m=4):
    return st.integers(min_value=1, max_value=max_m).flatmap(
        lambda m: st.tuples(
            st.just(m),
            st.lists(amps_nonzero, min_size=1 << m, max_size=1 << m).filter(
                lambda xs: any(xs)
            ),
        )
    )


@given(small_states())
def test_apply_local_x_is_involution(mx):
    m, amps = mx
    s = StateVector(m, tuple(amps))
    for q in range(1, m + 1):
        assert apply_local_x(apply_local_x(s, q), q) == s


@given(small_states())
def test_apply_local_x_preserves_multiset(mx):
    m, amps = mx
    s = StateVector(m, tuple(amps))
    for q in range(1, m + 1):
        assert Counter(apply_local_x(s, q).amps) == Counter(s.amps)


def test_tensor_examples():
    assert tensor(StateVector(1, (1, 1)), StateVector(1, (1, -1))).amps == (1, -1, 1, -1)
    assert tensor(StateVector(1, (1, -1)), StateVector(1, (1, -1))).amps == (1, -1, -1, 1)
    assert tensor(uniform_state(1), uniform_state(2)) == uniform_state(3)


@settings(max_examples=60)
@given(
    st.tuples(small_states(2), small_states(2), small_states(2)).filter(
        lambda t: t[0][0] + t[1][0] + t[2][0] <= 6
    )
)
def test_tensor_associative(triple):
    a, b, c = (StateVector(m, tuple(amps)) for m, amps in triple)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
    assert tensor_all([a, b, c]) == tensor(a, tensor(b, c))


@given(small_states(2), small_states(2))
def test_apply_local_x_commutes_with_tensor(ma, mb):
    a = StateVector(ma[0], tuple(ma[1]))
    b = StateVector(mb[0], tuple(mb[1]))
    for q in range(1, a.m + 1):
        assert tensor(apply_local_x(a, q), b) == apply_local_x(tensor(a, b), q)
    for q in range(1, b.m + 1):
        assert tensor(a, apply_local_x(b, q)) == apply_local_x(tensor(a, b), a.m + q)


def test_state_vector_validation():
    with pytest.raises(ValueError):
        StateVector(2, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        StateVector(2, (1, 1))
    with pytest.raises(ValueError):
        StateVector(0, (1,))


def test_canonical_sign():
    s = StateVector(2, (0, -2, 1, 0))
    assert s.canonical().amps == (0, 2, -1, 0)
    assert s.canonical() == s.negate().canonical()
