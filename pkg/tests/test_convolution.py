import random
from fractions import Fraction

import pytest
from helpers import instance, scalar_value
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import as_model_cochain

from parcoh.convolution import (
    Cochain,
    NotInIdeal,
    NotInvertible,
    convolve,
    e_nested,
    e_product,
    from_function,
    idempotent,
    in_ideal,
    invert_in_ideal,
    random_cochain,
    random_ideal_element,
    unit_cochain,
    zero_cochain,
)
from parcoh.linalg import GF, QQ

F5 = GF(5)
CASES = [
    ("kG:Z2", ["e"]), ("kG:Z2", ["a"]), ("kG:Z4", ["a^2"]), ("kG:Z2xZ2", ["a"]),
    ("dual:Z2", ["e"]), ("dual:Z2", ["a"]), ("dual:Z2xZ2", ["a"]), ("dual:Z4", ["a^2"]),
]


def as_dict(model, f):
    return as_model_cochain(model, f, scalar_value)


@pytest.mark.parametrize("name,tokens", CASES)
@pytest.mark.parametrize("n", [1, 2])
def test_idempotent_matches_the_oracle(name, tokens, n):
    pa, model = instance(name, F5, tokens)
    e = idempotent(pa, n)
    assert as_dict(model, e) == model.e_product_form(n)
    assert e_product(pa, n) == e_nested(pa, n) == e


@settings(max_examples=15)
@given(st.sampled_from(CASES), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_convolution_matches_the_oracle(case, n, seed):
    pa, model = instance(case[0], F5, case[1])
    rng = random.Random(seed)
    f, g = random_cochain(pa, n, rng), random_cochain(pa, n, rng)
    assert as_dict(model, convolve(f, g)) == model.convolve(as_dict(model, f), as_dict(model, g), n)


def test_kz2_convolution_is_pointwise():
    pa, _ = instance("kG:Z2", QQ, ["a"])
    f = from_function(pa, 1, lambda m: [2, 3][m[0]])
    g = from_function(pa, 1, lambda m: [5, 7][m[0]])
    assert [v[0] for v in convolve(f, g).values] == [10, 21]


def test_unit_cochain_values():
    pa, _ = instance("kG:Z2", QQ, ["e"])
    assert [v[0] for v in unit_cochain(pa, 2).values] == [1, 1, 1, 1]
    pd, _ = instance("dual:Z2", QQ, ["e"])
    assert [v[0] for v in unit_cochain(pd, 1).values] == [1, 0]


def test_trivial_subgroup_idempotent():
    pa, _ = instance("kG:Z2", QQ, ["e"])
    e2 = idempotent(pa, 2)
    assert e2.scalar(1, 1) == 0 and e2.scalar(0, 0) == 1
    assert e2.scalar(1, 0) == 0 and e2.scalar(0, 1) == 0


@pytest.mark.parametrize("name,tokens", [
    ("kG:Z2", ["a"]), ("kG:Z2xZ2", ["a", "b"]), ("dual:Z2", ["e"]), ("dual:Z2xZ2", ["e"])])
def test_global_idempotents_are_the_unit(name, tokens):
    # global: L = G for kG, L = {e} (lambda = counit) for the dual
    pa, _ = instance(name, QQ, tokens)
    assert pa.is_global
    for n in (1, 2, 3):
        assert idempotent(pa, n) == unit_cochain(pa, n)


def test_dual_klein_idempotent_value():
    pa, _ = instance("dual:Z2xZ2", QQ, ["a"])
    assert idempotent(pa, 2).scalar(0, 0) == Fraction(1, 4)
    assert idempotent(pa, 1).scalar(0) == Fraction(1, 2)


def test_ideal_membership():
    pa, _ = instance("kG:Z2", QQ, ["e"])
    assert in_ideal(idempotent(pa, 1))
    assert not in_ideal(unit_cochain(pa, 1))
    assert in_ideal(zero_cochain(pa, 1))


def test_inverse_of_a_character_on_kz4():
    pa, model = instance("kG:Z4", QQ, ["a^2"])
    # chi(a^k) = (-1)^(k/2) on L = {e, a^2}, zero off L
    chi = from_function(pa, 1, lambda m: {0: 1, 2: -1}.get(m[0], 0))
    inv = invert_in_ideal(chi)
    assert convolve(chi, inv) == idempotent(pa, 1)
    assert as_dict(model, inv) == model.inverse(as_dict(model, chi), 1)
    assert inv == chi


@pytest.mark.parametrize("name,tokens", CASES)
def test_inverse_matches_the_oracle(name, tokens):
    pa, model = instance(name, F5, tokens)
    rng = random.Random(11)
    for _ in range(5):
        f = random_ideal_element(pa, 1, rng)
        try:
            g = invert_in_ideal(f)
        except NotInvertible:
            with pytest.raises(ValueError):
                model.inverse(as_dict(model, f), 1)
            continue
        assert as_dict(model, g) == model.inverse(as_dict(model, f), 1)


def test_zero_is_not_invertible():
    pa, _ = instance("kG:Z2", QQ, ["a"])
    with pytest.raises(NotInvertible):
        invert_in_ideal(zero_cochain(pa, 1))


def test_outside_the_ideal_rejected():
    pa, _ = instance("kG:Z2", QQ, ["e"])
    with pytest.raises(NotInIdeal):
        invert_in_ideal(unit_cochain(pa, 1))


def test_degree_zero_inverse():
    pa, _ = instance("kG:Z2", QQ, ["a"])
    c = Cochain(pa, 0, ((QQ(3),),))
    assert invert_in_ideal(c).values == ((Fraction(1, 3),),)
