import json

import pytest
from hypothesis import given, strategies as st

from vbraid.endo import (
    Endomorphism,
    apply,
    compose,
    equals,
    first_difference,
    identity_endo,
    is_identity,
    restrict_check_permutation,
)
from vbraid.words import Alphabet, SignedLetter, format_word, normalize, parse_expr

A = Alphabet(("x1", "x2"), ("u1", "u2"))
LETTERS = [SignedLetter(ab, i, s) for ab in (False, True) for i in (0, 1) for s in (1, -1)]
words = st.lists(st.sampled_from(LETTERS), max_size=8).map(lambda ls: normalize(ls, A))


@st.composite
def endos(draw):
    images = {"x1": draw(words), "x2": draw(words)}
    swap = draw(st.booleans())
    if swap:
        images.update(u1=A.gen("u2"), u2=A.gen("u1"))
    return Endomorphism.from_mapping(A, images)


@given(endos(), endos(), words)
def test_compose_acts_on_the_right(f, g, w):
    assert apply(compose(f, g), w) == apply(g, apply(f, w))


@given(endos(), endos(), endos())
def test_compose_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(endos())
def test_identity_is_neutral(f):
    e = identity_endo(A)
    assert compose(e, f) == f == compose(f, e)
    assert is_identity(e)


def test_missing_generators_are_fixed():
    f = Endomorphism.from_mapping(A, {"x1": parse_expr("x1 x2", A)})
    assert f["x2"] == A.gen("x2")
    assert f["u1"] == A.gen("u1")
    assert first_difference(f, identity_endo(A)) == "x1"
    assert equals(f, f)


def test_abelian_images_must_stay_abelian():
    with pytest.raises(ValueError):
        Endomorphism.from_mapping(A, {"u1": A.gen("x1")})


def test_unknown_generator_rejected():
    with pytest.raises(ValueError):
        Endomorphism.from_mapping(A, {"y": A.gen("x1")})


def test_permutation_restriction():
    f = Endomorphism.from_mapping(A, {"u1": A.gen("u2"), "u2": A.gen("u1")})
    assert restrict_check_permutation(f, ["u1", "u2"]) == {"u1": "u2", "u2": "u1"}
    g = Endomorphism.from_mapping(A, {"u1": A.gen("u2") ** 2})
    assert restrict_check_permutation(g, ["u1", "u2"]) is None


def test_table_and_json():
    f = Endomorphism.from_mapping(A, {"x1": parse_expr("x1^{u1}", A)})
    assert f.table(["x1"]) == ["x1 -> u1^-1 x1 u1"]
    assert json.loads(f.to_json())["x1"] == format_word(f["x1"])
