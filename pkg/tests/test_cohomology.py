import itertools
import json

import pytest
from hypothesis import given, strategies as st

from chernnum.cohomology import (
    CohomologyElement,
    ProductSpace,
    StructuredSpace,
    external_product,
    inject,
    multiply,
    pair_fundamental,
    parse_space,
)

CP1 = ProductSpace.cp(1)
CP2 = ProductSpace.cp(2)
CP1xCP1 = ProductSpace((1, 1))

small_spaces = st.sampled_from([(1,), (2,), (3,), (1, 1), (2, 1), (1, 2), (1, 1, 1), (2, 2), (3, 1)])


@st.composite
def elements(draw, space=None):
    if space is None:
        space = ProductSpace(draw(small_spaces), draw(st.sampled_from([1, -1])))
    monos = list(itertools.product(*(range(k + 1) for k in space.factors)))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(monos), max_size=len(monos)))
    return space.element(dict(zip(monos, coeffs)))


@st.composite
def element_triples(draw):
    space = ProductSpace(draw(small_spaces))
    return draw(elements(space)), draw(elements(space)), draw(elements(space))


def naive_product(a, b):
    """Multiply exponent vectors directly, then drop what exceeds the caps."""
    out = {}
    for e1, c1 in a.exponent_terms().items():
        for e2, c2 in b.exponent_terms().items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return a.space.element(out)


def test_multiply_examples():
    x = CP2.x()
    assert multiply(x, x) == CP2.element({(2,): 1})
    assert multiply(x * x, x) == CP2.zero()
    assert multiply(CP1xCP1.x(0), CP1xCP1.x(1)) == CP1xCP1.element({(1, 1): 1})


def test_multiply_owner_mismatch():
    with pytest.raises(ValueError):
        CP1.x() * CP2.x()
    with pytest.raises(ValueError):
        CP2.x() * CP2.reversed().x()


def test_pair_examples():
    assert pair_fundamental(CP2.element({(2,): 7})) == 7
    assert pair_fundamental(CP2.reversed().element({(2,): 3})) == -3
    assert pair_fundamental(CP1xCP1.element({(1, 1): 2, (2, 0): 1})) == 2
    assert pair_fundamental(CP2.element({(0,): 4, (1,): 5})) == 0


def test_truncation_on_construction():
    assert CP1xCP1.element({(2, 0): 1}) == CP1xCP1.zero()


@given(st.data())
def test_product_matches_naive(data):
    a, b, _ = data.draw(element_triples())
    assert a * b == naive_product(a, b)


@given(element_triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * a.space.one() == a


@given(elements())
def test_no_exponent_exceeds_cap(a):
    sq = a * a * a
    for exps in sq.exponent_terms():
        assert all(e <= k for e, k in zip(exps, a.space.factors))


@given(element_triples(), st.integers(-4, 4))
def test_pairing_is_linear(abc, k):
    a, b, _ = abc
    assert (a + b).pair() == a.pair() + b.pair()
    assert (a * k).pair() == k * a.pair()


@given(element_triples())
def test_pair_product_shortcut(abc):
    a, b, _ = abc
    assert a.pair_product(b) == (a * b).pair()


def test_external_product_examples():
    ST, _, _ = external_product(CP1, CP1)
    assert ST.factors == (1, 1)
    ST, inj_S, inj_T = external_product(ProductSpace.cp(2, 1), ProductSpace.cp(1, -1))
    assert ST.orientation == -1
    ST, inj_S, inj_T = external_product(CP2, CP1)
    assert (inj_S(CP2.x() ** 2) * inj_T(CP1.x())).pair() == 1


@given(st.data())
def test_kunneth_multiplicativity(data):
    S = ProductSpace(data.draw(small_spaces), data.draw(st.sampled_from([1, -1])))
    T = ProductSpace(data.draw(small_spaces), data.draw(st.sampled_from([1, -1])))
    a = S.top_class() * data.draw(st.integers(-5, 5))
    b = T.top_class() * data.draw(st.integers(-5, 5))
    ST, inj_S, inj_T = external_product(S, T)
    assert (inj_S(a) * inj_T(b)).pair() == a.pair() * b.pair()


@given(st.data())
def test_injection_is_a_ring_map(data):
    S = ProductSpace(data.draw(small_spaces))
    T = ProductSpace(data.draw(small_spaces))
    a, b = data.draw(elements(S)), data.draw(elements(S))
    ST, inj_S, inj_T = external_product(S, T)
    assert inj_S(a * b) == inj_S(a) * inj_S(b)
    c, d = data.draw(elements(T)), data.draw(elements(T))
    assert inj_T(c + d) == inj_T(c) + inj_T(d)


def test_inject_wide_target():
    # CP^1 factors packed into a target whose bit fields are wider
    target = ProductSpace((1, 5))
    a = CP1.element({(0,): 2, (1,): 3})
    assert inject(a, target, 0) == target.element({(0, 0): 2, (1, 0): 3})
    with pytest.raises(ValueError):
        inject(a, target, 1)


@given(elements())
def test_inverse_of_units(a):
    u = a - a.space.one() * a.constant_term + a.space.one()
    assert u * u.inverse() == u.space.one()


def test_non_unit_has_no_inverse():
    with pytest.raises(ValueError):
        (CP2.one() * 2).inverse()


def test_structured_space():
    M = StructuredSpace((CP2, CP2.reversed()))
    assert M.real_dim == 4
    assert M.pair([CP2.top_class() * 5, CP2.reversed().top_class() * 2]) == 3
    with pytest.raises(ValueError):
        StructuredSpace((CP1, CP2))


def test_space_validation():
    with pytest.raises(ValueError):
        ProductSpace(())
    with pytest.raises(ValueError):
        ProductSpace((0,))
    with pytest.raises(ValueError):
        ProductSpace((1,), 2)


def test_serialization():
    S = ProductSpace((2, 1), -1)
    assert S.to_json() == {"factors": [2, 1], "orientation": -1}
    assert ProductSpace.from_json(json.loads(json.dumps(S.to_json()))) == S
    a = S.element({(1, 1): 3, (0, 0): 1})
    assert CohomologyElement.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_parse_space():
    assert parse_space("CP:2") == CP2
    assert parse_space("CP:1xCP:1") == CP1xCP1
    assert parse_space("-CP:2") == CP2.reversed()
    with pytest.raises(ValueError):
        parse_space("RP:2")
