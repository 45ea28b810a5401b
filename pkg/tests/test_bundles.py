import json

import pytest
from hypothesis import given, settings, strategies as st

from chernnum.bundles import (
    VirtualBundle,
    char_number,
    char_number_direct,
    conjugate,
    difference,
    direct_sum,
    external,
    line,
    tangent_cp,
    trivial,
)
from chernnum.cohomology import ProductSpace
from chernnum.partitions import Partition, enumerate_partitions
from chernnum.symfunc import c_poly, s_poly


def P(*parts):
    return Partition(tuple(parts))


def cp(k, o=1):
    return ProductSpace.cp(k, o)


def test_tangent_examples():
    X = cp(1)
    T1 = tangent_cp(X, 0, 1)
    assert T1.total_chern == X.element({(0,): 1, (1,): 2})
    assert T1.rank == 1
    assert char_number(s_poly(P(1)), T1) == 2  # Euler characteristic of S^2
    X = cp(2)
    assert tangent_cp(X).total_chern == X.element({(0,): 1, (1,): 3, (2,): 3})
    assert char_number(s_poly(P(2)), tangent_cp(X)) == 3


@pytest.mark.parametrize("n", range(1, 9))
def test_tangent_power_sum_is_n_plus_one(n):
    assert char_number(s_poly(P(n)), tangent_cp(cp(n))) == n + 1


def test_tangent_factor_mismatch():
    with pytest.raises(ValueError):
        tangent_cp(cp(2), 0, k=3)
    with pytest.raises(ValueError):
        tangent_cp(cp(2), 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_line_minus_one(n):
    assert char_number(s_poly(P(n)), line(cp(n), -1)) == (-1) ** n


def test_line_examples():
    X = cp(3)
    assert line(X, 0).total_chern == X.one()
    assert char_number(s_poly(P(1)), line(cp(1), 1)) == 1


def test_sum_examples():
    X = cp(2)
    T = tangent_cp(X)
    E = direct_sum(T, trivial(X, 1))
    assert E.total_chern == T.total_chern and E.rank == 3
    assert (line(X, 1) + line(X, -1)).total_chern == X.element({(0,): 1, (2,): -1})


def test_difference_examples():
    X = cp(2)
    T = tangent_cp(X)
    assert difference(T, trivial(X, 0)) == T
    nf = T + trivial(X, 1) - line(X, -1)
    assert nf.total_chern == X.element({(0,): 1, (1,): 4, (2,): 7})
    assert nf.rank == 2


def test_base_mismatch():
    with pytest.raises(ValueError):
        tangent_cp(cp(2)) + tangent_cp(cp(1))
    with pytest.raises(ValueError):
        tangent_cp(cp(2)) - tangent_cp(cp(2, -1))


def test_conjugate_examples():
    X = cp(2)
    assert conjugate(tangent_cp(X)).total_chern == X.element({(0,): 1, (1,): -3, (2,): 3})
    assert conjugate(line(X, 5)) == line(X, -5)


def test_char_number_examples():
    X = cp(2)
    nf = tangent_cp(X) + trivial(X, 1) - line(X, -1)
    assert char_number(s_poly(P(1, 1)), nf) == 7
    for n in range(1, 9):
        Y = cp(n)
        nf = tangent_cp(Y) + trivial(Y, 1) - line(Y, -1)
        assert char_number(s_poly(P(n)), nf) == (n + 1) - (-1) ** n
    for I in enumerate_partitions(3):
        assert char_number(s_poly(I), trivial(cp(3), 4)) == 0


def test_wrong_degree_pairs_to_zero():
    assert char_number(s_poly(P(1)), tangent_cp(cp(2))) == 0


# --- random bundles built from constructors ------------------------------


@st.composite
def bundles(draw, base):
    """Sums and differences of tangent, line and trivial bundles over ``base``."""
    pieces = []
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["T", "O", "C"]))
        j = draw(st.integers(0, len(base.factors) - 1))
        if kind == "T":
            b = tangent_cp(base, j)
        elif kind == "O":
            b = line(base, draw(st.integers(-3, 3)), j)
        else:
            b = trivial(base, draw(st.integers(0, 2)))
        if draw(st.booleans()):
            b = conjugate(b)
        pieces.append((draw(st.booleans()), b))
    E = trivial(base, 0)
    for negate, b in pieces:
        E = E - b if negate else E + b
    return E


spaces = st.builds(
    ProductSpace,
    st.lists(st.integers(1, 3), min_size=1, max_size=2).map(tuple),
    st.sampled_from([1, -1]),
)


@given(st.data())
def test_whitney(data):
    base = data.draw(spaces)
    E, F = data.draw(bundles(base)), data.draw(bundles(base))
    S = E + F
    assert S.total_chern == E.total_chern * F.total_chern
    assert S.rank == E.rank + F.rank


@given(st.data())
def test_group_law(data):
    base = data.draw(spaces)
    E, F = data.draw(bundles(base)), data.draw(bundles(base))
    assert direct_sum(difference(E, F), F).total_chern == E.total_chern
    assert (E - F).rank == E.rank - F.rank


@given(st.data())
def test_conjugate_is_an_involution_commuting_with_sums(data):
    base = data.draw(spaces)
    E, F = data.draw(bundles(base)), data.draw(bundles(base))
    assert conjugate(conjugate(E)) == E
    assert conjugate(E + F) == conjugate(E) + conjugate(F)
    assert conjugate(E - F) == conjugate(E) - conjugate(F)


@given(st.data())
def test_conjugate_commutes_with_external(data):
    S, T = data.draw(spaces), data.draw(spaces)
    E, F = data.draw(bundles(S)), data.draw(bundles(T))
    assert conjugate(external(E, F)) == external(conjugate(E), conjugate(F))


@settings(max_examples=40)
@given(st.data())
def test_char_number_two_routes(data):
    base = data.draw(spaces)
    E = data.draw(bundles(base))
    n = base.complex_dim
    for I in enumerate_partitions(n):
        for Q in (s_poly(I), c_poly(I)):
            assert char_number(Q, E) == char_number_direct(Q, E)


def test_external_examples():
    S, T = cp(2), cp(1)
    E = tangent_cp(S)
    ET = external(E, trivial(T, 2))
    assert ET.base.factors == (2, 1) and ET.rank == 4
    assert ET.total_chern == ET.base.element({(0, 0): 1, (1, 0): 3, (2, 0): 3})
    L1, L2 = line(cp(1), 2), line(cp(1), -3)
    assert char_number(s_poly(P(1, 1)), external(L1, L2)) == (
        char_number(s_poly(P(1)), L1) * char_number(s_poly(P(1)), L2)
    )


def test_serialization():
    X = ProductSpace((2, 1), -1)
    E = tangent_cp(X, 0) - line(X, 2, 1)
    data = json.loads(json.dumps(E.to_json()))
    assert set(data) == {"base", "rank", "total_chern"}
    assert VirtualBundle.from_json(data) == E
