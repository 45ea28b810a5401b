import itertools
import json
import threading

import pytest

from chernnum.linalg import determinant, identity, matmul
from chernnum.partitions import Partition, enumerate_partitions
from chernnum.symfunc import (
    ChernMonomial,
    ChernPolynomial,
    RootExpansion,
    c_poly,
    elementary_monomial_coefficient,
    elementary_symmetric,
    monomial_symmetric,
    newton_power_sum,
    s_poly,
    substitute_roots,
    transition_matrix,
)


def P(*parts):
    return Partition(tuple(parts))


def c(*pairs):
    return ChernMonomial(tuple(pairs))


def poly(*terms):
    return ChernPolynomial({m: k for m, k in terms})


def roots(nvars, *terms):
    return RootExpansion(nvars, {e: k for e, k in terms})


def test_monomial_symmetric_examples():
    assert monomial_symmetric(P(1), 2) == roots(2, ((1, 0), 1), ((0, 1), 1))
    expected = {}
    for perm in itertools.permutations(range(3)):
        e = [0, 0, 0]
        e[perm[0]] = 2
        e[perm[1]] = 1
        expected[tuple(e)] = 1
    assert len(expected) == 6
    assert monomial_symmetric(P(2, 1), 3) == RootExpansion(3, expected)
    assert monomial_symmetric(P(1, 1), 2) == roots(2, ((1, 1), 1))


def test_monomial_symmetric_too_few_variables():
    with pytest.raises(ValueError):
        monomial_symmetric(P(1, 1, 1), 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_monomial_symmetric_is_symmetric(n):
    for I in enumerate_partitions(n):
        assert monomial_symmetric(I, n).is_symmetric()


def test_s_poly_examples():
    assert s_poly(P(1)) == poly((c((1, 1)), 1))
    assert s_poly(P(2)) == poly((c((1, 2)), 1), (c((2, 1)), -2))
    assert s_poly(P(2, 1)) == poly((c((1, 1), (2, 1)), 1), (c((3, 1)), -3))
    assert s_poly(P(1, 1)) == poly((c((2, 1)), 1))


def test_s_poly_hand_oracle_two_variables():
    # (t1 + t2)^2 - 2 t1 t2 = t1^2 + t2^2
    assert substitute_roots(s_poly(P(2)), 2) == monomial_symmetric(P(2), 2)


def test_c_poly_examples():
    assert c_poly(P(3, 1)) == poly((c((1, 1), (3, 1)), 1))
    assert c_poly(P(1, 1)) == poly((c((1, 2)), 1))
    assert c_poly(P(2)) == poly((c((2, 1)), 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_s_poly_matches_root_expansion(n):
    for I in enumerate_partitions(n):
        assert substitute_roots(s_poly(I), n) == monomial_symmetric(I, n), I


@pytest.mark.parametrize("n", range(1, 5))
def test_s_poly_is_stable_in_more_variables(n):
    for I in enumerate_partitions(n):
        for N in (n + 1, n + 2):
            assert substitute_roots(s_poly(I), N) == monomial_symmetric(I, N)


@pytest.mark.parametrize("n", range(1, 9))
def test_newton_power_sums(n):
    assert s_poly(P(n)) == newton_power_sum(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_elementary_coefficients_by_expansion(n):
    parts = enumerate_partitions(n)
    for J in parts:
        expansion = RootExpansion.constant(n)
        for j in J:
            expansion = expansion * elementary_symmetric(j, n)
        for lam in parts:
            exps = tuple(lam.parts) + (0,) * (n - len(lam))
            assert elementary_monomial_coefficient(J, lam) == expansion.terms.get(exps, 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_homogeneity(n):
    for I in enumerate_partitions(n):
        for Q in (s_poly(I), c_poly(I)):
            assert Q.degree == n
            assert {m.degree for m in Q.terms} == {n}


def test_transition_small():
    assert transition_matrix(1, "s", "c") == [[1]]
    assert transition_matrix(1, "c", "s") == [[1]]
    # order [2], [1,1]: s_2 = -2 c_2 + c_1^2, s_11 = c_2
    assert transition_matrix(2, "s", "c") == [[-2, 1], [1, 0]]
    assert transition_matrix(2, "c", "s") == [[0, 1], [1, 2]]


@pytest.mark.parametrize("n", range(1, 9))
def test_transition_matrices_are_inverse_unimodular(n):
    A = transition_matrix(n, "s", "c")
    B = transition_matrix(n, "c", "s")
    size = len(enumerate_partitions(n))
    assert matmul(A, B) == identity(size)
    assert determinant(A) in (1, -1)
    assert determinant(B) in (1, -1)


@pytest.mark.parametrize("n", range(1, 6))
def test_transition_rows_are_polynomial_identities(n):
    parts = enumerate_partitions(n)
    A = transition_matrix(n, "s", "c")
    B = transition_matrix(n, "c", "s")
    for i, I in enumerate(parts):
        lhs = ChernPolynomial({}, n)
        for j, J in enumerate(parts):
            lhs = lhs + c_poly(J) * A[i][j]
        assert lhs == s_poly(I)
        back = ChernPolynomial({}, n)
        for j, J in enumerate(parts):
            back = back + s_poly(J) * B[i][j]
        assert back == c_poly(I)


def test_degree_cap():
    with pytest.raises(ValueError):
        s_poly(P(17))
    with pytest.raises(ValueError):
        transition_matrix(17, "s", "c")


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        ChernPolynomial({c((1, 1)): 1, c((2, 1)): 1})


def test_json_format():
    data = s_poly(P(2)).to_json()
    assert data == {
        "degree": 2,
        "terms": [{"monomial": {"1": 2}, "coeff": 1}, {"monomial": {"2": 1}, "coeff": -2}],
    }
    assert ChernPolynomial.from_json(json.loads(json.dumps(data))) == s_poly(P(2))


def test_concurrent_s_poly_is_deterministic():
    results = []

    def work():
        results.append([s_poly(I).to_json() for I in enumerate_partitions(7)])

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
