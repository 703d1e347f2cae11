from fractions import Fraction
from itertools import product

import pytest

from oracles import hurwitz_brute

from vertexforge.exact import ExactScalar, parse_q_expression as Q
from vertexforge.hurwitz import (
    WindingPolynomial, burnside_generating_function, cut_join_residual, hurwitz_number, phi_q, phi_series,
)
from vertexforge.partitions import Partition, partitions, z


def test_phi_q_examples():
    for n in range(-2, 3):
        assert phi_q((1,), (1,), n) == 1
    assert phi_q((2,), (1, 1), 1) == Q("(q-q^(-1))/4")


def test_phi_q_initial_values():
    for d in range(7):
        for a, b in product(partitions(d), repeat=2):
            assert phi_q(a, b, 0) == (Fraction(1, z(a)) if a == b else 0)


def test_phi_q_symmetric():
    for d in range(1, 5):
        for a, b in product(partitions(d), repeat=2):
            assert phi_q(a, b, 2) == phi_q(b, a, 2)


def test_phi_q_size_mismatch():
    with pytest.raises(ValueError):
        phi_q((2,), (1,), 1)


def test_sum_formula():
    cache = {}

    def phi(a, b, n):
        if (a, b, n) not in cache:
            cache[a, b, n] = phi_q(a, b, n)
        return cache[a, b, n]

    for d in range(6):
        ps = partitions(d)
        for a, b in product(ps, repeat=2):
            for n1, n2 in product(range(-2, 3), repeat=2):
                total = ExactScalar.zero()
                for nu in ps:
                    total = total + phi(a, nu, n1) * phi(nu, b, n2) * z(nu)
                assert total == phi(a, b, n1 + n2)


def test_phi_series():
    s = phi_series((2,), (1, 1), 4)
    assert s.coefficients == (0, Fraction(1, 2), 0, Fraction(1, 12), 0)
    assert s.order == 4 and s[9] == 0
    assert phi_series((2,), (2,), 2)[0] == Fraction(1, 2)
    with pytest.raises(ValueError):
        phi_series((1,), (1,), -1)


def test_series_initial_values():
    for d in range(7):
        for a, b in product(partitions(d), repeat=2):
            assert phi_series(a, b, 0)[0] == (Fraction(1, z(a)) if a == b else 0)


def test_hurwitz_numbers():
    assert hurwitz_number(2, (1,), (1,)) == 1
    assert hurwitz_number(2, (2,), (1, 1)) == Fraction(1, 2)
    with pytest.raises(ValueError, match="Euler characteristic too large"):
        hurwitz_number(4, (1,), (1,))
    with pytest.raises(ValueError):
        hurwitz_number(1, (1,), (1,))


def test_hurwitz_numbers_match_permutation_count():
    for d in range(1, 5):
        for a, b in product(partitions(d), repeat=2):
            for chi in (2, 0, -2):
                r = -chi + len(a) + len(b)
                if r < 0 or r > 4:
                    continue
                assert hurwitz_number(chi, a, b) == hurwitz_brute(chi, tuple(a), tuple(b)), (chi, a, b)


def test_cut_and_join_operators():
    p11 = WindingPolynomial.monomial((1, 1), ())
    assert p11.join("+") == WindingPolynomial.monomial((2,), (), 2)
    p2 = WindingPolynomial.monomial((2,), ())
    assert p2.cut("+") == WindingPolynomial.monomial((1, 1), (), 2)
    assert WindingPolynomial.monomial((), (2,)).cut("-") == WindingPolynomial.monomial((), (1, 1), 2)
    with pytest.raises(ValueError):
        p2.cut("*")


def test_winding_polynomial_arithmetic():
    a = WindingPolynomial.monomial((1,), (1,), 3, lambda_power=2)
    assert a.d_lambda() == WindingPolynomial.monomial((1,), (1,), 6, lambda_power=1)
    assert (a - a).is_zero()
    capped = WindingPolynomial.monomial((1,), (), d_cap=1) * WindingPolynomial.monomial((1,), (), d_cap=1)
    assert capped.is_zero()


def test_cut_join_residual_vanishes():
    for side in "+-":
        assert cut_join_residual(3, 5, side).is_zero()


def test_generating_function_matches_series():
    phi = burnside_generating_function(2, 3)
    key = (1, Partition((2,)), Partition((1, 1)))
    assert phi.terms[key] == Fraction(1, 2)
