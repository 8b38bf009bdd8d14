from fractions import Fraction as Fr

import pytest

from agws.errors import InsufficientPrecisionError, NonIntegralError, NotModularError, ParameterError
from agws.modforms import (E2, E4, E6, basis_monomials, bernoulli, delta, dimension,
                           divisor_polynomial, divisor_sigma, eisenstein, eta_power,
                           express_in_basis, h_poly, j_invariant, reconstruct,
                           serre_derivative)
from agws.poly import FpPoly, RatPoly, reduce_poly_mod_p
from agws.qexp import QExp
from agws.wronskian import f_k


def _c(f, n):
    return [f.coeff(i) for i in range(n)]


def test_bernoulli_values():
    assert bernoulli(1) == Fr(-1, 2)
    assert bernoulli(2) == Fr(1, 6)
    assert bernoulli(4) == Fr(-1, 30)
    assert bernoulli(10) == Fr(5, 66)
    assert bernoulli(12) == Fr(-691, 2730)
    assert all(bernoulli(n) == 0 for n in range(3, 40, 2))


def test_bernoulli_against_power_sums():
    # Faulhaber: sum_{i<n} i^m = (1/(m+1)) sum_j C(m+1, j) B_j n^(m+1-j)
    from math import comb
    for m in range(1, 12):
        for n in (5, 9):
            rhs = sum(comb(m + 1, j) * bernoulli(j) * n ** (m + 1 - j) for j in range(m + 1))
            assert rhs / (m + 1) == sum(i ** m for i in range(n))


def test_divisor_sigma():
    assert divisor_sigma(1, 6) == [0, 1, 3, 4, 7, 6, 12]
    assert divisor_sigma(0, 6)[6] == 4


def test_eisenstein_values():
    assert _c(E4(3), 3) == [1, 240, 2160]
    assert _c(E6(3), 3) == [1, -504, -16632]
    assert _c(eisenstein(10, 2), 2) == [1, -264]
    assert _c(E2(3), 3) == [1, -24, -72]
    for bad in (0, 3, -4):
        with pytest.raises(ParameterError):
            eisenstein(bad, 5)


def test_delta_and_j():
    D = delta(6)
    assert _c(D, 6) == [0, 1, -24, 252, -1472, 4830]
    j = j_invariant(4)
    assert j.lead == -1
    assert [j.coeff(n) for n in range(-1, 3)] == [1, 744, 196884, 21493760]


def test_eta_power_24_is_delta():
    # eta powers count precision past their lead exponent
    assert eta_power(24, 30) == delta(31)
    e4 = eta_power(4, 10)
    assert e4.lead_exponent == Fr(1, 6)
    assert eta_power(-1, 5).lead_exponent == Fr(-1, 24)


def test_basis_and_dimension():
    assert basis_monomials(12) == [(3, 0), (0, 2)]
    assert [dimension(w) for w in (0, 2, 4, 12, 14, 24, 36)] == [1, 0, 1, 2, 1, 3, 4]


@pytest.mark.parametrize("k, expected", [(2, {(1, 0): 1}), (3, {(0, 1): 1}),
                                         (4, {(2, 0): 1}), (5, {(1, 1): 1})])
def test_fk_basis(k, expected):
    assert express_in_basis(f_k(k, 20), 2 * k) == expected


def test_delta_rearrangement():
    N = 20
    f = E4(N) ** 3 - delta(N) * 1728
    assert express_in_basis(f, 12) == {(0, 2): 1}


def test_express_in_basis_errors():
    with pytest.raises(NotModularError):
        express_in_basis(QExp({0: 1, 1: 1}, 1, 10), 4)
    with pytest.raises(InsufficientPrecisionError):
        express_in_basis(E4(2) ** 6, 24)
    with pytest.raises(ParameterError):
        express_in_basis(E4(5), 2)


def test_serre_derivatives():
    N = 25
    assert serre_derivative(E4(N), 4) == E6(N) * Fr(-1, 3)
    assert serre_derivative(E6(N), 6) == E4(N) ** 2 * Fr(-1, 2)
    assert serre_derivative(QExp.one(1, N), 0).is_zero()
    assert express_in_basis(serre_derivative(f_k(4, 20), 8), 10) == {(1, 1): Fr(-2, 3)}


def test_ramanujan_theta_E4():
    N = 25
    assert E4(N).theta() == (E2(N) * E4(N) - E6(N)) * Fr(1, 3)


def test_divisor_polynomial_small_weights():
    f = divisor_polynomial(E4(10), 4)
    assert f.m == 0 and f.F_tilde == RatPoly([1]) and f.F == RatPoly([0, 1])
    d = divisor_polynomial(delta(10), 12)
    assert d.m == 1 and d.F_tilde == RatPoly([1]) and d.F == RatPoly([1])
    e10 = divisor_polynomial(eisenstein(10, 10), 10)
    assert e10.F == RatPoly([0, -1728, 1])


def test_divisor_polynomial_weight_24():
    N = 10
    f = E4(N) ** 6 + delta(N) * E4(N) ** 3 * 7 - delta(N) ** 2 * 5
    fact = divisor_polynomial(f, 24)
    # f = Delta^2 (j^2 + 7 j - 5)
    assert fact.F_tilde == RatPoly([-5, 7, 1])
    assert reconstruct(fact, N) == f


def test_divisor_polynomial_k18():
    fact = divisor_polynomial(f_k(18), 36)
    x2 = -Fr(2 ** 13 * 3 ** 4 * 89 * 1915051410991641479,
             17 * 43 * 83 * 103 * 113 * 163 * 523 * 643 * 919 * 1423)
    assert fact.F_tilde.degree == 3 and fact.F_tilde.lc == 1
    assert fact.F_tilde[2] == x2
    assert reduce_poly_mod_p(fact.F, 37) == FpPoly(37, [11, 5, 23, 1])
    assert FpPoly(37, [29, 1]) * FpPoly(37, [31, 31, 1]) == FpPoly(37, [11, 5, 23, 1])
    assert reconstruct(fact, f_k(18).prec) == f_k(18)


def test_divisor_polynomial_rejects_non_modular():
    with pytest.raises(NotModularError):
        divisor_polynomial(E4(10) + QExp({3: 1}, 1, 10), 4)
    with pytest.raises(ParameterError):
        divisor_polynomial(E4(10), 2)


def test_h_table():
    assert h_poly(4) == RatPoly([0, 1])
    assert h_poly(14) == RatPoly([0, 0, -1728, 1])
    assert h_poly(24) == RatPoly([1])


def test_reduce_mod_p_examples():
    assert reduce_poly_mod_p(RatPoly([0, Fr(1, 2)]), 5) == FpPoly(5, [0, 3])
    with pytest.raises(NonIntegralError):
        reduce_poly_mod_p(RatPoly([0, Fr(1, 5)]), 5)
