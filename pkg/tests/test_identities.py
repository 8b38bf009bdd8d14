from fractions import Fraction as Fr

import pytest

from agws.characters import character
from agws.errors import ParameterError
from agws.identities import (A_t_exponent_multiset, A_t_series, RelationParams,
                             certify_character_relation, character_combination,
                             jacobi_triple_product_check, k13_identity_check, quotient_relation_check,
                             theta_sum_check, pentagonal_check, pentagonal_exponent_multiset,
                             pentagonal_series, triple_product, verify_partition_identity)
from agws.qexp import QExp


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_params(t):
    par = RelationParams(t)
    assert par.check_invariants()
    assert len(par.relation()) == 2 * t - 1


def test_t2_relation_indices():
    assert RelationParams(2).relation() == [(1, 12), (-1, 6), (-1, 3)]


def test_A_t_examples():
    for t in (2, 3):
        A = A_t_series(t, 30)
        assert A == pentagonal_series(30)
        assert A.coeff(0) == 1


@pytest.mark.parametrize("t, prec", [(2, 150), (3, 150), (4, 150)])
def test_theta_sum_is_euler_product(t, prec):
    assert theta_sum_check(t, prec).passed


@pytest.mark.parametrize("t", [2, 3, 4])
def test_exponent_multisets_biject(t):
    assert A_t_exponent_multiset(t, 200) == pentagonal_exponent_multiset(200)


def test_quotient_relation_t2():
    assert quotient_relation_check(2, 200).passed


def test_quotient_relation_t3():
    assert quotient_relation_check(3, 120).passed


def test_k13_relation_direct():
    N = 60
    total = (character(12, 13, N).coarsen(1) - character(6, 13, N + 1).coarsen(1)
             - character(3, 13, N + 2).coarsen(1))
    assert total.first_difference(QExp.one(1, N)) is None
    assert k13_identity_check(80).passed


def test_negative_control():
    v = quotient_relation_check(2, 40, flip=1)
    assert not v.passed
    assert Fr(v.details["first_difference"]) <= 2
    assert not character_combination(2, 40, flip=0).agrees_with(QExp.one(1, 40))


def test_certify_relation():
    v = certify_character_relation(2, 100)
    assert v.passed and v.details == {"quotient_relation": True, "theta_sum": True,
                                    "sum_is_one": True}


def test_partition_identity():
    assert verify_partition_identity(2, 500).passed
    assert verify_partition_identity(3, 300).passed
    assert verify_partition_identity(4, 150).passed


def test_partition_identity_errors():
    with pytest.raises(ParameterError):
        verify_partition_identity(1, 10)
    with pytest.raises(ParameterError):
        verify_partition_identity(2, 0)


def test_pentagonal():
    assert pentagonal_check(100).passed


@pytest.mark.parametrize("s, alpha, beta", [(-1, Fr(1, 2), Fr(3, 2)), (1, 0, 1),
                                            (-1, Fr(1, 3), Fr(5, 6)), (1, Fr(-1, 4), 2)])
def test_triple_product(s, alpha, beta):
    assert jacobi_triple_product_check(s, alpha, beta, 40).passed


def test_triple_product_requires_convergence():
    with pytest.raises(ParameterError):
        triple_product(1, 2, 1, 10)
