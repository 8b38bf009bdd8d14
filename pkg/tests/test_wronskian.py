import itertools
import random
from fractions import Fraction as Fr

import pytest

from agws.characters import character, lattice_den
from agws.errors import IndeterminatePivotError, ParameterError
from agws.modforms import E4, E6, eta_power
from agws.qexp import QExp
from agws.wronskian import (Vanishing, f_k, gen_wronskian, is_vanishing_k, ode_coefficients,
                            ode_residual, series_det, vanishing_t, wronskian_W,
                            wronskian_Wprime)


def _leibniz(orders, fs):
    """Naive permutation expansion, used as an oracle for the elimination."""
    n = len(fs)
    total = None
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i in range(n) for j in range(i) if perm[j] > perm[i])
        term = None
        for r, c in zip(orders, perm):
            x = fs[c].theta_power(r)
            term = x if term is None else term * x
        term = term * sign
        total = term if total is None else total + term
    return total


def _rand(rng, M=3, width=9):
    lead = rng.randint(-2, 4)
    c = {lead: Fr(rng.choice([1, -2, 3]), rng.randint(1, 3))}
    for e in range(lead + 1, lead + width):
        if rng.random() < 0.7:
            c[e] = Fr(rng.randint(-6, 6), rng.randint(1, 4))
    return QExp(c, M, lead + width)


def test_trivial_wronskians():
    f = QExp({0: 1, 1: 3, 2: -1}, 1, 5)
    assert gen_wronskian([0], [f]) == f
    W = gen_wronskian([0, 1], [QExp.one(1, 6), QExp({1: 1}, 1, 6)])
    assert W.agrees_with(QExp({1: 1}, 1, 6)) and W.lead == 1


def test_w2_is_eta_fourth():
    W = gen_wronskian([0, 1], [character(1, 2, 20), character(2, 2, 20)])
    W = W * (1 / W.lead_coeff)
    assert W.lead_exponent == Fr(1, 6)
    assert W.agrees_with(eta_power(4, 20))


@pytest.mark.parametrize("seed", range(12))
def test_elimination_matches_leibniz(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    fs = [_rand(rng) for _ in range(n)]
    orders = sorted(rng.sample(range(5), n))
    W = gen_wronskian(orders, fs)
    naive = _leibniz(orders, fs)
    assert W.agrees_with(naive)
    assert W.prec >= naive.prec - 9 * 3  # never wildly pessimistic


@pytest.mark.parametrize("seed", range(8))
def test_alternation_and_multilinearity(seed):
    rng = random.Random(100 + seed)
    fs = [_rand(rng) for _ in range(3)]
    orders = [0, 1, 3]
    W = gen_wronskian(orders, fs)
    assert (-gen_wronskian(orders, [fs[1], fs[0], fs[2]])).agrees_with(W)
    assert gen_wronskian(orders, [fs[0], fs[0], fs[2]]).is_zero()
    lam = Fr(rng.randint(-4, 4), 3)
    assert gen_wronskian(orders, [fs[0], fs[1] + fs[0] * lam, fs[2]]).agrees_with(W)
    g = _rand(rng)
    lhs = gen_wronskian(orders, [fs[0] + g, fs[1], fs[2]])
    rhs = W + gen_wronskian(orders, [g, fs[1], fs[2]])
    assert lhs.agrees_with(rhs)


def test_indeterminate_pivot():
    fs = [QExp({}, 1, 0), QExp({}, 1, 0)]
    with pytest.raises(IndeterminatePivotError):
        gen_wronskian([0, 1], fs)


def test_parameter_errors():
    f = QExp.one(1, 4)
    with pytest.raises(ParameterError):
        gen_wronskian([1, 0], [f, f])
    with pytest.raises(ParameterError):
        gen_wronskian([0], [f, f])


def test_series_det_integer_matrix():
    c, P = series_det([[([2], 1), ([3], 1)], [([1], 1), ([4], 1)]])
    assert c == [5] and P == 1


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_wronskian_W_is_eta_power(k):
    rep = wronskian_W(k, 25)
    assert rep.vanishing is Vanishing.NONZERO
    assert rep.series.lead_exponent == Fr(2 * k * (k - 1), 24)
    assert rep.exponents_past_lead >= 25
    assert rep.series.agrees_with(eta_power(2 * k * (k - 1), 25).rescale(lattice_den(k)))


def test_W3_lead():
    assert wronskian_W(3, 5).series.lead_exponent == Fr(1, 2)


def test_Wprime_13_vanishes_and_certifies():
    rep = wronskian_Wprime(13, 15, certify=False)
    assert rep.vanishing is Vanishing.ZERO_TO_PRECISION
    assert rep.norm_const is None
    assert wronskian_Wprime(13, 15, certify_prec=60).vanishing is Vanishing.ZERO_CERTIFIED


def test_report_dict():
    d = wronskian_W(2, 6).to_dict()
    assert d["wronskian"] == "W" and d["vanishing"] == "nonzero"
    assert QExp.from_dict(d["series"]).lead_exponent == Fr(1, 6)


def test_fk_examples():
    assert f_k(2, 12) == E4(12)
    assert f_k(3, 12) == E6(12)
    F13 = f_k(13, 8)
    assert F13.is_zero() and F13.prec >= 8


def test_fk_cache_truncates():
    big = f_k(4, 20)
    assert f_k(4, 10) == big.truncate(10)


def test_vanishing_classification():
    assert is_vanishing_k(13) and vanishing_t(13) == 2
    assert is_vanishing_k(37) and vanishing_t(37) == 3
    assert is_vanishing_k(73) and vanishing_t(73) == 4
    assert not is_vanishing_k(12)
    exceptional = {6 * t * t - 6 * t + 1 for t in range(2, 30)}
    assert [k for k in range(2, 4000) if is_vanishing_k(k)] == sorted(
        e for e in exceptional if e < 4000)
    with pytest.raises(ParameterError):
        is_vanishing_k(1)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_ode_annihilates_characters(k):
    for r in ode_residual(k, 15):
        assert r.is_zero()
        assert r.prec > 0


@pytest.mark.parametrize("k", [2, 3, 5])
def test_P0_is_constant_multiple_of_fk(k):
    P0 = ode_coefficients(k, 15).coeffs[0]
    F = f_k(k, 15)
    lam = P0.lead_coeff / F.lead_coeff
    assert lam != 0
    assert P0.agrees_with(F * lam)


def test_ode_rejects_exceptional_k():
    with pytest.raises(ParameterError):
        ode_coefficients(13, 5)


@pytest.mark.parametrize("seed", range(20))
def test_claimed_precision_is_honest(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(2, 4)
    full = [_rand(rng, width=30) for _ in range(n)]
    cut = [f.truncate(f.valuation() + rng.randint(4, 10)) for f in full]
    orders = sorted(rng.sample(range(5), n))
    W_full = gen_wronskian(orders, full)
    W_cut = gen_wronskian(orders, cut)
    assert W_full.prec > W_cut.prec
    assert W_cut.agrees_with(W_full)
