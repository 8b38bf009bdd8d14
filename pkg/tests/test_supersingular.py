import pytest

from agws.errors import ParameterError
from agws.poly import Fp2, FpPoly, is_prime, smallest_nonresidue
from agws.supersingular import (congruence_search, curve_for_j, deligne_ss_locus,
                                expected_degree, hasse_invariant, hasse_ss_locus,
                                is_irreducible_quadratic, j_of_curve, legendre_symbol,
                                verify_remark_pairs, verify_sslcong, von_staudt_check)

PRIMES = [p for p in range(5, 61) if is_prime(p)]


def test_legendre():
    assert legendre_symbol(6, 37) == -1
    assert legendre_symbol(0, 37) == 0
    assert legendre_symbol(1, 37) == 1
    for p in (7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        assert all(legendre_symbol(a, p) == (1 if a in squares else -1) for a in range(1, p))


def test_fp2_field_axioms():
    p = 13
    d = smallest_nonresidue(p)
    elems = [Fp2(p, u, v, d) for u in range(0, p, 3) for v in range(0, p, 4)]
    for a in elems:
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert a ** (p * p - 1) == 1
        assert (a ** p) == a.frobenius()


def test_curve_has_requested_j():
    p, d = 19, smallest_nonresidue(19)
    for u in range(p):
        for v in (0, 5):
            j = Fp2(p, u, v, d)
            a, b = curve_for_j(j)
            assert j_of_curve(a, b) == j


def test_hasse_against_point_count():
    # over F_p, supersingular iff #E(F_p) = p + 1 iff trace is 0 mod p
    p = 23
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            pts = sum(1 + legendre_symbol(x ** 3 + a * x + b, p) for x in range(p))
            t = p - pts  # #E = p + 1 - t with pts affine
            hz = hasse_invariant(Fp2(p, a), Fp2(p, b)).is_zero()
            assert hz == (t % p == 0)


def test_small_loci():
    assert hasse_ss_locus(5).S_p == FpPoly(5, [0, 1])
    assert hasse_ss_locus(11).S_p == FpPoly(11, [0, -1, 1])
    assert hasse_ss_locus(37).S_p == FpPoly(37, [29, 1]) * FpPoly(37, [31, 31, 1])
    assert deligne_ss_locus(11) == FpPoly(11, [0, -1, 1])
    assert deligne_ss_locus(5) == FpPoly(5, [0, 1])


@pytest.mark.parametrize("p", PRIMES)
def test_locus_structure(p):
    loc = hasse_ss_locus(p)
    assert len(loc.j_list) == loc.S_p.degree == expected_degree(p)
    has0 = any(j.is_zero() for j in loc.j_list)
    has1728 = any(j == 1728 for j in loc.j_list)
    assert has0 == bool(loc.eps_omega) and has1728 == bool(loc.eps_i)
    assert all(is_irreducible_quadratic(g) for g in loc.frak_M)
    prod = (FpPoly(p, [0, 1]) if has0 else FpPoly(p, [1])) * \
        (FpPoly(p, [-1728, 1]) if has1728 else FpPoly(p, [1]))
    prod = prod * FpPoly.from_roots(p, loc.frak_S)
    for g in loc.frak_M:
        prod = prod * g
    assert prod == loc.S_p


@pytest.mark.parametrize("p", PRIMES)
def test_routes_agree(p):
    assert hasse_ss_locus(p).S_p == deligne_ss_locus(p)


def test_parameter_errors():
    for bad in (4, 3, 2, 49, 1):
        with pytest.raises(ParameterError):
            hasse_ss_locus(bad)


@pytest.mark.parametrize("k", [2, 3, 5, 6, 8, 9])
def test_sslcong(k):
    v = verify_sslcong(k)
    assert v.passed, v.details
    assert v.details["fk_congruent_to_1"]


def test_sslcong_k18():
    v = verify_sslcong(18)
    assert v.passed and v.details["F_mod_p"] == [11, 5, 23, 1]


def test_sslcong_preconditions():
    with pytest.raises(ParameterError):
        verify_sslcong(4)  # 9 is composite
    with pytest.raises(ParameterError):
        verify_sslcong(13)  # 27 composite, and k exceptional


def test_remark_pairs_and_negative_control():
    vs = verify_remark_pairs([(10, 17), (16, 29), (2, 17)])
    assert [v.passed for v in vs] == [True, True, False]


def test_von_staudt():
    assert all(von_staudt_check(p) for p in PRIMES if p <= 43)


def test_congruence_search_reports_known_pairs():
    hits = congruence_search(10, range(5, 30))
    pairs = {(h["k"], h["p"]) for h in hits if h["congruent_to_1"]}
    assert (2, 5) in pairs and (3, 7) in pairs and (10, 11) in pairs
    assert all(("p_integral" in h) for h in hits)
