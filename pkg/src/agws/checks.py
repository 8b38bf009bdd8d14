"""Desk-scale verification suite: one function per acceptance criterion.

Each function returns a :class:`Verdict`.  ``verify --all`` in the CLI and
``tests/test_acceptance.py`` both drive this registry.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .characters import partition_count_table
from .identities import certify_character_relation, verify_partition_identity
from .modforms import (E4, E6, delta, divisor_polynomial, eisenstein, eta_power,
                       express_in_basis)
from .poly import FpPoly, RatPoly, is_prime, reduce_poly_mod_p
from .qexp import QExp, restricted_product
from .realroots import conjecture_check, count_real_roots_in
from .supersingular import (congruent_to_one, deligne_ss_locus, hasse_ss_locus,
                            verify_remark_pairs, verify_sslcong, von_staudt_check)
from .verdict import Verdict
from .wronskian import (Vanishing, f_k, gen_wronskian, is_vanishing_k, wronskian_W,
                        wronskian_Wprime)

K18_X2 = -Fraction(2 ** 13 * 3 ** 4 * 89 * 1915051410991641479,
                   17 * 43 * 83 * 103 * 113 * 163 * 523 * 643 * 919 * 1423)
SSLCONG_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
REMARK_PAIRS = ((10, 17), (16, 29))
REMARK_PAIRS_SLOW = ((17, 31), (22, 41), (23, 43), (28, 53))


def check_eta_power(k_max: int = 8, exponents: int = 60) -> Verdict:
    failed = []
    for k in range(2, k_max + 1):
        rep = wronskian_W(k, exponents + 1, assert_eta=False)
        eta = eta_power(2 * k * (k - 1), exponents + 1)
        if rep.series.lead_exponent != eta.lead_exponent or not rep.series.agrees_with(eta):
            failed.append(k)
        elif rep.exponents_past_lead < exponents:
            failed.append(k)
    return Verdict("eta-power", not failed, {"k": f"2..{k_max}"}, exponents, {"failed_k": failed})


def check_fk_basis(exponents: int = 30) -> Verdict:
    expected = {2: E4(exponents), 3: E6(exponents), 4: E4(exponents) ** 2,
                5: E4(exponents) * E6(exponents)}
    basis = {2: {(1, 0): 1}, 3: {(0, 1): 1}, 4: {(2, 0): 1}, 5: {(1, 1): 1}}
    bad = []
    for k, e in expected.items():
        F = f_k(k, exponents)
        if F != e or express_in_basis(F, 2 * k) != basis[k]:
            bad.append(k)
    return Verdict("fk-basis", not bad, {"k": "2..5"}, exponents, {"failed_k": bad})


def check_vanishing(exponents: int = 60, relation_prec: int = 200, k_max: int = 14) -> Verdict:
    rep = wronskian_Wprime(13, exponents, certify=False)
    zero_ok = rep.vanishing is Vanishing.ZERO_TO_PRECISION and rep.exponents_past_lead >= exponents
    rel = certify_character_relation(2, relation_prec)
    certified = wronskian_Wprime(13, exponents, certify_prec=relation_prec).vanishing
    mismatches = []
    for k in range(2, k_max + 1):
        v = rep if k == 13 else wronskian_Wprime(k, 4, certify=False)
        if (v.vanishing is not Vanishing.NONZERO) != is_vanishing_k(k):
            mismatches.append(k)
    ok = zero_ok and rel.passed and certified is Vanishing.ZERO_CERTIFIED and not mismatches
    return Verdict("vanishing", ok, {"k": 13, "t": 2}, exponents,
                   {"W'_13": rep.vanishing.value, "past_lead": str(rep.exponents_past_lead),
                    "relation": rel.details, "certified": certified.value,
                    "classification_mismatches": mismatches})


def check_exceptional_t3(prec: int = 120) -> Verdict:
    v = certify_character_relation(3, prec)
    return Verdict("exceptional-t3", v.passed, {"t": 3, "k": 37}, prec, v.details)


def check_partidentity(n2: int = 500, n3: int = 300) -> Verdict:
    a, b = verify_partition_identity(2, n2), verify_partition_identity(3, n3)
    return Verdict("partidentity", a.passed and b.passed, {"t": "2,3"}, min(n2, n3),
                   {"t2": a.to_dict()["verdict"], "t3": b.to_dict()["verdict"],
                    "n_max": [n2, n3]})


def check_k18_showcase() -> Verdict:
    fact = divisor_polynomial(f_k(18), 36)
    red = reduce_poly_mod_p(fact.F, 37)
    target = FpPoly(37, [29, 1]) * FpPoly(37, [31, 31, 1])
    ok = fact.F_tilde[2] == K18_X2 and fact.F_tilde.degree == 3 and red == target
    return Verdict("k18-showcase", ok, {"k": 18, "p": 37}, f_k(18).prec,
                   {"x2_coeff": str(fact.F_tilde[2]), "mod37": list(red.coeffs)})


def check_sslcong(primes=SSLCONG_PRIMES) -> Verdict:
    bad = [p for p in primes if not verify_sslcong((p - 1) // 2).passed]
    return Verdict("sslcong", not bad, {"p": ",".join(map(str, primes))}, None,
                   {"failed_p": bad})


def check_deligne_routes(p_max: int = 60) -> Verdict:
    primes = [p for p in range(5, p_max + 1) if is_prime(p)]
    bad = [p for p in primes if hasse_ss_locus(p).S_p != deligne_ss_locus(p)]
    return Verdict("deligne-routes", not bad, {"p": f"5..{p_max}"}, None, {"failed_p": bad})


def check_remark_pairs(slow: bool = False) -> Verdict:
    pairs = REMARK_PAIRS + (REMARK_PAIRS_SLOW if slow else ())
    vs = verify_remark_pairs(pairs)
    bad = [v.params for v in vs if not v.passed]
    return Verdict("remark-pairs", not bad, {"pairs": [list(p) for p in pairs]}, None,
                   {"failed": bad})


def check_fk_congruence(p_max: int = 43, coeffs: int = 50) -> Verdict:
    primes = [p for p in range(5, p_max + 1) if is_prime(p)]
    bad = {}
    for p in primes:
        k = (p - 1) // 2
        res = {}
        if not is_vanishing_k(k):
            res["F_k"] = congruent_to_one(f_k(k, coeffs), p, coeffs)
        res["E_p-1"] = congruent_to_one(eisenstein(p - 1, coeffs), p, coeffs)
        res["von_staudt"] = von_staudt_check(p)
        if not all(all(x) if isinstance(x, tuple) else x for x in res.values()):
            bad[p] = res
    return Verdict("fk-congruence", not bad, {"p": f"5..{p_max}"}, coeffs, {"failed": bad})


def check_conjecture(k_max: int = 20) -> Verdict:
    bad = [k for k in range(2, k_max + 1)
           if not is_vanishing_k(k) and not conjecture_check(k).passed]
    return Verdict("conjecture", not bad, {"k": f"2..{k_max}"}, None, {"failed_k": bad})


# ------------------------------------------------------------ oracle runs

def _random_series(rng: random.Random, M: int, prec: int, invertible: bool = False) -> QExp:
    terms = {}
    lead = rng.randint(-M, M)
    prec = max(prec, lead + 1)
    for e in range(lead, prec):
        if rng.random() < 0.6:
            terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    if invertible:
        terms[lead] = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4))
    return QExp(terms, M, prec)


def ring_law_failures(trials: int, seed: int = 0) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        M = rng.choice([1, 2, 3, 6])
        a, b, c = (_random_series(rng, M, rng.randint(M, 4 * M)) for _ in range(3))
        bad += not (a + b).agrees_with(b + a)
        bad += not (a * b).agrees_with(b * a)
        bad += not ((a * b) * c).agrees_with(a * (b * c))
        bad += not (a * (b + c)).agrees_with(a * b + a * c)
        bad += not (a * b).theta().agrees_with(a.theta() * b + a * b.theta())
        u = _random_series(rng, M, rng.randint(M, 4 * M), invertible=True)
        one = u * u.inverse()
        bad += not (one.lead == 0 and one.agrees_with(QExp.one(M, one.prec)))
    return bad


def partition_oracle_failures(k_max: int = 20, n_max: int = 200) -> int:
    bad = 0
    for k in range(2, k_max + 1):
        for i in range(1, k + 1):
            series = restricted_product(2 * k + 1, i, -1, n_max + 1)
            table = partition_count_table(2 * k + 1, i, n_max)
            bad += series != QExp.from_coeffs(table, 0, 1, n_max + 1)
    return bad


def wronskian_law_failures(trials: int, seed: int = 1) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        n = rng.randint(2, 4)
        fs = [_random_series(rng, 2, 16, invertible=True) for _ in range(n)]
        orders = sorted(rng.sample(range(6), n))
        W = gen_wronskian(orders, fs)
        i, j = rng.sample(range(n), 2)
        sw = list(fs)
        sw[i], sw[j] = sw[j], sw[i]
        bad += not (-gen_wronskian(orders, sw)).agrees_with(W)
        rep = list(fs)
        rep[j] = rep[i]
        bad += not gen_wronskian(orders, rep).is_zero()
        lam = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        col = list(fs)
        col[j] = col[j] + col[i] * lam
        bad += not gen_wronskian(orders, col).agrees_with(W)
    return bad


def random_squarefree_with_known_roots(rng: random.Random):
    """Product of distinct rational linear factors and positive-definite quadratics."""
    roots = set()
    while len(roots) < rng.randint(0, 5):
        roots.add(Fraction(rng.randint(-40, 40), rng.randint(1, 6)))
    p = RatPoly.from_roots(sorted(roots))
    quads = set()
    for _ in range(rng.randint(0 if roots else 1, 3)):
        b, c = rng.randint(-6, 6), rng.randint(1, 30)
        if b * b < 4 * c:
            quads.add((b, c))
    for b, c in quads:
        p = p * RatPoly([c, b, 1])
    if p.degree <= 0:
        p = RatPoly([-1, 1])
        roots = {Fraction(1)}
    if p.gcd(p.derivative()).degree:
        return None
    return p, sorted(roots)


def sturm_oracle_failures(trials: int, seed: int = 2) -> int:
    rng = random.Random(seed)
    bad = done = 0
    while done < trials:
        got = random_squarefree_with_known_roots(rng)
        if got is None:
            continue
        p, roots = got
        lo = Fraction(rng.randint(-50, 10), rng.randint(1, 4))
        hi = lo + Fraction(rng.randint(1, 60), rng.randint(1, 3))
        if rng.random() < 0.2 and roots:
            lo = rng.choice(roots)  # exercise the endpoint branch
            hi = max(hi, lo + 1)
        expected = sum(1 for r in roots if lo <= r <= hi)
        bad += count_real_roots_in(p, lo, hi) != expected
        done += 1
    return bad


def _taylor_shift(c: list, a) -> list:
    """Coefficients of ``p(x + a)``."""
    c = list(c)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _sign_changes(c) -> int:
    s = [x > 0 for x in c if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _descartes_unit(c: list) -> int:
    """Roots of ``c`` in the open interval (0, 1), by Descartes bisection."""
    n = len(c) - 1
    if n <= 0:
        return 0
    # roots in (0,1) <-> positive roots of (1+y)^n p(1/(1+y))
    v = _sign_changes(_taylor_shift(c[::-1], 1))
    if v <= 1:
        return v
    half = Fraction(1, 2)
    left = [x * half ** i for i, x in enumerate(c)]  # p(y/2)
    right = _taylor_shift(left, 1)  # p((y+1)/2)
    mid = 1 if right[0] == 0 else 0
    return _descartes_unit(left) + mid + _descartes_unit(right)


def bisection_count(p: RatPoly, lo, hi) -> int:
    """Closed-interval root count of squarefree ``p`` without Sturm chains."""
    lo, hi = Fraction(lo), Fraction(hi)
    c = _taylor_shift(list(p.coeffs), lo)
    c = [x * (hi - lo) ** i for i, x in enumerate(c)]
    ends = (c[0] == 0) + (sum(c) == 0)
    return ends + _descartes_unit(c)


def sturm_bisection_failures(trials: int, seed: int = 3) -> int:
    rng = random.Random(seed)
    bad = done = 0
    while done < trials:
        p = RatPoly([rng.randint(-20, 20) for _ in range(rng.randint(2, 9))])
        if p.degree < 1 or p.gcd(p.derivative()).degree:
            continue
        lo = Fraction(rng.randint(-30, 5), rng.randint(1, 3))
        hi = lo + rng.randint(1, 40)
        bad += count_real_roots_in(p, lo, hi) != bisection_count(p, lo, hi)
        done += 1
    return bad


def check_oracles(trials: int = 200, sturm_trials: int = 500) -> Verdict:
    res = {
        "ring_laws": ring_law_failures(trials),
        "partition_dp_vs_series": partition_oracle_failures(),
        "wronskian_laws": wronskian_law_failures(trials // 4),
        "sturm_vs_constructed_roots": sturm_oracle_failures(sturm_trials),
        "sturm_vs_bisection": sturm_bisection_failures(sturm_trials),
    }
    return Verdict("oracles", not any(res.values()), {"trials": trials}, None, res)


def check_delta_eta() -> Verdict:
    return Verdict("delta-eta", eta_power(24, 40) == delta(41).truncate(41), {}, 40)


DESK_SCALE = (
    ("eta-power", check_eta_power),
    ("fk-basis", check_fk_basis),
    ("vanishing", check_vanishing),
    ("exceptional-t3", check_exceptional_t3),
    ("partidentity", check_partidentity),
    ("k18-showcase", check_k18_showcase),
    ("sslcong", check_sslcong),
    ("deligne-routes", check_deligne_routes),
    ("remark-pairs", check_remark_pairs),
    ("fk-congruence", check_fk_congruence),
    ("conjecture", check_conjecture),
    ("oracles", check_oracles),
)
