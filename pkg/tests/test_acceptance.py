"""Acceptance criteria at desk scale; each prints one PASS/FAIL line.

The lines are collected and printed in the pytest terminal summary.
"""

import time

import pytest

from agws import checks

RESULTS: list[str] = []

CRITERIA = [
    (1, "eta-power identity, k=2..8, 60 exponents", checks.check_eta_power),
    (2, "F_2..F_5 in the E4/E6 basis, 30 exponents", checks.check_fk_basis),
    (3, "W'_13 vanishes and is certified; k=2..14 classified", checks.check_vanishing),
    (4, "t=3 character relation, prec 120", checks.check_exceptional_t3),
    (5, "shifted partition identity, t=2 n<=500, t=3 n<=300", checks.check_partidentity),
    (6, "k=18 cubic and its reduction mod 37", checks.check_k18_showcase),
    (7, "F(F_k) mod 2k+1 equals both supersingular loci", checks.check_sslcong),
    (8, "Hasse and Eisenstein routes agree, 5<=p<=60", checks.check_deligne_routes),
    (9, "F(F_k) = x S_p(x) mod p for (10,17) and (16,29)", checks.check_remark_pairs),
    (10, "F_k, E_{p-1} == 1 mod p and von Staudt, p<=43", checks.check_fk_congruence),
    (11, "real roots of F~(F_k) in [0,1728], k=2..20 minus 13", checks.check_conjecture),
    (12, "oracle and property suites", checks.check_oracles),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("num, label, fn", CRITERIA, ids=[f"AC{c[0]}" for c in CRITERIA])
def test_criterion(num, label, fn):
    t0 = time.perf_counter()
    v = fn()
    wall = time.perf_counter() - t0
    RESULTS.append(f"{'PASS' if v.passed else 'FAIL'}  AC{num:<2} {label}  "
                   f"[{wall:.1f}s, cert={v.certificate}]")
    assert v.passed, v.details
