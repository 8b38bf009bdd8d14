"""Supersingular j-invariants mod p by two independent routes, and the
congruence verifiers relating them to the divisor polynomials of F_k.

Route 1 (Hasse): for every j in F_{p^2} take a curve with that j-invariant
and test whether the coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2)
vanishes.  Route 2 (Deligne): reduce the divisor polynomial of E_{p-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonIntegralError, ParameterError
from .modforms import divisor_polynomial, eisenstein
from .poly import (Fp2, FpPoly, fp2_poly_from_roots, is_prime, reduce_poly_mod_p,
                   reduce_rat_mod_p, smallest_nonresidue)
from .qexp import QExp
from .verdict import Verdict
from .wronskian import default_prec, f_k, is_vanishing_k


def _check_p(p: int) -> None:
    if not isinstance(p, int) or p < 5 or not is_prime(p):
        raise ParameterError(f"p must be a prime >= 5, got {p!r}")


def eps_omega(p: int) -> int:
    return 0 if p % 3 == 1 else 1


def eps_i(p: int) -> int:
    return 0 if p % 4 == 1 else 1


def legendre_symbol(a: int, p: int) -> int:
    """Euler's criterion; ``p`` an odd prime."""
    if p < 3 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def curve_for_j(j: Fp2) -> tuple[Fp2, Fp2]:
    """Coefficients ``(a, b)`` of ``y^2 = x^3 + a x + b`` with j-invariant ``j``."""
    p = j.p
    if j.is_zero():
        return Fp2(p, 0, 0, j.d), Fp2(p, 1, 0, j.d)
    if j == 1728:
        return Fp2(p, 1, 0, j.d), Fp2(p, 0, 0, j.d)
    den = (Fp2(p, 1728, 0, j.d) - j).inverse()
    return j * 3 * den, j * 2 * den


def j_of_curve(a: Fp2, b: Fp2) -> Fp2:
    a3 = a * a * a * 4
    return a3 * 1728 / (a3 + b * b * 27)


def hasse_invariant(a: Fp2, b: Fp2) -> Fp2:
    """Coefficient of ``x^(p-1)`` in ``(x^3 + a x + b)^((p-1)/2)``.

    With ``n = (p-1)/2`` the contributing terms choose ``x^3`` i times,
    ``a x`` exactly ``2n - 3i`` times and ``b`` exactly ``2i - n`` times.
    """
    p = a.p
    n = (p - 1) // 2
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i % p
    total = Fp2(p, 0, 0, a.d)
    for i in range((n + 1) // 2, 2 * n // 3 + 1):
        ja, lb = 2 * n - 3 * i, 2 * i - n
        if ja < 0 or lb < 0:
            continue
        mult = fact[n] * pow(fact[i] * fact[ja] * fact[lb], -1, p) % p
        total = total + (a ** ja) * (b ** lb) * mult
    return total


@dataclass(frozen=True)
class SSLocus:
    p: int
    j_list: tuple[Fp2, ...]
    S_p: FpPoly
    S_tilde: FpPoly
    eps_omega: int
    eps_i: int
    frak_S: tuple[int, ...]
    frak_M: tuple[FpPoly, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "j_list": [repr(j) for j in self.j_list],
            "S_p": list(self.S_p.coeffs),
            "S_tilde": list(self.S_tilde.coeffs),
            "eps_omega": self.eps_omega,
            "eps_i": self.eps_i,
            "frak_S": list(self.frak_S),
            "frak_M": [list(g.coeffs) for g in self.frak_M],
            "nonresidue": smallest_nonresidue(self.p),
        }


def _to_fp(coeffs: list[Fp2], p: int) -> FpPoly:
    if any(not c.in_base_field() for c in coeffs):
        raise ArithmeticError("supersingular polynomial has coefficients outside F_p")
    return FpPoly(p, [c.u for c in coeffs])


def hasse_ss_locus(p: int) -> SSLocus:
    """Enumerate F_{p^2} and keep the j whose curves have vanishing Hasse invariant."""
    _check_p(p)
    d = smallest_nonresidue(p)
    found = []
    for v in range(p):
        for u in range(p):
            j = Fp2(p, u, v, d)
            a, b = curve_for_j(j)
            if hasse_invariant(a, b).is_zero():
                found.append(j)
    found.sort(key=Fp2.key)
    S = _to_fp(fp2_poly_from_roots(p, found), p)
    rest = [j for j in found if not (j.is_zero() or j == 1728)]
    St = _to_fp(fp2_poly_from_roots(p, rest), p)
    frak_S = tuple(sorted(j.u for j in rest if j.in_base_field()))
    quads = {}
    for j in rest:
        if not j.in_base_field():
            jc = j.frobenius()
            g = FpPoly(p, [(j * jc).u, (-(j + jc)).u, 1])
            quads[g.coeffs] = g
    return SSLocus(p, tuple(found), S, St, eps_omega(p), eps_i(p), frak_S,
                   tuple(quads[k] for k in sorted(quads)))


def deligne_ss_locus(p: int, prec: int | None = None) -> FpPoly:
    """``F(E_{p-1}, x) mod p``."""
    _check_p(p)
    w = p - 1
    N = default_prec(w // 2) if prec is None else prec
    fact = divisor_polynomial(eisenstein(w, N), w)
    return reduce_poly_mod_p(fact.F, p)


def is_irreducible_quadratic(g: FpPoly) -> bool:
    if g.degree != 2:
        return False
    c, b, a = g.coeffs
    return legendre_symbol(b * b - 4 * a * c, g.p) == -1


def expected_degree(p: int) -> int:
    return p // 12 + eps_omega(p) + eps_i(p)


def reduce_series_mod_p(f: QExp, p: int, n: int) -> list[int]:
    """Coefficients of ``q^0 .. q^(n-1)`` mod p; raises on non-p-integral ones."""
    return [reduce_rat_mod_p(f.coeff(i), p) for i in range(n)]


def congruent_to_one(f: QExp, p: int, n: int) -> tuple[bool, bool]:
    """``(p_integral, f == 1 mod p)`` through ``q^(n-1)``."""
    try:
        red = reduce_series_mod_p(f, p, n)
    except NonIntegralError:
        return False, False
    return True, red[0] == 1 and not any(red[1:])


def verify_sslcong(k: int, prec: int | None = None) -> Verdict:
    """``F(F_k, x) mod p`` against both supersingular routes, ``p = 2k + 1``."""
    p = 2 * k + 1
    _check_p(p)
    if is_vanishing_k(k):
        raise ParameterError(f"k={k} is of the form 6t^2-6t+1")
    N = default_prec(k) if prec is None else prec
    F = f_k(k, N)
    p_int, cong = congruent_to_one(F, p, N)
    details = {"fk_p_integral": p_int, "fk_congruent_to_1": cong}
    try:
        Fx = reduce_poly_mod_p(divisor_polynomial(F, 2 * k).F, p)
    except NonIntegralError as exc:
        return Verdict("sslcong", False, {"k": k, "p": p}, N,
                       {**details, "falsification": str(exc)})
    hasse = hasse_ss_locus(p).S_p
    deligne = deligne_ss_locus(p, N)
    details.update({
        "F_mod_p": list(Fx.coeffs), "hasse": list(hasse.coeffs),
        "deligne": list(deligne.coeffs),
    })
    ok = p_int and cong and Fx == hasse == deligne
    return Verdict("sslcong", ok, {"k": k, "p": p}, N, details)


def verify_remark_pairs(pairs, prec: int | None = None) -> list[Verdict]:
    """``F(F_k, x) == x * S_p(x) mod p`` for each ``(k, p)``."""
    out = []
    for k, p in pairs:
        _check_p(p)
        N = default_prec(k) if prec is None else prec
        params = {"k": k, "p": p}
        try:
            Fx = reduce_poly_mod_p(divisor_polynomial(f_k(k, N), 2 * k).F, p)
        except NonIntegralError as exc:
            out.append(Verdict("remark-pair", False, params, N, {"falsification": str(exc)}))
            continue
        target = FpPoly(p, [0, 1]) * hasse_ss_locus(p).S_p
        out.append(Verdict("remark-pair", Fx == target, params, N,
                           {"F_mod_p": list(Fx.coeffs), "x_S_p": list(target.coeffs)}))
    return out


def congruence_search(k_max: int, p_set, prec: int | None = None) -> list[dict]:
    """Scan ``2 <= k <= k_max`` for ``F_k == 1 mod p`` with ``(p - 1) | 2k``.

    Exploratory only: every candidate pair is reported with its
    p-integrality status; nothing is concluded.
    """
    hits = []
    primes = sorted(p for p in p_set if p >= 5 and is_prime(p))
    for k in range(2, k_max + 1):
        if is_vanishing_k(k):
            continue
        cands = [p for p in primes if (2 * k) % (p - 1) == 0]
        if not cands:
            continue
        N = default_prec(k) if prec is None else prec
        F = f_k(k, N)
        for p in cands:
            p_int, cong = congruent_to_one(F, p, N)
            hits.append({"k": k, "p": p, "a": 2 * k // (p - 1), "p_integral": p_int,
                         "congruent_to_1": cong, "p_equals_2k_plus_1": p == 2 * k + 1,
                         "prec": N})
    return hits


def von_staudt_check(p: int) -> bool:
    """``2(p-1)/B_{p-1}`` has numerator divisible by p."""
    from .modforms import bernoulli

    return (Fraction(2 * (p - 1)) / bernoulli(p - 1)).numerator % p == 0
