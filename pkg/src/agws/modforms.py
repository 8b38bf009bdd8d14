"""Level-one modular forms as exact q-expansions, and their divisor polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InsufficientPrecisionError, NotModularError, ParameterError
from .poly import RatPoly, reduce_poly_mod_p  # noqa: F401  (re-exported)
from .qexp import QExp, euler_product


# ---------------------------------------------------------------- Bernoulli

@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_1 = -1/2
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(math.comb(m + 1, j) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise ParameterError("Bernoulli index must be nonnegative")
    return _bernoulli_table(n)[n]


# ---------------------------------------------------------------- Eisenstein

def divisor_sigma(r: int, n_max: int) -> list[int]:
    """``sigma_r(n)`` for ``0 <= n <= n_max`` (entry 0 is 0), by sieve."""
    s = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dr = d ** r
        for m in range(d, n_max + 1, d):
            s[m] += dr
    return s


@lru_cache(maxsize=None)
def _eisenstein(weight: int, prec: int) -> QExp:
    factor = Fraction(-2 * weight) / bernoulli(weight)
    sig = divisor_sigma(weight - 1, max(prec - 1, 0))
    terms = {0: 1}
    for n in range(1, prec):
        terms[n] = factor * sig[n]
    return QExp(terms, 1, prec)


def eisenstein(weight: int, prec: int) -> QExp:
    """``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`` through ``q^(prec-1)``."""
    if weight < 2 or weight % 2:
        raise ParameterError(f"Eisenstein series need even weight >= 2, got {weight}")
    return _eisenstein(weight, prec)


def E2(prec: int) -> QExp:
    return eisenstein(2, prec)


def E4(prec: int) -> QExp:
    return eisenstein(4, prec)


def E6(prec: int) -> QExp:
    return eisenstein(6, prec)


@lru_cache(maxsize=None)
def delta(prec: int) -> QExp:
    """``(E4^3 - E6^2)/1728`` through ``q^(prec-1)``."""
    return (E4(prec) ** 3 - E6(prec) ** 2) / 1728


@lru_cache(maxsize=None)
def j_invariant(prec: int) -> QExp:
    """``E4^3 / Delta`` through ``q^(prec-1)`` (lead ``q^-1``)."""
    P = prec + 2
    return (E4(P) ** 3 / delta(P)).truncate(prec)


@lru_cache(maxsize=None)
def eta_power(e: int, prec: int) -> QExp:
    """``eta^e = q^(e/24) prod (1-q^n)^e`` with ``prec`` integer terms past the lead."""
    body = euler_product(prec) ** e if e >= 0 else euler_product(prec).inverse() ** (-e)
    return body.rescale(24).shift(Fraction(e, 24)).coarsen()


# ------------------------------------------------------------ E4/E6 basis

def basis_monomials(weight: int) -> list[tuple[int, int]]:
    """Exponent pairs ``(a, b)`` with ``4a + 6b = weight``, ``a`` descending."""
    if weight < 0 or weight % 2:
        return []
    return [(a, (weight - 4 * a) // 6) for a in range(weight // 4, -1, -1)
            if (weight - 4 * a) % 6 == 0]


def dimension(weight: int) -> int:
    return len(basis_monomials(weight))


def monomial_series(a: int, b: int, prec: int) -> QExp:
    return E4(prec) ** a * E6(prec) ** b


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact least-rows solve of an overdetermined system; None if inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if r < n:
        raise InsufficientPrecisionError("not enough coefficients to separate the basis")
    if any(row[-1] for row in aug[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][-1]
    return sol


def express_in_basis(f: QExp, weight: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``f`` on the monomials ``E4^a E6^b``; raises if ``f`` is not in M_weight."""
    mons = basis_monomials(weight)
    if not mons:
        raise ParameterError(f"no modular forms of weight {weight}")
    if f.lattice_den != 1:
        f = f.coarsen(1)
    if not f.is_zero() and f.lead < 0:
        raise NotModularError("series has a pole at infinity")
    N = f.prec
    if N < len(mons):
        raise InsufficientPrecisionError(
            f"need at least {len(mons)} coefficients, have {N}")
    series = [monomial_series(a, b, N) for a, b in mons]
    rows = [[s.coeff(n) for s in series] for n in range(N)]
    sol = _solve(rows, [f.coeff(n) for n in range(N)])
    if sol is None:
        raise NotModularError(f"series is not a weight-{weight} modular form to q^{N - 1}")
    return {m: c for m, c in zip(mons, sol) if c}


def serre_derivative(f: QExp, weight: int) -> QExp:
    """``theta f - (weight/12) E2 f``."""
    if f.lattice_den != 1:
        f = f.coarsen(1)
    return f.theta() - E2(max(f.prec, 1)) * f * Fraction(weight, 12)


# -------------------------------------------------------- divisor polynomials

_TILDE = {
    0: ("1", (0, 0), [1]),
    2: ("E4^2*E6", (2, 1), [0, 0, -1728, 1]),
    4: ("E4", (1, 0), [0, 1]),
    6: ("E6", (0, 1), [-1728, 1]),
    8: ("E4^2", (2, 0), [0, 0, 1]),
    10: ("E4*E6", (1, 1), [0, -1728, 1]),
}


def h_poly(weight: int) -> RatPoly:
    return RatPoly(_TILDE[weight % 12][2])


def weight_split(weight: int) -> tuple[int, int]:
    """``weight = 12 m + s`` with ``s`` in {0, 4, 6, 8, 10, 14}."""
    if weight < 4 or weight % 2:
        raise ParameterError(f"divisor polynomials need even weight >= 4, got {weight}")
    s = weight % 12
    if s == 2:
        s = 14
    return (weight - s) // 12, s


@dataclass(frozen=True)
class DivisorFactorization:
    weight: int
    m: int
    s: int
    tilde_E_id: str
    F_tilde: RatPoly
    F: RatPoly

    def to_dict(self) -> dict:
        return {
            "weight": self.weight, "m": self.m, "s": self.s,
            "tilde_E": self.tilde_E_id,
            "F_tilde": self.F_tilde.to_dict(), "F": self.F.to_dict(),
            "h": h_poly(self.weight).to_dict(),
        }


def reconstruct(fact: DivisorFactorization, prec: int) -> QExp:
    """``Delta^m * E~ * F~(j)`` through ``q^(prec-1)``."""
    m = fact.m
    a, b = _TILDE[fact.weight % 12][1]
    P = prec + 2 * m + 2
    j = j_invariant(P)
    val = QExp.zero(1, P)
    jp = QExp.one(1, P + m)
    for c in fact.F_tilde.coeffs:
        val = val + jp * c
        jp = jp * j
    out = delta(P) ** m * monomial_series(a, b, P) * val
    return out.truncate(prec)


def divisor_polynomial(f: QExp, weight: int) -> DivisorFactorization:
    """Factor ``f = Delta^m E~_weight F~(f, j)`` and return ``F = h_weight F~``."""
    m, s = weight_split(weight)
    label, (a, b), _ = _TILDE[weight % 12]
    if f.lattice_den != 1:
        f = f.coarsen(1)
    N = f.prec
    if N <= m:
        raise InsufficientPrecisionError(f"need f through q^{m}, have prec {N}")
    if not f.is_zero() and f.lead < 0:
        raise NotModularError("series has a pole at infinity")
    P = N + 2
    base = delta(P) ** m * monomial_series(a, b, P)
    g = f / base  # prec N - m, lead >= -m
    j = j_invariant(P)
    jpows = [QExp.one(1, P + m)]
    for _ in range(m):
        jpows.append(jpows[-1] * j)
    coeffs = [Fraction(0)] * (m + 1)
    r = g
    for d in range(m, -1, -1):
        c = r.coeff(-d)
        coeffs[d] = c
        if c:
            r = r - jpows[d] * c
    if not r.is_zero():
        raise NotModularError(
            f"series is not in M_{weight}: residual {r.lead_exponent} after peeling j-powers")
    Ft = RatPoly(coeffs)
    return DivisorFactorization(weight, m, s, label, Ft, h_poly(weight) * Ft)
