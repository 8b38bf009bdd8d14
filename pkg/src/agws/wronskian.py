"""Generalized Wronskians of q-series families and the quotient forms F_k.

Determinants are computed by fraction-free (Bareiss) elimination over
truncated integer power series.  Each column ``f`` is written as
``q^(L_f/M) * u_f(x)`` with ``x = q^(G/M)``; rows are scaled by ``M^order``
and columns by the lcm of their denominators, so every entry is an integer
series.  Pivots are chosen with the lowest valuation, and every exact
division by a previous pivot of valuation ``v`` costs ``v`` terms of
precision, which is tracked per entry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import character, lattice_den, leading_exponent
from .errors import FalsificationError, IndeterminatePivotError, ParameterError
from .qexp import QExp

_INF = 1 << 62


# ------------------------------------------------------- integer series ops
# An entry is (coeffs, prec): coeffs[t] multiplies x^t, known for t < prec.

def _val(a) -> int:
    c, P = a
    for t in range(min(len(c), P)):
        if c[t]:
            return t
    return P


def _smul(a, b):
    (ca, Pa), (cb, Pb) = a, b
    va, vb = _val(a), _val(b)
    P = min(Pa + vb, Pb + va)
    out = [0] * max(P, 0)
    if va >= Pa or vb >= Pb:
        return out, P
    nb = min(len(cb), P)
    for i in range(va, min(len(ca), P)):
        x = ca[i]
        if x:
            lim = min(nb, P - i)
            for j in range(vb, lim):
                y = cb[j]
                if y:
                    out[i + j] += x * y
    return out, P


def _ssub(a, b):
    (ca, Pa), (cb, Pb) = a, b
    P = min(Pa, Pb)
    out = [0] * max(P, 0)
    for t in range(min(len(ca), P)):
        out[t] = ca[t]
    for t in range(min(len(cb), P)):
        out[t] -= cb[t]
    return out, P


def _sdivexact(a, b):
    """Quotient of ``a`` by ``b`` when it is known to be an integer power series."""
    (ca, Pa), (cb, Pb) = a, b
    vb = _val(b)
    if vb >= Pb:
        raise IndeterminatePivotError("division by a series that is zero to precision")
    va = _val(a)
    P = min(Pa - vb, Pb - 2 * vb + va)
    out = [0] * max(P, 0)
    if va >= Pa:
        return out, P
    vc = va - vb
    if vc < 0:
        raise ArithmeticError("inexact series division in fraction-free elimination")
    b0 = cb[vb]
    bs = [(j, cb[vb + j]) for j in range(1, min(len(cb), Pb) - vb) if cb[vb + j]]
    for n in range(vc, P):
        s = ca[n + vb] if n + vb < len(ca) else 0
        for j, y in bs:
            if j > n - vc:
                break
            s -= y * out[n - j]
        q, r = divmod(s, b0)
        if r:
            raise ArithmeticError("inexact coefficient division in fraction-free elimination")
        out[n] = q
    return out, P


def series_det(matrix: list[list[tuple[list[int], int]]]) -> tuple[list[int], int]:
    """Determinant of a square matrix of truncated integer power series.

    Returns ``(coeffs, prec)``; when every remaining entry is zero to
    precision, the result is the zero series with the provable bound.
    """
    A = [row[:] for row in matrix]
    n = len(A)
    sign = 1
    prev = ([1], _INF)
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = _val(A[i][j])
                P = A[i][j][1]
                if v < P:
                    key = (v, -(P - v), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            s = n - k
            rows = sum(min(A[i][j][1] for j in range(k, n)) for i in range(k, n))
            cols = sum(min(A[i][j][1] for i in range(k, n)) for j in range(k, n))
            bound = max(rows, cols) - (s - 1) * _val(prev)
            return [], bound
        _, _, bi, bj = best
        if bi != k:
            A[k], A[bi] = A[bi], A[k]
            sign = -sign
        if bj != k:
            for row in A:
                row[k], row[bj] = row[bj], row[k]
            sign = -sign
        if k == n - 1:
            break
        p = A[k][k]
        for i in range(k + 1, n):
            Aik = A[i][k]
            for j in range(k + 1, n):
                num = _ssub(_smul(p, A[i][j]), _smul(Aik, A[k][j]))
                A[i][j] = _sdivexact(num, prev)
        prev = p
    c, P = A[n - 1][n - 1]
    return [sign * x for x in c[:P]], P


# ------------------------------------------------------ generalized Wronskian

def gen_wronskian(orders: Sequence[int], fs: Sequence[QExp]) -> QExp:
    """``det(theta^(orders[r]) fs[c])`` with exact precision bookkeeping."""
    orders = list(orders)
    if len(orders) != len(fs) or not fs:
        raise ParameterError("need equally many orders and series (at least one)")
    if any(b <= a for a, b in zip(orders, orders[1:])) or orders[0] < 0:
        raise ParameterError("orders must be strictly increasing and nonnegative")
    M = math.lcm(*(f.lattice_den for f in fs))
    fs = [f.rescale(M) for f in fs]
    leads = [f.valuation() for f in fs]
    G = M
    for f, L in zip(fs, leads):
        for e, _ in f.items():
            G = math.gcd(G, e - L)
    cols = []
    scale = 1
    for f, L in zip(fs, leads):
        D = 1
        for _, c in f.items():
            D = math.lcm(D, c.denominator)
        scale *= D
        nf = max((f.prec - L) // G, 0)
        base = [0] * nf
        expo = [0] * nf
        for e, c in f.items():
            t = (e - L) // G
            if t < nf:
                base[t] = c.numerator * (D // c.denominator)
                expo[t] = e
        cols.append((base, expo, nf))
    matrix = []
    for r in orders:
        row = []
        for base, expo, nf in cols:
            row.append(([x * expo[t] ** r if x else 0 for t, x in enumerate(base)], nf))
        matrix.append(row)
        scale *= M ** r
    det, P = series_det(matrix)
    start = sum(leads)
    if not det and P <= 0:
        raise IndeterminatePivotError(
            "precision exhausted before any pivot could be decided; raise prec")
    terms = {start + G * t: Fraction(c, scale) for t, c in enumerate(det) if c}
    return QExp(terms, M, start + G * P)


# ----------------------------------------------------------------- reports

class Vanishing(str, enum.Enum):
    NONZERO = "nonzero"
    ZERO_TO_PRECISION = "zero_to_precision"
    ZERO_CERTIFIED = "zero_certified"


@dataclass(frozen=True)
class WronskianReport:
    k: int
    prime: bool
    series: QExp
    norm_const: Fraction | None
    vanishing: Vanishing
    prec_certificate: int

    @property
    def base_exponent(self) -> Fraction:
        """Sum of the characters' leading exponents, the expected lead."""
        return sum((leading_exponent(i, self.k) for i in range(1, self.k + 1)), Fraction(0))

    @property
    def exponents_past_lead(self) -> Fraction:
        return Fraction(self.prec_certificate, self.series.lattice_den) - self.base_exponent

    def to_dict(self) -> dict:
        nc = self.norm_const
        return {
            "k": self.k,
            "wronskian": "W'" if self.prime else "W",
            "vanishing": self.vanishing.value,
            "norm_const": None if nc is None else [nc.numerator, nc.denominator],
            "prec_certificate": self.prec_certificate,
            "lattice_den": self.series.lattice_den,
            "exponents_past_lead": str(self.exponents_past_lead),
            "series": self.series.to_dict(),
        }


def default_prec(k: int) -> int:
    """Integer exponents past the lead used when no precision is requested."""
    return (2 * k) // 12 + 10


def _chars(k: int, prec: int) -> list[QExp]:
    return [character(i, k, prec) for i in range(1, k + 1)]


def _report(k: int, prime: bool, raw: QExp) -> WronskianReport:
    if raw.is_zero():
        return WronskianReport(k, prime, raw, None, Vanishing.ZERO_TO_PRECISION, raw.prec)
    nc = 1 / raw.lead_coeff
    return WronskianReport(k, prime, raw * nc, nc, Vanishing.NONZERO, raw.prec)


def wronskian_W(k: int, prec: int | None = None, assert_eta: bool = True) -> WronskianReport:
    """Normalized ``W_k``; optionally asserts it equals ``eta^(2k(k-1))``."""
    if k < 2:
        raise ParameterError("k must be >= 2")
    N = default_prec(k) if prec is None else prec
    rep = _report(k, False, gen_wronskian(range(k), _chars(k, N)))
    if rep.vanishing is not Vanishing.NONZERO:
        raise FalsificationError(f"W_{k} vanished to precision; this contradicts the eta identity")
    if assert_eta:
        from .modforms import eta_power

        e = 2 * k * (k - 1)
        expected = eta_power(e, N).rescale(lattice_den(k))
        if rep.series.lead != expected.lead or not rep.series.agrees_with(expected):
            raise FalsificationError(f"W_{k} differs from eta^{e}")
    return rep


def wronskian_Wprime(k: int, prec: int | None = None, certify: bool = True,
                     certify_prec: int = 200) -> WronskianReport:
    """Normalized ``W'_k`` (orders 1..k), zero when the characters are dependent."""
    if k < 2:
        raise ParameterError("k must be >= 2")
    N = default_prec(k) if prec is None else prec
    rep = _report(k, True, gen_wronskian(range(1, k + 1), _chars(k, N)))
    if certify and rep.vanishing is Vanishing.ZERO_TO_PRECISION:
        rep = certify_vanishing(rep, certify_prec)
    return rep


def certify_vanishing(rep: WronskianReport, prec: int = 200) -> WronskianReport:
    """Upgrade a zero-to-precision ``W'_k`` using the theta-function identities."""
    t = vanishing_t(rep.k)
    if rep.vanishing is not Vanishing.ZERO_TO_PRECISION or t is None:
        return rep
    from .identities import certify_character_relation

    if certify_character_relation(t, prec).passed:
        return WronskianReport(rep.k, rep.prime, rep.series, None,
                               Vanishing.ZERO_CERTIFIED, rep.prec_certificate)
    return rep


def vanishing_t(k: int) -> int | None:
    """The ``t >= 2`` with ``k = 6t^2 - 6t + 1``, or None."""
    n = 24 * k + 12  # equals (12t - 6)^2 exactly for exceptional k
    r = math.isqrt(n)
    if r * r != n or (r + 6) % 12:
        return None
    t = (r + 6) // 12
    return t if t >= 2 else None


def is_vanishing_k(k: int) -> bool:
    if k < 2:
        raise ParameterError("k must be >= 2")
    return vanishing_t(k) is not None


# ---------------------------------------------------------------------- F_k

_FK_CACHE: dict[int, QExp] = {}


def f_k(k: int, prec: int | None = None) -> QExp:
    """``F_k = W'_k / W_k`` on the integer lattice, known for ``q^0 .. q^(prec-1)``."""
    if k < 2:
        raise ParameterError("k must be >= 2")
    N = default_prec(k) if prec is None else prec
    hit = _FK_CACHE.get(k)
    if hit is not None and hit.prec >= N:
        return hit.truncate(N)
    chars = _chars(k, N)
    W = gen_wronskian(range(k), chars)
    Wp = gen_wronskian(range(1, k + 1), chars)
    if Wp.is_zero():
        F = QExp.zero(1, min(N, (Wp.prec - W.valuation()) // W.lattice_den))
    else:
        F = (Wp * (1 / Wp.lead_coeff)) / (W * (1 / W.lead_coeff))
        F = F.coarsen(1)
        if F.lead != 0 or F.lead_coeff != 1:
            raise FalsificationError(f"F_{k} does not start with 1 + O(q)")
    _FK_CACHE[k] = F
    return F


# --------------------------------------------------------------------- ODE

@dataclass(frozen=True)
class OdeSystem:
    """``theta^k y + sum_i P_i theta^i y = 0`` with ``coeffs[i] = P_i``."""

    k: int
    coeffs: tuple[QExp, ...]


def ode_coefficients(k: int, prec: int | None = None) -> OdeSystem:
    if k < 2:
        raise ParameterError("k must be >= 2")
    if is_vanishing_k(k):
        raise ParameterError(f"k={k} is exceptional; ODE reconstruction needs generic k")
    N = default_prec(k) if prec is None else prec
    chars = _chars(k, N)
    W = gen_wronskian(range(k), chars)
    Winv = W.inverse()
    coeffs = []
    for i in range(k):
        orders = [r for r in range(k + 1) if r != i]
        Pi = gen_wronskian(orders, chars) * Winv * (-1) ** (k - i)
        coeffs.append(Pi.coarsen(1))
    return OdeSystem(k, tuple(coeffs))


def apply_ode(system: OdeSystem, y: QExp) -> QExp:
    out = y.theta_power(system.k)
    for i, Pi in enumerate(system.coeffs):
        out = out + Pi * y.theta_power(i)
    return out


def ode_residual(k: int, prec: int | None = None) -> list[QExp]:
    """The ODE applied to each ``ch_{i,k}``; each result should be zero to precision."""
    N = default_prec(k) if prec is None else prec
    system = ode_coefficients(k, N)
    return [apply_ode(system, ch) for ch in _chars(k, N)]
