"""Truncated q-series with exact rational coefficients on a lattice q^(1/M).

A :class:`QExp` stores a finite set of nonzero terms ``c * q^(e/M)`` together
with a precision bound ``prec``: every coefficient of ``q^(e/M)`` with
``e < prec`` is known exactly, nothing is claimed at or beyond ``prec``.
The zero series carries only ``(M, prec)``, so "zero" always means "zero to
the stated precision".

Convention for public constructors in this package: their ``prec`` argument
counts *integer* exponents (``q^0 .. q^(prec-1)`` relative to the natural
start of the series), whereas ``QExp.prec`` is the absolute lattice-scaled
bound.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import LatticeError, NonInvertibleError, ParameterError, PrecisionError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class QExp:
    """Truncated Puiseux series ``sum c_e q^(e/M) + O(q^(prec/M))``.

    Instances are immutable values; every operation returns a new series.
    """

    __slots__ = ("lattice_den", "prec", "_terms")

    def __init__(self, terms: Mapping[int, object], lattice_den: int, prec: int):
        if lattice_den < 1:
            raise ParameterError("lattice denominator must be positive")
        self.lattice_den = int(lattice_den)
        self.prec = int(prec)
        clean = {}
        for e, c in terms.items():
            c = _frac(c)
            if c and e < self.prec:
                clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))

    # ----------------------------------------------------------- constructors
    @classmethod
    def zero(cls, lattice_den: int = 1, prec: int = 0) -> "QExp":
        return cls({}, lattice_den, prec)

    @classmethod
    def one(cls, lattice_den: int = 1, prec: int = 1) -> "QExp":
        return cls({0: 1}, lattice_den, prec)

    @classmethod
    def monomial(cls, exponent, coeff=1, prec=None, lattice_den=None) -> "QExp":
        """``coeff * q^exponent``; ``prec`` is in q-units and defaults to exponent + 1."""
        exponent = _frac(exponent)
        M = lattice_den or exponent.denominator
        if M % exponent.denominator:
            raise LatticeError(f"exponent {exponent} is not on lattice 1/{M}")
        e = exponent.numerator * (M // exponent.denominator)
        if prec is None:
            P = e + M
        else:
            P = math.ceil(_frac(prec) * M)
        return cls({e: coeff}, M, P)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, lead: int = 0, lattice_den: int = 1,
                    prec: int | None = None) -> "QExp":
        """Dense constructor: ``coeffs[t]`` multiplies ``q^((lead + t)/M)``."""
        coeffs = list(coeffs)
        if prec is None:
            prec = lead + len(coeffs)
        return cls({lead + t: c for t, c in enumerate(coeffs)}, lattice_den, prec)

    # ------------------------------------------------------------- accessors
    @property
    def lead(self) -> int | None:
        """Lowest exponent numerator with nonzero coefficient (None for zero)."""
        for e in self._terms:
            return e
        return None

    @property
    def lead_exponent(self) -> Fraction | None:
        L = self.lead
        return None if L is None else Fraction(L, self.lattice_den)

    @property
    def lead_coeff(self) -> Fraction | None:
        L = self.lead
        return None if L is None else self._terms[L]

    @property
    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list from the lead up to ``prec - 1``."""
        L = self.lead
        if L is None:
            return []
        return [self._terms.get(e, Fraction(0)) for e in range(L, self.prec)]

    @property
    def prec_exponent(self) -> Fraction:
        return Fraction(self.prec, self.lattice_den)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        """Lattice lower bound on the true valuation (``prec`` for zero)."""
        L = self.lead
        return self.prec if L is None else L

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Pairs ``(exponent numerator, coefficient)`` in increasing order."""
        return iter(self._terms.items())

    def terms(self) -> list[tuple[Fraction, Fraction]]:
        M = self.lattice_den
        return [(Fraction(e, M), c) for e, c in self._terms.items()]

    def coeff(self, exponent) -> Fraction:
        """Coefficient of ``q^exponent``; raises if beyond the precision."""
        exponent = _frac(exponent)
        scaled = exponent * self.lattice_den
        if scaled >= self.prec:
            raise PrecisionError(
                f"coefficient of q^{exponent} is beyond precision {self.prec_exponent}")
        if scaled.denominator != 1:
            return Fraction(0)
        return self._terms.get(scaled.numerator, Fraction(0))

    def offset_coeff(self, n: int) -> Fraction:
        """Coefficient of ``q^(lead_exponent + n)`` for integer ``n``."""
        L = self.lead
        if L is None:
            raise NonInvertibleError("zero series has no lead")
        return self.coeff(Fraction(L, self.lattice_den) + n)

    def integer_coeffs(self, n: int) -> list[Fraction]:
        """Coefficients of ``q^0 .. q^(n-1)``; series must be on an integer lattice."""
        return [self.coeff(i) for i in range(n)]

    # --------------------------------------------------------------- lattice
    def rescale(self, new_den: int) -> "QExp":
        """Same series viewed on the finer lattice ``1/new_den``."""
        if new_den % self.lattice_den:
            raise LatticeError(f"{self.lattice_den} does not divide {new_den}")
        f = new_den // self.lattice_den
        if f == 1:
            return self
        return QExp({e * f: c for e, c in self._terms.items()}, new_den, self.prec * f)

    def coarsen(self, new_den: int | None = None) -> "QExp":
        """View the series on a coarser lattice (the coarsest one by default).

        The precision is rounded down, so no unknown exponent is claimed.
        """
        M = self.lattice_den
        if new_den is None:
            g = M
            for e in self._terms:
                g = math.gcd(g, e)
            new_den = M // g if g else M
        if M % new_den:
            raise LatticeError(f"{new_den} does not divide {M}")
        f = M // new_den
        if any(e % f for e in self._terms):
            raise LatticeError(f"series has exponents off lattice 1/{new_den}")
        return QExp({e // f: c for e, c in self._terms.items()}, new_den, self.prec // f)

    def truncate(self, prec: int) -> "QExp":
        """Lower the absolute lattice precision to ``prec``."""
        if prec > self.prec:
            raise ParameterError("truncate cannot raise precision")
        return QExp(self._terms, self.lattice_den, prec)

    def truncate_exponent(self, bound) -> "QExp":
        """Keep exponents below ``bound`` (in q-units)."""
        P = math.ceil(_frac(bound) * self.lattice_den)
        return self.truncate(min(P, self.prec))

    # ------------------------------------------------------------ arithmetic
    def __neg__(self) -> "QExp":
        return QExp({e: -c for e, c in self._terms.items()}, self.lattice_den, self.prec)

    def __add__(self, other) -> "QExp":
        if not isinstance(other, QExp):
            other = _frac(other)
            t = dict(self._terms)
            if self.prec > 0:
                t[0] = t.get(0, 0) + other
            return QExp(t, self.lattice_den, self.prec)
        a, b = _unify(self, other)
        t = dict(a._terms)
        for e, c in b._terms.items():
            t[e] = t.get(e, 0) + c
        return QExp(t, a.lattice_den, min(a.prec, b.prec))

    __radd__ = __add__

    def __sub__(self, other) -> "QExp":
        return self + (-other)

    def __rsub__(self, other) -> "QExp":
        return (-self) + other

    def __mul__(self, other) -> "QExp":
        if not isinstance(other, QExp):
            other = _frac(other)
            return QExp({e: c * other for e, c in self._terms.items()},
                        self.lattice_den, self.prec)
        return _mul(*_unify(self, other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QExp":
        if not isinstance(other, QExp):
            other = _frac(other)
            if not other:
                raise ZeroDivisionError("division of a series by zero")
            return self * (1 / other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QExp":
        return self.inverse() * _frac(other)

    def __pow__(self, n: int) -> "QExp":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            # x^0: exact constant one, but precision is bounded by the input's
            # relative precision.
            rel = self.prec - self.valuation()
            return QExp({0: 1}, self.lattice_den, max(rel, 0))
        return result

    def inverse(self) -> "QExp":
        """Multiplicative inverse; lead exponent negates."""
        return _invert(self)

    def theta(self) -> "QExp":
        """``q d/dq``: each term ``c q^e`` becomes ``e c q^e``."""
        M = self.lattice_den
        return QExp({e: Fraction(e, M) * c for e, c in self._terms.items()}, M, self.prec)

    def theta_power(self, n: int) -> "QExp":
        M = self.lattice_den
        return QExp({e: Fraction(e, M) ** n * c for e, c in self._terms.items()}, M, self.prec)

    def shift(self, exponent) -> "QExp":
        """Multiply by ``q^exponent`` (exact monomial, precision shifts too)."""
        exponent = _frac(exponent)
        M = math.lcm(self.lattice_den, exponent.denominator)
        s = self.rescale(M)
        d = (exponent * M).numerator
        return QExp({e + d: c for e, c in s._terms.items()}, M, s.prec + d)

    def map_coeffs(self, fn) -> "QExp":
        return QExp({e: fn(c) for e, c in self._terms.items()}, self.lattice_den, self.prec)

    # ----------------------------------------------------------- comparisons
    def __eq__(self, other) -> bool:
        if not isinstance(other, QExp):
            return NotImplemented
        a, b = _unify(self, other)
        return a.prec == b.prec and a._terms == b._terms

    __hash__ = None

    def first_difference(self, other: "QExp") -> Fraction | None:
        """Lowest exponent, below the common precision, where the series differ."""
        a, b = _unify(self, other)
        P = min(a.prec, b.prec)
        keys = sorted(set(a._terms) | set(b._terms))
        for e in keys:
            if e >= P:
                break
            if a._terms.get(e, 0) != b._terms.get(e, 0):
                return Fraction(e, a.lattice_den)
        return None

    def agrees_with(self, other: "QExp") -> bool:
        """True when the series coincide on every exponent both know."""
        return self.first_difference(other) is None

    # ------------------------------------------------------------- rendering
    def __repr__(self) -> str:
        body = " + ".join(f"({c})q^{e}" for e, c in self.terms()[:6])
        more = " + ..." if len(self._terms) > 6 else ""
        return f"QExp({body or '0'}{more} + O(q^{self.prec_exponent}))"

    def to_text(self) -> str:
        M = self.lattice_den
        lines = [f"M={M} prec={self.prec}"]
        for e, c in self._terms.items():
            lines.append(f"{e}/{M} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QExp":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = dict(part.split("=") for part in lines[0].split())
        M, P = int(head["M"]), int(head["prec"])
        terms = {}
        for ln in lines[1:]:
            exp, coeff = ln.split()
            e_num, e_den = exp.split("/")
            if int(e_den) != M:
                raise LatticeError(f"term exponent {exp} not written over M={M}")
            n, d = coeff.split("/")
            terms[int(e_num)] = Fraction(int(n), int(d))
        return cls(terms, M, P)

    def to_dict(self) -> dict:
        return {
            "lattice_den": self.lattice_den,
            "prec": self.prec,
            "terms": [[e, c.numerator, c.denominator] for e, c in self._terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "QExp":
        return cls({e: Fraction(n, m) for e, n, m in d["terms"]}, d["lattice_den"], d["prec"])

    @classmethod
    def from_json(cls, s: str) -> "QExp":
        return cls.from_dict(json.loads(s))


# ------------------------------------------------------------------ helpers

def _unify(a: QExp, b: QExp) -> tuple[QExp, QExp]:
    if a.lattice_den == b.lattice_den:
        return a, b
    M = math.lcm(a.lattice_den, b.lattice_den)
    return a.rescale(M), b.rescale(M)


def _scaled_ints(s: QExp) -> tuple[dict[int, int], int]:
    den = 1
    for c in s._terms.values():
        den = math.lcm(den, c.denominator)
    return {e: c.numerator * (den // c.denominator) for e, c in s._terms.items()}, den


def _mul(a: QExp, b: QExp) -> QExp:
    M = a.lattice_den
    va, vb = a.valuation(), b.valuation()
    P = min(a.prec + vb, b.prec + va)
    if a.is_zero() or b.is_zero() or P <= va + vb:
        return QExp.zero(M, P)
    g = 0
    for e in a._terms:
        g = math.gcd(g, e - va)
    for e in b._terms:
        g = math.gcd(g, e - vb)
    g = g or 1
    n = _ceil_div(P - va - vb, g)
    ia, da = _scaled_ints(a)
    ib, db = _scaled_ints(b)
    A = [(t, c) for e, c in ia.items() if (t := (e - va) // g) < n]
    B = [0] * n
    for e, c in ib.items():
        t = (e - vb) // g
        if t < n:
            B[t] = c
    if len(A) > sum(1 for x in B if x):
        # iterate the sparser operand in the outer loop
        A, B = [(t, c) for t, c in enumerate(B) if c], [0] * n
        for e, c in ia.items():
            t = (e - va) // g
            if t < n:
                B[t] = c
    out = [0] * n
    for t, c in A:
        for s in range(n - t):
            x = B[s]
            if x:
                out[t + s] += c * x
    D = da * db
    base = va + vb
    return QExp({base + g * t: Fraction(v, D) for t, v in enumerate(out) if v}, M, P)


def _invert(a: QExp) -> QExp:
    if a.is_zero():
        raise NonInvertibleError("series is zero to its precision; cannot invert")
    M = a.lattice_den
    La = a.lead
    R = a.prec - La
    g = 0
    for e in a._terms:
        g = math.gcd(g, e - La)
    g = g or R
    n = _ceil_div(R, g)
    ia, D = _scaled_ints(a)
    A = [0] * n
    for e, c in ia.items():
        t = (e - La) // g
        if t < n:
            A[t] = c
    # 1/A = sum beta_t / A0^(t+1) x^t with integer beta
    A0 = A[0]
    nz = [(s, A[s]) for s in range(1, n) if A[s]]
    beta = [1] + [0] * (n - 1)
    pw = [1]
    for _ in range(n):
        pw.append(pw[-1] * A0)
    for t in range(1, n):
        acc = 0
        for s, c in nz:
            if s > t:
                break
            acc += c * beta[t - s] * pw[s - 1]
        beta[t] = -acc
    terms = {-La + g * t: Fraction(beta[t] * D, pw[t + 1]) for t in range(n) if beta[t]}
    return QExp(terms, M, -La + R)


# --------------------------------------------------------- functional names

def rescale(s: QExp, new_den: int) -> QExp:
    return s.rescale(new_den)


def add(a: QExp, b: QExp) -> QExp:
    return a + b


def mul(a: QExp, b: QExp) -> QExp:
    return a * b


def negate(a: QExp) -> QExp:
    return -a


def invert(a: QExp) -> QExp:
    return a.inverse()


def theta_derive(a: QExp) -> QExp:
    return a.theta()


def euler_product(prec: int) -> QExp:
    """``prod_{n>=1} (1 - q^n)`` through ``q^(prec-1)``, by direct multiplication."""
    c = [0] * prec
    if prec > 0:
        c[0] = 1
    for n in range(1, prec):
        for i in range(prec - 1, n - 1, -1):
            c[i] -= c[i - n]
    return QExp.from_coeffs(c, 0, 1, prec)


def _excluded(b: int, a: int) -> set[int]:
    return {0, a % b, (-a) % b}


def restricted_product(b: int, a: int, sign: int, prec: int,
                       allow_degenerate: bool = False) -> QExp:
    """``prod (1 - q^n)^sign`` over ``n >= 1`` with ``n`` not congruent to 0, +-a mod b.

    ``(b, a) = (1, 0)`` with ``sign = +1`` is the unrestricted Euler product.
    For ``sign = -1`` the series is built as the finite product over the
    excluded parts times the inverse of the Euler product, a code path that
    shares nothing with the partition-counting DP.
    """
    if sign not in (1, -1):
        raise ParameterError("sign must be +1 or -1")
    if prec <= 0:
        raise ParameterError("prec must be positive")
    if (b, a) == (1, 0):
        if sign != 1:
            raise ParameterError("(b, a) = (1, 0) is only defined for sign +1")
        return euler_product(prec)
    if b < 1 or a <= 0 or a % b == 0:
        raise ParameterError(f"invalid residue pair (b={b}, a={a})")
    if (2 * a) % b == 0 and not allow_degenerate:
        raise ParameterError(f"2a = 0 mod b for (b={b}, a={a})")
    excl = _excluded(b, a)
    if sign == 1:
        allowed = QExp.one(1, prec)
        for n in range(1, prec):
            if n % b not in excl:
                allowed = allowed * QExp({0: 1, n: -1}, 1, prec)
        return allowed
    ex = QExp.one(1, prec)
    for n in range(1, prec):
        if n % b in excl:
            ex = ex * QExp({0: 1, n: -1}, 1, prec)
    return ex * euler_product(prec).inverse()


def theta_monomial(s: int, alpha, beta, prec) -> QExp:
    """``sum_n s^n q^(alpha n + beta n^2)`` over all exponents below ``prec`` (q-units)."""
    if s not in (1, -1):
        raise ParameterError("s must be +1 or -1")
    alpha, beta, prec = _frac(alpha), _frac(beta), _frac(prec)
    if beta <= 0:
        raise ParameterError("theta series diverges unless beta > 0")
    M = math.lcm(alpha.denominator, beta.denominator)
    P = math.ceil(prec * M)
    # alpha n + beta n^2 < prec  =>  |n + alpha/(2 beta)| < sqrt(prec/beta + (alpha/2beta)^2)
    centre = -alpha / (2 * beta)
    disc = prec / beta + centre * centre
    if disc < 0:
        return QExp.zero(M, P)
    radius = math.isqrt(math.ceil(disc)) + 1
    lo, hi = math.floor(centre) - radius - 1, math.ceil(centre) + radius + 1
    terms: dict[int, Fraction] = {}
    for n in range(lo, hi + 1):
        e = alpha * n + beta * n * n
        if e < prec:
            k = (e * M).numerator
            terms[k] = terms.get(k, 0) + (1 if s == 1 or n % 2 == 0 else -1)
    return QExp(terms, M, P)
