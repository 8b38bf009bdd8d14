"""Exact univariate polynomials over Q and F_p, and the field F_{p^2}."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIntegralError, ParameterError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _strip(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


class RatPoly:
    """Polynomial in ``x`` with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RatPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        return self + (-other if isinstance(other, RatPoly) else -Fraction(other))

    def __rsub__(self, other) -> "RatPoly":
        return (-self) + other

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = Fraction(other)
            return RatPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        r = RatPoly([1])
        for _ in range(n):
            r = r * self
        return r

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return RatPoly(), self
        qc = [Fraction(0)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            c = r[k + other.degree] / lc
            qc[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return RatPoly(qc), RatPoly(r[: other.degree])

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[0]

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RatPoly":
        return self * (1 / self.lc) if self.coeffs else self

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {"coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "RatPoly":
        return cls(Fraction(n, m) for n, m in d["coeffs"])


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p with coefficients reduced to ``[0, p)``, ascending."""

    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _strip([int(c) % p for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return FpPoly(self.p, out)

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        g = lambda c, i: c[i] if i < len(c) else 0  # noqa: E731
        return FpPoly(self.p, (g(self.coeffs, i) + g(other.coeffs, i) for i in range(n)))

    def _check(self, other: "FpPoly") -> None:
        if other.p != self.p:
            raise ParameterError(f"mixing F_{self.p} and F_{other.p}")

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    @classmethod
    def from_roots(cls, p: int, roots: Iterable[int]) -> "FpPoly":
        f = cls(p, [1])
        for r in roots:
            f = f * cls(p, [-r, 1])
        return f

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(mono if (mono and c == 1) else f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) + f" (mod {self.p})"

    def to_dict(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}


def reduce_poly_mod_p(poly: RatPoly, p: int) -> FpPoly:
    """Coefficientwise ``num * den^(-1) mod p``; raises when a denominator is divisible by p."""
    out = []
    for i, c in enumerate(poly.coeffs):
        if c.denominator % p == 0:
            raise NonIntegralError(f"coefficient of x^{i} is not {p}-integral: {c}")
        out.append(c.numerator * pow(c.denominator, -1, p))
    return FpPoly(p, out)


def reduce_rat_mod_p(c: Fraction, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise NonIntegralError(f"{c} is not {p}-integral")
    return c.numerator * pow(c.denominator, -1, p) % p


def smallest_nonresidue(p: int) -> int:
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ParameterError(f"no quadratic non-residue mod {p}")


class Fp2:
    """Element ``u + v*theta`` of F_{p^2}, ``theta^2 = d`` with d the smallest non-residue."""

    __slots__ = ("p", "d", "u", "v")

    def __init__(self, p: int, u: int, v: int = 0, d: int | None = None):
        self.p = p
        self.d = smallest_nonresidue(p) if d is None else d
        self.u = u % p
        self.v = v % p

    def _new(self, u: int, v: int) -> "Fp2":
        return Fp2(self.p, u, v, self.d)

    def _lift(self, other) -> "Fp2":
        return other if isinstance(other, Fp2) else self._new(int(other), 0)

    def __add__(self, other) -> "Fp2":
        o = self._lift(other)
        return self._new(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other) -> "Fp2":
        o = self._lift(other)
        return self._new(self.u - o.u, self.v - o.v)

    def __rsub__(self, other) -> "Fp2":
        return self._lift(other) - self

    def __neg__(self) -> "Fp2":
        return self._new(-self.u, -self.v)

    def __mul__(self, other) -> "Fp2":
        o = self._lift(other)
        return self._new(self.u * o.u + self.d * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def norm(self) -> int:
        return (self.u * self.u - self.d * self.v * self.v) % self.p

    def inverse(self) -> "Fp2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in F_p^2")
        ni = pow(n, -1, self.p)
        return self._new(self.u * ni, -self.v * ni)

    def __truediv__(self, other) -> "Fp2":
        return self * self._lift(other).inverse()

    def __pow__(self, n: int) -> "Fp2":
        r, b = self._new(1, 0), self
        if n < 0:
            b, n = b.inverse(), -n
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def frobenius(self) -> "Fp2":
        # theta^p = theta * d^((p-1)/2) = -theta
        return self._new(self.u, -self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def in_base_field(self) -> bool:
        return self.v == 0

    def key(self) -> tuple[int, int]:
        return (self.v, self.u)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        return self.p == o.p and self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.p, self.u, self.v))

    def __repr__(self) -> str:
        return f"{self.u}" if not self.v else f"{self.u}+{self.v}t"


def fp2_poly_from_roots(p: int, roots: Sequence[Fp2]) -> list[Fp2]:
    """Coefficients (ascending) of prod (x - r) over F_{p^2}."""
    coeffs = [Fp2(p, 1)]
    for r in roots:
        nxt = [Fp2(p, 0, 0, r.d) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    return coeffs
