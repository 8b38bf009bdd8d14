"""Exact real-root counting with Sturm chains, and the root-location check for
the divisor polynomials of F_k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .modforms import divisor_polynomial
from .poly import RatPoly
from .verdict import Verdict
from .wronskian import f_k, is_vanishing_k


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[RatPoly, ...]

    @classmethod
    def of(cls, p: RatPoly) -> "SturmChain":
        if p.is_zero():
            raise ParameterError("Sturm chain of the zero polynomial")
        chain = [p, p.derivative()]
        while not chain[-1].is_zero():
            chain.append(-(chain[-2] % chain[-1]))
        chain.pop()
        return cls(tuple(chain))

    def variations_at(self, x) -> int:
        return _variations(c(x) for c in self.polys)

    def variations_at_infinity(self, sign: int) -> int:
        vals = []
        for c in self.polys:
            s = 1 if c.lc > 0 else -1
            if sign < 0 and c.degree % 2:
                s = -s
            vals.append(s)
        return _variations(vals)


def _variations(values) -> int:
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def is_squarefree(p: RatPoly) -> bool:
    if p.is_zero():
        raise ParameterError("squarefreeness of the zero polynomial")
    return p.gcd(p.derivative()).degree == 0


def _deflate(p: RatPoly, r: Fraction) -> RatPoly:
    q, rem = p.divmod(RatPoly([-r, 1]))
    assert rem.is_zero()
    return q


def count_real_roots_in(p: RatPoly, lo, hi) -> int:
    """Number of roots of squarefree ``p`` in the closed interval ``[lo, hi]``.

    A root sitting exactly on an endpoint is counted and divided out, so the
    Sturm count is only ever taken between non-roots.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ParameterError("need lo < hi")
    if not is_squarefree(p):
        raise ParameterError("Sturm counting requires a squarefree polynomial")
    extra = 0
    for x in (lo, hi):
        if p.degree > 0 and p(x) == 0:
            p = _deflate(p, x)
            extra += 1
    if p.degree <= 0:
        return extra
    chain = SturmChain.of(p)
    return extra + chain.variations_at(lo) - chain.variations_at(hi)


def count_real_roots(p: RatPoly) -> int:
    """Number of distinct real roots of ``p`` over the whole line."""
    p = p // p.gcd(p.derivative()) if p.degree > 0 else p
    if p.degree <= 0:
        return 0
    chain = SturmChain.of(p)
    return chain.variations_at_infinity(-1) - chain.variations_at_infinity(1)


def conjecture_check(k: int, prec: int | None = None) -> Verdict:
    """``F~(F_k, x)`` is squarefree with all its roots real and in ``[0, 1728]``.

    Roots of ``F~`` that land exactly on 0 or 1728 are reported separately
    from interior roots, and still count as inside the closed interval.
    """
    if k < 2:
        raise ParameterError("k must be >= 2")
    if is_vanishing_k(k):
        raise ParameterError(f"k={k} is of the form 6t^2-6t+1; F_k vanishes")
    fact = divisor_polynomial(f_k(k, prec), 2 * k)
    Ft = fact.F_tilde
    deg = Ft.degree
    params = {"k": k, "weight": 2 * k}
    if deg <= 0:
        return Verdict("conjecture", True, params, None,
                       {"deg_F_tilde": max(deg, 0), "roots_in_interval": 0,
                        "boundary_roots": [], "squarefree": True})
    sqf = is_squarefree(Ft)
    if not sqf:
        return Verdict("conjecture", False, params, None,
                       {"deg_F_tilde": deg, "squarefree": False})
    boundary = [x for x in (0, 1728) if Ft(x) == 0]
    inside = count_real_roots_in(Ft, 0, 1728)
    return Verdict("conjecture", inside == deg, params, None,
                   {"deg_F_tilde": deg, "roots_in_interval": inside,
                    "real_roots": count_real_roots(Ft), "boundary_roots": boundary,
                    "squarefree": True})
