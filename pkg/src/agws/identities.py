"""Theta-function identities behind the vanishing of F_k at k = 6t^2 - 6t + 1.

For such k the characters satisfy a linear relation

    ch_{a-(t,0)} + sum_r (-1)^r ch_{a+(t,r)} + sum_r (-1)^r ch_{a-(t,r)} = 1,

which is obtained by dividing a theta sum A_t by the Euler product (one
identity) and recognising A_t as the pentagonal series (another).  Both are
checked here by independent series computations.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .characters import character, leading_exponent, partition_count_table
from .errors import ParameterError
from .qexp import QExp, euler_product, theta_monomial
from .verdict import Verdict


def _check_t(t: int) -> None:
    if not isinstance(t, int) or t < 2:
        raise ParameterError(f"t must be an integer >= 2, got {t!r}")


@dataclass(frozen=True)
class RelationParams:
    t: int

    def __post_init__(self):
        _check_t(self.t)

    @property
    def b(self) -> int:
        return 3 * (2 * self.t - 1) ** 2

    @property
    def k(self) -> int:
        return 6 * self.t ** 2 - 6 * self.t + 1

    def a_minus(self, r: int) -> int:
        return (2 * self.t - 1) * (3 * self.t - 3 * r - 2)

    def a_plus(self, r: int) -> int:
        return (2 * self.t - 1) * (3 * self.t - 3 * r - 1)

    @staticmethod
    def omega_minus(r: int) -> int:
        return (3 * r * r - r) // 2

    @staticmethod
    def omega_plus(r: int) -> int:
        return (3 * r * r + r) // 2

    def check_invariants(self) -> bool:
        t, b = self.t, self.b
        ok = b == 2 * self.k + 1 and self.a_minus(0) == (2 * t - 1) * (3 * t - 2)
        for _, i in self.relation():
            ok &= 0 < i <= self.k and i < Fraction(b, 2)
        return ok and len({i for _, i in self.relation()}) == 2 * t - 1

    def relation(self) -> list[tuple[int, int]]:
        """``(sign, index)`` pairs of the character relation summing to 1."""
        t = self.t
        terms = [(1, self.a_minus(0))]
        terms += [((-1) ** r, self.a_plus(r)) for r in range(1, t)]
        terms += [((-1) ** r, self.a_minus(r)) for r in range(1, t)]
        return terms


# ------------------------------------------------------------------- A_t

def _theta_pieces(t: int, prec: int) -> list[tuple[int, QExp]]:
    """Signed pieces of A_t: the leading theta sum and the two Psi families."""
    beta = Fraction(3 * (2 * t - 1) ** 2, 2)
    pieces = [(1, theta_monomial(-1, Fraction(2 * t - 1, 2), beta, prec))]
    for r in range(1, t):
        for sgn6 in (-1, 1):
            shift = r * (3 * r + sgn6) // 2
            alpha = Fraction((6 * r + sgn6) * (2 * t - 1), 2)
            th = theta_monomial(-1, alpha, beta, prec - shift).shift(shift)
            pieces.append(((-1) ** r, th))
    return pieces


def A_t_series(t: int, prec: int) -> QExp:
    """``A_t(q)`` through ``q^(prec-1)``, on the integer lattice."""
    _check_t(t)
    total = QExp.zero(1, prec)
    for sign, piece in _theta_pieces(t, prec):
        total = total + piece * sign
    return total.coarsen(1).truncate(prec)


def pentagonal_series(prec: int) -> QExp:
    """``sum_m (-1)^m q^(m(3m-1)/2)`` through ``q^(prec-1)``."""
    terms: dict[int, int] = {}
    m_max = math.isqrt(2 * prec) + 2
    for m in range(-m_max, m_max + 1):
        e = m * (3 * m - 1) // 2
        if e < prec:
            terms[e] = terms.get(e, 0) + (-1) ** (m % 2)
    return QExp(terms, 1, prec)


def A_t_exponent_multiset(t: int, prec: int) -> Counter:
    """Multiset of ``(exponent, sign)`` over every term that enters A_t."""
    out: Counter = Counter()
    for sign, piece in _theta_pieces(t, prec):
        for e, c in piece.terms():
            assert e.denominator == 1 and abs(c) == 1
            out[(e.numerator, int(sign * c))] += 1
    return out


def pentagonal_exponent_multiset(prec: int) -> Counter:
    out: Counter = Counter()
    m_max = math.isqrt(2 * prec) + 2
    for m in range(-m_max, m_max + 1):
        e = m * (3 * m - 1) // 2
        if e < prec:
            out[(e, (-1) ** (m % 2))] += 1
    return out


# ---------------------------------------------------------------- checks

def _compare(name: str, lhs: QExp, rhs: QExp, params: dict, prec: int) -> Verdict:
    diff = lhs.first_difference(rhs)
    details = {} if diff is None else {"first_difference": str(diff)}
    return Verdict(name, diff is None, params, prec, details)


def theta_sum_check(t: int, prec: int) -> Verdict:
    """``A_t = prod (1 - q^n)`` through ``q^(prec-1)``."""
    return _compare("theta-sum", A_t_series(t, prec), euler_product(prec),
                    {"t": t, "prec": prec}, prec)


def character_combination(t: int, prec: int, flip: int | None = None) -> QExp:
    """The signed character sum of the relation (optionally with one sign flipped)."""
    par = RelationParams(t)
    k = par.k
    total = QExp.zero(1, prec)
    for pos, (sign, i) in enumerate(par.relation()):
        if flip == pos:
            sign = -sign
        a = leading_exponent(i, k)
        if a.denominator != 1:
            raise ArithmeticError(f"a({i},{k}) = {a} is not an integer")
        ch = character(i, k, max(prec - int(a), 1)).coarsen(1)
        total = total + ch * sign
    return total.truncate(min(total.prec, prec))


def quotient_relation_check(t: int, prec: int, flip: int | None = None) -> Verdict:
    """``A_t / prod (1 - q^n)`` equals the signed character sum.

    The left side uses only theta sums and the Euler product; the right side
    comes from the character constructor.
    """
    lhs = A_t_series(t, prec) * euler_product(prec).inverse()
    rhs = character_combination(t, prec, flip)
    params = {"t": t, "k": RelationParams(t).k, "prec": prec}
    return _compare("quotient-relation", lhs, rhs, params, prec)


def certify_character_relation(t: int, prec: int) -> Verdict:
    """Both identities plus the direct check that the character sum is 1."""
    quot = quotient_relation_check(t, prec)
    theta = theta_sum_check(t, prec)
    direct = character_combination(t, prec)
    is_one = direct.first_difference(QExp.one(1, prec)) is None
    ok = quot.passed and theta.passed and is_one
    return Verdict("vanishing-relation", ok, {"t": t, "k": RelationParams(t).k, "prec": prec},
                   prec, {"quotient_relation": quot.passed, "theta_sum": theta.passed,
                          "sum_is_one": is_one})


def verify_partition_identity(t: int, n_max: int) -> Verdict:
    """Shifted partition identity for ``1 <= n <= n_max`` using DP counts only."""
    par = RelationParams(t)
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    b = par.b
    lhs_tab = partition_count_table(b, par.a_minus(0), n_max)
    rhs_parts = []
    for r in range(1, t):
        rhs_parts.append(((-1) ** (r + 1), par.omega_minus(r),
                          partition_count_table(b, par.a_plus(r), n_max)))
        rhs_parts.append(((-1) ** (r + 1), par.omega_plus(r),
                          partition_count_table(b, par.a_minus(r), n_max)))
    for n in range(1, n_max + 1):
        rhs = sum(sign * tab[n - w] for sign, w, tab in rhs_parts if n - w >= 0)
        if lhs_tab[n] != rhs:
            trace = [(sign, w, tab[n - w] if n - w >= 0 else 0) for sign, w, tab in rhs_parts]
            return Verdict("partidentity", False, {"t": t, "n_max": n_max}, n_max,
                           {"n": n, "lhs": lhs_tab[n], "rhs": rhs, "trace": trace})
    return Verdict("partidentity", True, {"t": t, "b": b, "n_max": n_max}, n_max)


def triple_product(s: int, alpha, beta, prec) -> QExp:
    """``prod (1 - Q^(2n)) (1 + y Q^(2n-1)) (1 + y^-1 Q^(2n-1))`` with ``y = s q^alpha``, ``Q = q^beta``."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not abs(alpha) < beta:
        raise ParameterError("triple product needs |alpha| < beta to be a power series")
    M = math.lcm(alpha.denominator, beta.denominator)
    P = math.ceil(Fraction(prec) * M)
    out = QExp.one(M, P)
    n = 1
    while beta * (2 * n - 1) - abs(alpha) < Fraction(prec):
        for e, c in ((2 * beta * n, -1),
                     (alpha + beta * (2 * n - 1), s),
                     (-alpha + beta * (2 * n - 1), s)):
            if e < prec:
                out = out * QExp({0: 1, int(e * M): c}, M, P)
        n += 1
    return out


def jacobi_triple_product_check(s: int, alpha, beta, prec) -> Verdict:
    lhs = theta_monomial(s, alpha, beta, prec)
    rhs = triple_product(s, alpha, beta, prec)
    return _compare("triple-product", lhs, rhs,
                    {"s": s, "alpha": str(alpha), "beta": str(beta), "prec": str(prec)}, prec)


def pentagonal_check(prec: int) -> Verdict:
    return _compare("pentagonal", euler_product(prec), pentagonal_series(prec),
                    {"prec": prec}, prec)


def k13_identity_check(prec: int) -> Verdict:
    """``ch_{12,13} - ch_{6,13} - ch_{3,13} = 1`` through ``q^(prec-1)``."""
    v = certify_character_relation(2, prec)
    v.check = "k13-identity"
    return v
