"""Minimal-model parameters and the Andrews-Gordon character family.

The characters of the (2, 2k+1) Virasoro minimal model are

    ch_{i,k}(q) = q^(h_{i,k} - c_k/24) * prod_{n != 0, +-i mod 2k+1} 1/(1 - q^n).

They live on the exponent lattice q^(1/(12(2k+1))).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ParameterError
from .qexp import QExp, restricted_product


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ParameterError(f"k must be an integer >= 2, got {k!r}")


def _check_i(i: int, k: int) -> None:
    _check_k(k)
    if not 1 <= i <= k:
        raise ParameterError(f"index i={i} out of range 1..{k}")


def central_charge(k: int) -> Fraction:
    _check_k(k)
    return 1 - Fraction(3 * (2 * k - 1) ** 2, 2 * k + 1)


def conformal_weight(i: int, k: int) -> Fraction:
    _check_i(i, k)
    return Fraction((2 * (k - i) + 1) ** 2 - (2 * k - 1) ** 2, 8 * (2 * k + 1))


def leading_exponent(i: int, k: int) -> Fraction:
    """``a(i,k) = h_{i,k} - c_k/24``, cross-checked against the closed form."""
    diff = conformal_weight(i, k) - central_charge(k) / 24
    closed = Fraction((2 * k + 1) * (3 * k + 1 - 6 * i) + 6 * i * i, 12 * (2 * k + 1))
    assert diff == closed, (i, k, diff, closed)
    return closed


def lattice_den(k: int) -> int:
    return 12 * (2 * k + 1)


@dataclass(frozen=True)
class VirasoroParams:
    k: int
    c: Fraction
    h: tuple[Fraction, ...]
    a: tuple[Fraction, ...]

    @classmethod
    def of(cls, k: int) -> "VirasoroParams":
        _check_k(k)
        return cls(
            k,
            central_charge(k),
            tuple(conformal_weight(i, k) for i in range(1, k + 1)),
            tuple(leading_exponent(i, k) for i in range(1, k + 1)),
        )

    def check_invariants(self) -> bool:
        a = self.a
        return all(a[i] > a[i + 1] for i in range(len(a) - 1)) and a[-1] > -1


def character(i: int, k: int, prec: int) -> QExp:
    """``ch_{i,k}`` with coefficients ``b_{i,k}(n)`` for ``0 <= n < prec``."""
    _check_i(i, k)
    if prec <= 0:
        raise ParameterError("prec must be positive")
    return _character(i, k, prec)


@lru_cache(maxsize=None)
def _character(i: int, k: int, prec: int) -> QExp:
    body = restricted_product(2 * k + 1, i, -1, prec)
    a = leading_exponent(i, k)
    M = lattice_den(k)
    return body.rescale(M).shift(a)


@dataclass(frozen=True)
class CharacterFamily:
    params: VirasoroParams
    chars: tuple[QExp, ...]
    prec: int

    @property
    def lattice_den(self) -> int:
        return lattice_den(self.params.k)

    def b(self, i: int, n: int) -> int:
        """Coefficient of ``q^(n + a(i,k))`` in ``ch_{i,k}``."""
        c = self.chars[i - 1].coeff(self.params.a[i - 1] + n)
        assert c.denominator == 1
        return c.numerator


def character_family(k: int, prec: int) -> CharacterFamily:
    return CharacterFamily(
        VirasoroParams.of(k),
        tuple(character(i, k, prec) for i in range(1, k + 1)),
        prec,
    )


def partition_count_table(b: int, a: int, n_max: int) -> list[int]:
    """``P_b(a; n)`` for ``0 <= n <= n_max`` by DP over admissible parts."""
    if n_max < 0:
        return []
    excluded = {0, a % b, (-a) % b}
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        if part % b in excluded:
            continue
        for n in range(part, n_max + 1):
            table[n] += table[n - part]
    return table


@lru_cache(maxsize=256)
def _cached_table(b: int, a: int, n_max: int) -> tuple[int, ...]:
    return tuple(partition_count_table(b, a, n_max))


def partition_count(b: int, a: int, n: int) -> int:
    """Partitions of ``n`` into parts not congruent to 0, +-a mod b (0 for negative n)."""
    if n < 0:
        return 0
    return _cached_table(b, a, n)[n]
