"""Closed-form bounds as exact rationals."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotOddPrime
from .ring import PrimePowerDecomposition, decompose, factor

__all__ = [
    "BoundSpec",
    "mu",
    "alon_bound",
    "thm22_threshold",
    "thm23_threshold",
    "interval_carry_count",
    "mu_table",
    "mu_table_csv",
]

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class BoundSpec:
    m: int
    decomposition: PrimePowerDecomposition
    mu: Fraction
    regime: str  # "OddP" or "EvenP"


def mu(m: int) -> BoundSpec:
    """Lower bound on the carry frequency of any digital set of size ``m``."""
    dec = decompose(m)
    if dec.p == 2:
        return BoundSpec(m, dec, QUARTER, "EvenP")
    pa = dec.prime_power
    value = (1 - Fraction(1, pa * pa) - Fraction(2, pa) + dec.delta_m * Fraction(2, m)) / 4
    return BoundSpec(m, dec, value, "OddP")


def alon_bound(p: int) -> Fraction:
    fs = factor(p) if p >= 1 else []
    if len(fs) != 1 or fs[0][1] != 1 or p == 2:
        raise NotOddPrime(f"{p} is not an odd prime")
    return Fraction(p * p - 1, 4 * p * p)


def thm22_threshold(p: int, alpha: int, side: str) -> tuple[int, int]:
    """``(t, threshold)`` for odd ``p``: ``t = (p^a -+ 1)/2``, threshold ``(3p^2a -+ 2p^a - 1)/4``."""
    if p % 2 == 0:
        raise NotOddPrime(f"{p} is not odd")
    pa = p ** alpha
    sign = {"minus": -1, "plus": 1}[side.lower()]
    num = 3 * pa * pa + sign * 2 * pa - 1
    assert num % 4 == 0
    return (pa + sign) // 2, num // 4


def thm23_threshold(alpha: int) -> tuple[int, int]:
    """``(t, threshold)`` for ``p = 2``: ``t = 2^(a-1)``, threshold ``3 * 4^(a-1)``."""
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return 2 ** (alpha - 1), 2 ** (2 * alpha) - 2 ** (2 * alpha - 2)


def interval_carry_count(m: int) -> int:
    return m * m // 4


def mu_table(ms: Iterable[int]) -> list[tuple[int, Fraction, Fraction, Fraction]]:
    """Rows ``(m, mu(m), floor(m^2/4)/m^2, 1/4 - mu(m))``."""
    rows = []
    for m in ms:
        value = mu(m).mu
        rows.append((m, value, Fraction(interval_carry_count(m), m * m), QUARTER - value))
    return rows


def _exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


def mu_table_csv(ms: Iterable[int]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["m", "mu", "mu_approx", "interval_c2", "interval_c2_approx", "gap", "gap_approx"])
    for m, value, interval, gap in mu_table(ms):
        writer.writerow([m, _exact(value), _approx(value), _exact(interval), _approx(interval), _exact(gap), _approx(gap)])
    return out.getvalue()
