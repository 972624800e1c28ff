"""Representation functions, Pollard sums and carry statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import DomainMismatch
from .ring import DigitalSet, Domain

__all__ = [
    "SumsetProfile",
    "CarryReport",
    "rep_function",
    "layered_size",
    "pollard_sum",
    "profile_sum",
    "digit_of",
    "carry_of",
    "carry_report",
    "carry_count_mod",
    "carry_count_int",
    "c1_mod",
    "c1_int",
    "rational_json",
    "rational_from_json",
]

SetLike = Union[DigitalSet, Iterable[int]]

# dense counting array up to this modulus
_DENSE_LIMIT = 1 << 20


def rational_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    return Fraction(int(obj["num"]), int(obj["den"]))


def _resolve(A: SetLike, B: SetLike, q: Optional[int]) -> tuple[Domain, tuple, tuple]:
    domains = {X.domain for X in (A, B) if isinstance(X, DigitalSet)}
    if q is not None or not domains:
        domains.add(Domain(q))
    if len(domains) != 1:
        raise DomainMismatch(f"sets live in different domains: {sorted(map(str, domains))}")
    (domain,) = domains
    ea = tuple(A.elements if isinstance(A, DigitalSet) else sorted({domain.reduce(x) for x in A}))
    eb = tuple(B.elements if isinstance(B, DigitalSet) else sorted({domain.reduce(x) for x in B}))
    return domain, ea, eb


@dataclass(frozen=True)
class SumsetProfile:
    """Ordered-pair counts ``r_{A+B}(x)``; absent keys have count zero."""

    domain: Domain
    counts: dict
    total: int

    def __getitem__(self, x: int) -> int:
        return self.counts.get(self.domain.reduce(x), 0)

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "counts": [[x, r] for x, r in sorted(self.counts.items())],
            "total": self.total,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SumsetProfile":
        return cls(
            Domain.from_json(obj["domain"]),
            {int(x): int(r) for x, r in obj["counts"]},
            int(obj["total"]),
        )


def rep_function(A: SetLike, B: SetLike, q: Optional[int] = None) -> SumsetProfile:
    """Count ordered pairs ``(a, b)`` with ``a + b = x`` for every ``x``.

    Plain iterables are read in ``Z_q`` (or ``Z`` when ``q`` is None);
    digital sets carry their own domain.
    """
    domain, ea, eb = _resolve(A, B, q)
    n = domain.q
    if n is not None and n <= _DENSE_LIMIT and len(ea) * len(eb) >= n:
        dense = [0] * n
        for a in ea:
            for b in eb:
                dense[(a + b) % n] += 1
        counts = {x: r for x, r in enumerate(dense) if r}
    elif n is not None:
        counts = dict(Counter((a + b) % n for a in ea for b in eb))
    else:
        counts = dict(Counter(a + b for a in ea for b in eb))
    return SumsetProfile(domain, counts, len(ea) * len(eb))


def layered_size(profile: SumsetProfile, i: int) -> int:
    """``|A +_i B|``: the number of sums with at least ``i`` representations."""
    if i < 1:
        raise ValueError(f"layer index must be positive, got {i}")
    return sum(1 for r in profile.counts.values() if r >= i)


def profile_sum(profile: SumsetProfile, t: int) -> int:
    """Pollard sum of an existing profile; both formulas are evaluated and must agree."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    capped = sum(min(t, r) for r in profile.counts.values())
    layered = sum(layered_size(profile, i) for i in range(1, t + 1))
    assert capped == layered, (capped, layered)
    return capped


def pollard_sum(A: SetLike, B: SetLike, t: int, q: Optional[int] = None) -> int:
    """``S(A, B, t) = sum_x min(t, r(x))``."""
    return profile_sum(rep_function(A, B, q), t)


def digit_of(A: DigitalSet, x: int) -> int:
    r = x % A.m
    for a in A.elements:
        if a % A.m == r:
            return a
    raise AssertionError("digital set misses a residue class")  # unreachable for validated sets


def carry_of(A: DigitalSet, a1: int, a2: int) -> int:
    """Carry of ``a1 + a2``: an element of ``Z_{q/m}`` modularly, an integer over ``Z``."""
    num = a1 + a2 - digit_of(A, a1 + a2)
    if A.q is None:
        return num // A.m
    return (num % A.q) // A.m


@dataclass(frozen=True)
class CarryReport:
    domain: Domain
    m: int
    elements: tuple[int, ...]
    carry_set: frozenset
    c1: int
    carry_count: int
    c2: Fraction

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "m": self.m,
            "elements": list(self.elements),
            "carry_set": sorted(self.carry_set),
            "c1": self.c1,
            "carry_count": self.carry_count,
            "c2": rational_json(self.c2),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CarryReport":
        return cls(
            Domain.from_json(obj["domain"]),
            int(obj["m"]),
            tuple(obj["elements"]),
            frozenset(obj["carry_set"]),
            int(obj["c1"]),
            int(obj["carry_count"]),
            rational_from_json(obj["c2"]),
        )


def carry_report(A: DigitalSet) -> CarryReport:
    members = set(A.elements)
    digit = {a % A.m: a for a in A.elements}
    q = A.q
    carries = set()
    outside = nonzero = 0
    for a1 in A.elements:
        for a2 in A.elements:
            s = a1 + a2
            num = s - digit[s % A.m]
            if q is None:
                carry = num // A.m
            else:
                carry = (num % q) // A.m
                s %= q
            carries.add(carry)
            outside += s not in members
            nonzero += carry != 0
    assert outside == nonzero, (outside, nonzero)
    return CarryReport(
        A.domain, A.m, A.elements, frozenset(carries), len(carries), outside,
        Fraction(outside, A.m * A.m),
    )


# fast paths for sweeps: plain sorted tuples, no validation


def carry_count_mod(elems: tuple[int, ...], q: int) -> int:
    members = set(elems)
    n = len(elems)
    inside = 0
    for i, a in enumerate(elems):
        if (a + a) % q in members:
            inside += 1
        for b in elems[i + 1:]:
            if (a + b) % q in members:
                inside += 2
    return n * n - inside


def carry_count_int(elems: tuple[int, ...]) -> int:
    members = set(elems)
    n = len(elems)
    inside = 0
    for i, a in enumerate(elems):
        if a + a in members:
            inside += 1
        for b in elems[i + 1:]:
            if a + b in members:
                inside += 2
    return n * n - inside


def c1_mod(elems: tuple[int, ...], q: int, m: int) -> int:
    digit = {a % m: a for a in elems}
    return len({((a + b - digit[(a + b) % m]) % q) // m for a in elems for b in elems})


def c1_int(elems: tuple[int, ...], m: int) -> int:
    digit = {a % m: a for a in elems}
    return len({(a + b - digit[(a + b) % m]) // m for a in elems for b in elems})
