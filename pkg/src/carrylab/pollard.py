"""Chowla property, Pollard's inequality and its equality cases."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .carry import SetLike, profile_sum, rep_function
from .errors import BadT, ChowlaViolation, HypothesesNotMet
from .ring import DigitalSet

__all__ = [
    "B_EQUALS_T",
    "SIZES_EXCEED_Q",
    "REFLECTION",
    "SAME_DIFF_APS",
    "PollardCheck",
    "TightnessClassification",
    "has_chowla",
    "pollard_bound",
    "pollard_check",
    "classify_tightness",
    "ap_differences",
    "is_ap",
    "same_difference_aps",
    "triangular_psi",
    "reflection_centres",
]

B_EQUALS_T = "B_EQUALS_T"
SIZES_EXCEED_Q = "SIZES_EXCEED_Q"
REFLECTION = "REFLECTION"
SAME_DIFF_APS = "SAME_DIFF_APS"


def _elements(A: SetLike, q: Optional[int]) -> tuple[int, ...]:
    if isinstance(A, DigitalSet):
        return A.elements
    return tuple(sorted({x % q for x in A} if q else set(A)))


def _modulus(A: SetLike, q: Optional[int]) -> Optional[int]:
    if q is None and isinstance(A, DigitalSet):
        return A.q
    return q


def has_chowla(A: SetLike, q: Optional[int] = None) -> bool:
    """Every difference of two distinct elements is a unit modulo ``q``."""
    q = _modulus(A, q)
    if q is None:
        raise ValueError("the Chowla property needs a modulus")
    elems = _elements(A, q)
    return all(math.gcd(b - a, q) == 1 for i, a in enumerate(elems) for b in elems[i + 1:])


def pollard_bound(q: int, nA: int, nB: int, t: int) -> int:
    if not 1 <= t <= min(nA, nB):
        raise BadT(f"need 1 <= t <= min(|A|, |B|) = {min(nA, nB)}, got t={t}")
    return t * min(q, nA + nB - t)


class PollardCheck(NamedTuple):
    S: int
    bound: int
    tight: bool
    applicable: bool  # A or B has the Chowla property


def pollard_check(A: SetLike, B: SetLike, t: int, q: Optional[int] = None,
                  require_chowla: bool = False) -> PollardCheck:
    q = _modulus(A, q) or _modulus(B, q)
    ea, eb = _elements(A, q), _elements(B, q)
    bound = pollard_bound(q, len(ea), len(eb), t)
    applicable = has_chowla(ea, q) or has_chowla(eb, q)
    if require_chowla and not applicable:
        raise ChowlaViolation("neither set has the Chowla property")
    S = profile_sum(rep_function(ea, eb, q), t)
    if applicable and S < bound:
        raise AssertionError(f"Pollard's inequality fails: S={S} < {bound} for {ea}, {eb}, t={t}")
    return PollardCheck(S, bound, S == bound, applicable)


# ---------------------------------------------------------------------------
# arithmetic progressions
# ---------------------------------------------------------------------------


def ap_differences(A: Iterable[int], q: Optional[int] = None) -> Optional[frozenset]:
    """All common differences with which ``A`` is an arithmetic progression.

    Differences are canonical: ``min(d, q - d)`` in ``Z_q``, positive in ``Z``.
    Returns None for sets of size <= 1 (progressions of every difference) and
    an empty set when ``A`` is not a progression.
    """
    elems = sorted({x % q for x in A} if q else set(A))
    n = len(elems)
    if n <= 1:
        return None
    if q is None:
        d = elems[1] - elems[0]
        ok = all(b - a == d for a, b in zip(elems, elems[1:]))
        return frozenset([d] if ok else [])
    members = set(elems)
    a0 = elems[0]
    candidates = {min((a - a0) % q, (a0 - a) % q) for a in elems[1:]}
    found = set()
    for d in candidates:
        links = sum(1 for a in elems if (a + d) % q in members)
        if links == n:
            # union of full cosets of <d>; a progression only if it is one coset
            if n == q // math.gcd(d, q):
                found.add(d)
            continue
        if links != n - 1:
            continue
        start = next(a for a in elems if (a - d) % q not in members)
        if {(start + k * d) % q for k in range(n)} == members:
            found.add(d)
    return frozenset(found)


def is_ap(A: Iterable[int], q: Optional[int] = None) -> Optional[int]:
    """Canonical common difference of ``A`` if it is a progression, else None (0 for size <= 1)."""
    diffs = ap_differences(A, q)
    if diffs is None:
        return 0
    return min(diffs) if diffs else None


def same_difference_aps(A: Iterable[int], B: Iterable[int], q: Optional[int] = None) -> Optional[int]:
    """Smallest common difference for which both sets are progressions, else None."""
    da, db = ap_differences(A, q), ap_differences(B, q)
    if da is None and db is None:
        return 0
    if da is None:
        return min(db) if db else None
    if db is None:
        return min(da) if da else None
    common = da & db
    return min(common) if common else None


def triangular_psi(L: int, x: int) -> int:
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    return max(0, L - abs(x))


# ---------------------------------------------------------------------------
# equality cases of Pollard's inequality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TightnessClassification:
    S: int
    bound: int
    tight: bool
    conditions: dict = field(default_factory=dict)  # tag -> witness data

    def to_json(self) -> dict:
        return {
            "S": self.S,
            "bound": self.bound,
            "tight": self.tight,
            "conditions": {tag: self.conditions[tag] for tag in sorted(self.conditions)},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TightnessClassification":
        return cls(int(obj["S"]), int(obj["bound"]), bool(obj["tight"]), dict(obj["conditions"]))


def reflection_centres(src: tuple[int, ...], dst: tuple[int, ...], q: int) -> list[int]:
    """All g with dst = g - src."""
    target = set(dst)
    return sorted(
        g for g in {(dst[0] + a) % q for a in src}
        if {(g - a) % q for a in src} == target
    )


def classify_tightness(A: SetLike, B: SetLike, t: int, q: Optional[int] = None) -> TightnessClassification:
    """Evaluate each of the four equality conditions independently and report all that hold."""
    q = _modulus(A, q) or _modulus(B, q)
    ea, eb = _elements(A, q), _elements(B, q)
    nA, nB = len(ea), len(eb)
    if not 2 <= t <= nB <= nA:
        raise HypothesesNotMet(f"need 2 <= t <= |B| <= |A|, got t={t}, |B|={nB}, |A|={nA}")
    if not has_chowla(eb, q):
        raise HypothesesNotMet("B lacks the Chowla property")
    S = profile_sum(rep_function(ea, eb, q), t)
    bound = pollard_bound(q, nA, nB, t)
    conditions: dict = {}
    if nB == t:
        conditions[B_EQUALS_T] = {}
    if nA + nB >= q + t:
        conditions[SIZES_EXCEED_Q] = {}
    if nA == nB == t + 1:
        b_side = reflection_centres(ea, eb, q)
        a_side = reflection_centres(eb, ea, q)
        if b_side or a_side:
            g = (b_side or a_side)[0]
            sides = [s for s, ok in (("B=g-A", b_side), ("A=g-B", a_side)) if ok]
            conditions[REFLECTION] = {"g": g, "sides": sides}
    d = same_difference_aps(ea, eb, q)
    if d is not None:
        conditions[SAME_DIFF_APS] = {"d": d}
    return TightnessClassification(S, bound, S == bound, conditions)
