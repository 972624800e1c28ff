"""Modular arithmetic, digital sets and their symmetry group.

A digital set of cardinality ``m`` is a complete residue system modulo ``m``,
either inside ``Z_q`` (with ``m | q``) or inside the integers.  Dilation by a
unit of ``Z_q`` and translation by an element of ``mZ_q`` map digital sets to
digital sets; canonical forms pick the lexicographically smallest sorted
element tuple of an orbit.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .errors import (
    BadTarget,
    MDoesNotDivideQ,
    NotAUnit,
    NotCompleteResidueSystem,
    ParseError,
    WrongCardinality,
)

__all__ = [
    "Domain",
    "DigitalSet",
    "PrimePowerDecomposition",
    "Translation",
    "factor",
    "decompose",
    "is_admissible",
    "units",
    "validate_digital_set",
    "dilate",
    "translate",
    "canonical_form",
    "dilation_canonical",
    "affine_canonical",
    "project",
    "parse_set_literal",
    "format_set_literal",
]


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

_TRIAL_LIMIT = 10_000


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda x: (x * x + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as a sorted list of ``(prime, exponent)``.

    >>> factor(36)
    [(2, 2), (3, 2)]
    >>> factor(1)
    []
    """
    if n < 1:
        raise ValueError(f"factor() needs a positive integer, got {n}")
    counts: dict[int, int] = {}
    for p in range(2, _TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        k = stack.pop()
        if _is_probable_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        d = _pollard_rho(k)
        stack.extend((d, k // d))
    return sorted(counts.items())


@dataclass(frozen=True)
class PrimePowerDecomposition:
    m: int
    factors: tuple[tuple[int, int], ...]
    p: int
    alpha: int
    m_prime: int
    delta_m: int

    @property
    def prime_power(self) -> int:
        return self.p ** self.alpha


def decompose(m: int) -> PrimePowerDecomposition:
    """Split ``m`` into its largest prime power ``p**alpha`` and the cofactor."""
    if m < 2:
        raise ValueError(f"decompose() needs m >= 2, got {m}")
    fs = factor(m)
    p, alpha = max(fs, key=lambda pe: pe[0] ** pe[1])
    return PrimePowerDecomposition(
        m=m,
        factors=tuple(fs),
        p=p,
        alpha=alpha,
        m_prime=m // p ** alpha,
        delta_m=m % 2,
    )


def is_admissible(q: int, m: int) -> bool:
    """Same prime support, and every exponent in ``q`` strictly above the one in ``m``."""
    fq = dict(factor(q))
    fm = dict(factor(m))
    if set(fq) != set(fm):
        return False
    return all(fq[p] > fm[p] for p in fq)


@lru_cache(maxsize=256)
def units(q: int) -> tuple[int, ...]:
    return tuple(c for c in range(1, q) if math.gcd(c, q) == 1) if q > 1 else (0,)


# ---------------------------------------------------------------------------
# digital sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Domain:
    """``Z_q`` when ``q`` is set, the integers when ``q`` is None."""

    q: Optional[int] = None

    def __post_init__(self):
        if self.q is not None and self.q < 2:
            raise ValueError(f"modular domain needs q >= 2, got {self.q}")

    @classmethod
    def modular(cls, q: int) -> "Domain":
        return cls(q)

    @classmethod
    def integers(cls) -> "Domain":
        return cls(None)

    @property
    def is_modular(self) -> bool:
        return self.q is not None

    def reduce(self, x: int) -> int:
        return x % self.q if self.q is not None else x

    def to_json(self) -> dict:
        if self.q is None:
            return {"kind": "integers"}
        return {"kind": "modular", "q": self.q}

    @classmethod
    def from_json(cls, obj: dict) -> "Domain":
        if obj["kind"] == "integers":
            return cls(None)
        return cls(int(obj["q"]))

    def __str__(self) -> str:
        return "Z" if self.q is None else f"Z_{self.q}"


@dataclass(frozen=True)
class DigitalSet:
    """A validated digital set.  Build with :func:`validate_digital_set`."""

    domain: Domain
    m: int
    elements: tuple[int, ...]

    @property
    def q(self) -> Optional[int]:
        return self.domain.q

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return self.domain.reduce(x) in self.elements

    def __str__(self) -> str:
        return format_set_literal(self)


def validate_digital_set(elements: Iterable[int], domain: Domain, m: int) -> DigitalSet:
    if m < 2:
        raise WrongCardinality(f"m must be at least 2, got {m}")
    if domain.is_modular and domain.q % m:
        raise MDoesNotDivideQ(f"m={m} does not divide q={domain.q}")
    elems = [domain.reduce(int(x)) for x in elements]
    uniq = sorted(set(elems))
    if len(elems) != m or len(uniq) != m:
        raise WrongCardinality(f"expected {m} distinct elements, got {elems}")
    if len({x % m for x in uniq}) != m:
        raise NotCompleteResidueSystem(
            f"{uniq} is not a complete residue system modulo {m}"
        )
    return DigitalSet(domain, m, tuple(uniq))


def _trusted(domain: Domain, m: int, elems) -> DigitalSet:
    return DigitalSet(domain, m, tuple(sorted(elems)))


def dilate(A: DigitalSet, c: int) -> DigitalSet:
    q = A.q
    if q is None:
        raise ValueError("dilate() is defined for modular digital sets only")
    if math.gcd(c, q) != 1:
        raise NotAUnit(f"{c} is not a unit modulo {q}")
    return _trusted(A.domain, A.m, (c * a % q for a in A.elements))


class Translation(NamedTuple):
    elements: tuple[int, ...]
    in_orbit: bool  # d lies in mZ_q
    digital_set: Optional[DigitalSet]


def translate(A: DigitalSet, d: int) -> Translation:
    """Translate by ``d``.

    ``in_orbit`` only says whether ``d`` lies in ``mZ_q``; a translate by any
    other ``d`` can still be a complete residue system but is outside the
    orbit used for carry-set comparisons.
    """
    q = A.q
    if q is None:
        raise ValueError("translate() is defined for modular digital sets only")
    elems = tuple(sorted((a + d) % q for a in A.elements))
    in_orbit = d % A.m == 0
    return Translation(elems, in_orbit, _trusted(A.domain, A.m, elems) if in_orbit else None)


def dilation_canonical(elems, q: int) -> tuple[int, ...]:
    best = None
    for c in units(q):
        img = tuple(sorted(c * a % q for a in elems))
        if best is None or img < best:
            best = img
    return best


def is_dilation_canonical(elems: tuple[int, ...], q: int) -> bool:
    """``elems`` (sorted) is the lexicographic minimum of its dilation orbit."""
    for c in units(q):
        if c != 1 and tuple(sorted(c * a % q for a in elems)) < elems:
            return False
    return True


def affine_canonical(elems, q: int, m: int) -> tuple[int, ...]:
    best = None
    for c in units(q):
        dil = [c * a % q for a in elems]
        for d in range(0, q, m):
            img = tuple(sorted((x + d) % q for x in dil))
            if best is None or img < best:
                best = img
    return best


def canonical_form(A: DigitalSet, relation: str = "dilation") -> DigitalSet:
    """Orbit representative under ``"dilation"`` (units) or ``"affine"`` (units and ``mZ_q``)."""
    if A.q is None:
        raise ValueError("canonical_form() is defined for modular digital sets only")
    if relation == "dilation":
        elems = dilation_canonical(A.elements, A.q)
    elif relation == "affine":
        elems = affine_canonical(A.elements, A.q, A.m)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return DigitalSet(A.domain, A.m, elems)


def project(elements: Iterable[int], Q: int, target: int) -> tuple[int, ...]:
    """Reduce a subset of ``Z_Q`` onto ``Z_target``, where ``target`` is a full p-part of ``Q``."""
    fs = factor(target)
    if len(fs) != 1:
        raise BadTarget(f"{target} is not a prime power")
    p, beta = fs[0]
    if Q % target or (Q // target) % p == 0:
        raise BadTarget(f"{target} is not the full {p}-part of {Q}")
    return tuple(sorted({x % target for x in elements}))


# ---------------------------------------------------------------------------
# set literal text format
# ---------------------------------------------------------------------------

_LITERAL = re.compile(r"^(?:q=(?P<q>\d+)|(?P<z>Z))m=(?P<m>\d+)A=(?P<a>-?\d+(?:,-?\d+)*)$")


def parse_set_literal(text: str) -> DigitalSet:
    """Parse ``q=9 m=3 A=8,0,1`` or ``Z m=3 A=0,1,5`` (whitespace is ignored)."""
    compact = re.sub(r"\s+", "", text)
    match = _LITERAL.match(compact)
    if match is None:
        raise ParseError(f"cannot parse set literal {text!r}")
    domain = Domain.integers() if match["z"] else Domain.modular(int(match["q"]))
    elems = [int(tok) for tok in match["a"].split(",")]
    return validate_digital_set(elems, domain, int(match["m"]))


def format_set_literal(A: DigitalSet) -> str:
    head = "Z" if A.q is None else f"q={A.q}"
    return f"{head} m={A.m} A={','.join(map(str, A.elements))}"
