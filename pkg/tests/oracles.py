"""Brute-force reference implementations, written straight from the definitions.

Nothing here imports carrylab: these are the independent side of every
dual-route check in the suite.
"""

import itertools
import math
from fractions import Fraction


def brute_factor(n):
    out = []
    for p in range(2, n + 1):
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        if n == 1:
            break
    return out


def all_digital_sets(q, m):
    """Every m-subset of Z_q that hits each class mod m once (via combinations, not lifts)."""
    for combo in itertools.combinations(range(q), m):
        if len({x % m for x in combo}) == m:
            yield combo


def window_digital_sets(m, w):
    for combo in itertools.combinations(range(-w, w + 1), m):
        if len({x % m for x in combo}) == m:
            yield combo


def carries(A, m, q=None):
    """Multiset of carries over all ordered pairs, straight from the definition."""
    out = []
    for a1 in A:
        for a2 in A:
            (a,) = [x for x in A if (a1 + a2 - x) % m == 0]
            num = a1 + a2 - a
            if q is None:
                out.append(num // m)
            else:
                num %= q
                assert num % m == 0
                out.append(num // m)
    return out


def c1(A, m, q=None):
    return len(set(carries(A, m, q)))


def carry_count(A, m, q=None):
    return sum(1 for c in carries(A, m, q) if c != 0)


def c2(A, m, q=None):
    return Fraction(carry_count(A, m, q), m * m)


def r(A, B, x, q=None):
    if q is None:
        return sum(1 for a in A for b in B if a + b == x)
    return sum(1 for a in A for b in B if (a + b - x) % q == 0)


def S(A, B, t, q):
    return sum(min(t, r(A, B, x, q)) for x in range(q))


def is_progression(A, d, q=None):
    """A = {s, s+d, ..., s+(n-1)d} with distinct terms, for some start s."""
    A = set(A)
    n = len(A)
    starts = A if q is None else range(q)
    for s in starts:
        terms = [s + k * d if q is None else (s + k * d) % q for k in range(n)]
        if len(set(terms)) == n and set(terms) == A:
            return True
    return False


def same_diff_aps(A, B, q):
    if len(A) <= 1 or len(B) <= 1:
        raise ValueError("only used for sets of size >= 2")
    return any(is_progression(A, d, q) and is_progression(B, d, q) for d in range(1, q))


def chowla(A, q):
    return all(math.gcd(a - b, q) == 1 for a in A for b in A if a != b)


def dilation_orbit(A, q):
    return {tuple(sorted(c * a % q for a in A)) for c in range(1, q) if math.gcd(c, q) == 1}


def affine_orbit(A, q, m):
    return {
        tuple(sorted((c * a + d) % q for a in A))
        for c in range(1, q) if math.gcd(c, q) == 1
        for d in range(0, q, m)
    }
