"""Enumeration of digital sets, extremal searches and theorem sweeps.

The space of digital sets of size ``m`` in ``Z_q`` is a product: one lift
``r + k*m`` (``0 <= k < q/m``) per residue class ``r``.  Enumeration walks
that product as an odometer with class 0 outermost, so a contiguous range of
odometer indices is a shard.  Shard results combine associatively (sum of
counts, min of minima, union of witnesses).
"""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterator, Optional, Union

from . import bounds
from .carry import (
    c1_int,
    c1_mod,
    carry_count_int,
    carry_count_mod,
    carry_report,
    pollard_sum,
    rational_from_json,
    rational_json,
    rep_function,
)
from .errors import ReportIntegrityError, SpaceTooLarge, UnknownTheorem
from .pollard import SAME_DIFF_APS, ap_differences, classify_tightness, has_chowla, reflection_centres
from .ring import (
    DigitalSet,
    Domain,
    affine_canonical,
    dilation_canonical,
    factor,
    is_admissible,
    is_dilation_canonical,
    units,
)

__all__ = [
    "EnumerationPlan",
    "Exhaustive",
    "Random",
    "HillClimb",
    "SearchResult",
    "StructureClass",
    "SweepTask",
    "SweepPartial",
    "VerificationReport",
    "THEOREMS",
    "enumerate_sets",
    "enumerate_window",
    "sweep_shard",
    "run_sweep",
    "min_c1",
    "min_c2",
    "classify_structure",
    "verify_theorem",
]

DEFAULT_BUDGET = 10 ** 8
REPORT_SCHEMA = "carrylab-report/1"
MAX_LISTED = 1000  # cap on violations / equality witnesses stored in a report

REDUCTIONS = ("none", "fix-zero", "dilation")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationPlan:
    q: int
    m: int
    reduction: str = "none"
    partition: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.q % self.m:
            raise ValueError(f"m={self.m} does not divide q={self.q}")
        if self.reduction not in REDUCTIONS:
            raise ValueError(f"unknown reduction {self.reduction!r}")
        index, total = self.partition
        if not 0 <= index < total:
            raise ValueError(f"bad partition {self.partition}")

    @property
    def space_size(self) -> int:
        """Number of digital sets without any reduction."""
        return (self.q // self.m) ** self.m

    @property
    def raw_size(self) -> int:
        """Length of the odometer walked by this plan (before dilation filtering)."""
        if self.reduction == "fix-zero":
            return (self.q // self.m) ** (self.m - 1)
        return self.space_size

    def index_range(self) -> tuple[int, int]:
        index, total = self.partition
        n = self.raw_size
        return n * index // total, n * (index + 1) // total

    def shard(self, index: int, total: int) -> "EnumerationPlan":
        return EnumerationPlan(self.q, self.m, self.reduction, (index, total))


def _odometer(q: int, m: int, fix_zero: bool, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    k = q // m
    free = list(range(1, m)) if fix_zero else list(range(m))
    width = len(free)
    if lo >= hi:
        return
    digits = [0] * width
    rem = lo
    for pos in range(width - 1, -1, -1):
        rem, digits[pos] = divmod(rem, k)
    lift = [0] * m  # class 0 stays at element 0 when pinned
    for pos, r in enumerate(free):
        lift[r] = r + digits[pos] * m
    for _ in range(hi - lo):
        yield tuple(sorted(lift))
        pos = width - 1
        while pos >= 0:
            r = free[pos]
            digits[pos] += 1
            if digits[pos] < k:
                lift[r] += m
                break
            digits[pos] = 0
            lift[r] = r
            pos -= 1


def _iter_tuples(plan: EnumerationPlan) -> Iterator[tuple[int, ...]]:
    lo, hi = plan.index_range()
    it = _odometer(plan.q, plan.m, plan.reduction == "fix-zero", lo, hi)
    if plan.reduction == "dilation":
        return (e for e in it if is_dilation_canonical(e, plan.q))
    return it


def enumerate_sets(plan: EnumerationPlan) -> Iterator[DigitalSet]:
    """Stream every digital set of the (reduced, sharded) plan exactly once."""
    domain = Domain.modular(plan.q)
    for elems in _iter_tuples(plan):
        yield DigitalSet(domain, plan.m, elems)


def enumerate_window(m: int, window: int) -> Iterator[tuple[int, ...]]:
    """Integer digital sets of size ``m`` with every digit in ``[-window, window]``."""
    lifts = [[x for x in range(-window, window + 1) if x % m == r] for r in range(m)]
    if any(not ls for ls in lifts):
        return
    idx = [0] * m
    while True:
        yield tuple(sorted(lifts[r][idx[r]] for r in range(m)))
        pos = m - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < len(lifts[pos]):
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            return


# ---------------------------------------------------------------------------
# sharded min-sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepTask:
    """One statistic swept over all digital sets of size ``m`` in ``Z_q``.

    ``threshold``: values strictly below it are recorded as violations.
    """

    statistic: str  # "c1" or "c2" (c2 is measured as the raw carry count)
    q: int
    m: int
    reduction: str = "none"
    threshold: Optional[int] = None

    def plan(self, index: int = 0, total: int = 1) -> EnumerationPlan:
        return EnumerationPlan(self.q, self.m, self.reduction, (index, total))

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic, "q": self.q, "m": self.m,
            "reduction": self.reduction, "threshold": self.threshold,
        }


@dataclass(frozen=True)
class SweepPartial:
    examined: int = 0
    best: Optional[int] = None
    at_best: int = 0  # raw sets attaining best
    witnesses: frozenset = frozenset()  # canonical tuples attaining best
    violations: tuple = ()  # (elements, value), sorted, capped
    violation_count: int = 0

    def merge(self, other: "SweepPartial") -> "SweepPartial":
        if self.best is None or (other.best is not None and other.best < self.best):
            best, at_best, wits = other.best, other.at_best, other.witnesses
        elif other.best is None or other.best > self.best:
            best, at_best, wits = self.best, self.at_best, self.witnesses
        else:
            best, at_best, wits = self.best, self.at_best + other.at_best, self.witnesses | other.witnesses
        return SweepPartial(
            self.examined + other.examined,
            best,
            at_best,
            wits,
            tuple(sorted(set(self.violations) | set(other.violations))[:MAX_LISTED]),
            self.violation_count + other.violation_count,
        )

    def to_json(self) -> dict:
        return {
            "examined": self.examined,
            "best": self.best,
            "at_best": self.at_best,
            "witnesses": sorted(list(w) for w in self.witnesses),
            "violations": [[list(e), v] for e, v in self.violations],
            "violation_count": self.violation_count,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepPartial":
        return cls(
            obj["examined"], obj["best"], obj["at_best"],
            frozenset(tuple(w) for w in obj["witnesses"]),
            tuple((tuple(e), v) for e, v in obj["violations"]),
            obj["violation_count"],
        )


def _canonical(task: SweepTask, elems: tuple[int, ...]) -> tuple[int, ...]:
    if task.statistic == "c1":
        return affine_canonical(elems, task.q, task.m)
    if task.reduction == "dilation":
        return elems
    return dilation_canonical(elems, task.q)


def sweep_shard(task: SweepTask, index: int = 0, total: int = 1) -> SweepPartial:
    """Evaluate ``task`` on one shard of its enumeration plan."""
    q, m = task.q, task.m
    if task.statistic == "c2":
        stat = lambda e: carry_count_mod(e, q)  # noqa: E731
    elif task.statistic == "c1":
        stat = lambda e: c1_mod(e, q, m)  # noqa: E731
    else:
        raise ValueError(f"unknown statistic {task.statistic!r}")
    examined = 0
    best = None
    raw_best: list = []
    violations = []
    violation_count = 0
    threshold = task.threshold
    for elems in _iter_tuples(task.plan(index, total)):
        examined += 1
        v = stat(elems)
        if threshold is not None and v < threshold:
            violation_count += 1
            if len(violations) < MAX_LISTED:
                violations.append((elems, v))
        if best is None or v < best:
            best = v
            raw_best = [elems]
        elif v == best:
            raw_best.append(elems)
    return SweepPartial(
        examined, best, len(raw_best),
        frozenset(_canonical(task, e) for e in raw_best),
        tuple(sorted(violations)), violation_count,
    )


def _sequential_runner(task: SweepTask, total: int) -> SweepPartial:
    return reduce(SweepPartial.merge, (sweep_shard(task, i, total) for i in range(total)), SweepPartial())


Runner = Callable[[SweepTask, int], SweepPartial]


def run_sweep(task: SweepTask, shards: int = 1, runner: Optional[Runner] = None) -> SweepPartial:
    """Run every shard of ``task`` and merge; ``runner`` may fan shards out to workers."""
    return (runner or _sequential_runner)(task, shards)


# ---------------------------------------------------------------------------
# searches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    name = "exhaustive"


@dataclass(frozen=True)
class Random:
    samples: int
    seed: int = 0
    name = "random"


@dataclass(frozen=True)
class HillClimb:
    restarts: int
    seed: int = 0
    name = "hill-climb"


Mode = Union[Exhaustive, Random, HillClimb]


@dataclass(frozen=True)
class SearchResult:
    statistic: str
    q: int
    m: int
    minimum: Union[int, Fraction]
    raw_minimum: int  # carry count for c2, C1 for c1
    witnesses: tuple  # canonical element tuples
    certified: bool
    examined: int
    space_size: int
    mode: str

    def to_json(self) -> dict:
        minimum = rational_json(self.minimum) if isinstance(self.minimum, Fraction) else self.minimum
        return {
            "statistic": self.statistic, "q": self.q, "m": self.m,
            "minimum": minimum, "raw_minimum": self.raw_minimum,
            "witnesses": [list(w) for w in self.witnesses],
            "certified": self.certified, "examined": self.examined,
            "space_size": self.space_size, "mode": self.mode,
        }


def _random_set(rng: random.Random, q: int, m: int) -> list[int]:
    k = q // m
    return [r + rng.randrange(k) * m for r in range(m)]


def _heuristic(stat: Callable, canon: Callable, q: int, m: int, mode) -> tuple[int, set, int]:
    rng = random.Random(mode.seed)
    k = q // m
    best, wits, examined = None, set(), 0

    def offer(lift):
        nonlocal best, wits, examined
        elems = tuple(sorted(lift))
        v = stat(elems)
        examined += 1
        if best is None or v < best:
            best, wits = v, {canon(elems)}
        elif v == best:
            wits.add(canon(elems))
        return v

    if isinstance(mode, Random):
        for _ in range(mode.samples):
            offer(_random_set(rng, q, m))
        return best, wits, examined
    for _ in range(mode.restarts):
        lift = _random_set(rng, q, m)
        current = offer(lift)
        improved = True
        while improved:
            improved = False
            for r in rng.sample(range(m), m):
                for j in range(k):
                    cand = r + j * m
                    if cand == lift[r]:
                        continue
                    old = lift[r]
                    lift[r] = cand
                    v = offer(lift)
                    if v < current:
                        current, improved = v, True
                    else:
                        lift[r] = old
    return best, wits, examined


def _search(statistic: str, q: int, m: int, mode: Mode, budget: int, shards: int,
            runner: Optional[Runner], reduction: str) -> SearchResult:
    if q % m:
        raise ValueError(f"m={m} does not divide q={q}")
    if not is_admissible(q, m):
        warnings.warn(f"(q={q}, m={m}) is not admissible; bounds may not apply", stacklevel=3)
    space = (q // m) ** m
    if isinstance(mode, Exhaustive):
        task = SweepTask(statistic, q, m, reduction)
        if task.plan().raw_size > budget:
            raise SpaceTooLarge(f"{task.plan().raw_size} candidates exceed the budget {budget}")
        part = run_sweep(task, shards, runner)
        raw, wits, examined, certified = part.best, part.witnesses, part.examined, True
    else:
        if statistic == "c2":
            stat = lambda e: carry_count_mod(e, q)  # noqa: E731
            canon = lambda e: dilation_canonical(e, q)  # noqa: E731
        else:
            stat = lambda e: c1_mod(e, q, m)  # noqa: E731
            canon = lambda e: affine_canonical(e, q, m)  # noqa: E731
        raw, wits, examined = _heuristic(stat, canon, q, m, mode)
        certified = False
    minimum = Fraction(raw, m * m) if statistic == "c2" else raw
    return SearchResult(statistic, q, m, minimum, raw, tuple(sorted(wits)), certified,
                        examined, space, mode.name)


def min_c2(q: int, m: int, mode: Mode = Exhaustive(), budget: int = DEFAULT_BUDGET,
           shards: int = 1, runner: Optional[Runner] = None, reduction: str = "none") -> SearchResult:
    """Minimum carry frequency; witnesses are dilation-canonical.

    Translations change the carry frequency, so ``fix-zero`` is refused.
    """
    if reduction == "fix-zero":
        raise ValueError("fix-zero reduction is unsound for c2 (not translation invariant)")
    return _search("c2", q, m, mode, budget, shards, runner, reduction)


def min_c1(q: int, m: int, mode: Mode = Exhaustive(), budget: int = DEFAULT_BUDGET,
           shards: int = 1, runner: Optional[Runner] = None, reduction: str = "fix-zero") -> SearchResult:
    """Minimum number of distinct carries; witnesses are affine-canonical."""
    return _search("c1", q, m, mode, budget, shards, runner, reduction)


# ---------------------------------------------------------------------------
# structure classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureClass:
    kind: str  # SymmetricIntervalDilation | IntervalAffine | APSameDifference | Other
    c: Optional[int] = None
    d: Optional[int] = None
    variant: Optional[str] = None

    def to_json(self) -> dict:
        return {k: v for k, v in (("kind", self.kind), ("c", self.c), ("d", self.d),
                                  ("variant", self.variant)) if v is not None}

    @classmethod
    def from_json(cls, obj: dict) -> "StructureClass":
        return cls(obj["kind"], obj.get("c"), obj.get("d"), obj.get("variant"))

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.to_json().items() if k != "kind")
        return f"{self.kind}({args})"


def centered_intervals(m: int) -> list[tuple[str, tuple[int, ...]]]:
    if m % 2:
        h = (m - 1) // 2
        return [("centered", tuple(range(-h, h + 1)))]
    h = m // 2
    return [("(-m/2,m/2]", tuple(range(-h + 1, h + 1))), ("[-m/2,m/2)", tuple(range(-h, h)))]


def digit_intervals(m: int) -> list[tuple[str, tuple[int, ...]]]:
    return [("ZeroToM-1", tuple(range(m))), ("OneToM", tuple(range(1, m + 1)))]


def _classify_mod(elems: tuple[int, ...], q: int, m: int, purpose: str) -> Optional[StructureClass]:
    target = elems
    if purpose == "c2":
        shapes = centered_intervals(m)
        for c in units(q):
            for variant, interval in shapes:
                if tuple(sorted(c * x % q for x in interval)) == target:
                    return StructureClass("SymmetricIntervalDilation", c=c, variant=variant)
        return None
    for c in units(q):
        dil = [c * a % q for a in elems]
        for variant, interval in digit_intervals(m):
            lead = interval[0]
            # the translation must send the element of lead's class onto lead
            x = next(v for v in dil if (v - lead) % m == 0)
            d = (lead - x) % q
            if {(v + d) % q for v in dil} == {y % q for y in interval}:
                return StructureClass("IntervalAffine", c=c, d=d, variant=variant)
    return None


def _classify_int(elems: tuple[int, ...], m: int, purpose: str) -> Optional[StructureClass]:
    diffs = ap_differences(elems)
    if not diffs:
        return None
    (g,) = diffs
    if math.gcd(g, m) != 1:
        return None
    shapes = centered_intervals(m) if purpose == "c2" else digit_intervals(m)
    for c in (g, -g):
        for variant, interval in shapes:
            img = sorted(c * x for x in interval)
            d = elems[0] - img[0]
            if purpose == "c2":
                if d == 0:
                    return StructureClass("SymmetricIntervalDilation", c=c, variant=variant)
            elif d % m == 0 and tuple(x + d for x in img) == elems:
                return StructureClass("IntervalAffine", c=c, d=d, variant=variant)
    return None


def classify_structure(A: Union[DigitalSet, tuple], purpose: str = "c2", q: Optional[int] = None,
                       m: Optional[int] = None) -> StructureClass:
    """Name the orbit ``A`` belongs to.

    ``purpose="c2"``: dilations of a centered interval (``A = c * I``).
    ``purpose="c1"``: affine images of ``[0, m-1]`` or ``[1, m]``; modularly
    ``c*A + d = I`` with ``d`` in ``mZ_q``, over the integers ``A = c*I + d``
    with ``d`` in ``mZ``.  Falls back to an arithmetic-progression label,
    then ``Other``.
    """
    if purpose not in ("c1", "c2"):
        raise ValueError(f"purpose must be 'c1' or 'c2', got {purpose!r}")
    if isinstance(A, DigitalSet):
        elems, q, m = A.elements, A.q, A.m
    else:
        elems = tuple(sorted(A))
    if q is not None:
        found = _classify_mod(elems, q, m, purpose)
    else:
        found = _classify_int(elems, m, purpose)
    if found is not None:
        return found
    diffs = ap_differences(elems, q)
    if diffs:
        return StructureClass("APSameDifference", d=min(diffs))
    return StructureClass("Other")


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------


def jsonify(value):
    if isinstance(value, Fraction):
        return rational_json(value)
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    return value


def unjsonify(value):
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return rational_from_json(value)
        return {k: unjsonify(v) for k, v in value.items()}
    if isinstance(value, list):
        return [unjsonify(v) for v in value]
    return value


@dataclass
class VerificationReport:
    theorem_id: str
    parameters: dict
    candidates_examined: int
    violations: list
    equality_witnesses: list
    min_observed: object
    elapsed: float
    seed: int
    violation_count: int = 0
    equality_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0 and not self.violations

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "theorem_id": self.theorem_id,
            "parameters": jsonify(self.parameters),
            "candidates_examined": self.candidates_examined,
            "violation_count": self.violation_count,
            "violations": jsonify(self.violations),
            "equality_count": self.equality_count,
            "equality_witnesses": jsonify(self.equality_witnesses),
            "min_observed": jsonify(self.min_observed),
            "notes": jsonify(self.notes),
            "seed": self.seed,
            "elapsed": self.elapsed,
        }

    @classmethod
    def from_json(cls, obj: dict, revalidate: bool = True) -> "VerificationReport":
        if obj.get("schema") != REPORT_SCHEMA:
            raise ReportIntegrityError(f"unsupported schema {obj.get('schema')!r}")
        report = cls(
            obj["theorem_id"], unjsonify(obj["parameters"]), obj["candidates_examined"],
            unjsonify(obj["violations"]), unjsonify(obj["equality_witnesses"]),
            unjsonify(obj["min_observed"]), obj["elapsed"], obj["seed"],
            obj["violation_count"], obj["equality_count"], unjsonify(obj["notes"]),
        )
        if revalidate:
            for w in report.equality_witnesses:
                revalidate_witness(w)
        return report


def _pair_witness(q, A, B, t, value, bound, relation, **extra) -> dict:
    w = {"kind": "pair-sum", "q": q, "A": list(A), "B": list(B), "t": t,
         "value": value, "bound": bound, "relation": relation}
    w.update(extra)
    return w


def _set_witness(kind, q, m, A, value, bound, relation, **extra) -> dict:
    w = {"kind": kind, "q": q, "m": m, "A": list(A), "value": value,
         "bound": bound, "relation": relation}
    w.update(extra)
    return w


def revalidate_witness(w: dict) -> None:
    """Recompute a stored witness through the public API and check it against its bound."""
    kind = w["kind"]
    if kind == "pair-sum":
        value = pollard_sum(w["A"], w["B"], w["t"], w["q"])
    elif kind in ("carry-count", "c1"):
        from .ring import validate_digital_set

        domain = Domain(w["q"])
        rep = carry_report(validate_digital_set(w["A"], domain, w["m"]))
        value = rep.carry_count if kind == "carry-count" else rep.c1
    else:
        raise ReportIntegrityError(f"unknown witness kind {kind!r}")
    if value != w["value"]:
        raise ReportIntegrityError(f"witness recomputes to {value}, report says {w['value']}: {w}")
    ok = {"eq": value == w["bound"], "ge": value >= w["bound"]}[w["relation"]]
    if not ok:
        raise ReportIntegrityError(f"witness fails its bound ({w['relation']} {w['bound']}): {w}")


# ---------------------------------------------------------------------------
# theorem sweeps
# ---------------------------------------------------------------------------


class _Collector:
    def __init__(self):
        self.violations: list = []
        self.violation_count = 0
        self.witnesses: list = []
        self.equality_count = 0

    def violation(self, item: dict) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_LISTED:
            self.violations.append(item)

    def equality(self, item: dict) -> None:
        self.equality_count += 1
        if len(self.witnesses) < MAX_LISTED:
            self.witnesses.append(item)


def _digital_tuples(q: int, m: int) -> list[tuple[int, ...]]:
    return list(_iter_tuples(EnumerationPlan(q, m)))


def _profile_counts(ea, eb, q):
    counts: dict = {}
    for a in ea:
        for b in eb:
            s = (a + b) % q
            counts[s] = counts.get(s, 0) + 1
    return counts.values()


def _pair_sweep(theorem_id: str, q: int, m: int, checks: list[tuple[int, int]], budget: int,
                seed: int, samples: Optional[int]) -> tuple[_Collector, int, dict, dict]:
    """Pollard-sum lower bounds plus equality-iff-same-difference-AP over digital pairs.

    ``checks`` lists ``(t, threshold)``.  Exhaustive over all ordered pairs
    unless ``samples`` is given; sampled runs still visit every diagonal pair
    and every same-difference AP pair.  Equalities outside the AP family are
    violations; each is tagged with a reflection centre ``g`` (``B = g - A``)
    when one exists.
    """
    sets = _digital_tuples(q, m)
    diffs = [ap_differences(e, q) or frozenset() for e in sets]
    n = len(sets)
    if samples is None:
        if n * n > budget:
            raise SpaceTooLarge(f"{n * n} pairs exceed the budget {budget}; pass samples")
        pairs: object = ((i, j) for i in range(n) for j in range(n))
        sampling = {"mode": "exhaustive", "pairs": n * n}
    else:
        by_diff: dict = {}
        for i, ds in enumerate(diffs):
            for d in ds:
                by_diff.setdefault(d, []).append(i)
        ap_pairs = sorted({(i, j) for members in by_diff.values() for i in members for j in members})
        rng = random.Random(seed)
        sampled = [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        diagonal = [(i, i) for i in range(n)]
        pairs = diagonal + ap_pairs + sampled
        sampling = {"mode": "sampled", "diagonal": n, "ap_pairs": len(ap_pairs), "samples": samples}
    out = _Collector()
    mins: dict = {t: None for t, _ in checks}
    # equalities outside the AP family, split by whether B = g - A explains them
    stray = {"reflection": 0, "other": 0}
    examined = 0
    for i, j in pairs:
        examined += 1
        A, B = sets[i], sets[j]
        counts = _profile_counts(A, B, q)
        same_ap = bool(diffs[i] & diffs[j])
        for t, threshold in checks:
            S = sum(min(t, r) for r in counts)
            if mins[t] is None or S < mins[t]:
                mins[t] = S
            if S < threshold:
                out.violation(_pair_witness(q, A, B, t, S, threshold, "ge", issue="below-bound"))
                continue
            if S != threshold:
                if same_ap:
                    out.violation(_pair_witness(q, A, B, t, S, threshold, "ge", issue="ap-not-equality"))
                continue
            if same_ap:
                out.equality(_pair_witness(q, A, B, t, S, threshold, "eq", structure="APSameDifference",
                                           d=min(diffs[i] & diffs[j])))
                continue
            centres = reflection_centres(A, B, q)
            stray["reflection" if centres else "other"] += 1
            extra = {"structure": "Reflection", "g": centres[0]} if centres else {"structure": "Other"}
            w = _pair_witness(q, A, B, t, S, threshold, "eq", **extra)
            out.violation(dict(w, issue="equality-not-ap"))
            out.equality(w)
    notes = {"sampling": sampling, "equality_not_ap": stray}
    return out, examined, {f"S(t={t})": v for t, v in mins.items()}, notes


def _prime_power(n: int, name: str) -> tuple[int, int]:
    fs = factor(n)
    if len(fs) != 1:
        raise ValueError(f"{name}={n} is not a prime power")
    return fs[0]


def _verify_thm22(params, budget, seed, samples, runner, shards):
    p, alpha, beta = params["p"], params["alpha"], params["beta"]
    if p % 2 == 0 or not 0 < alpha < beta:
        raise ValueError("thm22 needs odd p and 0 < alpha < beta")
    checks = [bounds.thm22_threshold(p, alpha, "minus"), bounds.thm22_threshold(p, alpha, "plus")]
    out, examined, mins, notes = _pair_sweep("thm22", p ** beta, p ** alpha, checks, budget, seed, samples)
    notes["thresholds"] = {f"t={t}": th for t, th in checks}
    return out, examined, mins, notes


def _verify_thm23(params, budget, seed, samples, runner, shards):
    alpha, beta = params["alpha"], params["beta"]
    if not 0 < alpha < beta:
        raise ValueError("thm23 needs 0 < alpha < beta")
    checks = [bounds.thm23_threshold(alpha)]
    out, examined, mins, notes = _pair_sweep("thm23", 2 ** beta, 2 ** alpha, checks, budget, seed, samples)
    notes["thresholds"] = {f"t={t}": th for t, th in checks}
    return out, examined, mins, notes


def _subsets(q: int) -> list[tuple[int, ...]]:
    return [tuple(x for x in range(q) if mask >> x & 1) for mask in range(1, 1 << q)]


def _verify_pollard(params, budget, seed, samples, runner, shards):
    q = params["q"]
    subs = _subsets(q)
    if len(subs) ** 2 > budget:
        raise SpaceTooLarge(f"{len(subs) ** 2} subset pairs exceed the budget {budget}")
    chowla = [has_chowla(s, q) for s in subs]
    out = _Collector()
    examined = 0
    tight = 0
    for i, A in enumerate(subs):
        for j, B in enumerate(subs):
            if not (chowla[i] or chowla[j]):
                continue
            counts = list(_profile_counts(A, B, q))
            for t in range(1, min(len(A), len(B)) + 1):
                examined += 1
                S = sum(min(t, r) for r in counts)
                bound = t * min(q, len(A) + len(B) - t)
                if S < bound:
                    out.violation(_pair_witness(q, A, B, t, S, bound, "ge", issue="below-bound"))
                elif S == bound:
                    tight += 1
    notes = {"tight_cases": tight}
    return out, examined, None, notes


def _verify_naz(params, budget, seed, samples, runner, shards):
    q = params["q"]
    subs = _subsets(q)
    if len(subs) ** 2 > budget:
        raise SpaceTooLarge(f"{len(subs) ** 2} subset pairs exceed the budget {budget}")
    chowla_bs = [B for B in subs if len(B) >= 2 and has_chowla(B, q)]
    out = _Collector()
    examined = 0
    combos: dict = {}
    for B in chowla_bs:
        for A in subs:
            if len(A) < len(B):
                continue
            counts = list(_profile_counts(A, B, q))
            for t in range(2, len(B) + 1):
                examined += 1
                S = sum(min(t, r) for r in counts)
                bound = t * min(q, len(A) + len(B) - t)
                if S < bound:
                    out.violation(_pair_witness(q, A, B, t, S, bound, "ge", issue="below-bound"))
                    continue
                if S != bound:
                    continue
                cls = classify_tightness(A, B, t, q)
                tags = sorted(cls.conditions)
                key = "+".join(tags) or "NONE"
                combos[key] = combos.get(key, 0) + 1
                witness = _pair_witness(q, A, B, t, S, bound, "eq", conditions=cls.to_json()["conditions"])
                if not tags:
                    out.violation(dict(witness, issue="unexplained-equality"))
                out.equality(witness)
    notes = {"condition_combinations": dict(sorted(combos.items())), "chowla_B_sets": len(chowla_bs)}
    return out, examined, None, notes


def _set_sweep(statistic, q, m, threshold, reduction, budget, runner, shards) -> SweepPartial:
    task = SweepTask(statistic, q, m, reduction, threshold)
    if task.plan().raw_size > budget:
        raise SpaceTooLarge(f"{task.plan().raw_size} candidates exceed the budget {budget}")
    return run_sweep(task, shards, runner)


def _verify_c2_mu(params, budget, seed, samples, runner, shards):
    q, m = params["q"], params["m"]
    bound = bounds.mu(m).mu
    threshold = math.ceil(bound * m * m)
    part = _set_sweep("c2", q, m, threshold, "none", budget, runner, shards)
    out = _Collector()
    for elems, v in part.violations:
        out.violation(_set_witness("carry-count", q, m, elems, v, bound * m * m, "ge", issue="below-mu"))
    out.violation_count = part.violation_count
    minimum = Fraction(part.best, m * m)
    classes = {}
    for w in sorted(part.witnesses):
        cls = classify_structure(w, "c2", q=q, m=m)
        classes[str(cls)] = classes.get(str(cls), 0) + 1
        out.equality(_set_witness("carry-count", q, m, w, part.best, bound * m * m, "ge",
                                  structure=cls.to_json()))
    notes = {
        "mu": bound, "gap": minimum - bound, "admissible": is_admissible(q, m),
        "minimizers_raw": part.at_best, "minimizer_classes": classes,
    }
    return out, part.examined, minimum, notes


def _verify_c1_structure(params, budget, seed, samples, runner, shards):
    q, m = params["q"], params["m"]
    part = _set_sweep("c1", q, m, 2, "fix-zero", budget, runner, shards)
    out = _Collector()
    for elems, v in part.violations:
        out.violation(_set_witness("c1", q, m, elems, v, 2, "ge", issue="c1-below-2"))
    out.violation_count = part.violation_count
    if part.best != 2:
        out.violation({"issue": "minimum-not-2", "minimum": part.best})
    for w in sorted(part.witnesses):
        cls = classify_structure(w, "c1", q=q, m=m)
        witness = _set_witness("c1", q, m, w, part.best, 2, "ge", structure=cls.to_json())
        if part.best == 2 and cls.kind != "IntervalAffine":
            out.violation(dict(witness, issue="unstructured-minimizer"))
        out.equality(witness)
    notes = {"admissible": is_admissible(q, m), "minimizers_raw_fix_zero": part.at_best,
             "affine_classes": len(part.witnesses)}
    return out, part.examined, part.best, notes


def _verify_z_case(params, budget, seed, samples, runner, shards):
    m = params["m"]
    window = params.get("window") or m
    sets = list(enumerate_window(m, window))
    if len(sets) > budget:
        raise SpaceTooLarge(f"{len(sets)} candidates exceed the budget {budget}")
    floor_bound = bounds.interval_carry_count(m)
    out = _Collector()
    c2_vals = {e: carry_count_int(e) for e in sets}
    c1_vals = {e: c1_int(e, m) for e in sets}
    min2, min1 = min(c2_vals.values()), min(c1_vals.values())
    for e in sets:
        if c2_vals[e] < floor_bound:
            out.violation(_set_witness("carry-count", None, m, e, c2_vals[e], floor_bound, "ge", issue="below-floor"))
        if c1_vals[e] < 2:
            out.violation(_set_witness("c1", None, m, e, c1_vals[e], 2, "ge", issue="c1-below-2"))
    balanced = centered_intervals(m)[0][1]  # (-m/2, m/2]
    digits = tuple(range(m))
    if balanced not in c2_vals or c2_vals[balanced] != min2 or min2 != floor_bound:
        out.violation({"issue": "balanced-interval-not-minimal", "interval": list(balanced), "minimum": min2})
    if digits not in c1_vals or c1_vals[digits] != min1 or min1 != 2:
        out.violation({"issue": "digit-interval-not-c1-minimal", "interval": list(digits), "minimum": min1})
    for e in sets:
        if c2_vals[e] == min2:
            cls = classify_structure(e, "c2", q=None, m=m)
            w = _set_witness("carry-count", None, m, e, min2, floor_bound, "eq", structure=cls.to_json())
            if cls.kind != "SymmetricIntervalDilation":
                out.violation(dict(w, issue="unstructured-minimizer"))
            out.equality(w)
        if c1_vals[e] == min1:
            cls = classify_structure(e, "c1", q=None, m=m)
            w = _set_witness("c1", None, m, e, min1, 2, "eq", structure=cls.to_json())
            if cls.kind != "IntervalAffine":
                out.violation(dict(w, issue="unstructured-c1-minimizer"))
            out.equality(w)
    notes = {"window": window, "scope": "window-complete", "floor_m2_over_4": floor_bound}
    return out, len(sets), {"carry_count": min2, "c1": min1}, notes


def _verify_prime_power(params, budget, seed, samples, runner, shards):
    p, alpha, beta = params["p"], params["alpha"], params["beta"]
    if not 0 < alpha < beta:
        raise ValueError("prime-power-extremal needs 0 < alpha < beta")
    q, m = p ** beta, p ** alpha
    sq_bound = m * m // 4
    lin_bound = m // 4
    part = _set_sweep("c2", q, m, sq_bound, "none", budget, runner, shards)
    out = _Collector()
    for elems, v in part.violations:
        out.violation(_set_witness("carry-count", q, m, elems, v, sq_bound, "ge", issue="below-floor"))
    out.violation_count = part.violation_count
    for w in sorted(part.witnesses):
        cls = classify_structure(w, "c2", q=q, m=m)
        witness = _set_witness("carry-count", q, m, w, part.best, sq_bound,
                               "eq" if part.best == sq_bound else "ge", structure=cls.to_json())
        if part.best == sq_bound and cls.kind != "SymmetricIntervalDilation":
            out.violation(dict(witness, issue="minimizer-not-symmetric-interval"))
        out.equality(witness)
    # converse direction: every dilated symmetric interval attains the bound
    for _, interval in centered_intervals(m):
        for c in units(q):
            elems = tuple(sorted(c * x % q for x in interval))
            v = carry_count_mod(elems, q)
            if v != sq_bound:
                out.violation(_set_witness("carry-count", q, m, elems, v, sq_bound, "eq",
                                           issue="symmetric-interval-not-extremal"))
    printed = p ** (alpha - 1)
    notes = {
        "reading_floor_p2a_over_4": {"bound": sq_bound, "holds": part.best >= sq_bound,
                                     "tight": part.best == sq_bound},
        "reading_floor_pa_over_4": {"bound": lin_bound, "holds": part.best >= lin_bound,
                                    "tight": part.best == lin_bound},
        "printed_interval_size": printed,
        "printed_interval_is_digital": printed == m,
        "minimizers_raw": part.at_best,
    }
    return out, part.examined, part.best, notes


THEOREMS = {
    "pollard-chowla": (_verify_pollard, ("q",)),
    "naz-equality": (_verify_naz, ("q",)),
    "thm22": (_verify_thm22, ("p", "alpha", "beta")),
    "thm23": (_verify_thm23, ("alpha", "beta")),
    "c1-structure": (_verify_c1_structure, ("q", "m")),
    "c2-mu": (_verify_c2_mu, ("q", "m")),
    "z-case": (_verify_z_case, ("m",)),
    "prime-power-extremal": (_verify_prime_power, ("p", "alpha", "beta")),
}


def verify_theorem(theorem_id: str, params: dict, budget: int = DEFAULT_BUDGET, seed: int = 0,
                   samples: Optional[int] = None, runner: Optional[Runner] = None,
                   shards: int = 1) -> VerificationReport:
    """Sweep one claim over a finite parameter space and collect violations and equality cases."""
    if theorem_id not in THEOREMS:
        raise UnknownTheorem(f"unknown theorem {theorem_id!r}; choose from {sorted(THEOREMS)}")
    fn, required = THEOREMS[theorem_id]
    missing = [k for k in required if params.get(k) is None]
    if missing:
        raise ValueError(f"{theorem_id} needs parameters {missing}")
    start = time.perf_counter()
    out, examined, minimum, notes = fn(params, budget, seed, samples, runner, shards)
    elapsed = time.perf_counter() - start
    recorded = {k: v for k, v in sorted(params.items()) if v is not None}
    recorded.update(budget=budget, samples=samples)
    return VerificationReport(
        theorem_id, recorded, examined, out.violations, out.witnesses, minimum,
        round(elapsed, 6), seed, out.violation_count, out.equality_count, notes,
    )
