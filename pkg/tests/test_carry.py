import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carrylab.carry import (
    CarryReport,
    SumsetProfile,
    c1_int,
    c1_mod,
    carry_count_int,
    carry_count_mod,
    carry_of,
    carry_report,
    digit_of,
    layered_size,
    pollard_sum,
    rep_function,
)
from carrylab.errors import DomainMismatch
from carrylab.ring import Domain, dilate, translate, units, validate_digital_set

import oracles


def ds(elems, q, m):
    return validate_digital_set(elems, Domain.modular(q), m)


def zds(elems, m):
    return validate_digital_set(elems, Domain.integers(), m)


class TestRepFunction:
    def test_interval(self):
        p = rep_function(ds({0, 1, 2}, 9, 3), ds({0, 1, 2}, 9, 3))
        assert p.counts == {0: 1, 1: 2, 2: 3, 3: 2, 4: 1}
        assert p.total == 9

    def test_wrapped_interval(self):
        A = ds({8, 0, 1}, 9, 3)
        assert rep_function(A, A).counts == {7: 1, 8: 2, 0: 3, 1: 2, 2: 1}

    def test_singletons(self):
        assert rep_function({4}, {7}, q=9).counts == {2: 1}
        assert rep_function({4}, {7}).counts == {11: 1}

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            rep_function(ds({0, 1, 2}, 9, 3), ds({0, 1, 2}, 27, 3))
        with pytest.raises(DomainMismatch):
            rep_function(ds({0, 1, 2}, 9, 3), {0, 1}, q=27)

    def test_sparse_and_dense_paths_agree(self):
        # |A||B| < q takes the sparse path, >= q the dense one
        A, B = (0, 5, 17, 40), (3, 4, 90)
        for q in (11, 97, 1000):
            p = rep_function(A, B, q)
            for x in range(q):
                assert p[x] == oracles.r(A, B, x, q)

    def test_json_roundtrip(self):
        p = rep_function({0, 1, 3}, {0, 4, 6}, q=7)
        back = SumsetProfile.from_json(json.loads(json.dumps(p.to_json())))
        assert back == p


def test_layered_sizes():
    p = rep_function({0, 1, 2}, {0, 1, 2}, q=9)
    assert layered_size(p, 1) == 5
    assert layered_size(p, 3) == 1
    assert layered_size(p, 4) == 0


@pytest.mark.parametrize("t, expected", [(1, 5), (2, 8), (3, 9)])
def test_pollard_sum_interval(t, expected):
    assert pollard_sum({0, 1, 2}, {0, 1, 2}, t, q=9) == expected


@settings(max_examples=200, deadline=None)
@given(
    q=st.integers(2, 13),
    data=st.data(),
)
def test_pollard_sum_matches_bruteforce(q, data):
    A = data.draw(st.sets(st.integers(0, q - 1), min_size=1))
    B = data.draw(st.sets(st.integers(0, q - 1), min_size=1))
    profile = rep_function(A, B, q)
    assert sum(profile.counts.values()) == len(A) * len(B)
    assert all(v >= 1 for v in profile.counts.values())
    prev_layer = None
    prev = 0
    for t in range(1, min(len(A), len(B)) + 2):
        S = pollard_sum(A, B, t, q)
        assert S == oracles.S(A, B, t, q)
        layer = S - prev
        assert layer == layered_size(profile, t)
        if prev_layer is not None:
            assert layer <= prev_layer
        prev, prev_layer = S, layer


def test_digit_of_examples():
    assert digit_of(ds({8, 0, 1}, 9, 3), 7) == 1
    assert digit_of(ds({0, 1, 2}, 9, 3), 4) == 1
    assert digit_of(ds({1, 2, 3}, 9, 3), 3) == 3


def test_carry_of_examples():
    assert carry_of(ds({0, 1, 2}, 9, 3), 2, 2) == 1
    assert carry_of(ds({8, 0, 1}, 9, 3), 1, 1) == 1
    assert carry_of(zds(range(5), 5), 0, 0) == 0
    assert carry_of(zds([0, 1, 5], 3), 5, 5) == 3


class TestCarryReport:
    def test_interval(self):
        rep = carry_report(ds({0, 1, 2}, 9, 3))
        assert rep.carry_set == {0, 1}
        assert (rep.c1, rep.carry_count, rep.c2) == (2, 3, Fraction(1, 3))

    def test_wrapped_interval_attains_two_ninths(self):
        rep = carry_report(ds({8, 0, 1}, 9, 3))
        assert rep.carry_set == {0, 1, 2}
        assert (rep.c1, rep.carry_count, rep.c2) == (3, 2, Fraction(2, 9))

    def test_integer_balanced(self):
        rep = carry_report(zds([-2, -1, 0, 1, 2], 5))
        assert rep.carry_count == 6 == 25 // 4

    def test_integer_carry_set(self):
        rep = carry_report(zds([0, 1, 5], 3))
        assert rep.carry_set == {-1, 0, 2, 3}
        assert rep.c1 == 4

    def test_json_shape(self):
        obj = carry_report(ds({8, 0, 1}, 9, 3)).to_json()
        assert obj["c2"] == {"num": 2, "den": 9}
        assert obj["carry_set"] == [0, 1, 2]
        assert CarryReport.from_json(json.loads(json.dumps(obj))) == carry_report(ds({8, 0, 1}, 9, 3))

    def test_translation_changes_c2(self):
        A = ds({8, 0, 1}, 9, 3)
        T = translate(A, 3).digital_set
        assert T.elements == (2, 3, 4)
        assert carry_report(A).c2 == Fraction(2, 9)
        assert carry_report(T).c2 == Fraction(8, 9)
        assert carry_report(T).c1 == carry_report(A).c1


@pytest.mark.parametrize("q, m", [(9, 3), (8, 4), (16, 4), (12, 6), (25, 5)])
def test_report_matches_definition_exhaustively(q, m):
    for elems in oracles.all_digital_sets(q, m):
        rep = carry_report(ds(elems, q, m))
        assert rep.c1 == oracles.c1(elems, m, q) == c1_mod(elems, q, m)
        assert rep.carry_count == oracles.carry_count(elems, m, q) == carry_count_mod(elems, q)
        assert 0 <= rep.carry_count <= m * m


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_integer_report_matches_definition(m):
    for elems in oracles.window_digital_sets(m, m + 1):
        rep = carry_report(zds(elems, m))
        assert rep.c1 == oracles.c1(elems, m) == c1_int(elems, m)
        assert rep.carry_count == oracles.carry_count(elems, m) == carry_count_int(elems)


cases = st.sampled_from([(9, 3), (27, 3), (25, 5), (36, 6), (16, 4), (49, 7)]).flatmap(
    lambda qm: st.tuples(
        st.just(qm),
        st.lists(st.integers(0, qm[0] // qm[1] - 1), min_size=qm[1], max_size=qm[1]),
        st.sampled_from(units(qm[0])),
        st.integers(0, qm[0] // qm[1] - 1),
    )
)


@settings(max_examples=300, deadline=None)
@given(cases)
def test_dilation_and_translation_invariance(case):
    (q, m), lifts, c, k = case
    A = ds([r + j * m for r, j in enumerate(lifts)], q, m)
    rep = carry_report(A)
    dil = carry_report(dilate(A, c))
    assert dil.c2 == rep.c2
    assert dil.c1 == rep.c1
    # carries dilate by c and translate by k under the two maps
    n = q // m
    assert dil.carry_set == {c * x % n for x in rep.carry_set}
    tr = carry_report(translate(A, k * m).digital_set)
    assert tr.c1 == rep.c1
    assert tr.carry_set == {(x + k) % n for x in rep.carry_set}


@pytest.mark.parametrize("q, m", [(9, 3), (25, 5), (36, 6), (27, 9)])
def test_coset_sums_equal_m(q, m):
    rng = random.Random(q)
    for _ in range(100):
        A = [r + rng.randrange(q // m) * m for r in range(m)]
        B = [r + rng.randrange(q // m) * m for r in range(m)]
        prof = rep_function(A, B, q)
        heavy = set()
        for x0 in range(m):
            coset = range(x0, q, m)
            assert sum(prof[x] for x in coset) == m
            big = [x for x in coset if 2 * prof[x] > m]
            assert len(big) <= 1
            heavy.update(big)
        assert len(heavy) <= m


@settings(max_examples=500)
@given(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), min_size=1, max_size=12),
       st.integers(0, 100))
def test_min_function_superadditivity(pairs, c):
    a = [x for x, _ in pairs]
    b = [y for _, y in pairs]
    assert min(sum(a), sum(b)) >= sum(min(x, y) for x, y in pairs)
    assert sum(min(c, x) for x in a) >= min(c, sum(a))
