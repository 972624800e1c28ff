import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carrylab.carry import rep_function
from carrylab.errors import BadT, ChowlaViolation, HypothesesNotMet
from carrylab.pollard import (
    B_EQUALS_T,
    REFLECTION,
    SAME_DIFF_APS,
    SIZES_EXCEED_Q,
    TightnessClassification,
    ap_differences,
    classify_tightness,
    has_chowla,
    is_ap,
    pollard_bound,
    pollard_check,
    same_difference_aps,
    triangular_psi,
)

import oracles


def test_has_chowla():
    assert has_chowla({0, 1, 2}, 9)
    assert not has_chowla({0, 3}, 9)
    assert has_chowla({0, 1, 3}, 7)
    assert has_chowla({4}, 9)
    with pytest.raises(ValueError):
        has_chowla({0, 1})


def test_chowla_matches_oracle():
    for q in (8, 9, 10, 12):
        for n in range(1, 5):
            for A in itertools.combinations(range(q), n):
                assert has_chowla(A, q) == oracles.chowla(A, q)


@pytest.mark.parametrize("args, expected", [((9, 3, 3, 2), 8), ((7, 3, 3, 2), 8), ((5, 4, 4, 2), 10),
                                            ((9, 3, 3, 3), 9), ((9, 3, 5, 1), 7)])
def test_pollard_bound(args, expected):
    assert pollard_bound(*args) == expected


@pytest.mark.parametrize("t", [0, 4])
def test_pollard_bound_rejects_t(t):
    with pytest.raises(BadT):
        pollard_bound(9, 3, 3, t)


class TestPollardCheck:
    def test_interval_is_tight(self):
        assert tuple(pollard_check({0, 1, 2}, {0, 1, 2}, 2, q=9)) == (8, 8, True, True)

    def test_broken_interval_is_slack(self):
        res = pollard_check({0, 1, 2}, {0, 1, 3}, 2, q=9)
        assert (res.S, res.bound, res.tight) == (9, 8, False)

    def test_prime_modulus(self):
        res = pollard_check({0, 1, 3}, {0, 4, 6}, 2, q=7)
        assert (res.S, res.bound, res.tight) == (8, 8, True)

    def test_not_applicable(self):
        res = pollard_check({0, 3, 6}, {0, 3, 6}, 2, q=9)
        assert not res.applicable
        assert res.S < res.bound  # the inequality really needs the hypothesis
        with pytest.raises(ChowlaViolation):
            pollard_check({0, 3, 6}, {0, 3, 6}, 2, q=9, require_chowla=True)


def test_pollard_exhaustive_small_moduli():
    # every pair in Z_q with a Chowla side, every admissible t
    for q in (6, 8, 9):
        subsets = [s for n in range(1, 5) for s in itertools.combinations(range(q), n)]
        for A in subsets:
            for B in subsets:
                if not (oracles.chowla(A, q) or oracles.chowla(B, q)):
                    continue
                for t in range(1, min(len(A), len(B)) + 1):
                    assert pollard_check(A, B, t, q).S >= pollard_bound(q, len(A), len(B), t)


class TestAP:
    def test_examples(self):
        assert is_ap({0, 4, 8}, 9) == 4
        assert is_ap({0, 1, 3}, 9) is None
        assert is_ap({5}, 9) == 0
        assert is_ap({0, 1, 2}, 9) == 1
        assert is_ap({2, 5, 8}) == 3
        assert is_ap({0, 1, 3}) is None

    def test_multiple_differences(self):
        # in Z_5 every 2-set is a progression for its difference, and {0,1,2,3} for d=1 and d=2
        assert ap_differences({0, 2}, 5) == frozenset({2})
        assert ap_differences({0, 1, 2, 3}, 5) == frozenset({1, 2})
        # a full coset of <d>
        assert ap_differences({0, 3, 6}, 9) == frozenset({3})
        assert ap_differences({1}, 9) is None

    def test_matches_oracle(self):
        for q in (7, 9, 12):
            for n in range(2, q):
                for A in itertools.combinations(range(q), n):
                    want = {min(d, q - d) for d in range(1, q) if oracles.is_progression(A, d, q)}
                    assert ap_differences(A, q) == frozenset(want)

    def test_same_difference(self):
        assert same_difference_aps({0, 1, 2}, {4, 5, 6}, 9) == 1
        assert same_difference_aps({0, 1, 2}, {0, 4, 8}, 9) is None
        assert same_difference_aps({0, 2, 4}, {1, 3}, 9) == 2
        assert same_difference_aps({0}, {0, 4, 8}, 9) == 4


ap_case = st.sampled_from([7, 9, 11, 16, 25]).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.integers(0, q - 1),
        st.integers(1, q - 1),
        st.integers(2, q - 1),
        st.integers(1, q - 1).filter(lambda c: math.gcd(c, q) == 1),
        st.integers(0, q - 1),
    )
)


@settings(max_examples=300, deadline=None)
@given(ap_case)
def test_ap_invariance(case):
    q, s, d, n, c, shift = case
    A = {(s + k * d) % q for k in range(n)}
    if len(A) < n:
        return
    assert is_ap(A, q) is not None
    moved = {(c * a + shift) % q for a in A}
    assert is_ap(moved, q) is not None
    assert len(ap_differences(moved, q)) == len(ap_differences(A, q))


def test_triangular_psi():
    assert [triangular_psi(3, x) for x in range(-3, 4)] == [0, 1, 2, 3, 2, 1, 0]
    with pytest.raises(ValueError):
        triangular_psi(0, 0)


@pytest.mark.parametrize("L", [1, 2, 3, 5, 8])
def test_ap_rep_function_is_triangular(L):
    prof = rep_function(range(L), range(L))
    for x in range(-1, 2 * L):
        assert prof[x] == triangular_psi(L, x - (L - 1))


class TestClassifyTightness:
    def test_interval_t2(self):
        cl = classify_tightness({0, 1, 2}, {0, 1, 2}, 2, q=9)
        assert cl.tight and (cl.S, cl.bound) == (8, 8)
        assert set(cl.conditions) == {REFLECTION, SAME_DIFF_APS}
        assert cl.conditions[REFLECTION]["g"] == 2
        assert cl.conditions[SAME_DIFF_APS] == {"d": 1}

    def test_interval_t3(self):
        cl = classify_tightness({0, 1, 2}, {0, 1, 2}, 3, q=9)
        assert cl.tight
        assert set(cl.conditions) == {B_EQUALS_T, SAME_DIFF_APS}

    def test_sizes_exceed(self):
        cl = classify_tightness({0, 1, 2, 3, 4}, {0, 1, 2, 4}, 2, q=7)
        assert SIZES_EXCEED_Q in cl.conditions and cl.tight

    def test_slack_has_no_conditions(self):
        cl = classify_tightness({0, 1, 3, 4}, {0, 1, 3}, 2, q=11)
        assert not cl.tight and cl.conditions == {}

    def test_hypotheses(self):
        with pytest.raises(HypothesesNotMet):
            classify_tightness({0, 1, 2}, {0, 1, 2}, 1, q=9)
        with pytest.raises(HypothesesNotMet):
            classify_tightness({0, 1}, {0, 1, 2}, 2, q=9)
        with pytest.raises(HypothesesNotMet):
            classify_tightness({0, 1, 3}, {0, 3, 4}, 2, q=9)

    def test_json_roundtrip(self):
        cl = classify_tightness({0, 1, 2}, {0, 1, 2}, 2, q=9)
        back = TightnessClassification.from_json(json.loads(json.dumps(cl.to_json())))
        assert back == cl


def _equality_theorem_holds(q):
    subsets = [s for n in range(2, q + 1) for s in itertools.combinations(range(q), n)]
    chowla_sets = [B for B in subsets if oracles.chowla(B, q)]
    tight = unexplained = checks = 0
    for B in chowla_sets:
        for A in subsets:
            if len(A) < len(B):
                continue
            for t in range(2, len(B) + 1):
                cl = classify_tightness(A, B, t, q)
                checks += 1
                assert cl.S == oracles.S(A, B, t, q) if checks % 50 == 0 else True
                assert cl.S >= cl.bound
                if cl.tight:
                    tight += 1
                    unexplained += not cl.conditions
                else:
                    # every condition is sufficient for equality
                    assert not cl.conditions, (A, B, t, cl.conditions)
    return checks, tight, unexplained, len(chowla_sets)


@pytest.mark.parametrize("q, checks, tight, n_chowla", [(7, 18892, 13306, 120), (9, 38718, 27621, 54)])
def test_equality_cases_exhaustive(q, checks, tight, n_chowla):
    got = _equality_theorem_holds(q)
    assert got[0] == checks and got[1] == tight and got[2] == 0
    if n_chowla is not None:
        assert got[3] == n_chowla
