import json
from itertools import permutations
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchgames import (
    Instance,
    Matching,
    ParseError,
    PreferenceList,
    Side,
    StrategicPairs,
    StrategyProfile,
    ValidationError,
    effective_profile,
    load_instance,
    load_pairs,
    load_profile,
    prefers,
    rank_of,
    serialize_instance,
    serialize_pairs,
    serialize_profile,
)
from matchgames.core import InputError
from matchgames.fixtures import mutual_top_instance, single_step_woman_instance

DATA = Path(__file__).parent / "data"


class TestPreferenceList:
    def test_rejects_duplicates(self):
        with pytest.raises(ValidationError):
            PreferenceList([0, 1, 1])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            PreferenceList([0, 3, 1])

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            PreferenceList([])

    def test_rank_is_inverse(self):
        lst = PreferenceList([2, 0, 3, 1])
        assert [lst.order[lst.rank[a]] for a in range(4)] == [0, 1, 2, 3]


class TestRankOf:
    def test_second_position(self):
        # man's list (w2, w1, w3, w4, w5): w1 sits at position 1
        assert rank_of(PreferenceList([1, 0, 2, 3, 4]), 0) == 1

    def test_top_of_list(self):
        assert rank_of(PreferenceList([0, 1, 2]), 0) == 0

    def test_reversed_identity(self):
        assert rank_of(PreferenceList([3, 2, 1, 0]), 0) == 3

    def test_out_of_range(self):
        with pytest.raises(InputError):
            rank_of(PreferenceList([0, 1, 2]), 3)


class TestPrefers:
    def test_from_cycling_fixture(self, cycling5):
        # woman 0 ranks man 0 above man 2, man 2 above man 1
        assert prefers(cycling5.women[0], 0, 2)
        assert prefers(cycling5.women[0], 2, 1)
        # woman 3 ranks man 4 above man 3
        assert prefers(cycling5.women[3], 4, 3)

    def test_irreflexive(self):
        lst = PreferenceList([2, 0, 1])
        for a in range(3):
            assert not prefers(lst, a, a)

    def test_out_of_range(self):
        with pytest.raises(InputError):
            prefers(PreferenceList([0, 1]), 0, 2)

    @given(st.permutations(list(range(6))))
    def test_strict_total_order(self, order):
        lst = PreferenceList(order)
        for a in range(6):
            for b in range(6):
                if a == b:
                    assert not prefers(lst, a, b)
                else:
                    assert prefers(lst, a, b) != prefers(lst, b, a)

    def test_transitive_exhaustively(self):
        lst = PreferenceList([5, 2, 7, 0, 3, 6, 1, 4])
        n = len(lst)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if prefers(lst, a, b) and prefers(lst, b, c):
                        assert prefers(lst, a, c)


class TestInstanceIO:
    def test_load_fixture_file(self):
        inst = load_instance((DATA / "cycling5.json").read_text())
        assert inst.n == 5
        assert inst.men[2].order == (0, 2, 3, 1, 4)
        assert inst.women[3].order == (4, 2, 0, 1, 3)

    def test_mutual_top_is_valid(self):
        inst = load_instance(serialize_instance(mutual_top_instance(3)))
        assert inst.n == 3

    def test_repeated_id_rejected(self):
        text = json.dumps({"n": 2, "men": [[0, 0], [0, 1]], "women": [[0, 1], [1, 0]]})
        with pytest.raises(ValidationError):
            load_instance(text)

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            load_instance("{not json")

    def test_size_mismatch(self):
        text = json.dumps({"n": 3, "men": [[0, 1, 2]], "women": [[0, 1, 2]] * 3})
        with pytest.raises(ValidationError):
            load_instance(text)

    def test_n_zero_rejected(self):
        with pytest.raises(ValidationError):
            load_instance(json.dumps({"n": 0, "men": [], "women": []}))

    def test_n_one_allowed(self):
        inst = load_instance(json.dumps({"n": 1, "men": [[0]], "women": [[0]]}))
        assert inst.n == 1

    def test_round_trip(self, cycling5):
        assert load_instance(serialize_instance(cycling5)) == cycling5

    def test_round_trip_random(self):
        from matchgames import generate_instance, derive_rng

        for k in range(5):
            inst = generate_instance(6, rng=derive_rng(11, k))
            assert load_instance(serialize_instance(inst)) == inst


class TestMatching:
    def test_inverse(self):
        mu = Matching((2, 0, 1))
        assert mu.woman_to_man == (1, 2, 0)
        assert all(mu.woman_to_man[w] == m for m, w in mu.pairs())

    def test_non_permutation_rejected(self):
        with pytest.raises(ValidationError):
            Matching((0, 0, 1))


class TestStrategicPairs:
    def test_duplicates_collapse(self):
        p = StrategicPairs.of([(0, 1), (0, 1), (1, 0)], n=2)
        assert len(p) == 2

    def test_range_check(self):
        with pytest.raises(InputError):
            StrategicPairs.of([(0, 5)], n=3)

    def test_men_women_projections(self):
        p = StrategicPairs.of([(2, 0), (2, 3), (1, 3)])
        assert p.men() == (1, 2)
        assert p.women() == (0, 3)

    def test_round_trip(self):
        p = StrategicPairs.of([(0, 1), (2, 2)])
        assert load_pairs(serialize_pairs(p)) == p


class TestStrategyProfile:
    def test_truthful_effective_equals_instance(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        men, women = effective_profile(sp)
        assert men == cycling5.men
        assert women == cycling5.women

    def test_single_report_changes_one_row(self, cycling5_misreport):
        men, women = effective_profile(cycling5_misreport)
        base = cycling5_misreport.base
        assert women == base.women
        assert men[2].order == (3, 2, 0, 1, 4)
        for m in (0, 1, 3, 4):
            assert men[m] == base.men[m]

    def test_women_side_report(self, woman3):
        sp = StrategyProfile.truthful(woman3, Side.WOMEN).replace(
            0, PreferenceList([0, 2, 1])
        )
        men, women = effective_profile(sp)
        assert men == woman3.men
        assert women[0].order == (0, 2, 1)
        assert women[1] == woman3.women[1]
        assert women[2] == woman3.women[2]

    def test_profile_round_trip(self, cycling5_misreport):
        text = serialize_profile(cycling5_misreport)
        sp = load_profile(text, cycling5_misreport.base)
        assert sp == cycling5_misreport

    def test_wrong_length_rejected(self, cycling5):
        with pytest.raises(ValidationError):
            StrategyProfile(base=cycling5, side=Side.MEN, reports=cycling5.men[:4])
