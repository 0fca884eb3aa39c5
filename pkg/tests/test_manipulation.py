import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchgames import (
    Instance,
    PreferenceList,
    Side,
    StrategicPairs,
    StrategyProfile,
    da_on_profile,
    enumerate_stable,
    find_accomplice_manipulation,
    find_one_for_many_manipulation,
    find_self_manipulation,
    one_for_many_to_accomplice,
    push_up,
    rank_of,
    run_da,
)
from matchgames.core import InputError
from matchgames.fixtures import mutual_top_instance
from oracles import accomplice_existence_table, self_best_gain, self_existence_table

from conftest import random_instances


class TestPushUp:
    def test_single_agent(self):
        lst = PreferenceList([0, 2, 3, 1, 4])
        assert push_up(lst, 2, {3}).order == (3, 0, 2, 1, 4)

    def test_empty_set_is_identity(self):
        lst = PreferenceList([0, 2, 3, 1, 4])
        assert push_up(lst, 2, set()) == lst

    def test_two_agents_keep_relative_order(self):
        lst = PreferenceList([0, 2, 3, 1, 4])
        assert push_up(lst, 2, {1, 4}).order == (1, 4, 0, 2, 3)

    def test_rejects_match_in_set(self):
        lst = PreferenceList([0, 2, 3, 1, 4])
        with pytest.raises(InputError):
            push_up(lst, 2, {2})

    def test_rejects_agent_above_match(self):
        lst = PreferenceList([0, 2, 3, 1, 4])
        with pytest.raises(InputError):
            push_up(lst, 2, {0})

    @given(
        st.permutations(list(range(7))),
        st.integers(min_value=0, max_value=6),
        st.sets(st.integers(min_value=0, max_value=6)),
    )
    def test_canonical_layout(self, order, match_pos, raw_x):
        lst = PreferenceList(order)
        match = order[match_pos]
        below = set(order[match_pos + 1 :])
        x = raw_x & below
        out = push_up(lst, match, x)
        # still a permutation (constructor checks), pushed block first
        assert set(out.order) == set(range(7))
        assert set(out.order[: len(x)]) == x
        assert out.order[len(x) + match_pos] == match
        # relative order preserved inside and outside the pushed block
        rest = [a for a in out.order if a not in x]
        assert rest == [a for a in order if a not in x]
        head = list(out.order[: len(x)])
        assert head == [a for a in order if a in x]


class TestAccompliceSearch:
    def test_best_at_truth(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        res = find_accomplice_manipulation(sp, (2, 3), mode="best")
        assert res.found
        assert res.promoted == 3
        assert res.resulting_matching.man_to_woman == (0, 1, 2, 4, 3)
        # woman 3 climbs from her last-ranked man 3 to her top man 4
        assert res.beneficiary_gain == 4
        assert res.new_list.order == (3, 0, 2, 1, 4)

    def test_mutual_top_has_no_manipulation(self):
        inst = mutual_top_instance(5)
        sp = StrategyProfile.truthful(inst, Side.MEN)
        for m in range(5):
            for w in range(5):
                assert not find_accomplice_manipulation(sp, (m, w)).found

    def test_at_misreported_profile(self, cycling5_misreport):
        res = find_accomplice_manipulation(cycling5_misreport, (2, 0), mode="best")
        assert res.found
        assert res.promoted == 0
        # woman 0 recovers man 0 while the manipulator keeps woman 2
        assert res.resulting_matching.man_to_woman[0] == 0
        assert res.resulting_matching.man_to_woman[2] == 2

    def test_first_mode_returns_first_in_pushup_order(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        best = find_accomplice_manipulation(sp, (2, 3), mode="best")
        first = find_accomplice_manipulation(sp, (2, 3), mode="first")
        assert first.found and best.found
        # man 2's list below his match w2 reads (w3, w1, w4); pushing w3 is
        # both the first acceptable candidate and the tie-broken best
        assert first.promoted == best.promoted == 3

    def test_conditions_hold_via_rank_queries(self):
        for inst in random_instances(seed=71, count=15, n=[4, 5, 6]):
            sp = StrategyProfile.truthful(inst, Side.MEN)
            mu = da_on_profile(sp)
            for m in range(inst.n):
                for w in range(inst.n):
                    res = find_accomplice_manipulation(sp, (m, w))
                    if not res.found:
                        continue
                    new = res.resulting_matching
                    assert rank_of(inst.women[w], new.woman_to_man[w]) < rank_of(
                        inst.women[w], mu.woman_to_man[w]
                    )
                    assert rank_of(inst.men[m], new.man_to_woman[m]) <= rank_of(
                        inst.men[m], mu.man_to_woman[m]
                    )

    def test_requires_men_side(self, woman3):
        sp = StrategyProfile.truthful(woman3, Side.WOMEN)
        with pytest.raises(InputError):
            find_accomplice_manipulation(sp, (0, 0))

    def test_pair_out_of_range(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        with pytest.raises(InputError):
            find_accomplice_manipulation(sp, (0, 9))


class TestAccompliceCompleteness:
    def test_matches_full_report_enumeration(self):
        # the push-up search finds a manipulation for exactly the pairs where
        # some arbitrary report works
        for inst in random_instances(seed=83, count=8, n=[3, 4, 5]):
            sp = StrategyProfile.truthful(inst, Side.MEN)
            table = accomplice_existence_table(sp)
            for pair, exists in table.items():
                assert find_accomplice_manipulation(sp, pair).found == exists


class TestOneForMany:
    def test_flatten(self):
        p = one_for_many_to_accomplice([2], {2: {3, 0}})
        assert p.pairs == {(2, 3), (2, 0)}

    def test_flatten_empty(self):
        assert len(one_for_many_to_accomplice([], {})) == 0

    def test_flatten_multiple_men(self):
        p = one_for_many_to_accomplice([0, 1], {0: [0], 1: [0, 1]})
        assert p.pairs == {(0, 0), (1, 0), (1, 1)}

    def test_single_beneficiary_equals_accomplice(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        res = find_one_for_many_manipulation(sp, 2, {3})
        assert res.found
        acc = find_accomplice_manipulation(sp, (2, 3), mode="first")
        assert res.promoted == acc.promoted
        assert res.resulting_matching == acc.resulting_matching

    def test_mutual_top(self):
        inst = mutual_top_instance(4)
        sp = StrategyProfile.truthful(inst, Side.MEN)
        assert not find_one_for_many_manipulation(sp, 3, {0, 1, 2, 3}).found

    def test_two_beneficiaries(self, cycling5):
        # pushing woman 3 leaves woman 4 with man 3, whom she prefers to her
        # truthful partner man 4, so {3, 4} is Pareto-improved
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        res = find_one_for_many_manipulation(sp, 2, {3, 4})
        assert res.found
        assert res.promoted == 3
        assert res.resulting_matching.man_to_woman == (0, 1, 2, 4, 3)
        assert res.beneficiary_gain == 8  # both women jump from rank 4 to rank 0

    def test_strict_improvement_required(self):
        inst = mutual_top_instance(3)
        sp = StrategyProfile.truthful(inst, Side.MEN)
        assert not find_one_for_many_manipulation(sp, 2, {2}).found


class TestSelfManipulation:
    def test_best_on_three_by_three(self, woman3):
        sp = StrategyProfile.truthful(woman3, Side.WOMEN)
        res = find_self_manipulation(sp, 0, mode="best")
        assert res.found
        assert res.new_list.order == (0, 2, 1)
        assert res.promoted == 2
        assert res.resulting_matching.man_to_woman == (0, 1, 2)
        assert res.beneficiary_gain == 1
        # exhaustive search over all 6 reports confirms nothing better
        assert self_best_gain(sp, 0) == 1

    def test_top_matched_woman_cannot_improve(self):
        inst = mutual_top_instance(4)
        sp = StrategyProfile.truthful(inst, Side.WOMEN)
        for w in range(4):
            assert not find_self_manipulation(sp, w).found

    def test_sole_proposal_woman_cannot_improve(self, cycling5):
        # woman 3 only ever receives man 3's proposal under truth
        sp = StrategyProfile.truthful(cycling5, Side.WOMEN)
        assert not find_self_manipulation(sp, 3).found
        assert not self_existence_table(sp)[3]

    def test_matches_full_report_enumeration(self):
        for inst in random_instances(seed=97, count=8, n=[3, 4, 5]):
            sp = StrategyProfile.truthful(inst, Side.WOMEN)
            table = self_existence_table(sp)
            for w in range(inst.n):
                assert find_self_manipulation(sp, w).found == table[w]

    def test_best_promotion_is_globally_optimal(self):
        # a single promotion reaches the best partner any of the n! reports
        # can reach
        for inst in random_instances(seed=103, count=8, n=[3, 4, 5]):
            sp = StrategyProfile.truthful(inst, Side.WOMEN)
            for w in range(inst.n):
                res = find_self_manipulation(sp, w, mode="best")
                gain = res.beneficiary_gain if res.found else 0
                assert gain == self_best_gain(sp, w)

    def test_requires_women_side(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        with pytest.raises(InputError):
            find_self_manipulation(sp, 0)


class TestPushUpInvariances:
    def test_permuting_around_match_preserves_da(self):
        # shuffling a man's list strictly above or strictly below his partner
        # never changes the outcome
        rng = np.random.default_rng(3)
        for inst in random_instances(seed=131, count=10, n=[5, 8]):
            mu = run_da(inst.men, inst.women)
            for m in range(inst.n):
                order = list(inst.men[m].order)
                pos = order.index(mu.man_to_woman[m])
                left, right = order[:pos], order[pos + 1 :]
                rng.shuffle(left)
                rng.shuffle(right)
                men = list(inst.men)
                men[m] = PreferenceList(left + [order[pos]] + right)
                assert run_da(men, inst.women) == mu

    def test_no_regret_pushup_shrinks_stable_set(self):
        # accepted accomplice candidates only ever remove stable matchings
        for inst in random_instances(seed=139, count=10, n=[4, 5, 6]):
            sp = StrategyProfile.truthful(inst, Side.MEN)
            before = set(enumerate_stable(inst))
            for m in range(inst.n):
                for w in range(inst.n):
                    res = find_accomplice_manipulation(sp, (m, w))
                    if not res.found:
                        continue
                    men = list(inst.men)
                    men[m] = res.new_list
                    after = set(enumerate_stable(Instance(inst.n, tuple(men), inst.women)))
                    assert after <= before

    def test_no_regret_pushup_moves_sides_oppositely(self):
        # every woman weakly gains and every man weakly loses, measured in the
        # pre-manipulation profile (truth here), with a strict move each side
        for inst in random_instances(seed=149, count=10, n=[4, 5, 6]):
            sp = StrategyProfile.truthful(inst, Side.MEN)
            mu = da_on_profile(sp)
            for m in range(inst.n):
                for w in range(inst.n):
                    res = find_accomplice_manipulation(sp, (m, w))
                    if not res.found:
                        continue
                    new = res.resulting_matching
                    w_moves = [
                        rank_of(inst.women[v], mu.woman_to_man[v])
                        - rank_of(inst.women[v], new.woman_to_man[v])
                        for v in range(inst.n)
                    ]
                    m_moves = [
                        rank_of(inst.men[u], new.man_to_woman[u])
                        - rank_of(inst.men[u], mu.man_to_woman[u])
                        for u in range(inst.n)
                    ]
                    assert all(d >= 0 for d in w_moves) and any(d > 0 for d in w_moves)
                    assert all(d >= 0 for d in m_moves) and any(d > 0 for d in m_moves)
