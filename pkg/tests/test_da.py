import numpy as np
import pytest

from matchgames import (
    Instance,
    Side,
    StrategyProfile,
    da_on_profile,
    enumerate_stable,
    prefers,
    run_da,
)
from matchgames.core import InputError
from matchgames.fixtures import mutual_top_instance
from oracles import naive_blocking_pairs

from conftest import random_instances


class TestKnownMatchings:
    def test_truthful_cycling_instance(self, cycling5):
        mu = run_da(cycling5.men, cycling5.women)
        assert mu.man_to_woman == (0, 1, 2, 3, 4)

    def test_misreport_cycling_instance(self, cycling5_misreport):
        mu = da_on_profile(cycling5_misreport)
        assert mu.man_to_woman == (1, 0, 2, 4, 3)

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_mutual_top_gives_identity(self, n):
        inst = mutual_top_instance(n)
        mu = run_da(inst.men, inst.women)
        assert mu.man_to_woman == tuple(range(n))

    def test_truthful_profile_equals_instance_run(self, cycling5):
        sp = StrategyProfile.truthful(cycling5, Side.MEN)
        assert da_on_profile(sp) == run_da(cycling5.men, cycling5.women)

    def test_single_agent_market(self):
        inst = Instance.from_lists([[0]], [[0]])
        assert run_da(inst.men, inst.women).man_to_woman == (0,)


class TestStabilityOfOutput:
    def test_no_blocking_pairs_on_random_instances(self):
        for inst in random_instances(seed=101, count=40, n=[3, 6, 12]):
            mu = run_da(inst.men, inst.women)
            assert not naive_blocking_pairs(inst, mu)

    def test_no_blocking_pairs_under_reported_profile(self, cycling5_misreport):
        # the output blocks nobody with respect to the lists DA actually saw
        men, women = (
            cycling5_misreport.reports,
            cycling5_misreport.base.women,
        )
        reported = Instance(n=5, men=tuple(men), women=tuple(women))
        mu = da_on_profile(cycling5_misreport)
        assert not naive_blocking_pairs(reported, mu)

    def test_men_optimal_women_pessimal(self):
        for inst in random_instances(seed=7, count=25, n=[3, 4, 5, 6, 7]):
            mu = run_da(inst.men, inst.women)
            others = enumerate_stable(inst)
            assert mu in others
            for other in others:
                for m in range(inst.n):
                    a, b = mu.man_to_woman[m], other.man_to_woman[m]
                    assert a == b or prefers(inst.men[m], a, b)
                for w in range(inst.n):
                    a, b = mu.woman_to_man[w], other.woman_to_man[w]
                    assert a == b or prefers(inst.women[w], b, a)


class TestDeterminism:
    def test_scheduler_independence(self):
        for inst in random_instances(seed=23, count=30, n=[2, 5, 8, 13]):
            fifo = run_da(inst.men, inst.women, scheduler="fifo")
            lifo = run_da(inst.men, inst.women, scheduler="lifo")
            assert fifo == lifo

    def test_unknown_scheduler(self, cycling5):
        with pytest.raises(InputError):
            run_da(cycling5.men, cycling5.women, scheduler="sorted")


class TestErrors:
    def test_size_mismatch(self, cycling5, woman3):
        with pytest.raises(InputError):
            run_da(cycling5.men, woman3.women)
