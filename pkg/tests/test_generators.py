"""Instance generation: determinism, postconditions, verdicts, exhaustion."""

import pytest

from blockginv.generators import (
    GenerationExhausted,
    GenSpec,
    Verdict,
    gen_group_invertible,
    gen_invertible,
    gen_pair,
    run_campaign,
    verify_instance,
)
from blockginv.ginverse import drazin
from blockginv.matrices import rank
from blockginv.theorems import THEOREM_IDS, check_conditions
from conftest import mat


class TestBuildingBlocks:
    def test_gen_invertible(self):
        m = gen_invertible(4, seed=2)
        assert m.shape == (4, 4)
        assert rank(m) == 4

    def test_gen_invertible_deterministic(self):
        assert gen_invertible(3, seed=5) == gen_invertible(3, seed=5)
        assert gen_invertible(3, seed=5) != gen_invertible(3, seed=6)

    def test_gen_group_invertible(self):
        for r in range(4):
            m = gen_group_invertible(3, r, seed=r + 10)
            assert rank(m) == min(r, 3)
            assert drazin(m).index <= 1

    def test_gen_group_invertible_validates_rank(self):
        with pytest.raises(ValueError):
            gen_group_invertible(2, 3, seed=0)


class TestGenPair:
    @pytest.mark.parametrize("theorem", THEOREM_IDS)
    def test_positive_draws_meet_their_conditions(self, theorem):
        for n, r in [(1, 1), (2, 1), (3, 2), (4, 0)]:
            spec = GenSpec(theorem, n, r, satisfy=True, seed=100 + n)
            e, f = gen_pair(spec)
            assert e.shape == f.shape == (n, n)
            assert rank(f) == r
            assert drazin(f).index <= 1
            assert check_conditions(e, f, theorem).satisfied()

    @pytest.mark.parametrize("theorem", ["thm2.1", "cor2.2", "thm2.3",
                                         "cor2.4", "cor2.5"])
    def test_negative_draws_fail_only_existence(self, theorem):
        spec = GenSpec(theorem, 3, 1, satisfy=False, seed=41)
        e, f = gen_pair(spec)
        report = check_conditions(e, f, theorem)
        assert not report.satisfied()
        assert report.holds("F group-invertible")

    @pytest.mark.parametrize("theorem", ["thm3.1", "cor3.2"])
    def test_negative_draws_keep_standing_hypotheses(self, theorem):
        spec = GenSpec(theorem, 4, 1, satisfy=False, seed=17)
        e, f = gen_pair(spec)
        report = check_conditions(e, f, theorem)
        assert report.holds("F group-invertible")
        standing = ("FEF^pi=0" if theorem == "thm3.1" else "F^pi EF=0")
        assert report.holds(standing)
        assert not report.satisfied()

    def test_determinism(self):
        spec = GenSpec("thm3.1", 4, 2, satisfy=True, seed=77)
        assert gen_pair(spec) == gen_pair(spec)

    def test_full_rank_makes_negatives_impossible(self):
        with pytest.raises(GenerationExhausted):
            gen_pair(GenSpec("thm2.1", 2, 2, satisfy=False, seed=0))

    def test_nilpotent_negatives_need_two_spare_dimensions(self):
        with pytest.raises(GenerationExhausted):
            gen_pair(GenSpec("thm3.1", 2, 1, satisfy=False, seed=0))

    @pytest.mark.parametrize("theorem", ["cor3.3", "cor3.4"])
    def test_unconditional_rules_have_no_negatives(self, theorem):
        with pytest.raises(GenerationExhausted):
            gen_pair(GenSpec(theorem, 3, 1, satisfy=False, seed=0))

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_pair(GenSpec("thm9.9", 2, 1))
        with pytest.raises(ValueError):
            gen_pair(GenSpec("thm2.1", 0, 0))
        with pytest.raises(ValueError):
            gen_pair(GenSpec("thm2.1", 2, 3))


class TestVerifyInstance:
    def test_agree_exists(self):
        e = mat([["1", "0"], ["1", "1"]])
        f = mat([["1", "0"], ["0", "0"]])
        report = verify_instance(e, f, "thm2.1")
        assert report.verdict is Verdict.AGREE_EXISTS
        assert report.oracle_index == 1
        assert report.formula == report.oracle
        assert report.mismatch_positions == ()
        assert report.error is None

    def test_agree_not_exists(self):
        report = verify_instance(mat([["0"]]), mat([["0"]]), "thm2.1")
        assert report.verdict is Verdict.AGREE_NOT_EXISTS
        assert report.formula is None
        assert report.oracle_index == 2
        assert "E^pi F^pi=0" in (report.error or "")

    def test_hypothesis_violation_counts_as_mismatch(self):
        e = mat([["0", "1"], ["0", "0"]])
        f = mat([["1", "0"], ["0", "0"]])
        report = verify_instance(e, f, "thm2.1")
        assert report.verdict is Verdict.MISMATCH
        assert report.error is not None


class TestRunCampaign:
    def test_positive_campaign_agrees(self):
        trials = run_campaign("cor2.4", 10, 4, seed=3)
        assert len(trials) == 10
        assert all(t.report.verdict is Verdict.AGREE_EXISTS for t in trials)
        assert [t.spec.seed for t in trials] == \
            [3 * 1_000_003 + i for i in range(10)]

    def test_negative_campaign_refuses(self):
        trials = run_campaign("thm2.3", 10, 4, seed=8, negative=True)
        assert all(t.report.verdict is Verdict.AGREE_NOT_EXISTS for t in trials)
        assert all(t.report.oracle_index >= 2 for t in trials)

    def test_deterministic_across_calls_and_workers(self):
        first = run_campaign("thm3.1", 6, 4, seed=12)
        second = run_campaign("thm3.1", 6, 4, seed=12)
        parallel = run_campaign("thm3.1", 6, 4, seed=12, jobs=2)
        assert first == second
        assert first == parallel

    def test_no_negative_campaign_for_unconditional_rules(self):
        with pytest.raises(GenerationExhausted):
            run_campaign("cor3.4", 3, 4, seed=0, negative=True)

    def test_validation(self):
        with pytest.raises(ValueError):
            run_campaign("thm9.9", 3, 4, seed=0)
        with pytest.raises(ValueError):
            run_campaign("thm2.1", -1, 4, seed=0)
        with pytest.raises(ValueError):
            run_campaign("thm2.1", 3, 0, seed=0)
        with pytest.raises(GenerationExhausted):
            run_campaign("thm3.1", 3, 1, seed=0, negative=True)
