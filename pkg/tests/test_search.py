"""Screening procedures and utility functionals.

Hand-traced miniature pools pin the quota branches; hypothesis covers
the structural invariants (order respect, quota floor, zero cascade
penalty).
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from screensim import (
    FatigueModel,
    ProblemParams,
    RngStream,
    ScreeningOrder,
    cascade_search,
    examination_search,
    fairness_fraction,
    penalty,
    quota_targets,
    utility_add,
    utility_psi,
    utility_saved_effort,
)


def build_pool(scores, protected):
    from screensim import CandidatePool

    return CandidatePool(
        np.asarray(scores, dtype=np.float64), np.asarray(protected, dtype=bool)
    )


@st.composite
def instances(draw):
    n = draw(st.integers(2, 12))
    scores = draw(
        st.lists(st.floats(0.0, 1.0, width=16), min_size=n, max_size=n)
    )
    protected = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    perm = draw(st.permutations(list(range(n))))
    k = draw(st.integers(1, n))
    q = draw(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]))
    psi = draw(st.sampled_from([0.0, 0.3, 0.6]))
    return scores, protected, perm, ProblemParams(k, q, psi)


class TestExaminationSearch:
    def test_selects_whole_pool_when_k_equals_n(self, make_pool, identity_order):
        pool = make_pool([0.2, 0.9, 0.4], [0, 1, 0])
        outcome = examination_search(pool, identity_order(3), ProblemParams(3, 0.0))
        assert outcome.selection.selected_ids == frozenset({0, 1, 2})
        assert outcome.selection.feasible

    def test_quota_slot_displaces_higher_score(self, make_pool, identity_order):
        # the weakest candidate is the only protected one and must be taken
        pool = make_pool([0.9, 0.8, 0.1], [0, 0, 1])
        outcome = examination_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert outcome.selection.selected_ids == frozenset({0, 2})

    def test_scores_everyone_in_screening_order(self, make_pool):
        pool = make_pool([0.2, 0.9, 0.4, 0.6], [0, 1, 0, 1])
        order = ScreeningOrder(np.array([3, 1, 0, 2]))
        outcome = examination_search(pool, order, ProblemParams(2, 0.5))
        assert [cid for cid, _, _ in outcome.scored_sequence] == [3, 1, 0, 2]
        assert [t for _, _, t in outcome.scored_sequence] == [1, 2, 3, 4]
        assert outcome.selection.evaluated_count == 4

    def test_tied_scores_favor_earlier_position(self, make_pool):
        pool = make_pool([0.5, 0.5], [0, 0])
        order = ScreeningOrder(np.array([1, 0]))
        outcome = examination_search(pool, order, ProblemParams(1, 0.0))
        assert outcome.selection.selected_ids == frozenset({1})

    def test_infeasible_without_enough_protected(self, make_pool, identity_order):
        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 0])
        outcome = examination_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert not outcome.selection.feasible
        assert outcome.selection.evaluated_count == 3

    def test_rejects_k_beyond_pool(self, make_pool, identity_order):
        pool = make_pool([0.5], [1])
        with pytest.raises(ValueError):
            examination_search(pool, identity_order(1), ProblemParams(2, 0.0))

    def test_inactive_fatigue_matches_plain_run(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.8, 0.6, 0.1], [1, 0, 0, 1])
        order = identity_order(4)
        params = ProblemParams(2, 0.5)
        plain = examination_search(pool, order, params)
        wired = examination_search(
            pool, order, params, FatigueModel.none(), RngStream(1, 1)
        )
        assert wired == plain

    def test_drifting_scores_shift_by_elapsed_evaluations(self, make_pool):
        # zero-spread drift makes the fatigued run deterministic
        pool = make_pool([0.5, 0.5, 0.5], [0, 0, 0])
        order = ScreeningOrder(np.array([2, 0, 1]))
        drift = FatigueModel(kind="eps2", mean_slope=-0.1, sd_slope=0.0)
        outcome = examination_search(
            pool, order, ProblemParams(1, 0.0), drift, RngStream(2, 2)
        )
        assigned = [y for _, y, _ in outcome.scored_sequence]
        assert assigned == pytest.approx([0.5, 0.4, 0.3])
        # the earliest-seen candidate ends up on top and wins
        assert outcome.selection.selected_ids == frozenset({2})

    def test_fatigued_scores_are_not_clipped(self, make_pool, identity_order):
        pool = make_pool([0.05] * 4, [0] * 4)
        drift = FatigueModel(kind="eps2", mean_slope=-0.1, sd_slope=0.0)
        outcome = examination_search(
            pool, identity_order(4), ProblemParams(1, 0.0), drift, RngStream(3, 3)
        )
        lowest = min(y for _, y, _ in outcome.scored_sequence)
        assert lowest < 0.0

    def test_fatigued_replay_is_deterministic(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.8, 0.6, 0.1], [1, 0, 0, 1])
        args = (pool, identity_order(4), ProblemParams(2, 0.5), FatigueModel.eps1())
        a = examination_search(*args, RngStream(4, 4))
        b = examination_search(*args, RngStream(4, 4))
        assert a == b

    def test_fatigue_requires_a_stream(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.8], [1, 0])
        with pytest.raises(ValueError):
            examination_search(
                pool, identity_order(2), ProblemParams(1, 0.0), FatigueModel.eps1()
            )


class TestCascadeSearch:
    def test_takes_first_eligible_run_of_theta(self, make_pool, identity_order):
        pool = make_pool([0.9, 0.8, 0.7], [0, 1, 1])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert outcome.selection.selected_ids == frozenset({0, 1})
        assert outcome.selection.evaluated_count == 2

    def test_presentation_order_decides_single_slot(self, make_pool):
        pool = make_pool([0.6, 0.9], [0, 0])
        params = ProblemParams(1, 0.0)
        first = cascade_search(pool, ScreeningOrder(np.array([0, 1])), params)
        second = cascade_search(pool, ScreeningOrder(np.array([1, 0])), params)
        assert first.selection.selected_ids == frozenset({0})
        assert second.selection.selected_ids == frozenset({1})

    def test_skips_nonprotected_unscored_once_open_slots_fill(
        self, make_pool, identity_order
    ):
        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 1])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert outcome.selection.selected_ids == frozenset({0, 2})
        # the middle candidate was never scored
        assert [cid for cid, _, _ in outcome.scored_sequence] == [0, 2]
        assert outcome.selection.evaluated_count == 2

    def test_protected_overflow_spills_into_open_slots(
        self, make_pool, identity_order
    ):
        pool = make_pool([0.9, 0.8, 0.7], [1, 1, 0])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert outcome.selection.selected_ids == frozenset({0, 1})
        assert fairness_fraction(outcome.selection, pool) == 1.0

    def test_below_threshold_candidate_costs_an_evaluation(
        self, make_pool, identity_order
    ):
        pool = make_pool([0.3, 0.8, 0.9], [0, 0, 0])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.0, 0.5))
        assert outcome.selection.selected_ids == frozenset({1, 2})
        assert outcome.selection.evaluated_count == 3

    def test_infeasible_when_theta_runs_dry(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.2, 0.9], [0, 0, 0])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.0, 0.5))
        assert not outcome.selection.feasible

    def test_fatigue_clock_ignores_skipped_candidates(self, make_pool, identity_order):
        # candidate 1 is skipped unscored, so candidate 2 is the second
        # evaluation and drifts by exactly one step
        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 1])
        drift = FatigueModel(kind="eps2", mean_slope=-0.1, sd_slope=0.0)
        outcome = cascade_search(
            pool, identity_order(3), ProblemParams(2, 0.5), drift, RngStream(5, 5)
        )
        assert outcome.scored_sequence == ((0, 0.9, 1), (2, pytest.approx(0.6), 2))

    def test_fatigue_can_reject_an_eligible_candidate(self, make_pool, identity_order):
        # drift drags the second evaluation below the bar
        pool = make_pool([0.9, 0.55, 0.8], [0, 0, 0])
        drift = FatigueModel(kind="eps2", mean_slope=-0.1, sd_slope=0.0)
        outcome = cascade_search(
            pool, identity_order(3), ProblemParams(2, 0.0, 0.5), drift, RngStream(6, 6)
        )
        assert outcome.selection.selected_ids == frozenset({0, 2})
        assert outcome.selection.evaluated_count == 3

    def test_inactive_fatigue_matches_plain_run(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.8, 0.6, 0.1], [1, 0, 0, 1])
        order = identity_order(4)
        params = ProblemParams(2, 0.5)
        plain = cascade_search(pool, order, params)
        wired = cascade_search(pool, order, params, FatigueModel.none(), RngStream(7, 7))
        assert wired == plain

    def test_rejects_k_beyond_pool(self, make_pool, identity_order):
        pool = make_pool([0.5], [1])
        with pytest.raises(ValueError):
            cascade_search(pool, identity_order(1), ProblemParams(2, 0.0))


class TestStructuralInvariants:
    @given(instances())
    @settings(max_examples=200, deadline=None)
    def test_cascade_respects_theta_and_quota(self, instance):
        scores, protected, perm, params = instance
        pool = build_pool(scores, protected)
        order = ScreeningOrder(np.array(perm))
        outcome = cascade_search(pool, order, params)
        positions = [
            order.candidate_to_position[cid] for cid, _, _ in outcome.scored_sequence
        ]
        assert positions == sorted(positions)
        times = [t for _, _, t in outcome.scored_sequence]
        assert times == list(range(1, len(times) + 1))
        if outcome.selection.feasible:
            q_star, _ = quota_targets(params.k, params.q)
            assert fairness_fraction(outcome.selection, pool) >= q_star / params.k

    @given(instances())
    @settings(max_examples=200, deadline=None)
    def test_examination_scores_all_and_honors_quota(self, instance):
        scores, protected, perm, params = instance
        pool = build_pool(scores, protected)
        order = ScreeningOrder(np.array(perm))
        outcome = examination_search(pool, order, params)
        assert [cid for cid, _, _ in outcome.scored_sequence] == perm
        if outcome.selection.feasible:
            q_star, _ = quota_targets(params.k, params.q)
            assert fairness_fraction(outcome.selection, pool) >= q_star / params.k

    @given(instances())
    @settings(max_examples=200, deadline=None)
    def test_feasible_cascade_accumulates_no_penalty(self, instance):
        scores, protected, perm, params = instance
        pool = build_pool(scores, protected)
        order = ScreeningOrder(np.array(perm))
        outcome = cascade_search(pool, order, params)
        if outcome.selection.feasible:
            assert utility_psi(outcome.selection, order, pool, params.psi) == params.k
            for cid in outcome.selection.selected_ids:
                assert penalty(cid, outcome.selection, order, pool, params.psi) == 0


class TestFairnessFraction:
    def test_even_split(self, make_pool, identity_order):
        pool = make_pool([0.9, 0.8], [1, 0])
        outcome = examination_search(pool, identity_order(2), ProblemParams(2, 0.5))
        assert fairness_fraction(outcome.selection, pool) == 0.5

    def test_no_protected_members(self, make_pool, identity_order):
        pool = make_pool([0.9, 0.8, 0.7, 0.6, 0.5, 0.4], [0] * 6)
        outcome = examination_search(pool, identity_order(6), ProblemParams(6, 0.0))
        assert fairness_fraction(outcome.selection, pool) == 0.0

    def test_all_protected_pair(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7], [0, 1, 1])
        sel = Selection(frozenset({1}), frozenset({2}), 3, True)
        assert fairness_fraction(sel, pool) == 1.0

    def test_requires_feasible_selection(self, make_pool):
        from screensim import Selection

        pool = make_pool([0.9], [1])
        with pytest.raises(ValueError):
            fairness_fraction(Selection(frozenset(), frozenset(), 1, False), pool)


class TestUtilities:
    def test_add_sums_truthful_scores(self, make_pool, identity_order):
        pool = make_pool([0.3, 0.7], [0, 1])
        outcome = examination_search(pool, identity_order(2), ProblemParams(2, 0.5))
        assert utility_add(outcome.selection, pool) == pytest.approx(1.0)

    def test_add_single_slot(self, make_pool, identity_order):
        pool = make_pool([0.42, 0.1], [0, 0])
        outcome = examination_search(pool, identity_order(2), ProblemParams(1, 0.0))
        assert utility_add(outcome.selection, pool) == pytest.approx(0.42)

    def test_penalty_zero_at_first_position(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 0])
        sel = Selection(frozenset(), frozenset({0, 2}), 3, True)
        assert penalty(0, sel, identity_order(3), pool, 0.5) == 0

    def test_penalty_fires_on_skipped_same_group_eligible(
        self, make_pool, identity_order
    ):
        from screensim import Selection

        # candidate 1 (same group, eligible) precedes selected candidate 2
        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 0])
        sel = Selection(frozenset(), frozenset({0, 2}), 3, True)
        assert penalty(2, sel, identity_order(3), pool, 0.5) == 1

    def test_penalty_ignores_other_group(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7], [0, 1, 0])
        sel = Selection(frozenset(), frozenset({0, 2}), 3, True)
        assert penalty(2, sel, identity_order(3), pool, 0.5) == 0

    def test_penalty_ignores_ineligible_predecessor(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.3, 0.7], [0, 0, 0])
        sel = Selection(frozenset(), frozenset({0, 2}), 3, True)
        assert penalty(2, sel, identity_order(3), pool, 0.5) == 0

    def test_threshold_utility_of_ordered_pair(self, make_pool, identity_order):
        pool = make_pool([0.9, 0.8, 0.7], [0, 1, 1])
        outcome = cascade_search(pool, identity_order(3), ProblemParams(2, 0.5))
        assert utility_psi(outcome.selection, identity_order(3), pool, 0.0) == 2.0

    def test_threshold_utility_zero_with_ineligible_member(
        self, make_pool, identity_order
    ):
        from screensim import Selection

        pool = make_pool([0.9, 0.2], [0, 0])
        sel = Selection(frozenset(), frozenset({0, 1}), 2, True)
        assert utility_psi(sel, identity_order(2), pool, 0.5) == 0.0

    def test_threshold_utility_counts_single_penalty(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7, 0.6], [0, 0, 0, 0])
        sel = Selection(frozenset(), frozenset({0, 1, 3}), 4, True)
        # only the last member is preceded by an unselected eligible peer
        assert utility_psi(sel, identity_order(4), pool, 0.5) == 2.0

    def test_saved_effort_zero_when_last_position_selected(
        self, make_pool, identity_order
    ):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7], [0, 0, 1])
        for ids in (frozenset({0, 2}), frozenset({1, 2})):
            sel = Selection(frozenset(), ids, 3, True)
            assert utility_saved_effort(sel, identity_order(3), pool, 0.5) == 0.0

    def test_saved_effort_counts_unvisited_tail(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.8, 0.7, 0.6, 0.5], [0] * 5)
        sel = Selection(frozenset(), frozenset({0, 1}), 5, True)
        assert utility_saved_effort(sel, identity_order(5), pool, 0.5) == 3.0

    def test_saved_effort_zero_with_ineligible_member(self, make_pool, identity_order):
        from screensim import Selection

        pool = make_pool([0.9, 0.2, 0.7], [0] * 3)
        sel = Selection(frozenset(), frozenset({0, 1}), 3, True)
        assert utility_saved_effort(sel, identity_order(3), pool, 0.5) == 0.0
