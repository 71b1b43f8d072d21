import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deconflict import oracle
from deconflict.errors import EmptyFeasibleSet, UnresolvablePair
from deconflict.kinematics import ForbiddenInterval, Mission, SeparationConfig, Vec2
from deconflict.scheduler import (IntervalSet, compute_pair_intervals,
                                  default_horizon, earliest, greedy_schedule,
                                  interval_subtract)
from helpers import random_instance

ROOT2 = math.sqrt(2.0)


class TestIntervalSet:
    def test_subtract_keeps_boundaries_feasible(self):
        ws = IntervalSet.span(0.0, 100.0)
        out = interval_subtract(ws, (10.0, 20.0))
        assert out.spans == ((0.0, 10.0), (20.0, 100.0))
        assert out.contains(10.0) and out.contains(20.0)
        assert not out.contains(15.0)

    def test_subtract_disjoint_is_noop(self):
        ws = IntervalSet.span(0.0, 100.0)
        assert interval_subtract(ws, (-5.0, -1.0)).spans == ((0.0, 100.0),)

    def test_subtract_straddling(self):
        ws = IntervalSet.from_spans([(0.0, 10.0), (20.0, 30.0)])
        out = interval_subtract(ws, (5.0, 25.0))
        assert out.spans == ((0.0, 5.0), (25.0, 30.0))

    def test_subtract_can_leave_single_point(self):
        ws = IntervalSet.span(0.0, 10.0)
        out = ws.subtract_open(0.0, 4.0).subtract_open(4.0, 10.0)
        assert out.contains(4.0)
        assert out.measure == pytest.approx(0.0)
        assert earliest(out) == 0.0  # 0 itself survives the open subtrahend

    def test_normalization_merges(self):
        ws = IntervalSet.from_spans([(5.0, 7.0), (0.0, 5.0), (9.0, 9.0)])
        assert ws.spans == ((0.0, 7.0), (9.0, 9.0))

    def test_rejects_bad_spans(self):
        with pytest.raises(ValueError):
            IntervalSet.from_spans([(3.0, 1.0)])
        with pytest.raises(ValueError):
            IntervalSet.span(0.0, math.inf)
        with pytest.raises(ValueError):
            IntervalSet.span(0.0, 1.0).subtract_open(2.0, 2.0)

    def test_earliest(self):
        assert earliest(IntervalSet.span(0.0, 10.0)) == 0.0
        assert earliest(IntervalSet.from_spans([(3.5, 9.0), (12.0, 20.0)])) == 3.5
        with pytest.raises(EmptyFeasibleSet):
            earliest(IntervalSet.empty())

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(st.lists(st.tuples(st.floats(-50, 50), st.floats(0.01, 20)),
                    min_size=1, max_size=6),
           st.tuples(st.floats(-60, 60), st.floats(0.01, 30)))
    def test_subtract_properties(self, raw, cut):
        ws = IntervalSet.from_spans([(s, s + w) for s, w in raw])
        lo, hi = cut[0], cut[0] + cut[1]
        out = ws.subtract_open(lo, hi)
        # normalized: sorted, disjoint, valid
        for s, e in out.spans:
            assert s <= e
        for (s1, e1), (s2, e2) in zip(out.spans, out.spans[1:]):
            assert e1 < s2
        # no point of the open cut survives; boundary points keep membership
        mid = 0.5 * (lo + hi)
        assert not out.contains(mid) or not ws.contains(mid) or mid in (lo, hi)
        for t in (lo, hi):
            assert out.contains(t) == ws.contains(t)
        # measure shrinks by at most the cut width
        assert ws.measure - (hi - lo) - 1e-9 <= out.measure <= ws.measure + 1e-9


class TestGreedySchedule:
    def test_non_conflicting_all_depart_at_zero(self, parallel_pair, cfg):
        schedule = greedy_schedule(parallel_pair, cfg, horizon=100.0)
        assert schedule.departures == (0.0, 0.0)
        assert schedule.bindings == ((), ())

    def test_crossing_pair_takes_upper_tangent(self, crossing_pair, cfg):
        a, b = crossing_pair
        schedule = greedy_schedule([a, b], cfg, horizon=100.0)
        assert schedule.departures[0] == 0.0
        assert schedule.departures[1] == pytest.approx(3.0 / ROOT2, abs=1e-3)
        assert schedule.bindings[1] == ("a",)
        assert oracle.schedule_is_safe([a, b], schedule.departures, cfg.h, 0.001)

    def test_first_agent_anchored_at_zero(self, cfg):
        rng = np.random.default_rng(5)
        for _ in range(10):
            missions = random_instance(rng, 4)
            schedule = greedy_schedule(missions, cfg)
            assert schedule.departures[0] == 0.0

    def test_random_instances_pass_separation_oracle(self, cfg):
        rng = np.random.default_rng(99)
        for _ in range(25):
            missions = random_instance(rng, 5)
            schedule = greedy_schedule(missions, cfg)
            seps = oracle.schedule_pair_min_seps(missions, schedule.departures, 0.001)
            assert np.all(seps >= cfg.h - 1e-3), seps.min()

    def test_greedy_minimality(self, cfg):
        # departing 10*tol earlier than any positive assignment breaks separation
        rng = np.random.default_rng(123)
        checked = 0
        for _ in range(15):
            missions = random_instance(rng, 4)
            schedule = greedy_schedule(missions, cfg)
            deps = list(schedule.departures)
            for j, t in enumerate(deps):
                if t <= 0.0:
                    continue
                checked += 1
                nudged = deps.copy()
                nudged[j] = t - 10.0 * cfg.tol
                seps = oracle.schedule_pair_min_seps(missions, nudged, 0.001,
                                                     refine=True)
                assert float(seps.min()) < cfg.h
        assert checked >= 5

    def test_determinism(self, cfg):
        rng = np.random.default_rng(7)
        missions = random_instance(rng, 5)
        s1 = greedy_schedule(missions, cfg)
        s2 = greedy_schedule(missions, cfg)
        assert s1 == s2

    def test_default_horizon_suffices(self, cfg):
        rng = np.random.default_rng(11)
        for _ in range(20):
            missions = random_instance(rng, 5)
            greedy_schedule(missions, cfg)  # must not raise EmptyFeasibleSet

    def test_horizon_exhaustion(self, crossing_pair, cfg):
        with pytest.raises(EmptyFeasibleSet) as err:
            greedy_schedule(crossing_pair, cfg, horizon=1.0)
        assert err.value.mission_id == "b"

    def test_unbounded_pair_propagates(self, crossing_pair, cfg):
        def stub_solver(first, second, _cfg):
            return ForbiddenInterval.unbounded()
        with pytest.raises(UnresolvablePair):
            greedy_schedule(crossing_pair, cfg, horizon=100.0,
                            pair_solver=stub_solver)

    def test_duplicate_ids_rejected(self, cfg):
        m = Mission("x", Vec2(0, 0), Vec2(10, 0), 1.0)
        with pytest.raises(ValueError):
            greedy_schedule([m, m], cfg, horizon=10.0)

    def test_negative_delay_part_protects_reversed_order(self, cfg):
        # the second-scheduled agent may depart before an earlier one; the
        # full shifted span (negative part included) must still keep it safe
        slow = Mission("s", Vec2(0, 0), Vec2(30, 0), 1.0)
        fast = Mission("f", Vec2(15, -10), Vec2(15, 10), 2.0)
        schedule = greedy_schedule([slow, fast], cfg, horizon=200.0)
        assert schedule.departures == (0.0, 0.0)  # forbidden span is all positive
        assert oracle.schedule_is_safe([slow, fast], schedule.departures, cfg.h, 0.001)

    def test_schedule_accessors(self, crossing_pair, cfg):
        schedule = greedy_schedule(crossing_pair, cfg, horizon=100.0)
        assert schedule.departure_of("a") == 0.0
        assert schedule.total_delay == pytest.approx(sum(schedule.departures))
        with pytest.raises(KeyError):
            schedule.departure_of("zz")


def test_default_horizon_formula(crossing_pair, cfg):
    a, b = crossing_pair
    pair_intervals = compute_pair_intervals([a, b], cfg)
    h = default_horizon([a, b], cfg, pair_intervals)
    width = pair_intervals[("a", "b")].width
    assert h == pytest.approx(a.duration + b.duration + width + 1.0)
