"""Batch policies, commit flow, rule accounting, and the three strategies."""

import pytest

from vnesim.controller import (
    BATCHED,
    CANCELLED,
    COMMITTED,
    COUNT_ONLY,
    DEPARTED,
    PER_REQUEST,
    REJECTED,
    SPLITTING,
    TENTATIVE,
    TIME_ONLY,
    WHICHEVER_FIRST,
    BatchPolicy,
    BatchedRemapController,
    PerRequestController,
    RuleTable,
    SplittingWindowController,
    make_controller,
)
from vnesim.metrics import MetricsLog
from vnesim.netmodel import UnknownRequestError, VirtualNetworkRequest
from vnesim.simulator import Engine, to_ticks

from conftest import make_net


def u(units):
    return to_ticks(units)


def mk(rid, nodes, links, arrival=1, lifetime=100):
    return VirtualNetworkRequest(rid, nodes, links, u(arrival), u(lifetime))


def drive(substrate, policy, requests, strategy="batched", split_paths=2, horizon=None):
    ctl = make_controller(strategy, substrate, policy, None, split_paths)
    ctl.log = MetricsLog(ctl.view)
    engine = Engine(ctl, requests, horizon=horizon, check_invariants=True)
    engine.run()
    return ctl, engine


class TestBatchPolicy:
    def test_count_only_needs_no_window(self):
        p = BatchPolicy(5, None, COUNT_ONLY)
        assert p.counts and not p.timed

    def test_timed_modes_require_a_window(self):
        with pytest.raises(ValueError, match="window"):
            BatchPolicy(5, None, TIME_ONLY)
        with pytest.raises(ValueError, match="window"):
            BatchPolicy(5, None, WHICHEVER_FIRST)

    def test_size_must_be_positive(self):
        with pytest.raises(ValueError, match="at least 1"):
            BatchPolicy(0, u(5), WHICHEVER_FIRST)

    def test_unknown_mode_is_rejected(self):
        with pytest.raises(ValueError, match="unknown batch mode"):
            BatchPolicy(5, u(5), "sometimes")

    def test_whichever_first_both_counts_and_times(self):
        p = BatchPolicy(5, u(5), WHICHEVER_FIRST)
        assert p.counts and p.timed


class TestRuleTable:
    def test_installs_count_writes_removals_do_not(self):
        t = RuleTable([1, 2, 3])
        t.install({1: 2, 3: 1})
        assert t.writes == 3
        assert t.installed == {1: 2, 2: 0, 3: 1}
        t.remove({1: 2, 3: 1})
        assert t.writes == 3
        assert t.installed == {1: 0, 2: 0, 3: 0}


def six_cycle():
    """Ring of six switches; odd ones roomy, even ones with 5 memory units."""
    links = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]
    return make_net(
        [1, 2, 3, 4, 5, 6], links,
        caps={1: 60, 3: 60, 5: 60, 2: 5, 4: 5, 6: 5},
    )


def triangle_requests(n, arrival_gap=1, lifetime=100):
    """n identical requests: 3 nodes of demand 6 (odd switches only), a full
    triangle of demand-1 virtual links, arriving one time unit apart."""
    return [
        mk(
            rid,
            {0: 6, 1: 6, 2: 6},
            {(0, 1): 1, (0, 2): 1, (1, 2): 1},
            arrival=1 + rid * arrival_gap,
            lifetime=lifetime,
        )
        for rid in range(n)
    ]


class TestBatchedCommit:
    def test_count_trigger_fires_inside_the_filling_arrival(self):
        ctl, engine = drive(
            six_cycle(),
            BatchPolicy(5, None, COUNT_ONLY),
            triangle_requests(5),
            horizon=u(10),
        )
        assert ctl.commit_events == 1
        assert all(ctl.status[r] == COMMITTED for r in range(5))
        # each request writes 9 rules: three 2-hop paths over three switches
        assert ctl.rules.writes == 45
        assert ctl.rules.installed == {1: 10, 3: 10, 5: 10, 2: 5, 4: 5, 6: 5}
        # the five even-switch units are exactly spent: 5 rules in cap 5
        assert ctl.view.residual_capacity(2) == 0
        assert engine.events_dispatched == 5  # five arrivals, no trigger

    def test_departures_free_rule_memory_but_not_writes(self):
        ctl, engine = drive(
            six_cycle(),
            BatchPolicy(5, None, COUNT_ONLY),
            triangle_requests(5),
        )
        assert all(ctl.status[r] == DEPARTED for r in range(5))
        assert ctl.rules.writes == 45
        assert ctl.rules.installed == {sw: 0 for sw in [1, 2, 3, 4, 5, 6]}
        assert ctl.view.base.committed == {}
        assert ctl.view.conservation_violations() == []

    def test_per_request_same_writes_more_commit_events(self):
        batched, _ = drive(
            six_cycle(), BatchPolicy(5, None, COUNT_ONLY), triangle_requests(5)
        )
        per_req, _ = drive(
            six_cycle(),
            BatchPolicy(5, None, COUNT_ONLY),
            triangle_requests(5),
            strategy="per-request",
        )
        assert per_req.rules.writes == batched.rules.writes == 45
        assert batched.commit_events == 1
        assert per_req.commit_events == 5

    def test_window_trigger_commits_a_partial_batch(self):
        net = make_net([1, 2, 3], [(1, 2), (1, 3), (2, 3)])
        reqs = [
            mk(0, {0: 10, 1: 10}, {(0, 1): 5}, arrival=1),
            mk(1, {0: 10, 1: 10}, {(0, 1): 5}, arrival=2),
        ]
        ctl, engine = drive(net, BatchPolicy(5, u(10), WHICHEVER_FIRST), reqs)
        assert ctl.commit_events == 1
        assert ctl.status == {0: DEPARTED, 1: DEPARTED}
        commit_rows = [r for r in ctl.log.rows if r.event_kind == "commit"]
        # the window opened at the first tentative success (t=1) and fired
        # ten units later
        assert [r.time for r in commit_rows] == [u(11), u(11)]
        assert ctl.max_wait == u(10)

    def test_stale_window_trigger_is_ignored_after_count_commit(self):
        ctl, engine = drive(
            six_cycle(),
            BatchPolicy(5, u(50), WHICHEVER_FIRST),
            triangle_requests(5),
        )
        # the batch filled at the fifth arrival; the pending window trigger
        # still dispatches later but must not double-commit
        assert ctl.commit_events == 1
        assert ctl.log.committed == 5

    def test_time_only_ignores_the_count(self):
        net = make_net([1, 2, 3], [(1, 2), (1, 3), (2, 3)])
        reqs = [
            mk(rid, {0: 1, 1: 1}, {(0, 1): 1}, arrival=1 + rid) for rid in range(3)
        ]
        ctl, _ = drive(net, BatchPolicy(1, u(10), TIME_ONLY), reqs)
        # size 1 would have committed each instantly in a counting mode;
        # time-only holds all three for the single window trigger
        assert ctl.commit_events == 1
        commit_times = {r.time for r in ctl.log.rows if r.event_kind == "commit"}
        assert commit_times == {u(11)}

    def test_commit_then_departure_on_the_same_tick(self):
        net = make_net([1, 2], [(1, 2)])
        r = mk(0, {0: 1, 1: 1}, {(0, 1): 1}, arrival=1, lifetime=2)
        ctl, engine = drive(net, BatchPolicy(5, u(10), TIME_ONLY), [r])
        # the request expired (t=3) before its window trigger (t=11): it is
        # committed at t=11 and departs in the immediately following event
        assert ctl.status[0] == DEPARTED
        assert [(row.event_kind, row.time) for row in ctl.log.rows] == [
            ("arrival", u(1)),
            ("commit", u(11)),
            ("departure", u(11)),
        ]

    def test_rejected_arrival_does_not_open_the_window(self):
        net = make_net([1, 2, 3], [(1, 2), (1, 3), (2, 3)])
        reqs = [
            mk(0, {0: 999}, {}, arrival=1),  # no switch fits this
            mk(1, {0: 1, 1: 1}, {(0, 1): 1}, arrival=5),
        ]
        ctl, engine = drive(net, BatchPolicy(9, u(10), TIME_ONLY), reqs)
        assert ctl.status[0] == REJECTED
        commit_rows = [r for r in ctl.log.rows if r.event_kind == "commit"]
        # window ran from t=5 (first tentative success), not from t=1
        assert [r.time for r in commit_rows] == [u(15)]
        assert engine.events_dispatched == 4  # arrivals, trigger, departure

    def test_horizon_flushes_the_pending_batch(self):
        net = make_net([1, 2], [(1, 2)])
        r = mk(0, {0: 1, 1: 1}, {(0, 1): 1}, arrival=1, lifetime=2)
        ctl, engine = drive(
            net, BatchPolicy(9, u(1000), TIME_ONLY), [r], horizon=u(10)
        )
        assert engine.now == u(10)
        assert ctl.status[0] == DEPARTED
        commit_rows = [row for row in ctl.log.rows if row.event_kind == "commit"]
        assert [row.time for row in commit_rows] == [u(10)]

    def test_rule_shortage_at_commit_cancels_and_releases(self):
        # switch 2 is the only one able to host the squatter, which then
        # leaves no memory for the victim's transit rule
        net = make_net([1, 2, 3], [(1, 2), (2, 3)], caps={1: 10, 2: 100, 3: 10})
        reqs = [
            mk(0, {0: 100}, {}, arrival=1),
            mk(1, {0: 5, 1: 5}, {(0, 1): 2}, arrival=2),
        ]
        ctl, engine = drive(net, BatchPolicy(1, None, COUNT_ONLY), reqs)
        assert ctl.status[0] == DEPARTED  # lived its full life committed
        assert ctl.status[1] == CANCELLED
        assert ctl.log.cancelled == 1
        assert ctl.view.tentative == {}
        assert ctl.rules.writes == 0  # squatter had no links, victim died
        assert ctl.commit_events == 2
        row = next(r for r in ctl.log.rows if r.outcome == CANCELLED)
        assert row.request_id == 1
        assert row.cost is None
        assert ctl.view.conservation_violations() == []

    def test_departure_of_uncommitted_request_raises(self):
        net = make_net([1, 2], [(1, 2)])
        ctl, engine = drive(net, BatchPolicy(1, None, COUNT_ONLY), [])
        with pytest.raises(UnknownRequestError):
            ctl.on_departure(engine, 404)


class TestRemapThroughTheEngine:
    def blocker_net(self):
        return make_net(
            [1, 2, 3],
            [(1, 2), (1, 3), (2, 3)],
            caps={1: 100, 2: 100, 3: 4},
        )

    def scenario(self):
        return [
            # blocker: fills the direct (1, 2) link, departs at t=3
            mk(0, {0: 1, 1: 1}, {(0, 1): 95}, arrival=1, lifetime=2),
            # companion whose arrival fills the first batch of two
            mk(1, {0: 1}, {}, arrival=1.5),
            # victim: must detour at arrival, remaps after the blocker leaves
            mk(2, {0: 5, 1: 5}, {(0, 1): 10}, arrival=2),
        ]

    def test_batched_remap_adopts_the_freed_direct_path(self):
        ctl, engine = drive(
            self.blocker_net(),
            BatchPolicy(2, u(10), WHICHEVER_FIRST),
            self.scenario(),
            horizon=u(13),
        )
        assert ctl.remapped_links == 1
        assert ctl.commit_events == 2
        # the victim committed on the direct path at its window trigger
        res = ctl.view.base.committed[2]
        assert res.link_paths == {(0, 1): (((2, 1), 10),)}
        victim_commit = next(
            r for r in ctl.log.rows
            if r.event_kind == "commit" and r.request_id == 2
        )
        assert victim_commit.time == u(12)
        assert victim_commit.cost == 20  # 5 + 5 node units + 10 on one link
        assert ctl.rules.installed[3] == 0  # no rules left on the detour

    def test_per_request_commits_instantly_and_never_moves_a_link(self):
        ctl, engine = drive(
            self.blocker_net(),
            BatchPolicy(2, u(10), WHICHEVER_FIRST),
            self.scenario(),
            strategy="per-request",
            horizon=u(13),
        )
        # committed within the arrival event, so the blocker was still there:
        # the victim keeps its detour and pays for two links
        assert ctl.remapped_links == 0
        assert ctl.commit_events == 3
        res = ctl.view.base.committed[2]
        assert res.link_paths == {(0, 1): (((2, 3, 1), 10),)}
        victim_commit = next(
            r for r in ctl.log.rows
            if r.event_kind == "commit" and r.request_id == 2
        )
        assert victim_commit.time == u(2)
        assert victim_commit.cost == 30
        assert ctl.max_wait == 0


class TestSplittingStrategy:
    def split_net(self):
        return make_net(
            [1, 2, 3],
            [(1, 2), (1, 3), (2, 3)],
            caps={1: 100, 2: 90, 3: 10},
            bws={(1, 2): 60, (1, 3): 40, (2, 3): 40},
        )

    def test_splits_commit_with_per_path_rules(self):
        r = mk(0, {0: 20, 1: 15}, {(0, 1): 100}, arrival=1)
        ctl, engine = drive(
            self.split_net(),
            BatchPolicy(5, u(10), WHICHEVER_FIRST),
            [r],
            strategy="splitting",
            horizon=u(12),
        )
        assert ctl.status[0] == COMMITTED
        assert ctl.policy.mode == TIME_ONLY  # forced regardless of input
        # 60 units direct plus 40 units around: rules on 1 and 2 for each
        # path, on 3 for the detour only
        assert ctl.rules.installed == {1: 2, 2: 2, 3: 1}
        assert ctl.rules.writes == 5
        assert ctl.remapped_links == 0
        commit = next(row for row in ctl.log.rows if row.event_kind == "commit")
        assert commit.cost == 175
        assert commit.time == u(11)

    def test_splitting_never_runs_the_remap_pass(self):
        # a split reservation would make remap_pass raise; surviving the
        # window trigger proves the splitting controller skips it
        r = mk(0, {0: 20, 1: 15}, {(0, 1): 100}, arrival=1)
        ctl, _ = drive(
            self.split_net(),
            BatchPolicy(5, u(10), WHICHEVER_FIRST),
            [r],
            strategy="splitting",
        )
        assert ctl.status[0] == DEPARTED
        assert ctl.remapped_links == 0

    def test_single_path_budget_rejects_what_needs_a_split(self):
        r = mk(0, {0: 20, 1: 15}, {(0, 1): 100}, arrival=1)
        ctl, _ = drive(
            self.split_net(),
            BatchPolicy(5, u(10), WHICHEVER_FIRST),
            [r],
            strategy="splitting",
            split_paths=1,
        )
        assert ctl.status[0] == REJECTED


class TestStrategySelection:
    def test_make_controller_picks_the_classes(self):
        net = make_net([1, 2], [(1, 2)])
        policy = BatchPolicy(5, u(25), WHICHEVER_FIRST)
        assert isinstance(make_controller(BATCHED, net, policy, None), BatchedRemapController)
        assert isinstance(make_controller(PER_REQUEST, net, policy, None), PerRequestController)
        assert isinstance(make_controller(SPLITTING, net, policy, None), SplittingWindowController)

    def test_unknown_strategy_is_rejected(self):
        net = make_net([1, 2], [(1, 2)])
        with pytest.raises(ValueError, match="unknown strategy"):
            make_controller("psychic", net, BatchPolicy(5, u(25), WHICHEVER_FIRST), None)

    def test_per_request_forces_singleton_count_policy(self):
        net = make_net([1, 2], [(1, 2)])
        ctl = make_controller(PER_REQUEST, net, BatchPolicy(7, u(25), WHICHEVER_FIRST), None)
        assert (ctl.policy.size, ctl.policy.window, ctl.policy.mode) == (1, None, COUNT_ONLY)

    def test_splitting_keeps_the_window_but_drops_the_count(self):
        net = make_net([1, 2], [(1, 2)])
        ctl = make_controller(SPLITTING, net, BatchPolicy(7, u(25), WHICHEVER_FIRST), None)
        assert (ctl.policy.size, ctl.policy.window, ctl.policy.mode) == (7, u(25), TIME_ONLY)
