import random

import pytest

from decept.errors import DegenerateDegree, Exhausted, IllegalUpdate, NotAMember
from decept.graph import EdgeUpdate, Graph, apply_update, connected_components, induced_bridges
from decept.partition import TargetCommunity
from decept.safeness import (
    best_update_safeness,
    community_safeness,
    node_safeness,
    run_safgain,
    safeness_breakdown,
    safeness_gain,
)
from .conftest import direct_safeness, random_graph


def target_on(graph, members):
    return TargetCommunity.from_graph(graph, members)


class TestNodeSafeness:
    def test_bridge_endpoint(self, f1):
        t = target_on(f1, {0, 1, 2})
        assert node_safeness(f1, t, 2) == pytest.approx(1 / 6, abs=1e-15)

    def test_fully_internal_member(self, f1):
        t = target_on(f1, {0, 1, 2})
        assert node_safeness(f1, t, 0) == 0.0

    def test_pair_with_one_external_edge(self):
        g = Graph(3, [(0, 1), (0, 2)])
        t = target_on(g, {0, 1})
        assert node_safeness(g, t, 0) == pytest.approx(0.25, abs=1e-15)

    def test_isolated_member_external_term_is_zero(self):
        g = Graph(3, [(1, 2)])
        t = target_on(g, {0, 1})
        assert node_safeness(g, t, 0) == 0.0

    def test_not_a_member(self, f1):
        t = target_on(f1, {0, 1, 2})
        with pytest.raises(NotAMember):
            node_safeness(f1, t, 5)


class TestCommunitySafeness:
    def test_f1_triangle(self, f1):
        assert community_safeness(f1, target_on(f1, {0, 1, 2})) == pytest.approx(
            1 / 18, abs=1e-15
        )

    def test_f2_triangle_is_zero(self, f2):
        assert community_safeness(f2, target_on(f2, {0, 1, 2})) == 0.0

    def test_bounded_by_one(self):
        rng = random.Random(51)
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 20), 0.3)
            members = set(rng.sample(range(g.n), rng.randint(2, g.n)))
            value = community_safeness(g, target_on(g, members))
            assert 0.0 <= value <= 1.0

    def test_breakdown_fields_consistent(self, f1):
        t = target_on(f1, {0, 1, 2})
        b = safeness_breakdown(f1, t)
        assert b.community == pytest.approx(1 / 18, abs=1e-15)
        assert [row.node for row in b.members] == [0, 1, 2]
        for row in b.members:
            assert 0.0 <= row.sigma <= 1.0
            assert row.reach <= t.size - 1
            assert row.internal + row.external == row.degree
        assert sum(r.sigma for r in b.members) / 3 == pytest.approx(b.community)


def _legal_updates_touching(graph, members):
    updates = []
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if u not in members and v not in members:
                continue
            if graph.has_edge(u, v):
                updates.append(EdgeUpdate.delete(u, v))
            else:
                updates.append(EdgeUpdate.add(u, v))
    return updates


def _degenerate(graph, members, upd):
    if upd.is_add:
        return False
    ends_in_h = [x for x in (upd.u, upd.v) if x in members]
    return any(graph.degree(x) < 2 for x in ends_in_h)


class TestSafenessGain:
    def test_outward_addition_anchor(self, f1):
        t = target_on(f1, {0, 1, 2})
        assert safeness_gain(f1, t, EdgeUpdate.add(0, 4)) == pytest.approx(
            1 / 18, abs=1e-15
        )

    def test_internal_deletion_anchor(self, f1):
        t = target_on(f1, {0, 1, 2})
        assert safeness_gain(f1, t, EdgeUpdate.delete(0, 1)) == pytest.approx(
            1 / 6, abs=1e-15
        )

    def test_outward_deletion_anchor(self, f1):
        t = target_on(f1, {0, 1, 2})
        assert safeness_gain(f1, t, EdgeUpdate.delete(2, 3)) == pytest.approx(
            -1 / 18, abs=1e-15
        )

    def test_update_must_touch_target(self, f1):
        t = target_on(f1, {0, 1, 2})
        with pytest.raises(IllegalUpdate):
            safeness_gain(f1, t, EdgeUpdate.delete(3, 4))

    def test_degree_one_deletion_degenerate(self):
        g = Graph(3, [(0, 1), (1, 2)])
        t = target_on(g, {0, 1})
        with pytest.raises(DegenerateDegree):
            safeness_gain(g, t, EdgeUpdate.delete(0, 1))

    def test_oracle_equivalence_exhaustive(self):
        rng = random.Random(52)
        for _ in range(12):
            n = rng.randint(4, 25)
            g = random_graph(rng, n, rng.choice([0.15, 0.3]))
            members = set(rng.sample(range(n), rng.randint(2, min(8, n))))
            t = target_on(g, members)
            before = direct_safeness(g, members)
            for upd in _legal_updates_touching(g, members):
                if _degenerate(g, members, upd):
                    with pytest.raises(DegenerateDegree):
                        safeness_gain(g, t, upd)
                    continue
                predicted = safeness_gain(g, t, upd)
                after = direct_safeness(apply_update(g, upd), members)
                assert predicted == pytest.approx(after - before, abs=1e-12)

    def test_outward_additions_never_hurt(self):
        rng = random.Random(53)
        for _ in range(15):
            g = random_graph(rng, rng.randint(3, 18), 0.3)
            members = set(rng.sample(range(g.n), rng.randint(2, g.n - 1)))
            t = target_on(g, members)
            for u in members:
                for w in range(g.n):
                    if w in members or g.has_edge(u, w):
                        continue
                    gain = safeness_gain(g, t, EdgeUpdate.add(u, w))
                    assert gain >= -1e-15
                    if g.degree(u) > 0 and t.external[u] == g.degree(u):
                        assert gain == pytest.approx(0.0, abs=1e-15)
                    else:
                        # includes isolated members, whose external term goes
                        # from the 0 convention to a full 1/1 ratio
                        assert gain > 0

    def test_outward_deletions_never_help(self):
        rng = random.Random(54)
        for _ in range(15):
            g = random_graph(rng, rng.randint(3, 18), 0.35)
            members = set(rng.sample(range(g.n), rng.randint(2, g.n - 1)))
            t = target_on(g, members)
            for u in members:
                for w in g.neighbors(u):
                    if w in members or g.degree(u) < 2:
                        continue
                    gain = safeness_gain(g, t, EdgeUpdate.delete(u, w))
                    assert gain <= 1e-15
                    if t.external[u] == g.degree(u):
                        assert gain == pytest.approx(0.0, abs=1e-15)
                    else:
                        assert gain < 0

    def test_gain_independent_of_far_endpoint(self):
        rng = random.Random(55)
        for _ in range(10):
            g = random_graph(rng, rng.randint(4, 16), 0.3)
            members = set(rng.sample(range(g.n), rng.randint(2, g.n - 2)))
            t = target_on(g, members)
            for u in members:
                outsiders = [
                    w for w in range(g.n) if w not in members and not g.has_edge(u, w)
                ]
                gains = {safeness_gain(g, t, EdgeUpdate.add(u, w)) for w in outsiders}
                assert len(gains) <= 1

    def test_preserving_deletions_beat_outward_deletions(self):
        rng = random.Random(56)
        for _ in range(10):
            g = random_graph(rng, rng.randint(4, 16), 0.4)
            members = set(rng.sample(range(g.n), rng.randint(3, g.n - 1)))
            t = target_on(g, members)
            bridges = induced_bridges(g, members)
            keep = [
                e for e in g.edges()
                if e[0] in members and e[1] in members and e not in bridges
                and g.degree(e[0]) >= 2 and g.degree(e[1]) >= 2
            ]
            outward = [
                (u, w) for u in members for w in g.neighbors(u)
                if w not in members and g.degree(u) >= 2
            ]
            for e in keep:
                gain = safeness_gain(g, t, EdgeUpdate.delete(*e))
                assert gain > 0
                for o in outward:
                    assert gain > safeness_gain(g, t, EdgeUpdate.delete(*o))


class TestBestUpdate:
    def test_triangle_prefers_deletion(self, f1):
        t = target_on(f1, {0, 1, 2})
        for seed in range(6):
            upd = best_update_safeness(f1, t, random.Random(seed))
            assert not upd.is_add
            assert upd.u in {0, 1, 2} and upd.v in {0, 1, 2}

    def test_deletion_maximizes_ranking_value(self, f1):
        # Del(0,2) and Del(1,2) share the top value; Del(0,1) ranks lower
        t = target_on(f1, {0, 1, 2})
        seen = set()
        for seed in range(12):
            upd = best_update_safeness(f1, t, random.Random(seed))
            seen.add((upd.u, upd.v))
        assert seen <= {(0, 2), (1, 2)}

    def test_induced_path_forces_addition(self):
        # members form an induced path: both internal edges are bridges
        g = Graph(4, [(0, 1), (1, 2)])
        t = target_on(g, {0, 1, 2})
        upd = best_update_safeness(g, t, random.Random(0))
        assert upd.is_add
        assert (upd.u == 3) or (upd.v == 3)

    def test_exhausted_when_no_candidate(self):
        # two members joined by a bridge and no outsider to connect to
        g = Graph(2, [(0, 1)])
        t = target_on(g, {0, 1})
        with pytest.raises(Exhausted):
            best_update_safeness(g, t, random.Random(0))


class TestRunSafGain:
    def test_zero_budget_rejected(self, f1):
        t = target_on(f1, {0, 1, 2})
        with pytest.raises(ValueError):
            run_safgain(f1, t, 0, random.Random(0))

    def test_one_step_applies_best_gain(self, f1):
        t = target_on(f1, {0, 1, 2})
        before = community_safeness(f1, t)
        assert before == pytest.approx(1 / 18, abs=1e-15)
        result = run_safgain(f1, t, 1, random.Random(0))
        assert len(result.updates) == 1
        after = direct_safeness(result.graph, {0, 1, 2})
        # best candidate is the 7/36 deletion, beating the 1/18 addition
        assert after == pytest.approx(1 / 18 + 7 / 36, abs=1e-12)
        assert after > before

    def test_safeness_increases_on_positive_gain_steps(self, karate):
        graph, table = karate
        h = frozenset(table.id_of(l) for l in ("24", "25", "26", "28", "29", "32"))
        t = target_on(graph, h)
        g = graph
        previous = community_safeness(g, t)
        result = run_safgain(g, t, 4, random.Random(9))
        for upd in result.updates:
            gain = safeness_gain(g, t, upd)
            g = apply_update(g, upd)
            t = t.refresh_after_update(g, upd)
            current = community_safeness(g, t)
            assert current == pytest.approx(previous + gain, abs=1e-12)
            if gain > 0:
                assert current > previous
            previous = current

    def test_never_splits_the_target(self):
        rng = random.Random(58)
        for _ in range(10):
            g = random_graph(rng, rng.randint(5, 24), 0.3)
            members = set(rng.sample(range(g.n), rng.randint(3, min(10, g.n))))
            t = target_on(g, members)
            n_before = len(connected_components(g, members))
            result = run_safgain(g, t, 4, random.Random(rng.randrange(1000)))
            n_after = len(connected_components(result.graph, members))
            assert n_after == n_before
            for upd in result.updates:
                assert upd.u in members or upd.v in members
