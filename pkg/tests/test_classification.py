import itertools
from collections import Counter
from fractions import Fraction

import pytest

from conftest import random_graph
from turanl2.classification import (
    Thresholds,
    check_phase_one_hypotheses,
    check_phase_two_hypotheses,
    classify_edges,
    construction_edges,
    family_stats,
    is_construction_edge,
    link_move_inequalities,
    optimize_partition,
)
from turanl2.colored import Partition3
from turanl2.constructions import Composition3, build_balanced_c, build_c
from turanl2.errors import (
    EdgeNotCrossing,
    EdgeNotInShadow,
    EdgeNotInternal,
    SizeLimitExceeded,
    UnknownFamily,
)
from turanl2.hypergraph import make_graph


def test_construction_edges_matches_builder_on_contiguous_partition():
    comp = Composition3(3, 2, 2)
    h, p = build_c(comp)
    assert construction_edges(p) == h.edge_set


def test_classify_native_construction_is_clean():
    c6, p6 = build_balanced_c(6)
    ec = classify_edges(c6, p6)
    assert not ec.b and not ec.m
    assert ec.intersection_size() == 14
    assert family_stats(ec, "B").max_vertex_degree == 0
    assert family_stats(ec, "M").max_vertex_degree == 0


def test_classify_single_misplaced_edge():
    # two part-1 vertices with a part-3 vertex is not a construction profile
    h = make_graph(4, [[0, 1, 3]])
    p = Partition3((1, 1, 2, 3))
    ec = classify_edges(h, p)
    assert ec.b == ec.b_bi == frozenset({(0, 1, 3)})
    assert not ec.b_int
    assert ec.m == construction_edges(p)


def test_classify_missing_transversal():
    c6, p6 = build_balanced_c(6)
    h = c6.with_changes(remove=[(0, 2, 4)])
    ec = classify_edges(h, p6)
    assert not ec.b
    assert ec.m == ec.m_tri == frozenset({(0, 2, 4)})


def test_family_partitions(rng):
    for _ in range(150):
        n = rng.randint(3, 10)
        h = random_graph(rng, n, rng.random() * 0.5)
        p = Partition3(tuple(rng.choice((1, 2, 3)) for _ in range(n)))
        ec = classify_edges(h, p)
        assert ec.b_int | ec.b_bi == ec.b and not ec.b_int & ec.b_bi
        assert ec.m_tri | ec.m_bi == ec.m and not ec.m_tri & ec.m_bi
        assert (h.edge_set - ec.b) | ec.m == construction_edges(p)
        assert len(h.edges) == ec.intersection_size() + len(ec.b)
        for t in h.edges:
            assert is_construction_edge(t, p) == (t not in ec.b)


def test_family_stats_recount(rng):
    for _ in range(200):
        n = rng.randint(3, 9)
        h = random_graph(rng, n, rng.random() * 0.6)
        p = Partition3(tuple(rng.choice((1, 2, 3)) for _ in range(n)))
        ec = classify_edges(h, p)
        for fam_id in ("B", "M", "B_int", "B_bi", "M_tri", "M_bi"):
            fam = ec.family(fam_id)
            stats = family_stats(ec, fam_id)
            deg = Counter()
            for t in fam:
                for v in t:
                    deg[v] += 1
            assert stats.max_vertex_degree == max(deg.values(), default=0)
            for e in itertools.combinations(range(n), 2):
                want = sum(1 for t in fam if e[0] in t and e[1] in t)
                assert ec.codegree(fam_id, e) == want
    with pytest.raises(UnknownFamily):
        ec.family("X")


def test_family_stats_missing_star():
    c6, p6 = build_balanced_c(6)
    gone = [t for t in c6.edges if 0 in t]
    h = c6.with_changes(remove=gone)
    ec = classify_edges(h, p6)
    assert family_stats(ec, "M").max_vertex_degree == len(gone) == 7


class TestOptimizePartition:
    def test_recovers_native_partition_of_construction(self):
        c6, _ = build_balanced_c(6)
        p, inter = optimize_partition(c6, "exhaustive")
        assert inter == 14

    def test_single_edge(self):
        h = make_graph(3, [[0, 1, 2]])
        p, inter = optimize_partition(h, "exhaustive")
        assert inter == 1
        assert is_construction_edge((0, 1, 2), p)
        # lexicographic tie-break picks the two-in-part-one profile
        assert p.parts == (1, 1, 2)

    def test_tetrahedron_minus_edge(self):
        h = make_graph(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]])
        p, inter = optimize_partition(h, "exhaustive")
        assert inter >= 2

    def test_exhaustive_tie_break_is_lexicographic(self, rng):
        for _ in range(20):
            n = rng.randint(3, 6)
            h = random_graph(rng, n, rng.random())
            p, inter = optimize_partition(h, "exhaustive")
            # brute-force argmax with lexicographic tie-break
            best = None
            best_assign = None
            for assign in itertools.product((1, 2, 3), repeat=n):
                cand = Partition3(assign)
                score = sum(1 for t in h.edges if is_construction_edge(t, cand))
                if best is None or score > best:
                    best, best_assign = score, assign
            assert inter == best and p.parts == best_assign

    def test_vertex_moves_between_balanced_and_exhaustive(self, rng):
        for _ in range(30):
            n = rng.randint(3, 8)
            h = random_graph(rng, n, rng.random() * 0.6)
            balanced = Partition3.balanced(n)
            base = sum(1 for t in h.edges if is_construction_edge(t, balanced))
            p_lm, inter_lm = optimize_partition(h, "vertexMoves")
            _, inter_ex = optimize_partition(h, "exhaustive")
            assert base <= inter_lm <= inter_ex

    def test_vertex_moves_fixpoint_satisfies_link_inequalities(self, rng):
        for _ in range(30):
            n = rng.randint(3, 9)
            h = random_graph(rng, n, rng.random() * 0.5)
            p, _ = optimize_partition(h, "vertexMoves")
            for v in range(n):
                first, second = link_move_inequalities(h, p, v)
                assert first and second

    def test_size_cap(self):
        with pytest.raises(SizeLimitExceeded):
            optimize_partition(make_graph(13, []), "exhaustive")


class TestHypothesisChecklists:
    def test_native_construction_phase_one(self):
        c6, p6 = build_balanced_c(6)
        t = Thresholds(Fraction(1, 4))
        checklist = check_phase_one_hypotheses(c6, p6, (0, 1), t)
        flags = {i.id: i.passed for i in checklist.items}
        assert flags["i"] and flags["ii"]
        assert not flags["iii"]  # nothing is missing, so the codegree is 0
        assert flags["iv"] and flags["v"]
        assert not checklist.all_pass

    def test_crossing_pair_rejected_in_phase_one(self):
        c6, p6 = build_balanced_c(6)
        with pytest.raises(EdgeNotInternal):
            check_phase_one_hypotheses(c6, p6, (0, 2), Thresholds(Fraction(1, 4)))
        with pytest.raises(EdgeNotCrossing):
            check_phase_two_hypotheses(c6, p6, (0, 1), Thresholds(Fraction(1, 4)))

    def test_shadow_requirement(self):
        h = make_graph(6, [[0, 2, 4]])
        p = Partition3((1, 1, 2, 2, 3, 3))
        with pytest.raises(EdgeNotInShadow):
            check_phase_one_hypotheses(h, p, (0, 1), Thresholds(Fraction(1, 4)))

    def test_planted_missing_neighborhood_counts(self):
        c6, p6 = build_balanced_c(6)
        # delete every construction edge through the internal pair (0, 1)
        gone = [t for t in c6.edges if 0 in t and 1 in t]
        h = c6.with_changes(remove=gone, add=[(0, 1, 4)])  # keep the pair covered
        t = Thresholds(Fraction(1, 10000))
        checklist = check_phase_one_hypotheses(h, p6, (0, 1), t)
        item3 = next(i for i in checklist.items if i.id == "iii")
        assert item3.lhs == 4  # codegree 2, squared
        assert item3.passed == (Fraction(4) >= t.sqrt_bound_squared(47, 6))

    def test_phase_two_mirror(self):
        c6, p6 = build_balanced_c(6)
        h = c6.with_changes(remove=[(0, 2, 4)])
        t = Thresholds(Fraction(1, 10000))
        checklist = check_phase_two_hypotheses(h, p6, (0, 2), t)
        flags = {i.id: i.passed for i in checklist.items}
        item3 = next(i for i in checklist.items if i.id == "iii")
        assert item3.lhs == 1  # one missing transversal edge, squared
        assert flags["iv"]

    def test_checklist_json_schema(self):
        c6, p6 = build_balanced_c(6)
        checklist = check_phase_one_hypotheses(c6, p6, (0, 1), Thresholds(Fraction(1, 4)))
        d = checklist.to_json_dict()
        assert set(d) == {"phase", "e_star", "items", "all_pass"}
        assert [i["id"] for i in d["items"]] == ["i", "ii", "iii", "iv", "v"]
        assert all(set(i) >= {"id", "lhs", "rhs", "pass"} for i in d["items"])


def test_thresholds_square_comparison():
    t = Thresholds(Fraction(1, 4))  # sqrt(xi) = 1/2 exactly
    assert t.at_least_sqrt_bound(24, 47, 1)  # 24 >= 23.5
    assert not t.at_least_sqrt_bound(23, 47, 1)
    lo, hi = t.sqrt_bound_enclosure(47, 1)
    assert lo == hi == Fraction(47, 2)
    t2 = Thresholds(Fraction(1, 3))
    lo2, hi2 = t2.sqrt_bound_enclosure(1, 1)
    assert lo2 < hi2 and lo2 * lo2 <= Fraction(1, 3) <= hi2 * hi2
