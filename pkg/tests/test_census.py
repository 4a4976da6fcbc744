import pytest

from conftest import random_graph
from turanl2.census import (
    _tripartite_decompose,
    _tripartite_setup,
    best_construction_value,
    census_colored_mantel,
    census_k43,
    census_tripartite_triangle_free,
)
from turanl2.constructions import Composition3, build_c
from turanl2.errors import SizeLimitExceeded
from turanl2.hypergraph import (
    ThreeGraph,
    all_triples,
    canonical_form,
    completes_k43,
    contains_k43,
    l2_norm,
)
from turanl2.inequality import s_spread


class TestK43Census:
    def test_n4(self):
        rep = census_k43(4, method="canonical")
        assert rep.optimum == 15
        assert rep.iso_classes == 1
        assert rep.reference_attains and rep.reference_unique

    def test_n5(self):
        rep = census_k43(5, method="canonical")
        assert rep.optimum == 47
        assert rep.iso_classes == 1
        assert rep.reference_attains and rep.reference_unique

    def test_naive_and_canonical_agree(self):
        for n in (2, 3, 4, 5):
            naive = census_k43(n, method="naive")
            canon = census_k43(n, method="canonical")
            assert naive.optimum == canon.optimum
            assert naive.iso_classes == canon.iso_classes
            assert set(naive.extremal) == set(canon.extremal)

    def test_n6_outcome_as_data(self):
        rep = census_k43(6, method="canonical")
        assert rep.optimum == 120
        assert rep.reference_attains and rep.reference_unique
        c6, _ = build_c(Composition3(2, 2, 2))
        assert canonical_form(c6)[0] in rep.extremal

    def test_extremal_graphs_are_valid_and_free(self):
        for n in (4, 5):
            rep = census_k43(n, method="canonical")
            for form in rep.extremal:
                h = ThreeGraph(n, form, _normalized=True)
                assert not contains_k43(h)
                assert l2_norm(h) == rep.optimum

    def test_census_winner_spread_is_small(self):
        # the 2-norm-degree spread diagnostic on extremal graphs
        for n in (4, 5, 6):
            rep = census_k43(n, method="canonical")
            for form in rep.extremal:
                h = ThreeGraph(n, form, _normalized=True)
                assert s_spread(h).within_reference_bound

    def test_caps(self):
        with pytest.raises(SizeLimitExceeded):
            census_k43(6, method="naive")
        with pytest.raises(SizeLimitExceeded):
            census_k43(9, method="canonical")


def test_maximality_pruning_soundness(rng):
    # greedily completing any tetrahedron-free graph never lowers the norm
    for _ in range(500):
        n = rng.randint(4, 6)
        h = random_graph(rng, n, rng.random() * 0.5)
        while contains_k43(h):
            quad = None
            from turanl2.hypergraph import find_k43

            quad = find_k43(h)
            drop = tuple(sorted(rng.sample(quad, 3)))
            h = h.with_changes(remove=[drop])
        before = l2_norm(h)
        maximal = h
        while True:
            addable = [
                t
                for t in all_triples(n)
                if t not in maximal.edge_set and not completes_k43(maximal, t)
            ]
            if not addable:
                break
            maximal = maximal.with_changes(add=[addable[0]])
        assert not contains_k43(maximal)
        assert l2_norm(maximal) >= before


class TestColoredMantelCensus:
    def test_part_size_one(self):
        rep = census_colored_mantel(1, "edges", mode="exhaustive")
        assert rep.optimum == 2
        assert rep.reference_value == 2 and rep.reference_attains

    def test_part_size_two_edges(self):
        rep = census_colored_mantel(2, "edges", mode="exhaustive")
        assert rep.optimum == 9
        assert rep.reference_value == 9 and rep.reference_attains
        assert rep.extra["edge_bound_holds"]
        assert rep.iso_classes == 10
        assert rep.extra["iso_classes_rotation_quotient"] == 4

    def test_part_size_two_degree_squares(self):
        rep = census_colored_mantel(2, "l2", mode="exhaustive")
        assert rep.optimum == 58  # the reference closed form 9n^3-4n^2+n at n=2
        assert rep.reference_attains
        assert rep.iso_classes == 3
        assert rep.extra["iso_classes_rotation_quotient"] == 1

    def test_assisted_matches_exhaustive_edges(self):
        for n in (1, 2):
            assisted = census_colored_mantel(n, "edges", mode="assisted")
            exhaustive = census_colored_mantel(n, "edges", mode="exhaustive")
            assert assisted.optimum == exhaustive.optimum

    def test_assisted_degree_squares_is_a_lower_bound(self):
        assisted = census_colored_mantel(2, "l2", mode="assisted")
        exhaustive = census_colored_mantel(2, "l2", mode="exhaustive")
        assert assisted.optimum <= exhaustive.optimum
        assert not assisted.extra["reduction_proved_for_objective"]

    def test_assisted_reaches_reference_beyond_exhaustive_range(self):
        for n in (3, 4, 5):
            rep = census_colored_mantel(n, "edges", mode="assisted")
            assert rep.optimum >= rep.reference_value
            assert rep.extra["edge_bound_holds"]

    def test_exhaustive_cap(self):
        with pytest.raises(SizeLimitExceeded):
            census_colored_mantel(3, "edges", mode="exhaustive")


class TestTripartiteCensus:
    def test_values(self):
        for n, want in ((1, 2), (2, 8), (3, 18)):
            rep = census_tripartite_triangle_free(n)
            assert rep.optimum == want == 2 * n * n
            assert rep.extra["within_slack_bound"]
            assert rep.extra["all_match_split_form"]

    def test_decomposition_agrees_with_scan(self):
        for n in (1, 2):
            rep = census_tripartite_triangle_free(n)
            parts, _ = _tripartite_setup(n)
            alt, maximizers, _ = _tripartite_decompose(n, parts)
            assert rep.optimum == alt
            assert rep.extra["labeled_maximizers"] == len(set(maximizers))

    def test_cap(self):
        with pytest.raises(SizeLimitExceeded):
            census_tripartite_triangle_free(4)


def test_best_construction_value_tracks_sweep():
    for n in (4, 5, 6, 7, 9):
        value, comp = best_construction_value(n)
        h, _ = build_c(comp)
        assert l2_norm(h) == value
        assert comp.near_balanced() or n < 6
