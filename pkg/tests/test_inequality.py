import itertools
import random
from fractions import Fraction

import pytest

from conftest import oracle_contains_complete, random_graph
from turanl2.errors import SameVertex
from turanl2.hypergraph import contains_k43, l2_norm, make_graph, two_norm_degree
from turanl2.inequality import (
    CENTER_RADIUS,
    THIRD,
    center_lemma_floor,
    certify_simplex_inequality,
    duplicate_vertex,
    inequality_lhs,
    inequality_rhs,
    margin,
    margin_centered,
    s_spread,
    verify_simplex_inequality,
)


def test_margin_at_barycenter_is_zero():
    assert inequality_lhs(THIRD, THIRD, THIRD) == Fraction(5, 54)
    assert margin(THIRD, THIRD, THIRD) == 0


def test_margin_at_corner():
    x = (Fraction(1), Fraction(0), Fraction(0))
    assert inequality_lhs(*x) == 0
    assert inequality_rhs(*x) == Fraction(5, 54) - Fraction(1, 75)
    assert margin(*x) > 0


def test_recentered_identity_exactly():
    # both sides are cubics; agreement on a 5x5 rational grid decides identity
    pts = [Fraction(i, 7) for i in range(5)]
    for x1 in pts:
        for x2 in pts:
            x3 = 1 - x1 - x2
            assert margin(x1, x2, x3) == margin_centered(
                x1 - THIRD, x2 - THIRD, x3 - THIRD
            )


def test_center_lemma_constants():
    # q >= (3/2) m^2 and |p + D| <= 9 m^3 on random zero-sum rational triples
    rng = random.Random(5)
    for _ in range(400):
        u1 = Fraction(rng.randint(-40, 40), 120)
        u2 = Fraction(rng.randint(-40, 40), 120)
        u3 = -u1 - u2
        m = max(abs(u1), abs(u2), abs(u3))
        q = u1 * u1 + u2 * u2 + u3 * u3
        p = u1 * u2 * u3
        d = -(u1 - u2) * (u2 - u3) * (u3 - u1)
        assert q >= Fraction(3, 2) * m * m
        assert abs(p + d) <= 9 * m * m * m
    # the resulting floor is positive through the ball radius
    assert center_lemma_floor(CENTER_RADIUS) > 0
    for k in range(1, 26):
        assert center_lemma_floor(Fraction(k, 25 * 13)) > 0


def test_grid_margins_nonnegative_up_to_50():
    for d in range(1, 51):
        report = verify_simplex_inequality(d)
        assert report.worst_margin >= 0
        if d % 3 == 0:
            assert report.zero_margin_points == ((THIRD, THIRD, THIRD),)
            assert report.worst_margin == 0
        else:
            assert not report.zero_margin_points
            assert report.worst_margin > 0


def test_grid_report_values_recompute():
    report = verify_simplex_inequality(40)
    assert report.points == 41 * 42 // 2
    assert margin(*report.argmin) == report.worst_margin


def test_certificate_has_no_undecided_boxes():
    cert = certify_simplex_inequality(Fraction(1, 10**6))
    assert cert.certified
    assert cert.boxes_certified_center >= 1
    assert cert.boxes_certified_interval >= 1


def test_certificate_json_is_exact():
    cert = certify_simplex_inequality(Fraction(1, 2**10))
    d = cert.to_json_dict()
    assert d["certified"] is True
    assert isinstance(d["min_width"], Fraction) or "/" in str(d["min_width"])


class TestSpread:
    def test_single_edge_symmetric(self):
        h = make_graph(3, [[0, 1, 2]])
        report = s_spread(h)
        assert report.values == (3, 3, 3)
        assert report.max_pair_gap == 0 and report.vs_average_gap == 0

    def test_complete_graphs_are_transitive(self):
        for n in range(3, 6):
            h = make_graph(n, itertools.combinations(range(n), 3))
            report = s_spread(h)
            assert report.max_pair_gap == 0

    def test_three_symmetric_vertices_of_tetrahedron_minus_edge(self):
        h = make_graph(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]])
        values = s_spread(h).values
        # vertices 1, 2, 3 play the same role; 0 sits in every edge
        assert values[1] == values[2] == values[3]

    def test_balanced_construction_spread(self):
        from turanl2.constructions import build_balanced_c

        c6, _ = build_balanced_c(6)
        report = s_spread(c6)
        assert report.max_pair_gap == 0  # every vertex is equivalent by symmetry
        assert report.within_reference_bound

    def test_empty(self):
        assert s_spread(make_graph(0, [])).max_pair_gap == 0


class TestDuplicateVertex:
    def test_single_edge_example(self):
        h = make_graph(4, [[0, 1, 2]])
        out = duplicate_vertex(h, 0, 3)
        assert out.edges == ((0, 1, 2), (1, 2, 3))

    def test_isolated_source(self):
        h = make_graph(4, [[1, 2, 3]])
        out = duplicate_vertex(h, 0, 1)  # duplicate the isolated vertex 0 onto 1
        assert out.edges == ()

    def test_rejects_same_vertex(self):
        with pytest.raises(SameVertex):
            duplicate_vertex(make_graph(3, []), 1, 1)

    def test_copies_get_equal_two_norm_degrees(self, rng):
        for _ in range(100):
            n = rng.randint(4, 8)
            h = random_graph(rng, n, rng.random() * 0.5)
            u, v = rng.sample(range(n), 2)
            out = duplicate_vertex(h, u, v)
            assert two_norm_degree(out, u) == two_norm_degree(out, v)

    def test_preserves_tetrahedron_freeness(self, rng):
        done = 0
        while done < 100:
            n = rng.randint(4, 8)
            h = random_graph(rng, n, rng.random() * 0.4)
            if contains_k43(h):
                continue
            u, v = rng.sample(range(n), 2)
            out = duplicate_vertex(h, u, v)
            assert not contains_k43(out)
            assert not oracle_contains_complete(out, 4)
            done += 1
