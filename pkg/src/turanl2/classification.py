"""Edge taxonomy of a 3-graph relative to a 3-partition.

Relative to the cyclic construction on a partition P, the edges of H split
into bad edges (in H but not in the construction) and missing edges (in the
construction but not in H).  Bad edges split further into internal (inside
one part) and bi (meeting exactly two parts); missing edges into transversal
(meeting all three parts) and bi.  This module classifies, computes family
degree/codegree statistics, optimizes the partition, and evaluates the
hypothesis checklists of the two local-improvement operators.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .colored import Partition3, next_part
from .errors import (
    EdgeNotCrossing,
    EdgeNotInShadow,
    EdgeNotInternal,
    PartitionMismatch,
    SizeLimitExceeded,
    UnknownFamily,
)
from .hypergraph import Pair, ThreeGraph, Triple, link, normalize_pair

FAMILY_IDS = ("B", "M", "B_int", "B_bi", "M_tri", "M_bi")

EXHAUSTIVE_PARTITION_CAP = 12


# A few construction edge sets are cached (they are large and the improvement
# drivers reuse one partition across many calls).
_CONSTRUCTION_CACHE: dict[tuple[int, ...], frozenset] = {}


def construction_edges(p: Partition3) -> frozenset[Triple]:
    """Edges of the cyclic construction on an arbitrary (relabeled) partition."""
    cached = _CONSTRUCTION_CACHE.get(p.parts)
    if cached is not None:
        return cached
    sets = p.part_sets()
    edges: list[Triple] = []
    edges.extend(
        tuple(sorted(t)) for t in itertools.product(sets[0], sets[1], sets[2])
    )
    for i in (1, 2, 3):
        src = sets[i - 1]
        dst = sets[next_part(i) - 1]
        for a, b in itertools.combinations(sorted(src), 2):
            for w in dst:
                edges.append(tuple(sorted((a, b, w))))
    result = frozenset(edges)
    if len(_CONSTRUCTION_CACHE) >= 4:
        _CONSTRUCTION_CACHE.clear()
    _CONSTRUCTION_CACHE[p.parts] = result
    return result


def edge_profile(t: Triple, p: Partition3) -> tuple[int, int, int]:
    prof = [0, 0, 0]
    for v in t:
        prof[p.part_of(v) - 1] += 1
    return tuple(prof)


def is_construction_edge(t: Triple, p: Partition3) -> bool:
    parts = sorted(p.part_of(v) for v in t)
    if parts == [1, 2, 3]:
        return True
    if parts[0] == parts[1] == parts[2]:
        return False
    if parts[0] == parts[1]:
        # two in parts[0], one in parts[2]
        return parts[2] == next_part(parts[0])
    # two in parts[1], one in parts[0]
    return parts[0] == next_part(parts[1])


@dataclass(frozen=True)
class EdgeClassification:
    """The six families; ``b`` and ``m`` always partition as int/bi, tri/bi."""

    h: ThreeGraph
    partition: Partition3
    b: frozenset[Triple]
    m: frozenset[Triple]
    b_int: frozenset[Triple]
    b_bi: frozenset[Triple]
    m_tri: frozenset[Triple]
    m_bi: frozenset[Triple]

    def family(self, family_id: str) -> frozenset[Triple]:
        try:
            return {
                "B": self.b,
                "M": self.m,
                "B_int": self.b_int,
                "B_bi": self.b_bi,
                "M_tri": self.m_tri,
                "M_bi": self.m_bi,
            }[family_id]
        except KeyError:
            raise UnknownFamily(f"unknown family {family_id!r}; use one of {FAMILY_IDS}")

    def codegree(self, family_id: str, e: Sequence[int]) -> int:
        pair = normalize_pair(e, self.h.n)
        fam = self.family(family_id)
        return sum(1 for t in fam if pair[0] in t and pair[1] in t)

    def intersection_size(self) -> int:
        return len(self.h.edges) - len(self.b)


def classify_edges(h: ThreeGraph, p: Partition3) -> EdgeClassification:
    if p.n != h.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {h.n}")
    cons = construction_edges(p)
    b = frozenset(h.edge_set - cons)
    m = frozenset(cons - h.edge_set)
    b_int = frozenset(
        t for t in b if p.part_of(t[0]) == p.part_of(t[1]) == p.part_of(t[2])
    )
    m_tri = frozenset(
        t
        for t in m
        if {p.part_of(t[0]), p.part_of(t[1]), p.part_of(t[2])} == {1, 2, 3}
    )
    return EdgeClassification(
        h=h,
        partition=p,
        b=b,
        m=m,
        b_int=b_int,
        b_bi=b - b_int,
        m_tri=m_tri,
        m_bi=m - m_tri,
    )


@dataclass(frozen=True)
class FamilyStats:
    family: str
    size: int
    max_vertex_degree: int
    max_pair_codegree: int
    pair_codegrees: dict

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "size": self.size,
            "max_vertex_degree": self.max_vertex_degree,
            "max_pair_codegree": self.max_pair_codegree,
        }


def family_stats(ec: EdgeClassification, family_id: str) -> FamilyStats:
    fam = ec.family(family_id)
    deg: Counter = Counter()
    cod: Counter = Counter()
    for a, b, c in fam:
        deg[a] += 1
        deg[b] += 1
        deg[c] += 1
        cod[(a, b)] += 1
        cod[(a, c)] += 1
        cod[(b, c)] += 1
    return FamilyStats(
        family=family_id,
        size=len(fam),
        max_vertex_degree=max(deg.values(), default=0),
        max_pair_codegree=max(cod.values(), default=0),
        pair_codegrees=dict(cod),
    )


def intersection_with_construction(h: ThreeGraph, p: Partition3) -> int:
    cons = construction_edges(p)
    return sum(1 for t in h.edges if t in cons)


def _vertex_contribution(h: ThreeGraph, parts: list[int], v: int, part: int) -> int:
    """Edges through v that would lie in the construction if v sat in ``part``."""
    count = 0
    for t in h.edges:
        if v not in t:
            continue
        others = [x for x in t if x != v]
        pa, pb = parts[others[0]], parts[others[1]]
        prof = sorted((pa, pb, part))
        if prof == [1, 2, 3]:
            count += 1
        elif prof[0] == prof[1] and prof[2] == next_part(prof[0]):
            count += 1
        elif prof[1] == prof[2] and prof[0] == next_part(prof[1]):
            count += 1
    return count


def optimize_partition(
    h: ThreeGraph,
    mode: str = "exhaustive",
    initial: Optional[Partition3] = None,
    cap: int = EXHAUSTIVE_PARTITION_CAP,
) -> tuple[Partition3, int]:
    """Partition maximizing the overlap between H and the cyclic construction.

    exhaustive: globally optimal over all 3^n assignments (DFS with an
    admissible remaining-edges bound); ties resolve to the lexicographically
    smallest assignment string.  Capped at ``cap`` vertices.

    vertexMoves: local search from ``initial`` (balanced by label when
    omitted); repeatedly applies the first strictly improving single-vertex
    reassignment, scanning vertices cyclically.  At the fixpoint no single
    move increases the overlap, so the two link inequalities hold at every
    vertex.
    """
    if mode == "exhaustive":
        if h.n > cap:
            raise SizeLimitExceeded(
                f"exhaustive partition search capped at {cap} vertices, got {h.n}"
            )
        return _optimize_exhaustive(h)
    if mode == "vertexMoves":
        return _optimize_vertex_moves(h, initial)
    raise ValueError(f"unknown mode {mode!r}")


def _optimize_exhaustive(h: ThreeGraph) -> tuple[Partition3, int]:
    n = h.n
    edges = h.edges
    # edges bucketed by their largest vertex: an edge is decided once its
    # last vertex is assigned.
    by_last: list[list[Triple]] = [[] for _ in range(n)]
    for t in edges:
        by_last[t[2]].append(t)
    undecided_after = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        undecided_after[v] = undecided_after[v + 1] + len(by_last[v])

    best_score = -1
    best_assign: Optional[tuple[int, ...]] = None
    assign = [0] * n

    def dfs(v: int, score: int):
        nonlocal best_score, best_assign
        if score + undecided_after[v] < best_score:
            return
        if v == n:
            if score > best_score:
                best_score = score
                best_assign = tuple(assign)
            return
        for part in (1, 2, 3):
            assign[v] = part
            gained = 0
            for t in by_last[v]:
                pa, pb, pc = assign[t[0]], assign[t[1]], part
                prof = sorted((pa, pb, pc))
                if prof == [1, 2, 3]:
                    gained += 1
                elif prof[0] == prof[1] and prof[2] == next_part(prof[0]):
                    gained += 1
                elif prof[1] == prof[2] and prof[0] == next_part(prof[1]):
                    gained += 1
            dfs(v + 1, score + gained)
        assign[v] = 0

    dfs(0, 0)
    assert best_assign is not None
    return Partition3(best_assign), best_score


def _optimize_vertex_moves(
    h: ThreeGraph, initial: Optional[Partition3]
) -> tuple[Partition3, int]:
    p = initial if initial is not None else Partition3.balanced(h.n)
    if p.n != h.n:
        raise PartitionMismatch("initial partition size does not match the graph")
    parts = list(p.parts)
    score = intersection_with_construction(h, Partition3(parts))
    improved = True
    while improved:
        improved = False
        for v in range(h.n):
            here = _vertex_contribution(h, parts, v, parts[v])
            for part in (1, 2, 3):
                if part == parts[v]:
                    continue
                there = _vertex_contribution(h, parts, v, part)
                if there > here:
                    parts[v] = part
                    score += there - here
                    improved = True
                    break
            if improved:
                break
    return Partition3(parts), score


def link_move_inequalities(h: ThreeGraph, p: Partition3, v: int) -> tuple[bool, bool]:
    """The two link edge-count inequalities stating that moving ``v`` to either
    other part does not increase the construction overlap."""
    here = p.part_of(v)
    j, k = next_part(here), next_part(next_part(here))
    lk = link(h, v)
    sets = p.part_sets()
    counts: Counter = Counter()
    for a, b in lk.edges:
        counts[tuple(sorted((p.part_of(a), p.part_of(b))))] += 1

    def cnt(x, y):
        return counts.get(tuple(sorted((x, y))), 0)

    first = cnt(here, j) + cnt(k, k) >= cnt(here, k) + cnt(here, here)
    second = cnt(j, k) + cnt(k, k) >= cnt(here, k) + cnt(j, j)
    return first, second


@dataclass(frozen=True)
class Thresholds:
    """The checklist parameter xi, with exact square-compare helpers.

    Comparisons of the form d >= coeff * sqrt(xi) * n are decided by squaring
    (both sides are nonnegative), so no irrational value is ever formed.
    """

    xi: Fraction

    def __post_init__(self):
        if not 0 < self.xi:
            raise ValueError("xi must be positive")

    def at_least_sqrt_bound(self, d: int, coeff: int, n: int) -> bool:
        """d >= coeff * sqrt(xi) * n, decided exactly."""
        return Fraction(d * d) >= coeff * coeff * self.xi * n * n

    def sqrt_bound_squared(self, coeff: int, n: int) -> Fraction:
        return coeff * coeff * self.xi * n * n

    def sqrt_bound_enclosure(self, coeff: int, n: int) -> tuple[Fraction, Fraction]:
        from .util import isqrt_enclosure

        lo, hi = isqrt_enclosure(self.xi)
        return coeff * lo * n, coeff * hi * n


@dataclass(frozen=True)
class ChecklistItem:
    id: str
    description: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "<=" or ">="
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class Checklist:
    phase: str
    e_star: Pair
    items: tuple[ChecklistItem, ...]

    @property
    def all_pass(self) -> bool:
        return all(i.passed for i in self.items)

    def to_json_dict(self) -> dict:
        return {
            "phase": self.phase,
            "e_star": list(self.e_star),
            "items": [i.to_json_dict() for i in self.items],
            "all_pass": self.all_pass,
        }


def _shared_items(
    h: ThreeGraph, p: Partition3, t: Thresholds, ec: EdgeClassification
) -> list[ChecklistItem]:
    n = h.n
    xi = t.xi
    imbalance = max(abs(Fraction(size) - Fraction(n, 3)) for size in p.sizes)
    items = [
        ChecklistItem(
            "i",
            "part sizes within xi*n of n/3",
            imbalance,
            xi * n,
            "<=",
            imbalance <= xi * n,
        )
    ]
    dmax_m = family_stats(ec, "M").max_vertex_degree
    dmax_b = family_stats(ec, "B").max_vertex_degree
    worst = max(dmax_m, dmax_b)
    items.append(
        ChecklistItem(
            "ii",
            "max missing/bad vertex degree at most xi*n^2",
            Fraction(worst),
            xi * n * n,
            "<=",
            worst <= xi * n * n,
        )
    )
    return items


def check_phase_one_hypotheses(
    h: ThreeGraph,
    p: Partition3,
    e_star: Sequence[int],
    t: Thresholds,
    ec: Optional[EdgeClassification] = None,
) -> Checklist:
    """Five-item checklist for an internal pair (squared form for item iii)."""
    pair = normalize_pair(e_star, h.n)
    if p.part_of(pair[0]) != p.part_of(pair[1]):
        raise EdgeNotInternal(f"pair {pair} crosses parts")
    if h.codegrees().get(pair, 0) == 0:
        raise EdgeNotInShadow(f"pair {pair} is covered by no edge")
    n = h.n
    xi = t.xi
    if ec is None:
        ec = classify_edges(h, p)
    d_m = ec.codegree("M", pair)
    d_b = ec.codegree("B", pair)
    d_bbi = ec.codegree("B_bi", pair)
    items = _shared_items(h, p, t, ec)
    items.append(
        ChecklistItem(
            "iii",
            "squared missing codegree at e* at least 47^2 * xi * n^2",
            Fraction(d_m * d_m),
            t.sqrt_bound_squared(47, n),
            ">=",
            t.at_least_sqrt_bound(d_m, 47, n),
        )
    )
    items.append(
        ChecklistItem(
            "iv",
            "missing codegree at least bad codegree minus xi*n",
            Fraction(d_m),
            Fraction(d_b) - xi * n,
            ">=",
            Fraction(d_m) >= Fraction(d_b) - xi * n,
        )
    )
    items.append(
        ChecklistItem(
            "v",
            "bi-bad codegree at e* at most xi*n",
            Fraction(d_bbi),
            xi * n,
            "<=",
            Fraction(d_bbi) <= xi * n,
        )
    )
    return Checklist("one", pair, tuple(items))


def check_phase_two_hypotheses(
    h: ThreeGraph,
    p: Partition3,
    e_star: Sequence[int],
    t: Thresholds,
    ec: Optional[EdgeClassification] = None,
) -> Checklist:
    """Four-item checklist for a crossing pair, transversal-missing flavored."""
    pair = normalize_pair(e_star, h.n)
    if p.part_of(pair[0]) == p.part_of(pair[1]):
        raise EdgeNotCrossing(f"pair {pair} lies inside one part")
    if h.codegrees().get(pair, 0) == 0:
        raise EdgeNotInShadow(f"pair {pair} is covered by no edge")
    n = h.n
    xi = t.xi
    if ec is None:
        ec = classify_edges(h, p)
    d_mtri = ec.codegree("M_tri", pair)
    d_b = ec.codegree("B", pair)
    items = _shared_items(h, p, t, ec)
    items.append(
        ChecklistItem(
            "iii",
            "squared transversal-missing codegree at least 90^2 * xi * n^2",
            Fraction(d_mtri * d_mtri),
            t.sqrt_bound_squared(90, n),
            ">=",
            t.at_least_sqrt_bound(d_mtri, 90, n),
        )
    )
    items.append(
        ChecklistItem(
            "iv",
            "transversal-missing codegree at least bad codegree minus xi*n",
            Fraction(d_mtri),
            Fraction(d_b) - xi * n,
            ">=",
            Fraction(d_mtri) >= Fraction(d_b) - xi * n,
        )
    )
    return Checklist("two", pair, tuple(items))
