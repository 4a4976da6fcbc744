"""Vertex-colored (3-partitioned) 2-graphs.

Covers the cyclic-triangle density rho3, the Lambda construction, Zykov-style
symmetrization to a locally symmetrized fixpoint, the structural fact
checkers that fixpoint satisfies, and the mixed directed view used for
degree-sum bounds along directed paths.

Parts are numbered 1, 2, 3 and all part arithmetic is cyclic (after 3 comes
1).  A triangle on colors (i, i, i+1) or (1, 2, 3) is "cyclic"; a colored
graph is cyclically triangle-free when it has no such triangle.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import (
    CrossPartClasses,
    MalformedPath,
    NotLocallySymmetrized,
    PartitionMismatch,
    SameClass,
    SameVertex,
    TooFewVertices,
)
from .hypergraph import Graph, check_vertex, graph_l2_norm, make_pair_graph

# Triangle color multisets that count toward rho3.
CYCLIC_TRIANGLE_TYPES = frozenset({(1, 2, 3), (1, 1, 2), (2, 2, 3), (1, 3, 3)})


def next_part(i: int) -> int:
    return 1 + (i % 3)


def prev_part(i: int) -> int:
    return 1 + ((i + 1) % 3)


class Partition3:
    """Assignment of every vertex to one of the parts 1, 2, 3."""

    __slots__ = ("parts", "_sets")

    def __init__(self, parts: Sequence[int]):
        parts = tuple(parts)
        for c in parts:
            if c not in (1, 2, 3):
                raise PartitionMismatch(f"part labels must be 1, 2, or 3; got {c}")
        self.parts = parts
        self._sets: Optional[tuple[frozenset[int], ...]] = None

    @classmethod
    def from_string(cls, s: str) -> "Partition3":
        try:
            return cls(tuple(int(ch) for ch in s.strip()))
        except ValueError as exc:
            raise PartitionMismatch(f"bad color string {s!r}") from exc

    @classmethod
    def from_sizes(cls, n1: int, n2: int, n3: int) -> "Partition3":
        """Label ranges: [0,n1) -> 1, [n1,n1+n2) -> 2, rest -> 3."""
        return cls((1,) * n1 + (2,) * n2 + (3,) * n3)

    @classmethod
    def balanced(cls, n: int) -> "Partition3":
        """As equal as possible by ascending label."""
        n1 = (n + 2) // 3
        n2 = (n + 1) // 3
        return cls.from_sizes(n1, n2, n - n1 - n2)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, int, int]:
        c = Counter(self.parts)
        return (c.get(1, 0), c.get(2, 0), c.get(3, 0))

    def part_of(self, v: int) -> int:
        check_vertex(v, self.n)
        return self.parts[v]

    def part_sets(self) -> tuple[frozenset[int], ...]:
        """(V1, V2, V3) as frozensets, index 0 unused-free: result[i-1] is Vi."""
        if self._sets is None:
            sets: list[set[int]] = [set(), set(), set()]
            for v, c in enumerate(self.parts):
                sets[c - 1].add(v)
            self._sets = tuple(frozenset(s) for s in sets)
        return self._sets

    def part_size(self, i: int) -> int:
        return len(self.part_sets()[i - 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition3) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition3({''.join(str(c) for c in self.parts)})"


class ColoredGraph:
    """A 2-graph together with a 3-partition of its vertex set."""

    __slots__ = ("graph", "partition")

    def __init__(self, graph: Graph, partition: Partition3):
        if partition.n != graph.n:
            raise PartitionMismatch(
                f"partition covers {partition.n} vertices, graph has {graph.n}"
            )
        self.graph = graph
        self.partition = partition

    @property
    def n(self) -> int:
        return self.graph.n

    def part_of(self, v: int) -> int:
        return self.partition.part_of(v)

    def with_graph(self, graph: Graph) -> "ColoredGraph":
        return ColoredGraph(graph, self.partition)

    def in_neighborhood(self, v: int) -> frozenset[int]:
        """Neighbors of v in the part before v's part (cyclically)."""
        i = self.part_of(v)
        return self.graph.neighbors(v) & self.partition.part_sets()[prev_part(i) - 1]

    def out_neighborhood(self, v: int) -> frozenset[int]:
        i = self.part_of(v)
        return self.graph.neighbors(v) & self.partition.part_sets()[next_part(i) - 1]

    def internal_neighborhood(self, v: int) -> frozenset[int]:
        i = self.part_of(v)
        return self.graph.neighbors(v) & self.partition.part_sets()[i - 1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.graph == other.graph
            and self.partition == other.partition
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.partition))

    def __repr__(self) -> str:
        return f"ColoredGraph(n={self.n}, m={len(self.graph.edges)}, sizes={self.partition.sizes})"


@dataclass(frozen=True)
class EquivalenceClasses:
    """Same-part, same-neighborhood vertex classes."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def class_members(self, v: int) -> tuple[int, ...]:
        return self.classes[self.class_of[v]]


def cyclic_triangles(cg: ColoredGraph) -> list[tuple[int, int, int]]:
    """All triangles whose color multiset is one of the four cyclic types."""
    g = cg.graph
    adj = g.adjacency()
    parts = cg.partition.parts
    out = []
    for a, b in g.edges:
        for w in adj[a] & adj[b]:
            if w > b:
                colors = tuple(sorted((parts[a], parts[b], parts[w])))
                if colors in CYCLIC_TRIANGLE_TYPES:
                    out.append((a, b, w))
    return out


def rho3(cg: ColoredGraph) -> Fraction:
    """Density of cyclic-type triangles among all vertex triples."""
    if cg.n < 3:
        raise TooFewVertices("rho3 needs at least 3 vertices")
    return Fraction(len(cyclic_triangles(cg)), comb(cg.n, 3))


def is_cyclic_triangle_free(cg: ColoredGraph) -> bool:
    """Direct scan; no division, defined for every vertex count."""
    g = cg.graph
    adj = g.adjacency()
    parts = cg.partition.parts
    for a, b in g.edges:
        for w in adj[a] & adj[b]:
            if w > b:
                colors = tuple(sorted((parts[a], parts[b], parts[w])))
                if colors in CYCLIC_TRIANGLE_TYPES:
                    return False
    return True


def build_lambda(n1: int, n2: int, n3: int) -> ColoredGraph:
    """All part-1/part-2 pairs, all part-2/part-3 pairs, all pairs inside part 3."""
    partition = Partition3.from_sizes(n1, n2, n3)
    v1 = range(0, n1)
    v2 = range(n1, n1 + n2)
    v3 = range(n1 + n2, n1 + n2 + n3)
    edges = [(a, b) for a in v1 for b in v2]
    edges += [(a, b) for a in v2 for b in v3]
    edges += list(itertools.combinations(v3, 2))
    return ColoredGraph(make_pair_graph(n1 + n2 + n3, edges), partition)


def _part_pair_counts(cg: ColoredGraph) -> dict[tuple[int, int], int]:
    """Edge counts keyed by sorted part pair: (i,i) internal, (i,j) crossing."""
    parts = cg.partition.parts
    cnt: Counter = Counter()
    for a, b in cg.graph.edges:
        key = tuple(sorted((parts[a], parts[b])))
        cnt[key] += 1
    return dict(cnt)


def is_locally_maximal(cg: ColoredGraph) -> tuple[bool, Optional[int]]:
    """Some part index i satisfies the two cyclic edge-count inequalities.

    Returns (holds, smallest witnessing i or None).
    """
    c = _part_pair_counts(cg)

    def internal(i):
        return c.get((i, i), 0)

    def cross(i, j):
        return c.get(tuple(sorted((i, j))), 0)

    for i in (1, 2, 3):
        j, k = next_part(i), next_part(next_part(i))
        first = cross(i, j) + internal(k) >= cross(i, k) + internal(i)
        second = cross(j, k) + internal(k) >= cross(i, k) + internal(j)
        if first and second:
            return True, i
    return False, None


def symmetrize(cg: ColoredGraph, u: int, v: int) -> ColoredGraph:
    """Replace u's incident edges by {uw : w in N(v)}, excluding the self-pair.

    v and the partition are untouched.  If u and v were adjacent the edge uv
    disappears (v is not its own neighbor).
    """
    if u == v:
        raise SameVertex("cannot symmetrize a vertex to itself")
    check_vertex(u, cg.n)
    check_vertex(v, cg.n)
    target = cg.graph.neighbors(v)
    remove = [e for e in cg.graph.edges if u in e]
    add = [tuple(sorted((u, w))) for w in target if w != u]
    return cg.with_graph(cg.graph.with_changes(add=add, remove=remove))


def equivalence_classes(cg: ColoredGraph) -> EquivalenceClasses:
    """Group vertices by (part, exact neighborhood).

    Adjacent vertices always land in different classes: each would have to
    contain the other in its own neighborhood, which self-exclusion forbids.
    Classes are ordered by (part, least member) for determinism.
    """
    key_to_members: dict[tuple[int, frozenset[int]], list[int]] = {}
    for v in range(cg.n):
        key = (cg.part_of(v), cg.graph.neighbors(v))
        key_to_members.setdefault(key, []).append(v)
    classes = sorted(
        (tuple(sorted(m)) for m in key_to_members.values()),
        key=lambda c: (cg.part_of(c[0]), c[0]),
    )
    class_of = [0] * cg.n
    for idx, members in enumerate(classes):
        for v in members:
            class_of[v] = idx
    return EquivalenceClasses(tuple(classes), tuple(class_of))


def class_symmetrize(cg: ColoredGraph, from_vertex: int, to_vertex: int) -> ColoredGraph:
    """Give every vertex of [from_vertex] the neighborhood of to_vertex.

    Both classes must lie in the same part and be distinct.  When the two
    classes are nonadjacent this preserves cyclic triangle-freeness; merging
    a class into an adjacent one can create cyclic triangles and is allowed
    but not covered by that guarantee.
    """
    check_vertex(from_vertex, cg.n)
    check_vertex(to_vertex, cg.n)
    if cg.part_of(from_vertex) != cg.part_of(to_vertex):
        raise CrossPartClasses("classes must lie in the same part")
    src = cg.graph.neighbors(from_vertex)
    if src == cg.graph.neighbors(to_vertex):
        raise SameClass("the two vertices already lie in one class")
    movers = [
        x
        for x in range(cg.n)
        if cg.part_of(x) == cg.part_of(from_vertex) and cg.graph.neighbors(x) == src
    ]
    target = cg.graph.neighbors(to_vertex)
    mover_set = set(movers)
    remove = [e for e in cg.graph.edges if e[0] in mover_set or e[1] in mover_set]
    add = {
        tuple(sorted((x, w))) for x in movers for w in target if w != x
    }
    return cg.with_graph(cg.graph.with_changes(add=sorted(add), remove=remove))


@dataclass(frozen=True)
class MergeStep:
    part: int
    merged_class: tuple[int, ...]
    target_class: tuple[int, ...]
    edges_before: int
    edges_after: int


def is_locally_symmetrized(cg: ColoredGraph) -> bool:
    """Every nonadjacent same-part pair has identical neighborhoods."""
    return _first_violation(cg) is None


def _first_violation(cg: ColoredGraph) -> Optional[tuple[int, int]]:
    sets = cg.partition.part_sets()
    adj = cg.graph.adjacency()
    for i in (1, 2, 3):
        members = sorted(sets[i - 1])
        for u, v in itertools.combinations(members, 2):
            if v not in adj[u] and adj[u] != adj[v]:
                return (u, v)
    return None


def locally_symmetrize(cg: ColoredGraph) -> tuple[ColoredGraph, list[MergeStep]]:
    """Merge inequivalent nonadjacent same-part classes until none remain.

    Each step symmetrizes toward the direction with more edges; ties go to
    the class with the smaller least label.  The edge count never decreases
    and cyclic triangle-freeness is preserved (all merges are nonadjacent).
    Terminates because each merge reduces the number of classes.
    """
    log: list[MergeStep] = []
    current = cg
    while True:
        pair = _first_violation(current)
        if pair is None:
            return current, log
        u, v = pair
        cls_u = _class_members(current, u)
        cls_v = _class_members(current, v)
        deg_u = current.graph.degree(u)
        deg_v = current.graph.degree(v)
        m = len(current.graph.edges)
        to_v_count = m + len(cls_u) * (deg_v - deg_u)
        to_u_count = m + len(cls_v) * (deg_u - deg_v)
        if to_v_count > to_u_count:
            src, dst = u, v
            after = to_v_count
        elif to_u_count > to_v_count:
            src, dst = v, u
            after = to_u_count
        elif min(cls_u) < min(cls_v):
            src, dst = v, u
            after = to_u_count
        else:
            src, dst = u, v
            after = to_v_count
        merged = class_symmetrize(current, src, dst)
        log.append(
            MergeStep(
                part=current.part_of(u),
                merged_class=_class_members(current, src),
                target_class=_class_members(current, dst),
                edges_before=m,
                edges_after=len(merged.graph.edges),
            )
        )
        assert len(merged.graph.edges) == after
        current = merged


def _class_members(cg: ColoredGraph, v: int) -> tuple[int, ...]:
    nb = cg.graph.neighbors(v)
    part = cg.part_of(v)
    return tuple(
        x
        for x in sorted(cg.partition.part_sets()[part - 1])
        if cg.graph.neighbors(x) == nb
    )


@dataclass(frozen=True)
class FactCheck:
    id: str
    passed: bool
    witness: Optional[tuple] = None

    def to_json_dict(self) -> dict:
        d: dict = {"id": self.id, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


@dataclass(frozen=True)
class FactsReport:
    facts: tuple[FactCheck, ...]
    cyclic_triangle_free: bool

    @property
    def all_pass(self) -> bool:
        return all(f.passed for f in self.facts)

    def to_json_dict(self) -> dict:
        return {
            "facts": [f.to_json_dict() for f in self.facts],
            "cyclic_triangle_free": self.cyclic_triangle_free,
            "all_pass": self.all_pass,
        }


def check_symmetrized_facts(
    cg: ColoredGraph, classes: Optional[EquivalenceClasses] = None
) -> FactsReport:
    """Verify the structure a locally symmetrized graph must have.

    Always checked: every class is independent; distinct same-part classes
    span complete bipartite graphs; each vertex's internal neighborhood has
    size |part| - |class|.  If the graph is also cyclically triangle-free:
    every in-neighborhood is empty or one full class; for a directed edge
    (u, v) the in-neighborhood of u and out-neighborhood of v are disjoint;
    and every minimum-length directed cycle avoids repeating a class.

    ``classes`` may be supplied explicitly (e.g. to probe a claimed class
    structure); by default the true equivalence classes are used.
    """
    if _first_violation(cg) is not None:
        raise NotLocallySymmetrized(
            f"nonadjacent inequivalent same-part pair: {_first_violation(cg)}"
        )
    ec = classes if classes is not None else equivalence_classes(cg)
    adj = cg.graph.adjacency()
    facts: list[FactCheck] = []

    witness = None
    for members in ec.classes:
        for u, v in itertools.combinations(members, 2):
            if v in adj[u]:
                witness = (u, v)
                break
        if witness:
            break
    facts.append(FactCheck("classes-independent", witness is None, witness))

    witness = None
    by_part: dict[int, list[tuple[int, ...]]] = {1: [], 2: [], 3: []}
    for members in ec.classes:
        by_part[cg.part_of(members[0])].append(members)
    for part_classes in by_part.values():
        for ca, cb in itertools.combinations(part_classes, 2):
            for u in ca:
                for v in cb:
                    if v not in adj[u]:
                        witness = (u, v)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    facts.append(FactCheck("distinct-class-pairs-complete", witness is None, witness))

    witness = None
    for v in range(cg.n):
        part_size = cg.partition.part_size(cg.part_of(v))
        expected = part_size - len(ec.class_members(v))
        if len(cg.internal_neighborhood(v)) != expected:
            witness = (v, len(cg.internal_neighborhood(v)), expected)
            break
    facts.append(FactCheck("internal-neighborhood-size", witness is None, witness))

    free = is_cyclic_triangle_free(cg)
    if free:
        witness = None
        for v in range(cg.n):
            inn = cg.in_neighborhood(v)
            if inn and inn != frozenset(ec.class_members(next(iter(inn)))):
                witness = (v, tuple(sorted(inn)))
                break
        facts.append(FactCheck("in-neighborhood-single-class", witness is None, witness))

        witness = None
        view = directed_structure(cg)
        for u, v in view.directed_edges:
            if cg.in_neighborhood(u) & cg.out_neighborhood(v):
                witness = (u, v)
                break
        facts.append(FactCheck("directed-edge-ends-disjoint", witness is None, witness))

        witness = None
        shortest = view.shortest_directed_cycle()
        if shortest is not None:
            for cycle in view.minimum_directed_cycles():
                ids = [ec.class_of[x] for x in cycle]
                if len(set(ids)) != len(ids):
                    witness = tuple(cycle)
                    break
        facts.append(FactCheck("minimum-cycles-class-distinct", witness is None, witness))

    return FactsReport(tuple(facts), free)


class DirectedView:
    """Mixed view of a colored graph: part-i to part-(i+1) edges directed."""

    def __init__(self, cg: ColoredGraph):
        self.cg = cg
        self.out: list[list[int]] = [[] for _ in range(cg.n)]
        edges = []
        for a, b in cg.graph.edges:
            pa, pb = cg.part_of(a), cg.part_of(b)
            if pb == next_part(pa):
                self.out[a].append(b)
                edges.append((a, b))
            elif pa == next_part(pb):
                self.out[b].append(a)
                edges.append((b, a))
        for lst in self.out:
            lst.sort()
        self.directed_edges: tuple[tuple[int, int], ...] = tuple(sorted(edges))

    def has_directed_cycle(self) -> bool:
        state = [0] * self.cg.n
        for start in range(self.cg.n):
            if state[start]:
                continue
            stack = [(start, iter(self.out[start]))]
            state[start] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if state[w] == 1:
                        return True
                    if state[w] == 0:
                        state[w] = 1
                        stack.append((w, iter(self.out[w])))
                        advanced = True
                        break
                if not advanced:
                    state[v] = 2
                    stack.pop()
        return False

    def shortest_directed_cycle(self) -> Optional[list[int]]:
        """A minimum-length directed cycle as a vertex list, or None."""
        best: Optional[list[int]] = None
        for start in range(self.cg.n):
            # BFS over directed edges, looking for a return to start.
            parent: dict[int, int] = {start: -1}
            frontier = [start]
            found = None
            while frontier and found is None:
                nxt = []
                for v in frontier:
                    for w in self.out[v]:
                        if w == start:
                            found = v
                            break
                        if w not in parent:
                            parent[w] = v
                            nxt.append(w)
                    if found is not None:
                        break
                frontier = nxt
            if found is not None:
                cycle = [found]
                while cycle[-1] != start:
                    cycle.append(parent[cycle[-1]])
                cycle.reverse()
                if best is None or len(cycle) < len(best):
                    best = cycle
        return best

    def minimum_directed_cycles(self) -> list[list[int]]:
        """All directed cycles of minimum length (each rotated to start at
        its least vertex, listed once)."""
        shortest = self.shortest_directed_cycle()
        if shortest is None:
            return []
        g = len(shortest)
        found: set[tuple[int, ...]] = set()

        def dfs(path: list[int], on_path: set[int]):
            v = path[-1]
            if len(path) == g:
                if path[0] in self.out[v]:
                    found.add(tuple(path))
                return
            for w in self.out[v]:
                if w > path[0] and w not in on_path:
                    on_path.add(w)
                    path.append(w)
                    dfs(path, on_path)
                    path.pop()
                    on_path.discard(w)

        for start in range(self.cg.n):
            dfs([start], {start})
        return [list(c) for c in sorted(found)]

    def longest_directed_path(self, exact_cap: int = 15) -> tuple[int, list[int], bool]:
        """(vertex count, path, exact?).  Exact subset DP up to ``exact_cap``
        vertices, greedy extension beyond it."""
        n = self.cg.n
        if n == 0:
            return 0, [], True
        if n <= exact_cap:
            best_len = 1
            best_path = [0]
            # longest[mask] maps last vertex -> predecessor info via parents
            layer: dict[tuple[int, int], int] = {(1 << v, v): -1 for v in range(n)}
            frontier = list(layer.keys())
            depth = 1
            while frontier:
                nxt: dict[tuple[int, int], int] = {}
                for mask, last in frontier:
                    for w in self.out[last]:
                        if not mask >> w & 1:
                            key = (mask | 1 << w, w)
                            if key not in layer and key not in nxt:
                                nxt[key] = last
                layer.update(nxt)
                if nxt:
                    depth += 1
                    mask, last = next(iter(sorted(nxt)))
                    path = [last]
                    key = (mask, last)
                    while layer[key] != -1:
                        prev = layer[key]
                        path.append(prev)
                        key = (key[0] ^ 1 << key[1], prev)
                    path.reverse()
                    best_len, best_path = depth, path
                frontier = list(nxt.keys())
            return best_len, best_path, True
        # Greedy: repeatedly extend from each start by least out-neighbor.
        best_path = []
        for start in range(n):
            path = [start]
            seen = {start}
            while True:
                options = [w for w in self.out[path[-1]] if w not in seen]
                if not options:
                    break
                path.append(options[0])
                seen.add(options[0])
            if len(path) > len(best_path):
                best_path = path
        return len(best_path), best_path, False


def directed_structure(cg: ColoredGraph) -> DirectedView:
    return DirectedView(cg)


@dataclass(frozen=True)
class PathDegreeReport:
    degree_sum: int
    bound: int
    segments: int
    part_size_for_bound: int
    start_precondition_met: bool
    class_distinct: bool
    within_bound: bool

    def to_json_dict(self) -> dict:
        return {
            "degree_sum": self.degree_sum,
            "bound": self.bound,
            "segments": self.segments,
            "part_size_for_bound": self.part_size_for_bound,
            "start_precondition_met": self.start_precondition_met,
            "class_distinct": self.class_distinct,
            "within_bound": self.within_bound,
        }


def degree_sum_on_path(cg: ColoredGraph, path: Sequence[int]) -> PathDegreeReport:
    """Degree sum along a directed path x1 y1 z1 ... xk yk zk.

    The path must be vertex-disjoint, follow parts 1,2,3 cyclically, and use
    directed edges throughout.  The comparison bound is 3(k+1) times the
    largest part size; unequal parts are allowed and the size used is
    recorded.  The start precondition (the first vertex's in-neighborhood is
    empty or equals the last vertex's class) is evaluated and reported, not
    enforced.
    """
    path = list(path)
    if not path or len(path) % 3 != 0:
        raise MalformedPath("path must consist of full (x, y, z) segments")
    for v in path:
        check_vertex(v, cg.n)
    if len(set(path)) != len(path):
        raise MalformedPath("path repeats a vertex")
    for idx, v in enumerate(path):
        expected = 1 + idx % 3
        if cg.part_of(v) != expected:
            raise MalformedPath(f"vertex {v} at position {idx} must lie in part {expected}")
    adj = cg.graph.adjacency()
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise MalformedPath(f"missing directed edge {a}->{b}")

    k = len(path) // 3
    ec = equivalence_classes(cg)
    ids = [ec.class_of[v] for v in path]
    class_distinct = len(set(ids)) == len(ids)
    inn = cg.in_neighborhood(path[0])
    last_class = frozenset(ec.class_members(path[-1]))
    precondition = not inn or inn == last_class
    degree_sum = sum(cg.graph.degree(v) for v in path)
    n_for_bound = max(cg.partition.sizes)
    bound = 3 * (k + 1) * n_for_bound
    return PathDegreeReport(
        degree_sum=degree_sum,
        bound=bound,
        segments=k,
        part_size_for_bound=n_for_bound,
        start_precondition_met=precondition,
        class_distinct=class_distinct,
        within_bound=degree_sum <= bound,
    )


def random_cyclic_triangle_free(rng, n: int, density: float = 0.5) -> ColoredGraph:
    """Random colored graph made cyclically triangle-free by greedy deletion."""
    parts = Partition3(tuple(rng.choice((1, 2, 3)) for _ in range(n)))
    edges = {
        (a, b)
        for a, b in itertools.combinations(range(n), 2)
        if rng.random() < density
    }
    cg = ColoredGraph(make_pair_graph(n, sorted(edges)), parts)
    while True:
        tris = cyclic_triangles(cg)
        if not tris:
            return cg
        a, b, w = tris[rng.randrange(len(tris))]
        drop = [(a, b), (a, w), (b, w)][rng.randrange(3)]
        drop = tuple(sorted(drop))
        cg = cg.with_graph(cg.graph.with_changes(remove=[drop]))


# re-export for callers that treat this module as the 2-graph norm home
__all__ = [
    "CYCLIC_TRIANGLE_TYPES",
    "ColoredGraph",
    "DirectedView",
    "EquivalenceClasses",
    "FactCheck",
    "FactsReport",
    "MergeStep",
    "Partition3",
    "PathDegreeReport",
    "build_lambda",
    "check_symmetrized_facts",
    "class_symmetrize",
    "cyclic_triangles",
    "degree_sum_on_path",
    "directed_structure",
    "equivalence_classes",
    "graph_l2_norm",
    "is_cyclic_triangle_free",
    "is_locally_maximal",
    "is_locally_symmetrized",
    "locally_symmetrize",
    "next_part",
    "prev_part",
    "random_cyclic_triangle_free",
    "rho3",
    "symmetrize",
]
