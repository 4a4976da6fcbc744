"""Exact primitives for 3-uniform hypergraphs.

Vertices are the integers 0..n-1.  Edges are strictly increasing triples kept
in lexicographic order; 2-graphs use strictly increasing pairs.  Every value
computed here is an exact integer.  No floating point enters this module.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Optional, Sequence

from .errors import DegenerateEdge, SizeLimitExceeded, VertexOutOfRange

Triple = tuple[int, int, int]
Pair = tuple[int, int]

CANONICAL_VERTEX_CAP = 8


def normalize_triple(t: Sequence[int], n: int) -> Triple:
    if len(t) != 3:
        raise DegenerateEdge(f"a 3-edge needs exactly 3 vertices, got {tuple(t)}")
    a, b, c = sorted(t)
    if a == b or b == c:
        raise DegenerateEdge(f"repeated vertex in edge {tuple(t)}")
    if a < 0 or c >= n:
        raise VertexOutOfRange(f"edge {tuple(t)} does not fit in 0..{n - 1}")
    return (a, b, c)


def normalize_pair(e: Sequence[int], n: int) -> Pair:
    if len(e) != 2:
        raise DegenerateEdge(f"a pair needs exactly 2 vertices, got {tuple(e)}")
    a, b = sorted(e)
    if a == b:
        raise DegenerateEdge(f"repeated vertex in pair {tuple(e)}")
    if a < 0 or b >= n:
        raise VertexOutOfRange(f"pair {tuple(e)} does not fit in 0..{n - 1}")
    return (a, b)


def check_vertex(v: int, n: int) -> int:
    if not 0 <= v < n:
        raise VertexOutOfRange(f"vertex {v} does not fit in 0..{n - 1}")
    return v


class ThreeGraph:
    """An immutable 3-graph: vertex count plus a sorted tuple of 3-edges.

    Construct through :func:`make_graph` (which normalizes input) or from
    another graph's edges.  Membership and codegree tables are built lazily
    and cached, so lookups are O(1) after first use.
    """

    __slots__ = ("n", "edges", "_edge_set", "_codegrees")

    def __init__(self, n: int, edges: Iterable[Triple], *, _normalized: bool = False):
        if not _normalized:
            edges = sorted({normalize_triple(t, n) for t in edges})
        self.n = n
        self.edges: tuple[Triple, ...] = tuple(edges)
        self._edge_set: Optional[frozenset[Triple]] = None
        self._codegrees: Optional[dict[Pair, int]] = None

    @property
    def edge_set(self) -> frozenset[Triple]:
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges)
        return self._edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThreeGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self.n}, m={len(self.edges)})"

    def has_edge(self, t: Sequence[int]) -> bool:
        return tuple(sorted(t)) in self.edge_set

    def codegrees(self) -> dict[Pair, int]:
        """Pair -> number of edges containing it (absent pairs have 0)."""
        if self._codegrees is None:
            n = self.n
            if len(self.edges) >= 512 and 3 <= n <= 1024:
                # flat-array counting beats dict hashing on dense graphs
                flat = [0] * (n * n)
                for a, b, c in self.edges:
                    flat[a * n + b] += 1
                    flat[a * n + c] += 1
                    flat[b * n + c] += 1
                self._codegrees = {
                    (k // n, k % n): v for k, v in enumerate(flat) if v
                }
            else:
                cnt: Counter = Counter()
                for a, b, c in self.edges:
                    cnt[(a, b)] += 1
                    cnt[(a, c)] += 1
                    cnt[(b, c)] += 1
                self._codegrees = dict(cnt)
        return self._codegrees

    def degree(self, v: int) -> int:
        check_vertex(v, self.n)
        return sum(1 for t in self.edges if v in t)

    def with_changes(
        self, add: Iterable[Triple] = (), remove: Iterable[Triple] = ()
    ) -> "ThreeGraph":
        """New graph with the given already-normalized triples added/removed.

        Linear merge against the sorted edge list; no full re-sort.
        """
        return ThreeGraph(
            self.n, merge_edit(self.edges, add, remove), _normalized=True
        )


class Graph:
    """An immutable 2-graph used for links, shadows, and colored graphs."""

    __slots__ = ("n", "edges", "edge_set", "_adj")

    def __init__(self, n: int, edges: Iterable[Pair], *, _normalized: bool = False):
        if not _normalized:
            edges = sorted({normalize_pair(e, n) for e in edges})
        self.n = n
        self.edges: tuple[Pair, ...] = tuple(edges)
        self.edge_set: frozenset[Pair] = frozenset(self.edges)
        self._adj: Optional[tuple[frozenset[int], ...]] = None

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set if u < v else (v, u) in self.edge_set

    def adjacency(self) -> tuple[frozenset[int], ...]:
        if self._adj is None:
            adj: list[set[int]] = [set() for _ in range(self.n)]
            for a, b in self.edges:
                adj[a].add(b)
                adj[b].add(a)
            self._adj = tuple(frozenset(s) for s in adj)
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        check_vertex(v, self.n)
        return self.adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def with_changes(
        self, add: Iterable[Pair] = (), remove: Iterable[Pair] = ()
    ) -> "Graph":
        es = set(self.edge_set)
        es.difference_update(remove)
        es.update(add)
        return Graph(self.n, sorted(es), _normalized=True)


def merge_edit(
    edges_sorted: Sequence[Triple],
    add: Iterable[Triple] = (),
    remove: Iterable[Triple] = (),
) -> list[Triple]:
    """Sorted edge list after removing/adding normalized triples, in O(m)."""
    remove_set = set(remove)
    add_list = sorted(set(add))
    out: list[Triple] = []
    push = out.append
    ai = 0
    alen = len(add_list)
    for t in edges_sorted:
        if t in remove_set:
            continue
        while ai < alen and add_list[ai] < t:
            push(add_list[ai])
            ai += 1
        if ai < alen and add_list[ai] == t:
            ai += 1
        push(t)
    out.extend(add_list[ai:])
    return out


def make_graph(n: int, triples: Iterable[Sequence[int]]) -> ThreeGraph:
    """Build a 3-graph, sorting each triple and dropping duplicates.

    Rejects out-of-range vertices and degenerate (repeated-vertex) triples.
    """
    if n < 0:
        raise VertexOutOfRange("vertex count must be nonnegative")
    return ThreeGraph(n, (normalize_triple(t, n) for t in triples))


def make_pair_graph(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise VertexOutOfRange("vertex count must be nonnegative")
    return Graph(n, (normalize_pair(e, n) for e in pairs))


def codegree(h: ThreeGraph, e: Sequence[int]) -> int:
    """Number of edges of ``h`` containing both endpoints of the pair ``e``."""
    pair = normalize_pair(e, h.n)
    return h.codegrees().get(pair, 0)


def link(h: ThreeGraph, v: int) -> Graph:
    """The link of ``v``: pairs e with {v} | e an edge of ``h``.

    Returned on the same vertex set; v itself is isolated in its link.  The
    degree of u in the link equals the codegree of the pair {u, v}.
    """
    check_vertex(v, h.n)
    pairs = []
    for t in h.edges:
        if v in t:
            a, b = (x for x in t if x != v)
            pairs.append((a, b))
    return Graph(h.n, sorted(pairs), _normalized=True)


def shadow(h: ThreeGraph) -> Graph:
    """All pairs covered by at least one edge."""
    return Graph(h.n, sorted(h.codegrees().keys()), _normalized=True)


def l2_norm(h: ThreeGraph) -> int:
    """Sum of squared codegrees over all vertex pairs."""
    return sum(d * d for d in h.codegrees().values())


def graph_l2_norm(g: Graph) -> int:
    """2-graph specialization: sum of squared vertex degrees."""
    deg = [0] * g.n
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    return sum(d * d for d in deg)


def two_norm_degree(h: ThreeGraph, v: int) -> int:
    """Drop in the l2 norm when ``v`` is deleted.

    Computed from the link: ||L(v)||_2 + 2 * sum of codegrees over link pairs
    minus the degree of v.  Agrees with l2_norm(h) - l2_norm(h - v).
    """
    check_vertex(v, h.n)
    cd = h.codegrees()
    link_pairs = []
    link_deg: Counter = Counter()
    for t in h.edges:
        if v in t:
            a, b = (x for x in t if x != v)
            link_pairs.append((a, b))
            link_deg[a] += 1
            link_deg[b] += 1
    l2_link = sum(d * d for d in link_deg.values())
    cross = sum(cd[p] for p in link_pairs)
    return l2_link + 2 * cross - len(link_pairs)


def count_s2(h: ThreeGraph) -> int:
    """Unordered pairs of edges sharing exactly two vertices.

    Satisfies l2_norm(h) == 2 * count_s2(h) + 3 * len(h).
    """
    return sum(d * (d - 1) // 2 for d in h.codegrees().values())


def find_k43(h: ThreeGraph) -> Optional[tuple[int, int, int, int]]:
    """A 4-set spanning all four of its triples, or None.

    Scans each edge as the lexicographically least triple of a candidate
    tetrahedron, so only completions by a larger fourth vertex are needed.
    """
    es = h.edge_set
    for a, b, c in h.edges:
        for w in range(c + 1, h.n):
            if (a, b, w) in es and (a, c, w) in es and (b, c, w) in es:
                return (a, b, c, w)
    return None


def contains_k43(h: ThreeGraph) -> bool:
    return find_k43(h) is not None


def completes_k43(h: ThreeGraph, t: Triple) -> bool:
    """Would adding the (normalized, absent) triple ``t`` create a tetrahedron?"""
    es = h.edge_set
    a, b, c = t
    for w in range(h.n):
        if w == a or w == b or w == c:
            continue
        if (
            tuple(sorted((a, b, w))) in es
            and tuple(sorted((a, c, w))) in es
            and tuple(sorted((b, c, w))) in es
        ):
            return True
    return False


def induce(h: ThreeGraph, s: Iterable[int]) -> ThreeGraph:
    """Induced subgraph on ``s``, relabeled 0..|s|-1 by ascending old label."""
    keep = sorted(set(s))
    for v in keep:
        check_vertex(v, h.n)
    relabel = {v: i for i, v in enumerate(keep)}
    member = set(keep)
    edges = [
        (relabel[a], relabel[b], relabel[c])
        for a, b, c in h.edges
        if a in member and b in member and c in member
    ]
    return ThreeGraph(len(keep), sorted(edges), _normalized=True)


def delete_vertex(h: ThreeGraph, v: int) -> ThreeGraph:
    check_vertex(v, h.n)
    return induce(h, (u for u in range(h.n) if u != v))


def _refine_colors(h: ThreeGraph) -> list[int]:
    """Iterated isomorphism-invariant vertex coloring (refinement only splits)."""
    by_vertex: list[list[Triple]] = [[] for _ in range(h.n)]
    for t in h.edges:
        for v in t:
            by_vertex[v].append(t)
    colors = [len(by_vertex[v]) for v in range(h.n)]
    distinct = len(set(colors))
    while True:
        keys = []
        for v in range(h.n):
            around = sorted(
                tuple(sorted(colors[u] for u in t if u != v)) for t in by_vertex[v]
            )
            keys.append((colors[v], tuple(around)))
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        colors = [order[k] for k in keys]
        if len(order) == distinct:
            return colors
        distinct = len(order)


def canonical_form(
    h: ThreeGraph, cap: int = CANONICAL_VERTEX_CAP
) -> tuple[tuple[Triple, ...], tuple[int, ...]]:
    """Canonical edge list plus the relabeling that produces it.

    Two graphs have equal canonical forms iff they are isomorphic.  The form
    is the lexicographically least relabeled edge list over all permutations
    that respect the refined invariant coloring (blocks ordered by color), so
    only block-internal permutations are searched.

    Refuses graphs with more than ``cap`` vertices rather than approximating.
    """
    if h.n > cap:
        raise SizeLimitExceeded(f"canonical form capped at {cap} vertices, got {h.n}")
    if h.n == 0:
        return (), ()
    colors = _refine_colors(h)
    blocks: dict[int, list[int]] = {}
    for v in range(h.n):
        blocks.setdefault(colors[v], []).append(v)
    ordered_blocks = [blocks[c] for c in sorted(blocks)]
    offsets = []
    pos = 0
    for b in ordered_blocks:
        offsets.append(pos)
        pos += len(b)

    best: Optional[tuple[Triple, ...]] = None
    best_map: Optional[tuple[int, ...]] = None
    edges = h.edges
    for arrangement in itertools.product(
        *(itertools.permutations(b) for b in ordered_blocks)
    ):
        mapping = [0] * h.n
        for block, off in zip(arrangement, offsets):
            for i, v in enumerate(block):
                mapping[v] = off + i
        rel = tuple(
            sorted(tuple(sorted((mapping[a], mapping[b], mapping[c]))) for a, b, c in edges)
        )
        if best is None or rel < best:
            best = rel
            best_map = tuple(mapping)
    assert best is not None and best_map is not None
    return best, best_map


def canonical_form_pairs(
    g: Graph,
    groups: Sequence[Sequence[int]],
) -> tuple[Pair, ...]:
    """Least relabeled pair list over permutations preserving each vertex group.

    Used for colored graphs, where only color-preserving relabelings count.
    """
    best: Optional[tuple[Pair, ...]] = None
    offsets = []
    pos = 0
    for b in groups:
        offsets.append(pos)
        pos += len(b)
    for arrangement in itertools.product(*(itertools.permutations(b) for b in groups)):
        mapping = [0] * g.n
        for block, off in zip(arrangement, offsets):
            for i, v in enumerate(block):
                mapping[v] = off + i
        rel = tuple(sorted(tuple(sorted((mapping[a], mapping[b]))) for a, b in g.edges))
        if best is None or rel < best:
            best = rel
    return best if best is not None else ()


def all_triples(n: int) -> list[Triple]:
    return list(itertools.combinations(range(n), 3))


def random_three_graph(rng, n: int, density: float = 0.3) -> ThreeGraph:
    """Random 3-graph: each triple kept independently with the given density."""
    edges = [t for t in itertools.combinations(range(n), 3) if rng.random() < density]
    return ThreeGraph(n, edges, _normalized=True)
