"""Local toggle operators with exact l2 delta accounting, and the two-phase
driver that removes bad edges pair by pair.

A phase-one toggle at an internal pair e* removes every current bad edge
containing e* and inserts every currently missing construction edge
containing e*.  A phase-two toggle at a crossing pair does the same with the
transversal missing edges only.  The delta report decomposes the l2 change
over exactly the pairs whose codegree moved: e* itself plus the S-sets below.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .classification import (
    Checklist,
    Thresholds,
    check_phase_one_hypotheses,
    check_phase_two_hypotheses,
    classify_edges,
)
from .colored import Partition3, next_part
from .constructions import Composition3, build_c
from .errors import EdgePhaseMismatch
from .hypergraph import (
    Pair,
    ThreeGraph,
    Triple,
    contains_k43,
    l2_norm,
    normalize_pair,
)

PHASES = ("one", "two")


@dataclass(frozen=True)
class DeltaReport:
    """Exact decomposition of one toggle's l2 change.

    Phase one populates s1 (codegree up), s2 (down, same-part third vertex),
    s3 (down, far-part third vertex).  Phase two populates s1 plus s2a/s2b
    (pairs at each endpoint of e* toward the removed edges' third vertices).
    """

    phase: str
    e_star: Pair
    removed: frozenset[Triple]
    added: frozenset[Triple]
    s1: frozenset[Pair]
    s2: frozenset[Pair]
    s3: frozenset[Pair]
    s2a: frozenset[Pair]
    s2b: frozenset[Pair]
    l2_before: int
    l2_after: int

    @property
    def delta(self) -> int:
        return self.l2_after - self.l2_before

    def changed_pairs(self) -> frozenset[Pair]:
        return frozenset({self.e_star}) | self.s1 | self.s2 | self.s3 | self.s2a | self.s2b

    def to_json_dict(self) -> dict:
        return {
            "phase": self.phase,
            "e_star": list(self.e_star),
            "removed": sorted(map(list, self.removed)),
            "added": sorted(map(list, self.added)),
            "delta": self.delta,
            "l2_before": self.l2_before,
            "l2_after": self.l2_after,
        }


def apply_toggle(
    h: ThreeGraph,
    p: Partition3,
    e_star: Sequence[int],
    phase: str,
    ec=None,
) -> tuple[ThreeGraph, DeltaReport]:
    """One local toggle; returns the new graph and the exact delta report.

    The delta is accumulated pair by pair from the current codegree table
    and always reconciles with a from-scratch recomputation.  A precomputed
    classification of (h, p) may be passed to avoid repeating it.
    """
    if phase not in PHASES:
        raise ValueError(f"phase must be one of {PHASES}")
    pair = normalize_pair(e_star, h.n)
    u1, u2 = pair
    internal = p.part_of(u1) == p.part_of(u2)
    if phase == "one" and not internal:
        raise EdgePhaseMismatch(f"phase-one pair {pair} must lie inside one part")
    if phase == "two" and internal:
        raise EdgePhaseMismatch(f"phase-two pair {pair} must cross two parts")

    if ec is None:
        ec = classify_edges(h, p)
    removed = frozenset(t for t in ec.b if u1 in t and u2 in t)
    pool = ec.m if phase == "one" else ec.m_tri
    added = frozenset(t for t in pool if u1 in t and u2 in t)

    cd = h.codegrees()
    l2_before = l2_norm(h)
    delta = 0

    def third(t: Triple) -> int:
        return next(x for x in t if x != u1 and x != u2)

    added_thirds = sorted(third(t) for t in added)
    removed_thirds = sorted(third(t) for t in removed)

    s1 = frozenset(
        tuple(sorted((u, w))) for u in pair for w in added_thirds
    )
    for e in s1:
        d = cd.get(e, 0)
        delta += 2 * d + 1
    if phase == "one":
        part = p.part_of(u1)
        same = [w for w in removed_thirds if p.part_of(w) == part]
        far = [w for w in removed_thirds if p.part_of(w) != part]
        s2 = frozenset(tuple(sorted((u, w))) for u in pair for w in same)
        s3 = frozenset(tuple(sorted((u, w))) for u in pair for w in far)
        s2a = s2b = frozenset()
        down = s2 | s3
    else:
        s2a = frozenset(tuple(sorted((u1, w))) for w in removed_thirds)
        s2b = frozenset(tuple(sorted((u2, w))) for w in removed_thirds)
        s2 = s3 = frozenset()
        down = s2a | s2b
    for e in down:
        d = cd.get(e, 0)
        delta += -2 * d + 1
    d_star = cd.get(pair, 0)
    d_star_after = d_star + len(added) - len(removed)
    delta += d_star_after * d_star_after - d_star * d_star

    new_h = h.with_changes(add=added, remove=removed)
    report = DeltaReport(
        phase=phase,
        e_star=pair,
        removed=removed,
        added=added,
        s1=s1,
        s2=s2,
        s3=s3,
        s2a=s2a,
        s2b=s2b,
        l2_before=l2_before,
        l2_after=l2_before + delta,
    )
    return new_h, report


@dataclass(frozen=True)
class ToggleVerdict:
    checklist: Checklist
    report: DeltaReport
    claim: str  # "increase-asserted", "hypotheses-unmet-no-claim", "counterexample"
    counterexample_path: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "checklist": self.checklist.to_json_dict(),
            "delta": self.report.delta,
            "claim": self.claim,
            "counterexample_path": self.counterexample_path,
        }


def verify_toggle_increase(
    h: ThreeGraph,
    p: Partition3,
    e_star: Sequence[int],
    phase: str,
    t: Thresholds,
    counterexample_dir: Optional[str] = None,
) -> ToggleVerdict:
    """Evaluate the hypothesis checklist and, when it passes entirely, assert
    that the toggle strictly increases the l2 norm.

    A passing checklist with a non-positive exact delta is a counterexample;
    the instance is serialized (when a directory is given) and flagged.  A
    failing checklist yields no claim either way.
    """
    ec = classify_edges(h, p)
    checker = check_phase_one_hypotheses if phase == "one" else check_phase_two_hypotheses
    checklist = checker(h, p, e_star, t, ec=ec)
    new_h, report = apply_toggle(h, p, e_star, phase, ec=ec)
    assert report.delta == l2_norm(new_h) - l2_norm(h)
    if not checklist.all_pass:
        return ToggleVerdict(checklist, report, "hypotheses-unmet-no-claim")
    if report.delta > 0:
        return ToggleVerdict(checklist, report, "increase-asserted")
    path = None
    if counterexample_dir is not None:
        path = _write_counterexample(h, p, e_star, phase, t, report, counterexample_dir)
    return ToggleVerdict(checklist, report, "counterexample", path)


def _write_counterexample(h, p, e_star, phase, t, report, out_dir) -> str:
    from .formats import write_h3, write_p3

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"toggle-counterexample-phase-{phase}-n{h.n}-m{len(h.edges)}"
    (out / f"{stem}.h3").write_text(write_h3(h))
    (out / f"{stem}.p3").write_text(write_p3(p))
    meta = {
        "phase": phase,
        "e_star": list(normalize_pair(e_star, h.n)),
        "xi": f"{t.xi.numerator}/{t.xi.denominator}",
        "delta": report.delta,
    }
    (out / f"{stem}.json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    return str(out / f"{stem}.h3")


@dataclass(frozen=True)
class Queues:
    """Processing queues and the deferred bad-edge family.

    i_pairs: internal pairs whose missing codegree reaches delta4 * n.
    j_pairs: crossing pairs whose transversal-missing codegree reaches n/10.
    b_tilde: bi-bad edges whose same-part pair has missing codegree at most
    delta4 * n (these wait for phase two).
    """

    i_pairs: tuple[Pair, ...]
    j_pairs: tuple[Pair, ...]
    b_tilde: frozenset[Triple]


def build_queues(h: ThreeGraph, p: Partition3, delta4: Fraction) -> Queues:
    delta4 = Fraction(delta4)
    if not 0 < delta4 < 1:
        raise ValueError("delta4 must lie strictly between 0 and 1")
    n = h.n
    ec = classify_edges(h, p)
    m_cod = _family_codegrees(ec.m)
    mtri_cod = _family_codegrees(ec.m_tri)

    i_pairs = []
    for i in (1, 2, 3):
        members = sorted(p.part_sets()[i - 1])
        for e in itertools.combinations(members, 2):
            if m_cod.get(e, 0) >= delta4 * n:
                i_pairs.append(e)
    j_pairs = []
    for e in itertools.combinations(range(n), 2):
        if p.part_of(e[0]) != p.part_of(e[1]) and mtri_cod.get(e, 0) >= Fraction(n, 10):
            j_pairs.append(e)

    b_tilde = set()
    for t in ec.b_bi:
        parts = [p.part_of(v) for v in t]
        doubled = next(x for x in (1, 2, 3) if parts.count(x) == 2)
        single = next(x for x in (1, 2, 3) if parts.count(x) == 1)
        if single != next_part(next_part(doubled)):
            continue  # wrong orientation: not a (i, i, i-1) pattern
        same_pair = tuple(sorted(v for v in t if p.part_of(v) == doubled))
        if m_cod.get(same_pair, 0) <= delta4 * n:
            b_tilde.add(t)
    return Queues(tuple(sorted(i_pairs)), tuple(sorted(j_pairs)), frozenset(b_tilde))


def _family_codegrees(fam: frozenset[Triple]) -> dict[Pair, int]:
    cod: dict[Pair, int] = {}
    for a, b, c in fam:
        for e in ((a, b), (a, c), (b, c)):
            cod[e] = cod.get(e, 0) + 1
    return cod


@dataclass(frozen=True)
class DriverStep:
    phase: str
    e_star: Pair
    report: DeltaReport
    bad_after: int

    def to_json_dict(self) -> dict:
        return {
            "phase": self.phase,
            "e_star": list(self.e_star),
            "removed": sorted(map(list, self.report.removed)),
            "added": sorted(map(list, self.report.added)),
            "delta": self.report.delta,
            "l2": self.report.l2_after,
        }


@dataclass(frozen=True)
class DriverTrace:
    initial: ThreeGraph
    final: ThreeGraph
    partition: Partition3
    delta4: Fraction
    queues: Queues
    steps: tuple[DriverStep, ...]
    bad_initial: frozenset[Triple]
    bad_final: frozenset[Triple]
    bad_monotone: bool
    missing_monotone: bool
    every_bad_edge_covered: bool
    inside_construction: bool
    l2_trajectory: tuple[int, ...]
    k43_free_throughout: Optional[bool]

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(s.to_json_dict(), sort_keys=True) for s in self.steps)

    def to_json_dict(self) -> dict:
        return {
            "delta4": self.delta4,
            "i_queue": [list(e) for e in self.queues.i_pairs],
            "j_queue": [list(e) for e in self.queues.j_pairs],
            "b_tilde": sorted(map(list, self.queues.b_tilde)),
            "steps": [s.to_json_dict() for s in self.steps],
            "bad_initial": sorted(map(list, self.bad_initial)),
            "bad_final": sorted(map(list, self.bad_final)),
            "bad_monotone": self.bad_monotone,
            "missing_monotone": self.missing_monotone,
            "every_bad_edge_covered": self.every_bad_edge_covered,
            "inside_construction": self.inside_construction,
            "l2_trajectory": list(self.l2_trajectory),
            "k43_free_throughout": self.k43_free_throughout,
        }


def two_phase_driver(
    h: ThreeGraph,
    p: Partition3,
    delta4: Fraction = Fraction(1, 40),
    check_freeness: bool = True,
    order_seed: Optional[int] = None,
) -> DriverTrace:
    """Process the internal queue with phase-one toggles, then the crossing
    queue with phase-two toggles, each queue once in lexicographic order
    (or a seed-permuted order for ordering experiments).

    Bad and missing sets shrink monotonically across steps; when every
    initial bad edge contains a queue pair the final graph lies inside the
    construction.  The l2 trajectory and tetrahedron-freeness along the way
    are recorded, not enforced.
    """
    delta4 = Fraction(delta4)
    queues = build_queues(h, p, delta4)
    i_pairs, j_pairs = list(queues.i_pairs), list(queues.j_pairs)
    if order_seed is not None:
        import random

        rng = random.Random(order_seed)
        rng.shuffle(i_pairs)
        rng.shuffle(j_pairs)

    queue_pairs = set(queues.i_pairs) | set(queues.j_pairs)
    bad_initial = classify_edges(h, p).b
    covered = all(
        any(tuple(sorted(e)) in queue_pairs for e in itertools.combinations(t, 2))
        for t in bad_initial
    )

    current = h
    steps: list[DriverStep] = []
    l2s = [l2_norm(h)]
    prev_bad = bad_initial
    prev_missing = classify_edges(h, p).m
    bad_monotone = True
    missing_monotone = True
    free = not contains_k43(h) if check_freeness else None

    for phase, pairs in (("one", i_pairs), ("two", j_pairs)):
        for e in pairs:
            current, report = apply_toggle(current, p, e, phase)
            ec = classify_edges(current, p)
            if not ec.b <= prev_bad:
                bad_monotone = False
            if not ec.m <= prev_missing:
                missing_monotone = False
            prev_bad, prev_missing = ec.b, ec.m
            l2s.append(report.l2_after)
            steps.append(DriverStep(phase, report.e_star, report, len(ec.b)))
            if check_freeness and free:
                free = not contains_k43(current)

    bad_final = classify_edges(current, p).b
    return DriverTrace(
        initial=h,
        final=current,
        partition=p,
        delta4=delta4,
        queues=queues,
        steps=tuple(steps),
        bad_initial=bad_initial,
        bad_final=bad_final,
        bad_monotone=bad_monotone,
        missing_monotone=missing_monotone,
        every_bad_edge_covered=covered,
        inside_construction=not bad_final,
        l2_trajectory=tuple(l2s),
        k43_free_throughout=free,
    )


# ---------------------------------------------------------------------------
# instance generators for the positivity property suite


def _near_balanced_composition(n: int) -> Composition3:
    base, rem = divmod(n, 3)
    return Composition3(*(base + (1 if i < rem else 0) for i in range(3)))


_BASE_CACHE: dict[tuple[int, int, int], tuple[ThreeGraph, Partition3]] = {}


def _cached_construction(comp: Composition3) -> tuple[ThreeGraph, Partition3]:
    key = comp.sizes
    if key not in _BASE_CACHE:
        if len(_BASE_CACHE) >= 4:
            _BASE_CACHE.clear()
        h, p = build_c(comp)
        # the classifier would otherwise rebuild this exact edge set
        from . import classification

        if len(classification._CONSTRUCTION_CACHE) >= 4:
            classification._CONSTRUCTION_CACHE.clear()
        classification._CONSTRUCTION_CACHE[p.parts] = h.edge_set
        _BASE_CACHE[key] = (h, p)
    return _BASE_CACHE[key]


def generate_phase_instance(
    rng, n: int, xi: Fraction, phase: str
) -> tuple[ThreeGraph, Partition3, Pair]:
    """A near-construction instance around a distinguished pair e*.

    Starting from the cyclic construction on a near-balanced composition,
    plants at least ceil(47*sqrt(xi)*n) (phase one) or ceil(90*sqrt(xi)*n)
    (phase two) missing co-neighbors at e*, plus at most floor(xi*n) bad
    co-neighbors of the kind the corresponding checklist tolerates.  The
    codegree-gap items of the checklist hold by construction (the balance
    item additionally needs 3 | n, since a near-balanced split is off by up
    to 2/3 of a vertex while xi*n is far below 1 here); the global max-degree
    item cannot hold at desk scale once anything is planted at a single pair
    (it needs roughly n > 3300), so positivity is a property to verify
    exactly, not a consequence of a fully passing checklist.
    """
    xi = Fraction(xi)
    comp = _near_balanced_composition(n)
    base, partition = _cached_construction(comp)
    v1, v2, v3 = comp.ranges()
    removed: set[Triple] = set()
    added: set[Triple] = set()

    import math

    def ceil_sqrt_mult(coeff: int) -> int:
        # smallest integer k with k >= coeff * sqrt(xi) * n
        target = coeff * coeff * xi * n * n
        k = math.isqrt(math.ceil(target))
        while k * k < target:
            k += 1
        return k

    if phase == "one":
        u1, u2 = sorted(rng.sample(list(v1), 2))
        pool = list(v2)
        coeff = 47
        bad_pool = [w for w in v1 if w not in (u1, u2)]
    else:
        u1 = rng.choice(list(v1))
        u2 = rng.choice(list(v2))
        pool = list(v3)
        coeff = 90
        bad_pool = [w for w in v2 if w != u2]

    need = min(max(ceil_sqrt_mult(coeff), 1), len(pool))
    missing = rng.sample(pool, need)
    for w in missing:
        removed.add(tuple(sorted((u1, u2, w))))
    bad_budget = min(int(xi * n), need, len(bad_pool))
    planted_bad = rng.sample(bad_pool, rng.randint(0, bad_budget)) if bad_budget else []
    for w in planted_bad:
        added.add(tuple(sorted((u1, u2, w))))

    # e* must stay in the shadow; if everything through it went missing and no
    # bad edge landed there, plant one tolerated bad co-neighbor.
    if need == len(pool) and not planted_bad:
        if bad_pool:
            added.add(tuple(sorted((u1, u2, rng.choice(bad_pool)))))
        else:
            removed.discard(tuple(sorted((u1, u2, missing[0]))))
    pair = tuple(sorted((u1, u2)))
    h = base.with_changes(add=added, remove=removed)
    return h, partition, pair


@dataclass(frozen=True)
class FalsificationOutcome:
    trials: int
    full_checklist_passes: int
    counterexamples: int
    positive_deltas: int

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "full_checklist_passes": self.full_checklist_passes,
            "counterexamples": self.counterexamples,
            "positive_deltas": self.positive_deltas,
        }


def falsification_search(
    rng,
    trials: int,
    n_range: tuple[int, int] = (9, 24),
    counterexample_dir: Optional[str] = None,
) -> FalsificationOutcome:
    """Randomized hunt for a checklist-passing instance with delta <= 0.

    Draws random small instances and random xi, evaluates the full checklist
    and the exact delta.  Any counterexample is serialized.  Expected outcome
    at small n: zero counterexamples (and, because the max-degree item and
    the codegree-gap item are jointly infeasible at this scale, zero full
    checklist passes).
    """
    xi_choices = [Fraction(1, d) for d in (16, 64, 256, 1024, 4096)]
    full_passes = 0
    counterexamples = 0
    positives = 0
    for _ in range(trials):
        n = rng.randint(*n_range)
        phase = rng.choice(PHASES)
        xi = rng.choice(xi_choices)
        h, p, pair = generate_phase_instance(rng, n, xi, phase)
        verdict = verify_toggle_increase(
            h, p, pair, phase, Thresholds(xi), counterexample_dir
        )
        if verdict.checklist.all_pass:
            full_passes += 1
        if verdict.claim == "counterexample":
            counterexamples += 1
        if verdict.report.delta > 0:
            positives += 1
    return FalsificationOutcome(trials, full_passes, counterexamples, positives)
