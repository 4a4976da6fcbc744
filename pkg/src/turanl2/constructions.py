"""Builders and closed-form norms for the cyclic and bipartite 3-graph families.

The cyclic family on parts (V1, V2, V3) takes all transversal triples plus,
cyclically, the triples with two vertices in a part and one in the next part.
The bipartite family on (V1, V2) takes all triples meeting one part twice and
the other once.  Closed forms are evaluated in exact rational arithmetic and
double-checked elsewhere against direct codegree enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .colored import Partition3
from .errors import PartitionMismatch
from .hypergraph import ThreeGraph
from .util import pmap


@dataclass(frozen=True, order=True)
class Composition3:
    """Ordered part sizes (n1, n2, n3); parts are the label ranges
    [0, n1), [n1, n1+n2), [n1+n2, n)."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 0:
            raise PartitionMismatch("part sizes must be nonnegative")

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + self.n3

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    def partition(self) -> Partition3:
        return Partition3.from_sizes(self.n1, self.n2, self.n3)

    def ranges(self) -> tuple[range, range, range]:
        return (
            range(0, self.n1),
            range(self.n1, self.n1 + self.n2),
            range(self.n1 + self.n2, self.n),
        )

    def rotations(self) -> tuple["Composition3", ...]:
        a, b, c = self.sizes
        return (Composition3(a, b, c), Composition3(b, c, a), Composition3(c, a, b))

    def rotation_representative(self) -> "Composition3":
        return min(self.rotations())

    def near_balanced(self) -> bool:
        return max(self.sizes) - min(self.sizes) <= 1


def compositions_of(n: int) -> list[Composition3]:
    return [
        Composition3(a, b, n - a - b)
        for a in range(n + 1)
        for b in range(n + 1 - a)
    ]


def build_c(c: Composition3) -> tuple[ThreeGraph, Partition3]:
    """The cyclic 3-partite 3-graph on the composition's label ranges.

    Edge types by part-intersection profile: (1,1,1), (2,1,0), (0,2,1),
    (1,0,2).
    """
    v1, v2, v3 = c.ranges()
    edges = [tuple(sorted(t)) for t in itertools.product(v1, v2, v3)]
    for p, q in ((v1, v2), (v2, v3), (v3, v1)):
        for a, b in itertools.combinations(p, 2):
            for w in q:
                edges.append(tuple(sorted((a, b, w))))
    return ThreeGraph(c.n, sorted(edges), _normalized=True), c.partition()


def build_balanced_c(n: int) -> tuple[ThreeGraph, Partition3]:
    """Best near-balanced composition of n (largest parts first by label)."""
    base, rem = divmod(n, 3)
    sizes = tuple(base + (1 if i < rem else 0) for i in range(3))
    return build_c(Composition3(*sizes))


def build_b(n1: int, n2: int) -> ThreeGraph:
    """Bipartite-type 3-graph on labels [0, n1) and [n1, n1+n2): all triples
    with two vertices in one part and one in the other."""
    if n1 < 0 or n2 < 0:
        raise PartitionMismatch("part sizes must be nonnegative")
    v1 = range(0, n1)
    v2 = range(n1, n1 + n2)
    edges = []
    for p, q in ((v1, v2), (v2, v1)):
        for a, b in itertools.combinations(p, 2):
            for w in q:
                edges.append(tuple(sorted((a, b, w))))
    return ThreeGraph(n1 + n2, sorted(edges), _normalized=True)


def c_l2_closed(c: Composition3) -> Fraction:
    """Closed-form l2 norm of the cyclic construction, exact in rationals.

    Cyclic sum of three terms, quartic through quadratic in the part sizes,
    sharing denominator 2.  Equals l2_norm(build_c(c)) for every composition.
    """
    ns = c.sizes
    half_total = 0
    quad_total = 0
    for i in range(3):
        a, b, d = ns[i], ns[(i + 1) % 3], ns[(i + 2) % 3]
        half_total += a * b * (2 * (a + d) ** 2 + a * b)
        half_total -= a * b * (4 * a + b + 4 * d)
        quad_total += a * b
    return Fraction(half_total, 2) + quad_total


@dataclass(frozen=True)
class LowerBoundReport:
    composition: Composition3
    delta: Fraction
    preconditions_met: bool
    failed_preconditions: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction
    holds: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "composition": list(self.composition.sizes),
            "delta": self.delta,
            "preconditions_met": self.preconditions_met,
            "failed_preconditions": list(self.failed_preconditions),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def c_lower_bound_check(delta: Fraction, c: Composition3) -> LowerBoundReport:
    """Check the quartic lower bound n^4/6 - 2*delta*n^4 for the closed form.

    Preconditions (every part fraction at least 1/3 - delta, and
    n >= 9 / (2*delta^2)) are evaluated and reported; an unmet precondition
    is recorded, not raised, and the inequality is then not asserted.
    """
    delta = Fraction(delta)
    n = c.n
    failed = []
    if not (0 < delta < Fraction(1, 3)):
        failed.append("delta-in-open-interval")
    if n == 0:
        failed.append("empty-composition")
    else:
        for i, size in enumerate(c.sizes, start=1):
            if Fraction(size, n) < Fraction(1, 3) - delta:
                failed.append(f"part-{i}-fraction-too-small")
        if delta != 0 and n < Fraction(9, 2 * delta * delta):
            failed.append("n-below-threshold")
    lhs = c_l2_closed(c)
    rhs = Fraction(n**4, 6) - 2 * delta * n**4
    met = not failed
    return LowerBoundReport(
        composition=c,
        delta=delta,
        preconditions_met=met,
        failed_preconditions=tuple(failed),
        lhs=lhs,
        rhs=rhs,
        holds=(lhs >= rhs) if met else None,
    )


# The balancedness move families: (name, parametrized old/new compositions,
# gain polynomial).  Each is an exact identity in the parameter; the sweep
# instantiates every family member whose sizes are nonnegative and sum to n.
_GAIN_FAMILIES: tuple[tuple[str, object, object, object], ...] = (
    # shrink the largest part toward the smallest, first case ladder
    ("top-heavy-equal-pair", lambda t: (t + 2, t + 2, t), lambda t: (t + 1, t + 2, t + 1),
     lambda t: 6 * t * t + 13 * t + 7),
    ("top-heavy-step-down", lambda t: (t + 2, t + 1, t), lambda t: (t + 1, t + 1, t + 1),
     lambda t: 6 * t * t + 3 * t),
    ("top-heavy-double-gap", lambda t: (t + 2, t, t), lambda t: (t + 1, t, t + 1),
     lambda t: 6 * t * t - t),
    # grow the middle slot, second case ladder
    ("middle-light-high-third", lambda s: (s, s - 2, s), lambda s: (s - 1, s - 1, s),
     lambda s: 6 * s * s - 11 * s + 5),
    ("middle-light-mid-third", lambda s: (s, s - 2, s - 1), lambda s: (s - 1, s - 1, s - 1),
     lambda s: 6 * s * s - 15 * s + 9),
    ("middle-light-low-third", lambda s: (s, s - 2, s - 2), lambda s: (s - 1, s - 1, s - 2),
     lambda s: 6 * s * s - 25 * s + 26),
)

# The four gain polynomials the acceptance gate pins explicitly.
ACCEPTANCE_GAIN_FAMILIES = (
    "top-heavy-equal-pair",
    "middle-light-high-third",
    "middle-light-mid-third",
    "middle-light-low-third",
)


@dataclass(frozen=True)
class GainCheck:
    family: str
    parameter: int
    old: tuple[int, int, int]
    new: tuple[int, int, int]
    expected_gain: int
    actual_gain: Fraction
    matches: bool


@dataclass(frozen=True)
class SweepReport:
    n: int
    values: dict  # rotation representative -> Fraction
    optimum: Fraction
    maximizers: tuple[Composition3, ...]
    near_balanced: tuple[Composition3, ...]
    maximizers_are_near_balanced: bool
    in_stated_range: bool
    gain_checks: tuple[GainCheck, ...]
    all_gains_match: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "optimum": self.optimum,
            "maximizers": [list(c.sizes) for c in self.maximizers],
            "near_balanced": [list(c.sizes) for c in self.near_balanced],
            "maximizers_are_near_balanced": self.maximizers_are_near_balanced,
            "in_stated_range": self.in_stated_range,
            "gain_checks": [
                {
                    "family": g.family,
                    "parameter": g.parameter,
                    "old": list(g.old),
                    "new": list(g.new),
                    "expected_gain": g.expected_gain,
                    "actual_gain": g.actual_gain,
                    "matches": g.matches,
                }
                for g in self.gain_checks
            ],
            "all_gains_match": self.all_gains_match,
        }


def balancedness_sweep(n: int, workers: int = 1) -> SweepReport:
    """Evaluate the closed form over all compositions of n (up to rotation).

    Confirms that the maximum is attained exactly by the near-balanced
    compositions (asserted only in the stated range n >= 6; smaller n is
    reported as data) and replays the move-gain polynomial identities for
    every family member that fits inside sum n.
    """
    reps = sorted({c.rotation_representative() for c in compositions_of(n)})
    vals = pmap(c_l2_closed, reps, workers)
    values = dict(zip(reps, vals))
    optimum = max(values.values()) if values else Fraction(0)
    maximizers = tuple(sorted(c for c, v in values.items() if v == optimum))
    near = tuple(sorted(c for c in values if c.near_balanced()))

    checks: list[GainCheck] = []
    for name, old_of, new_of, poly in _GAIN_FAMILIES:
        for t in range(0, n + 3):
            old = old_of(t)
            new = new_of(t)
            if min(old) < 0 or min(new) < 0:
                continue
            if sum(old) != n:
                continue
            actual = c_l2_closed(Composition3(*new)) - c_l2_closed(Composition3(*old))
            expected = poly(t)
            checks.append(
                GainCheck(
                    family=name,
                    parameter=t,
                    old=old,
                    new=new,
                    expected_gain=expected,
                    actual_gain=actual,
                    matches=actual == expected,
                )
            )
    return SweepReport(
        n=n,
        values=values,
        optimum=optimum,
        maximizers=maximizers,
        near_balanced=near,
        maximizers_are_near_balanced=set(maximizers) == set(near),
        in_stated_range=n >= 6,
        gain_checks=tuple(checks),
        all_gains_match=all(g.matches for g in checks),
    )


def sweep_csv(n: int, workers: int = 1) -> str:
    """CSV over ordered compositions: 'n1,n2,n3,l2'."""
    comps = compositions_of(n)
    values = pmap(c_l2_closed, comps, workers)
    rows = ["n1,n2,n3,l2"]
    rows.extend(f"{c.n1},{c.n2},{c.n3},{v}" for c, v in zip(comps, values))
    return "\n".join(rows) + "\n"
