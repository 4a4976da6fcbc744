"""Exact verification of the simplex inequality and the 2-norm-degree spread.

The inequality: for nonnegative x1 + x2 + x3 = 1,

    x1*x2*x3 + (x1^2*x2 + x2^2*x3 + x3^2*x1) / 2
        <= 5/54 - (1/50) * sum_i (x_i - 1/3)^2,

with equality exactly at the barycenter.  Two verification routes:

* a grid sweep over all rational points (a/d, b/d, c/d), exact margins;
* a finite certificate: adaptive box subdivision with rational interval
  arithmetic, plus an exact near-center lemma.  Writing u_i = x_i - 1/3,
  q = sum u_i^2, p = u1*u2*u3 and D = -(u1-u2)(u2-u3)(u3-u1), the margin
  equals (11/75) q - (p + D)/4 identically; with m = max |u_i| one has
  q >= (3/2) m^2 and |p + D| <= 9 m^3, so the margin is at least
  (11/50) m^2 - (9/4) m^3 > 0 for 0 < m <= 2/25.  Boxes inside the
  m <= 2/25 ball are certified by that bound (interval arithmetic alone can
  never certify a box containing the equality point); everything else is
  certified by plain interval evaluation or subdivided.

The grid sweep is evidence at grid points; the box certificate covers the
whole simplex.  Both are exact: no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SameVertex
from .hypergraph import ThreeGraph, link, two_norm_degree

THIRD = Fraction(1, 3)
CENTER_RADIUS = Fraction(2, 25)  # sup-norm ball where the center lemma applies


def inequality_lhs(x1: Fraction, x2: Fraction, x3: Fraction) -> Fraction:
    return x1 * x2 * x3 + (x1 * x1 * x2 + x2 * x2 * x3 + x3 * x3 * x1) / 2


def inequality_rhs(x1: Fraction, x2: Fraction, x3: Fraction) -> Fraction:
    penalty = (x1 - THIRD) ** 2 + (x2 - THIRD) ** 2 + (x3 - THIRD) ** 2
    return Fraction(5, 54) - penalty / 50


def margin(x1: Fraction, x2: Fraction, x3: Fraction) -> Fraction:
    return inequality_rhs(x1, x2, x3) - inequality_lhs(x1, x2, x3)


def margin_centered(u1: Fraction, u2: Fraction, u3: Fraction) -> Fraction:
    """The same margin through the recentered identity (u_i = x_i - 1/3)."""
    q = u1 * u1 + u2 * u2 + u3 * u3
    p = u1 * u2 * u3
    d = -(u1 - u2) * (u2 - u3) * (u3 - u1)
    return Fraction(11, 75) * q - (p + d) / 4


@dataclass(frozen=True)
class GridReport:
    resolution: int
    points: int
    worst_margin: Fraction
    argmin: tuple[Fraction, Fraction, Fraction]
    zero_margin_points: tuple

    def to_json_dict(self) -> dict:
        return {
            "resolution": self.resolution,
            "points": self.points,
            "worst_margin_num": self.worst_margin.numerator,
            "worst_margin_den": self.worst_margin.denominator,
            "argmin": [str(v) for v in self.argmin],
            "zero_margin_points": [[str(v) for v in p] for p in self.zero_margin_points],
        }


def verify_simplex_inequality(d: int) -> GridReport:
    """Exact margins over all (a/d, b/d, c/d) with a + b + c = d.

    Returns the minimum margin and where it occurs; every grid point with
    margin exactly zero is reported (the barycenter, when 3 divides d, is
    the only expected one)."""
    if d < 1:
        raise ValueError("resolution must be at least 1")
    worst: Optional[Fraction] = None
    arg = (Fraction(0), Fraction(0), Fraction(0))
    zeros = []
    points = 0
    for a in range(d + 1):
        for b in range(d + 1 - a):
            c = d - a - b
            x = (Fraction(a, d), Fraction(b, d), Fraction(c, d))
            value = margin(*x)
            points += 1
            if value == 0:
                zeros.append(x)
            if worst is None or value < worst or (value == worst and x < arg):
                worst = value
                arg = x
    assert worst is not None
    return GridReport(d, points, worst, arg, tuple(zeros))


# --- rational interval arithmetic -----------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        other = _as_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        other = _as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def square(self):
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))

    def scaled(self, k: Fraction):
        if k >= 0:
            return Interval(self.lo * k, self.hi * k)
        return Interval(self.hi * k, self.lo * k)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _as_interval(v) -> Interval:
    if isinstance(v, Interval):
        return v
    f = Fraction(v)
    return Interval(f, f)


def _margin_interval(x1: Interval, x2: Interval, x3: Interval) -> Interval:
    lhs = x1 * x2 * x3 + (x1.square() * x2 + x2.square() * x3 + x3.square() * x1).scaled(
        Fraction(1, 2)
    )
    penalty = (
        (x1 - THIRD).square() + (x2 - THIRD).square() + (x3 - THIRD).square()
    )
    rhs = _as_interval(Fraction(5, 54)) - penalty.scaled(Fraction(1, 50))
    return rhs - lhs


def _margin_interval_centered(x1: Interval, x2: Interval, x3: Interval) -> Interval:
    u1, u2, u3 = (x - THIRD for x in (x1, x2, x3))
    q = u1.square() + u2.square() + u3.square()
    p = u1 * u2 * u3
    d = -((u1 - u2) * (u2 - u3) * (u3 - u1))
    return q.scaled(Fraction(11, 75)) - (p + d).scaled(Fraction(1, 4))


@dataclass(frozen=True)
class CertificateReport:
    min_width: Fraction
    boxes_certified_interval: int
    boxes_certified_center: int
    boxes_skipped_outside: int
    undecided: tuple
    max_depth: int

    @property
    def certified(self) -> bool:
        return not self.undecided

    def to_json_dict(self) -> dict:
        return {
            "min_width": self.min_width,
            "boxes_certified_interval": self.boxes_certified_interval,
            "boxes_certified_center": self.boxes_certified_center,
            "boxes_skipped_outside": self.boxes_skipped_outside,
            "undecided": [[str(v) for v in box] for box in self.undecided],
            "max_depth": self.max_depth,
            "certified": self.certified,
        }


def certify_simplex_inequality(min_width: Fraction = Fraction(1, 10**6)) -> CertificateReport:
    """Certify the inequality over the whole simplex by box subdivision.

    Boxes are (x1, x2) rectangles; x3 ranges over an exact enclosure of
    1 - x1 - x2 clipped to the simplex.  A box is certified when the
    interval margin (the tighter of the direct and recentered enclosures)
    is nonnegative, or when the whole box sits inside the center ball,
    where the exact cubic lower bound applies.  Boxes thinner than
    ``min_width`` that still cannot be decided are reported, not dropped.
    """
    min_width = Fraction(min_width)
    one = Fraction(1)
    stack = [(Fraction(0), one, Fraction(0), one, 0)]
    certified_interval = 0
    certified_center = 0
    skipped = 0
    undecided = []
    max_depth = 0
    while stack:
        a1, b1, a2, b2, depth = stack.pop()
        max_depth = max(max_depth, depth)
        if a1 + a2 > 1:
            skipped += 1
            continue
        x3_lo = max(Fraction(0), 1 - b1 - b2)
        x3_hi = 1 - a1 - a2
        x1 = Interval(a1, b1)
        x2 = Interval(a2, b2)
        x3 = Interval(x3_lo, x3_hi)
        # center lemma: entire box within sup-distance 2/25 of the barycenter
        if (
            abs(a1 - THIRD) <= CENTER_RADIUS
            and abs(b1 - THIRD) <= CENTER_RADIUS
            and abs(a2 - THIRD) <= CENTER_RADIUS
            and abs(b2 - THIRD) <= CENTER_RADIUS
            and abs(x3_lo - THIRD) <= CENTER_RADIUS
            and abs(x3_hi - THIRD) <= CENTER_RADIUS
        ):
            certified_center += 1
            continue
        direct = _margin_interval(x1, x2, x3)
        centered = _margin_interval_centered(x1, x2, x3)
        if max(direct.lo, centered.lo) >= 0:
            certified_interval += 1
            continue
        width = max(b1 - a1, b2 - a2)
        if width < min_width:
            undecided.append((a1, b1, a2, b2))
            continue
        if b1 - a1 >= b2 - a2:
            mid = (a1 + b1) / 2
            stack.append((a1, mid, a2, b2, depth + 1))
            stack.append((mid, b1, a2, b2, depth + 1))
        else:
            mid = (a2 + b2) / 2
            stack.append((a1, b1, a2, mid, depth + 1))
            stack.append((a1, b1, mid, b2, depth + 1))
    return CertificateReport(
        min_width=min_width,
        boxes_certified_interval=certified_interval,
        boxes_certified_center=certified_center,
        boxes_skipped_outside=skipped,
        undecided=tuple(undecided),
        max_depth=max_depth,
    )


def center_lemma_floor(m: Fraction) -> Fraction:
    """The exact lower bound (11/50) m^2 - (9/4) m^3 used by the certificate."""
    m = Fraction(m)
    return Fraction(11, 50) * m * m - Fraction(9, 4) * m * m * m


# --- 2-norm-degree spread ---------------------------------------------------


@dataclass(frozen=True)
class SpreadReport:
    values: tuple[int, ...]
    max_pair_gap: int
    vs_average_gap: Fraction
    reference_bound: int
    within_reference_bound: bool

    def to_json_dict(self) -> dict:
        return {
            "values": list(self.values),
            "max_pair_gap": self.max_pair_gap,
            "vs_average_gap": self.vs_average_gap,
            "reference_bound": self.reference_bound,
            "within_reference_bound": self.within_reference_bound,
        }


def s_spread(h: ThreeGraph) -> SpreadReport:
    """All 2-norm degrees, their largest pairwise gap, and the largest
    deviation from the average.  The 60 n^2 comparison is informational:
    it is a property of extremal graphs, not of arbitrary input."""
    values = tuple(two_norm_degree(h, v) for v in range(h.n))
    if not values:
        return SpreadReport((), 0, Fraction(0), 0, True)
    gap = max(values) - min(values)
    avg = Fraction(sum(values), len(values))
    dev = max(abs(Fraction(v) - avg) for v in values)
    bound = 60 * h.n * h.n
    return SpreadReport(values, gap, dev, bound, gap <= bound and dev <= bound)


def duplicate_vertex(h: ThreeGraph, u: int, v: int) -> ThreeGraph:
    """Make ``v`` a twin of ``u``: drop v's edges, then add {v} | e for every
    pair e in the link of u that does not touch v.

    The two copies end up nonadjacent with identical links, so their 2-norm
    degrees agree; tetrahedron-freeness is preserved.
    """
    if u == v:
        raise SameVertex("duplication needs two distinct vertices")
    lk = link(h, u)
    remove = [t for t in h.edges if v in t]
    add = [
        tuple(sorted((v, a, b)))
        for a, b in lk.edges
        if v != a and v != b
    ]
    return h.with_changes(add=add, remove=remove)
