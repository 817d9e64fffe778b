"""Tropicalization, Newton polygons, and leading splitting exponents.

Given the monic characteristic polynomial

    F(lambda, t) = sum_i a_i(t) lambda^(n-i),

the leading power of each eigenvalue branch lambda(t) ~ c * t^omega is read
off from the valuations alpha_i = ord(a_i) in two equivalent ways:

* as a kink of the min-plus polynomial  P(omega) = min_i (alpha_i + (n-i)*omega),
  with multiplicity equal to the slope drop across the kink;
* as a slope of the lower convex hull of the points (i, alpha_i), with
  multiplicity equal to the segment's horizontal extent.

Both routes are implemented independently and must agree; they serve as each
other's oracle in the test suite.

Conventions.  Eigenvalue branches that are *identically* zero (a_n, a_{n-1},
... vanish as exact polynomials) are never reported as tropical roots; they
are counted separately in ``zero_root_count``.  A kink at omega = 0, by
contrast, describes branches of order one in t and is reported as a root with
value 0.  Valuations that are only known to exceed a truncation order poison
the result: the report is flagged ``undetermined`` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import pi
from cmath import exp as cexp
from typing import Optional, Sequence, Tuple, Union

from .charpoly import CharPoly
from .poly import Ord


@dataclass(frozen=True)
class TropicalPoly:
    """Min of affine forms alpha + k*omega, one term per finite-ord coefficient."""

    terms: Tuple[Tuple[int, Fraction], ...]  # (slope k = n - i, intercept alpha_i)
    undetermined: bool = False

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a tropical polynomial needs at least one term")
        dedup = {}
        for k, alpha in self.terms:
            alpha = Fraction(alpha)
            if k not in dedup or alpha < dedup[k]:
                dedup[k] = alpha
        object.__setattr__(
            self, "terms", tuple(sorted(dedup.items(), reverse=True)))

    @property
    def degree(self) -> int:
        return self.terms[0][0]

    def __call__(self, omega) -> Fraction:
        omega = Fraction(omega)
        return min(alpha + k * omega for k, alpha in self.terms)


def eval_tropical(p: TropicalPoly, omega) -> Fraction:
    return p(omega)


@dataclass(frozen=True)
class NewtonPolygon:
    """Points (i, alpha_i) for i = 0..n and their lower convex hull."""

    points: Tuple[Tuple[int, Ord], ...]
    hull: Tuple[Tuple[int, Fraction], ...] = field(init=False)
    undetermined: bool = field(init=False)

    def __post_init__(self):
        finite = [(i, Fraction(o.value)) for i, o in self.points if o.is_finite]
        undet = any(o.is_undetermined for _, o in self.points)
        if not finite or finite[0][0] != 0:
            raise ValueError("the monic point (0, alpha_0) must be present")
        object.__setattr__(self, "hull", tuple(_lower_hull(finite)))
        object.__setattr__(self, "undetermined", undet)

    @property
    def n(self) -> int:
        return self.points[-1][0]


def _lower_hull(points):
    """Monotone chain over points already sorted by x; exact comparisons.

    Collinear interior points are dropped from the vertex list (their extent
    is still covered by the enclosing segment).
    """
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


@dataclass(frozen=True)
class TropicalRoot:
    omega: Fraction
    multiplicity: int

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))
        if self.omega < 0 or self.multiplicity < 1:
            raise ValueError("roots are non-negative with positive multiplicity")

    def branch_phases(self) -> Tuple[complex, ...]:
        m = self.multiplicity
        return tuple(cexp(2j * pi * l / m) for l in range(m))


@dataclass(frozen=True)
class SplittingReport:
    """Predicted leading exponents, multiplicities, and flat zero modes."""

    roots: Tuple[TropicalRoot, ...]
    zero_root_count: int
    undetermined: bool = False

    def __post_init__(self):
        object.__setattr__(self, "roots",
                           tuple(sorted(self.roots, key=lambda r: r.omega)))

    @property
    def total_dimension(self) -> int:
        return self.zero_root_count + sum(r.multiplicity for r in self.roots)

    def nonzero_roots(self) -> Tuple[TropicalRoot, ...]:
        return tuple(r for r in self.roots if r.omega > 0)

    def predicted_cycle_lengths(self) -> Optional[Tuple[int, ...]]:
        """Cycle structure of the braid around t = 0, series by series.

        A root p/q (lowest terms) of multiplicity m consists of m/q Puiseux
        series of q branches each; one loop cyclically permutes the branches
        within every series.  Returns None when some multiplicity is not a
        whole number of series (no clean prediction).
        """
        cycles = [1] * self.zero_root_count
        for r in self.roots:
            q = r.omega.denominator if r.omega > 0 else 1
            if r.multiplicity % q:
                return None
            cycles.extend([q] * (r.multiplicity // q))
        return tuple(sorted(cycles))


def tropicalize(c: CharPoly) -> TropicalPoly:
    n = c.n
    terms = []
    undet = False
    for i, coeff in enumerate(c.coeffs):
        o = coeff.ord()
        if o.is_finite:
            terms.append((n - i, Fraction(o.value)))
        elif o.is_undetermined:
            undet = True
    return TropicalPoly(tuple(terms), undetermined=undet)


def newton_polygon(c: CharPoly) -> NewtonPolygon:
    return NewtonPolygon(tuple((i, coeff.ord()) for i, coeff in enumerate(c.coeffs)))


def tropical_roots(obj: Union[CharPoly, TropicalPoly, NewtonPolygon]) -> SplittingReport:
    """Roots with multiplicities from either dual representation."""
    if isinstance(obj, CharPoly):
        obj = newton_polygon(obj)
    if isinstance(obj, NewtonPolygon):
        return _roots_from_hull(obj)
    if isinstance(obj, TropicalPoly):
        return _roots_from_minplus(obj)
    raise TypeError(f"cannot extract tropical roots from {type(obj).__name__}")


def _roots_from_hull(np_: NewtonPolygon) -> SplittingReport:
    roots = []
    for (i0, a0), (i1, a1) in zip(np_.hull, np_.hull[1:]):
        roots.append(TropicalRoot(Fraction(a1 - a0, i1 - i0), i1 - i0))
    zero = np_.n - np_.hull[-1][0]
    return SplittingReport(tuple(roots), zero, np_.undetermined)


def _roots_from_minplus(p: TropicalPoly) -> SplittingReport:
    terms = p.terms  # slopes strictly decreasing
    n = terms[0][0]
    # candidate kinks: pairwise crossings at non-negative omega
    cands = set()
    for idx, (k1, a1) in enumerate(terms):
        for k2, a2 in terms[idx + 1:]:
            w = Fraction(a2 - a1, k1 - k2)
            if w > 0:  # a crossing at 0 is covered by the virtual slope below
                cands.add(w)
    cands = sorted(cands)

    def active_slope(omega: Fraction) -> int:
        best, slope = None, None
        for k, a in terms:
            v = a + k * omega
            if best is None or v < best:
                best, slope = v, k
        return slope

    # slope of the min on each open interval between crossings
    probes = []
    grid = [Fraction(0)] + cands
    for lo, hi in zip(grid, grid[1:]):
        probes.append((lo + hi) / 2)
    probes.append(grid[-1] + 1)
    slopes = [active_slope(w) for w in probes]

    roots = []
    prev = n  # virtual slope left of omega = 0
    for w, s in zip(grid, slopes):
        if s < prev:
            roots.append(TropicalRoot(w, prev - s))
        prev = s
    zero = terms[-1][0]  # smallest slope = count of identically-zero branches
    return SplittingReport(tuple(roots), zero, p.undetermined)


def tropical_product(p: TropicalPoly, q: TropicalPoly) -> TropicalPoly:
    """Min-plus convolution; root multisets add under this product."""
    conv = {}
    for k1, a1 in p.terms:
        for k2, a2 in q.terms:
            k, a = k1 + k2, a1 + a2
            if k not in conv or a < conv[k]:
                conv[k] = a
    return TropicalPoly(tuple(conv.items()),
                        undetermined=p.undetermined or q.undetermined)
