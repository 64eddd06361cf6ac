"""Canonical piecewise-affine bijections of [0,1).

A PwMap stores the best representative of a class of piecewise-affine
bijections modulo finite-support changes: an ordered list of affine pieces
whose half-open domains tile [0,1) and whose images tile [0,1), with
adjacent pieces carrying distinct affine laws (maximal merging).

Conventions:
  * every piece acts by x -> slope*x + intercept on the open interior;
  * an increasing piece is right continuous at its left endpoint;
  * a decreasing piece sends its left endpoint to the left endpoint of its
    image interval;
  * compose(f, g) means f after g.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError
from .field import Field, Scalar, _coerce

# ---------------------------------------------------------------------------
# intervals and finite unions of intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Half-open interval [lo, hi)."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x < self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi})"


def normalize_intervals(parts: Sequence[Tuple[Scalar, Scalar]]):
    """Sort, drop empties and merge touching/overlapping [lo, hi) pairs."""
    parts = sorted((p for p in parts if p[0] < p[1]), key=lambda p: (p[0], p[1]))
    out: List[Tuple[Scalar, Scalar]] = []
    for lo, hi in parts:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def subtract_intervals(a, b):
    """Set difference of two normalized interval lists."""
    out = []
    for lo, hi in a:
        cur = lo
        for blo, bhi in b:
            if bhi <= cur or blo >= hi:
                continue
            if blo > cur:
                out.append((cur, blo))
            cur = max(cur, bhi)
            if cur >= hi:
                break
        if cur < hi:
            out.append((cur, hi))
    return normalize_intervals(out)


def intersect_intervals(a, b):
    out = []
    for lo, hi in a:
        for blo, bhi in b:
            nlo, nhi = max(lo, blo), min(hi, bhi)
            if nlo < nhi:
                out.append((nlo, nhi))
    return normalize_intervals(out)


def measure(parts) -> Scalar:
    if not parts:
        raise DomainError("measure of empty list needs a field; use measure_in")
    total = parts[0][0] - parts[0][0]
    for lo, hi in parts:
        total = total + (hi - lo)
    return total


def covers(outer, inner) -> bool:
    """True if every interval of `inner` lies inside some interval of `outer`."""
    for lo, hi in inner:
        if not any(olo <= lo and hi <= ohi for olo, ohi in outer):
            return False
    return True


# ---------------------------------------------------------------------------
# affine pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffinePiece:
    """Affine law on a half-open domain [lo, hi)."""

    lo: Scalar
    hi: Scalar
    slope: Scalar
    intercept: Scalar

    def __post_init__(self):
        if self.slope.is_zero():
            raise DomainError("piece slope must be nonzero")
        if not self.lo < self.hi:
            raise DomainError("piece domain is empty")

    def law(self, x: Scalar) -> Scalar:
        return self.slope * x + self.intercept

    @property
    def image_lo(self) -> Scalar:
        return self.law(self.lo) if self.slope.sign() > 0 else self.law(self.hi)

    @property
    def image_hi(self) -> Scalar:
        return self.law(self.hi) if self.slope.sign() > 0 else self.law(self.lo)

    def value(self, x: Scalar) -> Scalar:
        """Best-representative value at x in [lo, hi)."""
        if self.slope.sign() > 0:
            return self.law(x)
        if x == self.lo:
            return self.image_lo
        return self.law(x)

    def is_identity(self) -> bool:
        return self.slope == 1 and self.intercept.is_zero()

    def __str__(self):
        return f"[{self.lo}, {self.hi}) : {self.slope} , {self.intercept}"


# ---------------------------------------------------------------------------
# the group element
# ---------------------------------------------------------------------------


class PwMap:
    """Best representative of a piecewise-affine bijection class of [0,1)."""

    __slots__ = ("field", "pieces", "_hash")

    def __init__(self, field: Field, pieces: Tuple[AffinePiece, ...]):
        # trusted constructor; go through canonicalize() for raw data
        self.field = field
        self.pieces = pieces
        self._hash = None

    # -- construction ----------------------------------------------------

    @staticmethod
    def canonicalize(field: Field, raw: Sequence[AffinePiece]) -> "PwMap":
        """Validate a raw piece list and return the canonical class form."""
        if not raw:
            raise DomainError("no pieces given")
        pieces = sorted(raw, key=lambda p: p.lo)
        zero, one = field.zero(), field.one()
        if pieces[0].lo != zero or pieces[-1].hi != one:
            raise DomainError("domains must tile [0,1)")
        for p, q in zip(pieces, pieces[1:]):
            if p.hi != q.lo:
                raise DomainError(f"domain gap/overlap at {p.hi}")
        images = sorted(((p.image_lo, p.image_hi) for p in pieces),
                        key=lambda t: t[0])
        if images[0][0] != zero or images[-1][1] != one:
            raise DomainError("images must tile [0,1)")
        for (alo, ahi), (blo, bhi) in zip(images, images[1:]):
            if ahi != blo:
                raise DomainError(f"image gap/overlap at {ahi}")
        merged: List[AffinePiece] = []
        for p in pieces:
            if merged and merged[-1].slope == p.slope \
                    and merged[-1].intercept == p.intercept:
                merged[-1] = AffinePiece(merged[-1].lo, p.hi, p.slope, p.intercept)
            else:
                merged.append(p)
        return PwMap(field, tuple(merged))

    @staticmethod
    def identity(field: Field) -> "PwMap":
        return PwMap(field, (AffinePiece(field.zero(), field.one(),
                                         field.one(), field.zero()),))

    @staticmethod
    def from_piece_data(field: Field, data) -> "PwMap":
        """data: iterable of (lo, hi, slope, intercept) scalar-coercibles."""
        sc = lambda v: _coerce(field, v if isinstance(v, Scalar) else Fraction(v))
        raw = [AffinePiece(sc(lo), sc(hi), sc(sl), sc(ic))
               for lo, hi, sl, ic in data]
        return PwMap.canonicalize(field, raw)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PwMap):
            return NotImplemented
        return self.field == other.field and self.pieces == other.pieces

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.pieces))
        return self._hash

    def is_identity(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0].is_identity()

    def __repr__(self):
        body = "; ".join(str(p) for p in self.pieces)
        return f"PwMap<{body}>"

    # -- evaluation ----------------------------------------------------------

    def piece_at(self, x: Scalar) -> AffinePiece:
        los = [p.lo for p in self.pieces]
        i = bisect_right(los, x) - 1
        return self.pieces[i]

    def __call__(self, x) -> Scalar:
        x = _coerce(self.field, x)
        if not (self.field.zero() <= x < self.field.one()):
            raise DomainError(f"{x} outside [0,1)")
        return self.piece_at(x).value(x)

    # -- group operations ------------------------------------------------------

    def inverse(self) -> "PwMap":
        raw = []
        for p in self.pieces:
            s = p.slope.inverse()
            raw.append(AffinePiece(p.image_lo, p.image_hi, s, -p.intercept * s))
        return PwMap.canonicalize(self.field, raw)

    def __mul__(self, other: "PwMap") -> "PwMap":
        return compose(self, other)

    def __pow__(self, n: int) -> "PwMap":
        if n == 0:
            return PwMap.identity(self.field)
        if n < 0:
            return self.inverse() ** (-n)
        half = self ** (n // 2)
        sq = half * half
        return sq * self if n % 2 else sq

    # -- derived data ------------------------------------------------------------

    def breakpoints(self) -> List[Scalar]:
        return [p.lo for p in self.pieces]

    def slopes(self):
        return sorted(set(p.slope for p in self.pieces), key=lambda s: (s.a, s.b))

    def support(self):
        """Moving set as a normalized interval list (class convention:
        isolated fixed points inside moving pieces are ignored)."""
        return normalize_intervals(
            [(p.lo, p.hi) for p in self.pieces if not p.is_identity()])

    def fixed_set(self):
        return normalize_intervals(
            [(p.lo, p.hi) for p in self.pieces if p.is_identity()])

    def left_limit_at_one(self) -> Scalar:
        p = self.pieces[-1]
        return p.law(self.field.one())

    def is_circle_continuous_at_zero(self) -> bool:
        lim = self.left_limit_at_one()
        v0 = self(self.field.zero())
        return lim == v0 or lim == v0 + self.field.one()

    def interior_discontinuities(self) -> List[Scalar]:
        """Interior breakpoints where the best representative really jumps."""
        out = []
        for prev, p in zip(self.pieces, self.pieces[1:]):
            x = p.lo
            left = prev.law(x)
            val = p.value(x)
            if left != val or p.slope.sign() < 0:
                out.append(x)
        return out

    def image_of_intervals(self, parts):
        """Exact image of a finite union of intervals, as interval list."""
        out = []
        for lo, hi in parts:
            for p in self.pieces:
                nlo, nhi = max(lo, p.lo), min(hi, p.hi)
                if nlo < nhi:
                    a, b = p.law(nlo), p.law(nhi)
                    out.append((a, b) if p.slope.sign() > 0 else (b, a))
        return normalize_intervals(out)


def compose(f: PwMap, g: PwMap) -> PwMap:
    """Class of f o g (g applied first), computed exactly."""
    if f.field != g.field:
        raise DomainError("mixed fields in compose")
    fbreaks = [p.lo for p in f.pieces]
    raw = []
    for p in g.pieces:
        m, M = p.image_lo, p.image_hi
        cuts = [p.lo, p.hi]
        for c in fbreaks:
            if m < c < M:
                cuts.append((c - p.intercept) / p.slope)
        cuts = sorted(set(cuts), key=lambda s: (s.a, s.b))
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (p.law(lo) + p.law(hi)) / 2
            fp = f.piece_at(mid)
            raw.append(AffinePiece(lo, hi, fp.slope * p.slope,
                                   fp.slope * p.intercept + fp.intercept))
    return PwMap.canonicalize(f.field, raw)


def conjugate(f: PwMap, h: PwMap) -> PwMap:
    """h f h^{-1}."""
    return compose(compose(h, f), h.inverse())


def commutator(a: PwMap, b: PwMap) -> PwMap:
    """a b a^{-1} b^{-1}."""
    return compose(compose(a, b), compose(a.inverse(), b.inverse()))


def is_involution(f: PwMap) -> bool:
    return (not f.is_identity()) and compose(f, f).is_identity()


def order2_class(f: PwMap) -> str:
    if f.is_identity():
        return "Identity"
    return "Involution" if compose(f, f).is_identity() else "Other"


# ---------------------------------------------------------------------------
# analysis record
# ---------------------------------------------------------------------------


@dataclass
class Analysis:
    support: list
    fixed: list
    breakpoints: list
    interior_discontinuities: list
    circle_continuous_at_zero: bool
    slopes: list
    piece_count: int

    @property
    def discontinuity_count(self) -> int:
        """Circle convention: a continuous 0 is not counted."""
        n = len(self.interior_discontinuities)
        return n if self.circle_continuous_at_zero else n + 1


def analyze(f: PwMap) -> Analysis:
    return Analysis(
        support=f.support(),
        fixed=f.fixed_set(),
        breakpoints=f.breakpoints(),
        interior_discontinuities=f.interior_discontinuities(),
        circle_continuous_at_zero=f.is_circle_continuous_at_zero(),
        slopes=f.slopes(),
        piece_count=len(f.pieces),
    )


# ---------------------------------------------------------------------------
# proper regions (arcs bounded away from a marked point)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProperRegion:
    """Either one interval [lo, hi), or the wrap shape [0, c) u (d, 1)."""

    parts: Tuple[Interval, ...]

    def __post_init__(self):
        if len(self.parts) == 1:
            return
        if len(self.parts) == 2:
            a, b = self.parts
            fld = a.lo.field
            if not (a.lo == fld.zero() and b.hi == fld.one() and a.hi < b.lo):
                raise DomainError("two-part region must be [0,c) u (d,1), c<d")
            return
        raise DomainError("a proper region has one or two parts")

    @property
    def is_wrap(self) -> bool:
        return len(self.parts) == 2

    def interval_list(self):
        return normalize_intervals([(p.lo, p.hi) for p in self.parts])

    def __str__(self):
        if self.is_wrap:
            a, b = self.parts
            return f"[0, {a.hi}) u ({b.lo}, 1)"
        return str(self.parts[0])


def region_single(lo: Scalar, hi: Scalar) -> ProperRegion:
    return ProperRegion((Interval(lo, hi),))


def region_wrap(field: Field, c: Scalar, d: Scalar) -> ProperRegion:
    return ProperRegion((Interval(field.zero(), c), Interval(d, field.one())))


def is_a_proper(region: ProperRegion, a: Scalar) -> bool:
    """True iff the region stays at positive circle distance from a."""
    field = a.field
    zero, one = field.zero(), field.one()
    if region.is_wrap:
        c, d = region.parts[0].hi, region.parts[1].lo
        return zero < a and c < a < d
    lo, hi = region.parts[0].lo, region.parts[0].hi
    if a == zero:
        return zero < lo and hi < one
    return a < lo or a > hi


def contains_support(region: ProperRegion, f: PwMap) -> bool:
    return covers(region.interval_list(), f.support())


def fixes_neighborhood_of(f: PwMap, a: Scalar) -> bool:
    """True iff some V_delta(a) is fixed pointwise by the class
    (V_delta(0) wraps around the circle)."""
    field = f.field
    supp = f.support()
    if not supp:
        return True
    zero, one = field.zero(), field.one()
    if a == zero:
        return supp[0][0] > zero and supp[-1][1] < one
    for lo, hi in supp:
        if lo <= a <= hi:
            return False
    return True


def support_gaps(field: Field, union):
    """Circle gaps of a normalized interval union inside [0,1).

    Returns a list of (start, end, wraps) arcs; for a wrapping arc the end
    is given as a point >= 1 (subtract 1 to reduce)."""
    zero, one = field.zero(), field.one()
    if not union:
        return [(zero, one, False)]
    gaps = []
    for (alo, ahi), (blo, bhi) in zip(union, union[1:]):
        gaps.append((ahi, blo, False))
    starts0 = union[0][0] > zero
    ends1 = union[-1][1] < one
    if starts0 and ends1:
        gaps.append((union[-1][1], union[0][0] + one, True))
    elif starts0:
        gaps.append((zero, union[0][0], False))
    elif ends1:
        gaps.append((union[-1][1], one, False))
    return gaps


def proper_hull(field: Field, maps: Sequence[PwMap],
                avoid: Optional[Scalar] = None):
    """Find (a, region) with every Supp(map) inside the a-proper region.

    The marked point a is the midpoint of the largest circle gap of the
    support union; with `avoid` given, that point's gap is used instead.
    Raises DomainError when the union covers the whole circle.
    """
    union: List[Tuple[Scalar, Scalar]] = []
    for m in maps:
        union = normalize_intervals(union + m.support())
    zero, one = field.zero(), field.one()
    gaps = support_gaps(field, union)
    if not gaps:
        raise DomainError("supports cover the whole circle")
    chosen = None
    if avoid is not None:
        for lo, hi, wraps in gaps:
            if lo < avoid < hi or (wraps and lo < avoid + one < hi):
                chosen = (lo, hi, wraps)
                break
        if chosen is None:
            raise DomainError("requested point is not in a support gap")
        a = avoid
    else:
        gaps.sort(key=lambda t: ((t[1] - t[0]).a, (t[1] - t[0]).b, t[0].a))
        chosen = gaps[-1]
        lo, hi, wraps = chosen
        a = (lo + hi) / 2
        if a >= one:
            a = a - one
    if a == zero:
        # region is a single interval strictly inside (0,1)
        lo = union[0][0] / 2 if union else field.scalar(Fraction(1, 4))
        hi = (union[-1][1] + one) / 2 if union else field.scalar(Fraction(3, 4))
        return a, region_single(lo, hi)
    below = [hi for lo, hi in union if hi <= a]
    above = [lo for lo, hi in union if lo >= a]
    u_l = max(below) if below else zero
    u_r = min(above) if above else one
    c = (u_l + a) / 2
    d = (a + u_r) / 2
    return a, region_wrap(field, c, d)
