"""Named map constructors: rotations, symmetries, bumps and transfers."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import DomainError
from .field import Field, Scalar, _coerce
from .pcmap import (AffinePiece, Interval, PwMap, compose, normalize_intervals,
                    subtract_intervals)


def _sc(field: Field, v) -> Scalar:
    if isinstance(v, Scalar):
        return _coerce(field, v)
    return field.scalar(Fraction(v))


def rotation(field: Field, a) -> PwMap:
    """R_a : x -> x + a (mod 1)."""
    a = _sc(field, a)
    zero, one = field.zero(), field.one()
    if not (zero <= a < one):
        raise DomainError("rotation amount must lie in [0,1)")
    if a.is_zero():
        return PwMap.identity(field)
    raw = [AffinePiece(zero, one - a, one, a),
           AffinePiece(one - a, one, one, a - one)]
    return PwMap.canonicalize(field, raw)


def restricted_rotation(field: Field, alpha, interval: Interval) -> PwMap:
    """R_{alpha,J} : x -> x + alpha (mod |J|) on J, identity elsewhere."""
    alpha = _sc(field, alpha)
    lo, hi = interval.lo, interval.hi
    length = hi - lo
    if not (field.zero() <= alpha < length):
        raise DomainError("restricted rotation amount must lie in [0,|J|)")
    if alpha.is_zero():
        return PwMap.identity(field)
    one = field.one()
    raw = []
    if lo > field.zero():
        raw.append(AffinePiece(field.zero(), lo, one, field.zero()))
    raw.append(AffinePiece(lo, hi - alpha, one, alpha))
    raw.append(AffinePiece(hi - alpha, hi, one, alpha - length))
    if hi < one:
        raw.append(AffinePiece(hi, one, one, field.zero()))
    return PwMap.canonicalize(field, raw)


def block_swap(field: Field, k: Interval, l: Interval) -> PwMap:
    """R_{K,L}: exchange the adjacent blocks K=[c,d) and L=[d,e)."""
    if k.hi != l.lo:
        raise DomainError("blocks must be adjacent")
    return restricted_rotation(field, l.length, Interval(k.lo, l.hi))


def symmetry(field: Field, a, b) -> PwMap:
    """The flip x -> a+b-x on (a,b), identity elsewhere."""
    a, b = _sc(field, a), _sc(field, b)
    if not (field.zero() <= a < b <= field.one()):
        raise DomainError("symmetry needs 0 <= a < b <= 1")
    one = field.one()
    raw = []
    if a > field.zero():
        raw.append(AffinePiece(field.zero(), a, one, field.zero()))
    raw.append(AffinePiece(a, b, -one, a + b))
    if b < one:
        raw.append(AffinePiece(b, one, one, field.zero()))
    return PwMap.canonicalize(field, raw)


def s_theta(field: Field, theta) -> PwMap:
    """S_theta = I_[0,theta) o I_(theta,1); satisfies S_t o S_t' = R_{t-t'}."""
    theta = _sc(field, theta)
    zero, one = field.zero(), field.one()
    if not (zero <= theta < one):
        raise DomainError("theta must lie in [0,1)")
    right = symmetry(field, theta, one) if theta < one else PwMap.identity(field)
    left = symmetry(field, zero, theta) if theta > zero else PwMap.identity(field)
    return compose(left, right)


def sigma_map(field: Field, a) -> PwMap:
    """PL homeomorphism fixing 0 and 1, sending 1/2 to a, affine on halves."""
    a = _sc(field, a)
    if not (field.zero() < a < field.one()):
        raise DomainError("sigma parameter must lie in (0,1)")
    half = field.scalar(Fraction(1, 2))
    one = field.one()
    raw = [AffinePiece(field.zero(), half, a / half, field.zero()),
           AffinePiece(half, one, (one - a) / (one - half),
                       a - (one - a) / (one - half) * half)]
    return PwMap.canonicalize(field, raw)


def pl_bump(field: Field, u, v, m, w) -> PwMap:
    """Two-interval PL bump: identity outside [u,v], affine on [u,m] and
    [m,v], sending m to w."""
    u, v, m, w = (_sc(field, t) for t in (u, v, m, w))
    if not (field.zero() <= u < m < v <= field.one() and u < w < v):
        raise DomainError("bump needs 0 <= u < m < v <= 1 and w in (u,v)")
    if w == m:
        return PwMap.identity(field)
    one = field.one()
    s1 = (w - u) / (m - u)
    s2 = (v - w) / (v - m)
    raw = []
    if u > field.zero():
        raw.append(AffinePiece(field.zero(), u, one, field.zero()))
    raw.append(AffinePiece(u, m, s1, u - s1 * u))
    raw.append(AffinePiece(m, v, s2, v - s2 * v))
    if v < one:
        raw.append(AffinePiece(v, one, one, field.zero()))
    return PwMap.canonicalize(field, raw)


def pl_from_points(field: Field, points) -> PwMap:
    """Increasing continuous PL map through (x_i, y_i); needs x_0=y_0=0 and
    x_n=y_n=1 endpoints included."""
    pts = [(_sc(field, x), _sc(field, y)) for x, y in points]
    pts.sort(key=lambda t: (t[0].a, t[0].b))
    if pts[0][0] != field.zero() or pts[0][1] != field.zero() \
            or pts[-1][0] != field.one() or pts[-1][1] != field.one():
        raise DomainError("pl_from_points needs endpoints (0,0) and (1,1)")
    raw = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x0 < x1 and y0 < y1):
            raise DomainError("points must be strictly increasing")
        s = (y1 - y0) / (x1 - x0)
        raw.append(AffinePiece(x0, x1, s, y0 - s * x0))
    return PwMap.canonicalize(field, raw)


def affine_rescale(f: PwMap, target: Interval) -> PwMap:
    """Conjugate f (a map of [0,1)) into the subinterval `target`: the result
    acts as a scaled copy of f on target and fixes the complement."""
    field = f.field
    lo, length = target.lo, target.length
    one = field.one()
    raw = []
    if lo > field.zero():
        raw.append(AffinePiece(field.zero(), lo, one, field.zero()))
    for p in f.pieces:
        a = lo + length * p.lo
        b = lo + length * p.hi
        # law: y -> A(f(A^{-1} y)) with A(x) = lo + length*x
        slope = p.slope
        intercept = lo * (one - p.slope) + length * p.intercept
        raw.append(AffinePiece(a, b, slope, intercept))
    if target.hi < one:
        raw.append(AffinePiece(target.hi, one, one, field.zero()))
    return PwMap.canonicalize(field, raw)


def _chunk_pairs(src, dst):
    """Cut two equal-measure interval lists into matched equal-length chunks."""
    out = []
    i = j = 0
    src = [list(t) for t in src]
    dst = [list(t) for t in dst]
    while i < len(src) and j < len(dst):
        slo, shi = src[i]
        dlo, dhi = dst[j]
        ls, ld = shi - slo, dhi - dlo
        step = ls if ls <= ld else ld
        out.append(((slo, slo + step), (dlo, dlo + step)))
        src[i][0] = slo + step
        dst[j][0] = dlo + step
        if src[i][0] == shi:
            i += 1
        if dst[j][0] == dhi:
            j += 1
    if i < len(src) or j < len(dst):
        raise DomainError("transfer regions have different measures")
    return out


def transfer_iet(field: Field, src, dst) -> PwMap:
    """Order-preserving translation map sending the union `src` onto `dst`
    (equal total measure), extended so the whole map is a bijection: the
    complement of src is sent onto the complement of dst the same way."""
    zero, one = field.zero(), field.one()
    src = normalize_intervals(src)
    dst = normalize_intervals(dst)
    co_src = subtract_intervals([(zero, one)], src)
    co_dst = subtract_intervals([(zero, one)], dst)
    raw = []
    for (slo, shi), (dlo, dhi) in _chunk_pairs(src, dst) + \
            _chunk_pairs(co_src, co_dst):
        raw.append(AffinePiece(slo, shi, one, dlo - slo))
    return PwMap.canonicalize(field, raw)


def transfer_affine(field: Field, src, dst) -> PwMap:
    """Order-preserving piecewise-affine map sending the union `src` onto
    `dst` interval-by-interval count-matched, complement onto complement."""
    zero, one = field.zero(), field.one()
    src = normalize_intervals(src)
    dst = normalize_intervals(dst)
    co_src = subtract_intervals([(zero, one)], src)
    co_dst = subtract_intervals([(zero, one)], dst)
    if len(src) != len(dst) or len(co_src) != len(co_dst):
        raise DomainError("transfer_affine needs matching interval counts")
    raw = []
    for (slo, shi), (dlo, dhi) in list(zip(src, dst)) + list(zip(co_src, co_dst)):
        s = (dhi - dlo) / (shi - slo)
        raw.append(AffinePiece(slo, shi, s, dlo - s * slo))
    return PwMap.canonicalize(field, raw)


def _sqrt_below(field: Field, r: Scalar, depth: int = 64) -> Scalar:
    """A positive field rational q with q*q <= r, within a factor grid."""
    if r.sign() <= 0:
        raise DomainError("need a positive value")
    if r.b != 0:
        # only the rational part of the grid is used; bound from below
        lo = field.scalar(Fraction(0))
        q = field.scalar(Fraction(1, 2))
        while (q * q - r).sign() > 0:
            q = q / 2
        return q
    from math import isqrt
    fr = r.a
    n = 1 << 32
    num = isqrt((fr.numerator * n * n) // fr.denominator)
    q = field.scalar(Fraction(num, n))
    if q.is_zero():
        q = field.scalar(Fraction(1, n))
        while (q * q - r).sign() > 0:
            q = q / 2
    return q


def square_slope_segment(field: Field, x0, y0, x1, y1):
    """Pieces of an increasing PL map [x0,x1] -> [y0,y1] whose slopes are
    exact squares in the field; one piece when the ratio is already square,
    two pieces otherwise."""
    dx, dy = x1 - x0, y1 - y0
    r = dy / dx
    try:
        q = r.sqrt()
        return [AffinePiece(x0, x1, r, y0 - r * x0)]
    except DomainError:
        pass
    q1 = _sqrt_below(field, r)
    s1 = q1 * q1
    if s1 == r:
        return [AffinePiece(x0, x1, r, y0 - r * x0)]
    # pick a square strictly above r
    q2 = q1
    while (q2 * q2 - r).sign() <= 0:
        q2 = q2 * 2
    s2 = q2 * q2
    # s1 * t + s2 * (dx - t) = dy
    t = (dy - s2 * dx) / (s1 - s2)
    xm = x0 + t
    ym = y0 + s1 * t
    return [AffinePiece(x0, xm, s1, y0 - s1 * x0),
            AffinePiece(xm, x1, s2, ym - s2 * xm)]


def square_slope_pl_through(field: Field, points) -> PwMap:
    """Increasing PL map through the given points with every slope an exact
    square of a field element; needs endpoints (0,0) and (1,1)."""
    pts = [(p[0], p[1]) for p in points]
    pts.sort(key=lambda t: (t[0].a, t[0].b))
    if pts[0][0] != field.zero() or pts[0][1] != field.zero() \
            or pts[-1][0] != field.one() or pts[-1][1] != field.one():
        raise DomainError("needs endpoint pins (0,0) and (1,1)")
    raw = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x0 < x1 and y0 < y1):
            raise DomainError("points must be strictly increasing")
        raw.extend(square_slope_segment(field, x0, y0, x1, y1))
    return PwMap.canonicalize(field, raw)
