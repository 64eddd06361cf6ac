"""Exact scalars over Q or a real quadratic field Q(sqrt(d)).

A Scalar is a + b*sqrt(d) with a, b exact rationals (b fixed to 0 over Q).
All arithmetic is exact; there is no floating point anywhere in the engine.
Comparisons are decided by the exact sign algorithm (compare a^2 with b^2*d
when the two components disagree in sign).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, ParseError

_SQUAREFREE_CACHE = {}


def _is_squarefree(n: int) -> bool:
    if n in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[n]
    m, ok, p = n, True, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                ok = False
                break
        p += 1 if p == 2 else 2
    _SQUAREFREE_CACHE[n] = ok
    return ok


@dataclass(frozen=True)
class Field:
    """Session field: Q (d is None) or Q(sqrt(d)) with d >= 2 squarefree."""

    d: Union[int, None] = None

    def __post_init__(self):
        if self.d is not None:
            if self.d < 2:
                raise DomainError(f"quadratic field needs d >= 2, got {self.d}")
            if not _is_squarefree(self.d):
                raise DomainError(f"d must be squarefree, got {self.d}")

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def quadratic(d: int) -> "Field":
        return Field(d)

    @property
    def is_quadratic(self) -> bool:
        return self.d is not None

    def __str__(self):
        return "Q" if self.d is None else f"Q(sqrt {self.d})"

    # -- constructors -------------------------------------------------

    def scalar(self, a, b=0) -> "Scalar":
        return Scalar(self, Fraction(a), Fraction(b))

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def sqrt_gen(self) -> "Scalar":
        if self.d is None:
            raise DomainError("sqrt generator does not exist over Q")
        return self.scalar(0, 1)


QQ = Field.rationals()


def _coerce(field: Field, x) -> "Scalar":
    if isinstance(x, Scalar):
        if x.field != field:
            raise DomainError(f"mixed fields: {x.field} vs {field}")
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(field, Fraction(x), Fraction(0))
    raise TypeError(f"cannot coerce {x!r} into {field}")


class Scalar:
    """Element a + b*sqrt(d) of the session field, totally ordered."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: Field, a: Fraction, b: Fraction = Fraction(0)):
        if field.d is None and b != 0:
            raise DomainError("sqrt component must vanish over Q")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        o = _coerce(self.field, other)
        return Scalar(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(self.field, other)
        return Scalar(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return _coerce(self.field, other) - self

    def __neg__(self):
        return Scalar(self.field, -self.a, -self.b)

    def __mul__(self, other):
        o = _coerce(self.field, other)
        d = self.field.d or 0
        return Scalar(
            self.field,
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DomainError("division by zero scalar")
        if self.b == 0:
            return Scalar(self.field, 1 / self.a, Fraction(0))
        d = self.field.d
        norm = self.a * self.a - self.b * self.b * d
        # norm != 0: sqrt(d) is irrational, so a^2 = d b^2 forces a = b = 0
        return Scalar(self.field, self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * _coerce(self.field, other).inverse()

    def __rtruediv__(self, other):
        return _coerce(self.field, other) * self.inverse()

    # -- order ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        d = self.field.d
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # components disagree; compare a^2 against d*b^2
        lhs, rhs = a * a, b * b * d
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __eq__(self, other):
        try:
            o = _coerce(self.field, other)
        except (TypeError, DomainError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __lt__(self, other):
        return (self - _coerce(self.field, other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(self.field, other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(self.field, other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(self.field, other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- integer part ----------------------------------------------------

    def floor(self) -> int:
        """Largest integer n with n <= self, decided exactly."""
        if self.b == 0:
            return math.floor(self.a)
        bound = math.floor(abs(self.a)) + (abs(self.b).__ceil__()) * (
            math.isqrt(self.field.d) + 1
        ) + 1
        lo, hi = -bound, bound  # invariant: lo <= self < hi + 1 after search
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if (self - mid).sign() >= 0:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def sqrt(self) -> "Scalar":
        """Exact square root inside the field, or DomainError.

        Only the cases needed by the commutator constructions are handled:
        rational squares, and d*(rational square) over Q(sqrt d).
        """
        if self.sign() < 0:
            raise DomainError("square root of a negative scalar")
        if self.b == 0:
            r = _fraction_sqrt(self.a)
            if r is not None:
                return Scalar(self.field, r)
            if self.field.d is not None:
                r = _fraction_sqrt(self.a / self.field.d)
                if r is not None:
                    return Scalar(self.field, Fraction(0), r)
        raise DomainError(f"{self} has no square root in {self.field}")

    # -- text -------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return print_scalar(self)


def _fraction_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# -- parsing / printing ----------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_TERM_RE = re.compile(
    rf"^\s*(?P<a>{_RAT})?"
    rf"(?:\s*(?P<op>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?"
    rf"sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_scalar(field: Field, text: str) -> Scalar:
    """Parse `rational ( +- rational*sqrt(d) )?` (either part optional)."""
    cleaned = text.replace("−", "-").strip()
    m = _TERM_RE.match(cleaned)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ParseError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("a")) if m.group("a") is not None else Fraction(0)
    b = Fraction(0)
    if m.group("d") is not None:
        d = int(m.group("d"))
        if field.d is None:
            raise DomainError(f"sqrt({d}) term is not allowed over Q")
        if d != field.d:
            raise DomainError(f"sqrt({d}) does not live in {field}")
        coeff = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("op") == "-":
            coeff = -coeff
        b = coeff
    return Scalar(field, a, b)


def print_scalar(x: Scalar) -> str:
    if x.b == 0:
        return str(x.a)
    d = x.field.d
    babs = abs(x.b)
    bpart = f"sqrt({d})" if babs == 1 else f"{babs}*sqrt({d})"
    if x.a == 0:
        return bpart if x.b > 0 else f"-{bpart}"
    op = "+" if x.b > 0 else "-"
    return f"{x.a} {op} {bpart}"
