"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A value is ``a + b*sqrt(d)`` with ``a``, ``b`` rational and ``d`` a
square-free integer; purely rational values are normalized to ``d == 1``
with ``b == 0``.  Every predicate that drives a symbolic decision (sign,
comparison, floor, cell membership) is computed with integer arithmetic
only.  There are no floating-point fast paths in this module; callers
that want a float for display use :meth:`QuadSurd.to_float` and accept
its rounding.

All circle helpers (:func:`mod1`, :func:`rotate`, :func:`in_left_cell`,
:func:`circle_distance`) treat a "circle point" as a QuadSurd reduced
into [0, 1).

Values from two genuinely different irrational fields are never
comparable; such a request raises :class:`MixedFieldError`.  Rationals
embed with ``b == 0`` and compare against either field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction]


class MixedFieldError(TypeError):
    """Comparison or arithmetic across two different irrational fields."""


def surd_sign_int(u: int, v: int, d: int) -> int:
    """Sign of u + v*sqrt(d) for integers u, v and d >= 1."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    # Opposite signs: |u| vs |v|*sqrt(d) decided by squaring.
    lhs = u * u
    rhs = v * v * d
    if lhs == rhs:
        return 0
    if u > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def _sign(a: Fraction, b: Fraction, d: int) -> int:
    # Clear denominators (both positive) and defer to the integer form.
    return surd_sign_int(
        a.numerator * b.denominator, b.numerator * a.denominator, d
    )


def _square_split(d: int) -> tuple[int, int]:
    """Largest f with f*f dividing d, and the square-free core d // (f*f)."""
    f = 1
    core = d
    p = 2
    while p * p <= core:
        sq = p * p
        while core % sq == 0:
            core //= sq
            f *= p
        p += 1
    return f, core


class QuadSurd:
    """Immutable exact real ``a + b*sqrt(d)``.

    ``d`` is normalized square-free; a zero irrational part collapses to
    ``d == 1``.  Instances must be treated as immutable (they are hashed
    and shared).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        if d != int(d):
            raise ValueError("field parameter d must be an integer")
        d = int(d)
        if d < 1:
            raise ValueError("field parameter d must be positive")
        if b == 0:
            d = 1
        else:
            f, core = _square_split(d)
            if f != 1:
                b *= f
                d = core
            if d == 1:
                a += b
                b = Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    # -- classification ------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        return _sign(self.a, self.b, self.d)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "QuadSurd | None":
        if isinstance(value, QuadSurd):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadSurd(value)
        return None

    def _join_d(self, other: "QuadSurd") -> int:
        if self.b == 0:
            return other.d
        if other.d == 1 or other.b == 0:
            return self.d
        if self.d != other.d:
            raise MixedFieldError(
                f"cannot combine sqrt({self.d}) with sqrt({other.d})"
            )
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        return QuadSurd(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        return QuadSurd(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def _inverse(self) -> "QuadSurd":
        if self.sign() == 0:
            raise ZeroDivisionError("division by zero surd")
        norm = self.a * self.a - self.b * self.b * self.d
        # norm == 0 would force a = b = 0 (sqrt(d) irrational), caught above
        return QuadSurd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self.sign() != 0

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # Structural: canonical form makes value equality across distinct
        # (a, b, d) impossible, and mixed fields are simply unequal.
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _compare(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadSurd with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._compare(other) < 0

    def __le__(self, other):
        return self._compare(other) <= 0

    def __gt__(self, other):
        return self._compare(other) > 0

    def __ge__(self, other):
        return self._compare(other) >= 0

    # -- floor and display ----------------------------------------------

    def __floor__(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        # isqrt gives sqrt(b^2*d) within 1, so the candidate floor is off
        # by a bounded amount; exact sign tests finish the job.
        r, s = self.b.numerator, self.b.denominator
        root = isqrt(r * r * self.d)
        approx = Fraction(root if r > 0 else -(root + 1), s)
        m = math.floor(self.a + approx)
        while _sign(self.a - (m + 1), self.b, self.d) >= 0:
            m += 1
        while _sign(self.a - m, self.b, self.d) < 0:
            m -= 1
        return m

    def to_float(self) -> float:
        """Float approximation. Display only, never used in decisions."""
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        root = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        joiner = " - " if self.b < 0 else " + "
        return f"{self.a}{joiner}{root}"

    def __repr__(self) -> str:
        return f"QuadSurd({self})"


def quad_compare(x, y) -> int:
    """Sign of x - y in {-1, 0, +1}; exact.

    Raises MixedFieldError when both arguments carry irrational parts
    from different fields.
    """
    xq = QuadSurd._coerce(x)
    yq = QuadSurd._coerce(y)
    if xq is None or yq is None:
        raise TypeError("quad_compare expects QuadSurd or rational inputs")
    return (xq - yq).sign()


def mod1(x) -> QuadSurd:
    """Reduce x into [0, 1): x minus its exact floor."""
    xq = QuadSurd._coerce(x)
    if xq is None:
        raise TypeError("mod1 expects a QuadSurd or rational input")
    return xq - math.floor(xq)


def rotate(p, alpha) -> QuadSurd:
    """One rotation step: mod1(p + alpha)."""
    pq = QuadSurd._coerce(p)
    if pq is None:
        raise TypeError("rotate expects QuadSurd or rational inputs")
    return mod1(pq + alpha)


_QUARTER = Fraction(1, 4)


def in_left_cell(p) -> bool:
    """True iff mod1(p) lies in the half-open cell [0, 1/4)."""
    return mod1(p) < _QUARTER


def circle_distance(x, y) -> QuadSurd:
    """Shorter arc length between two circle points, in [0, 1/2]."""
    t = mod1(QuadSurd._coerce(x) - y)
    if t <= Fraction(1, 2):
        return t
    return QuadSurd(1) - t


# -- textual surd literals ----------------------------------------------


class _SurdParser:
    """Scanner for literals like "0/1 + 1/4*sqrt(2)" or "sqrt(2)/4 - 1/8".

    Integer components only; decimal points are rejected so irrational
    inputs cannot be silently approximated.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ValueError:
        return ValueError(
            f"surd syntax error at position {self.pos}: {message} (in {self.text!r})"
        )

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        if self.peek() == ".":
            raise self.error("decimal literals are not accepted; use fractions")
        return int(self.text[start:self.pos])

    def read_rational(self) -> Fraction:
        num = self.read_int()
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            den = self.read_int()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def read_root(self) -> int:
        # caller has matched the literal "sqrt"
        self.pos += 4
        self.skip_ws()
        if self.peek() != "(":
            raise self.error("expected '(' after sqrt")
        self.pos += 1
        d = self.read_int()
        if d < 1:
            raise self.error("sqrt argument must be a positive integer")
        self.skip_ws()
        if self.peek() != ")":
            raise self.error("expected ')'")
        self.pos += 1
        return d

    def at_sqrt(self) -> bool:
        self.skip_ws()
        return self.text.startswith("sqrt", self.pos)

    def read_term(self) -> QuadSurd:
        if self.at_sqrt():
            d = self.read_root()
            coef = Fraction(1)
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                coef = self.read_rational()
            elif self.peek() == "/":
                self.pos += 1
                den = self.read_int()
                if den == 0:
                    raise self.error("zero denominator")
                coef = Fraction(1, den)
            return QuadSurd(0, coef, d)
        coef = self.read_rational()
        self.skip_ws()
        if self.peek() == "*":
            self.pos += 1
            if not self.at_sqrt():
                raise self.error("expected sqrt(...) after '*'")
            d = self.read_root()
            return QuadSurd(0, coef, d)
        return QuadSurd(coef)

    def parse(self) -> QuadSurd:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("empty surd literal")
        value = QuadSurd(0)
        negate = False
        if self.peek() in "+-":
            negate = self.peek() == "-"
            self.pos += 1
        while True:
            term = self.read_term()
            try:
                value = value + (-term if negate else term)
            except MixedFieldError:
                raise self.error("terms mix two different square roots") from None
            if self.at_end():
                return value
            op = self.peek()
            if op not in "+-":
                raise self.error(f"expected '+' or '-', found {op!r}")
            negate = op == "-"
            self.pos += 1


def parse_surd(text: str) -> QuadSurd:
    """Parse an exact surd literal such as "0/1 + 1/4*sqrt(2)"."""
    return _SurdParser(text).parse()
