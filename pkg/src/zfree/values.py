"""Exact scalar arithmetic for costs: rationals extended with plus infinity.

Every cost, weight, and path length in this package is an ExtValue.  Finite
values are exact rationals (stored as int when integral, fractions.Fraction
otherwise); the single non-finite value is positive infinity.  No finite
value is ever represented as a float, so equality and comparison are exact
everywhere.

Arithmetic follows the extended conventions:

    a + inf = inf            for every a
    k * inf = inf            for every integer k >= 1
    0 * inf = 0
    inf > a                  for every finite a

Subtraction is defined when the right operand is finite (inf - a = inf,
a - b exact); inf - inf raises.

The class itself does not restrict sign: differences of finite values are
legitimate intermediate quantities, and the test oracles exercise quadratics
with negative coefficients.  Nonnegativity of instance data is enforced where
the data enters the system (file parsing, instance and matrix validation).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = ["ExtValue", "INF", "ZERO", "ext_sum", "parse_value", "format_value"]

_INF_RAW = math.inf

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class ExtValue:
    """An exact rational number or positive infinity.

    Construct from an int, a Fraction, another ExtValue, the string "inf",
    a rational string like "3" or "5/2", or math.inf.  A two-argument form
    ExtValue(p, q) builds the fraction p/q.  Floats other than math.inf are
    rejected: they would silently destroy exactness.

    Instances are immutable and hashable; values equal as rationals compare
    and hash equal regardless of how they were constructed.
    """

    __slots__ = ("_raw",)

    def __init__(self, value: "int | Fraction | str | float | ExtValue" = 0, den: int | None = None):
        if den is not None:
            if not isinstance(value, int) or isinstance(value, bool) or not isinstance(den, int):
                raise TypeError("two-argument form requires integers")
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            raw: object = _normalize(Fraction(value, den))
        elif isinstance(value, ExtValue):
            raw = value._raw
        elif isinstance(value, bool):
            raise TypeError("bool is not a valid cost value")
        elif isinstance(value, int):
            raw = value
        elif isinstance(value, Fraction):
            raw = _normalize(value)
        elif isinstance(value, float):
            if value == _INF_RAW:
                raw = _INF_RAW
            else:
                raise TypeError("floats are not exact; use int, Fraction, or 'p/q'")
        elif isinstance(value, str):
            raw = _parse_raw(value)
        else:
            raise TypeError(f"cannot build ExtValue from {type(value).__name__}")
        object.__setattr__(self, "_raw", raw)

    # A small cache so that tables holding millions of repeated cells share
    # objects.  Values are immutable, so sharing is safe.
    _cache: dict[object, "ExtValue"] = {}

    @classmethod
    def of(cls, value) -> "ExtValue":
        """Like the constructor, but interns small and repeated values."""
        if isinstance(value, ExtValue):
            return value
        v = cls(value)
        key = v._raw
        cached = cls._cache.get(key)
        if cached is not None:
            return cached
        if len(cls._cache) < 4096:
            cls._cache[key] = v
        return v

    @classmethod
    def _wrap(cls, raw) -> "ExtValue":
        v = object.__new__(cls)
        object.__setattr__(v, "_raw", raw)
        return v

    @property
    def raw(self):
        """The underlying int, Fraction, or math.inf.  For hot loops."""
        return self._raw

    @property
    def is_finite(self) -> bool:
        return self._raw != _INF_RAW

    @property
    def numerator(self) -> int:
        if self._raw == _INF_RAW:
            raise ValueError("infinity has no numerator")
        return self._raw if isinstance(self._raw, int) else self._raw.numerator

    @property
    def denominator(self) -> int:
        if self._raw == _INF_RAW:
            raise ValueError("infinity has no denominator")
        return 1 if isinstance(self._raw, int) else self._raw.denominator

    def as_fraction(self) -> Fraction:
        if self._raw == _INF_RAW:
            raise ValueError("infinity is not a fraction")
        return Fraction(self._raw)

    def __setattr__(self, name, value):
        raise AttributeError("ExtValue is immutable")

    def __add__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        a, b = self._raw, other._raw
        if a == _INF_RAW or b == _INF_RAW:
            return INF
        return ExtValue._wrap(_normalize(a + b))

    def __sub__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        a, b = self._raw, other._raw
        if b == _INF_RAW:
            raise ValueError("cannot subtract infinity")
        if a == _INF_RAW:
            return INF
        return ExtValue._wrap(_normalize(a - b))

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("multiplier must be a nonnegative integer")
        if self._raw == _INF_RAW:
            return ZERO if k == 0 else INF
        return ExtValue._wrap(_normalize(self._raw * k))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw == other._raw

    def __ne__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw != other._raw

    def __lt__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw < other._raw

    def __le__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw <= other._raw

    def __gt__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw > other._raw

    def __ge__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._raw >= other._raw

    def __hash__(self):
        return hash(self._raw)

    def __bool__(self):
        return self._raw != 0

    def __str__(self):
        raw = self._raw
        if raw == _INF_RAW:
            return "inf"
        if isinstance(raw, int):
            return str(raw)
        return f"{raw.numerator}/{raw.denominator}"

    def __repr__(self):
        return f"ExtValue({str(self)!r})"


def _normalize(raw):
    if isinstance(raw, Fraction) and raw.denominator == 1:
        return raw.numerator
    return raw


def _parse_raw(s: str):
    s = s.strip()
    if s == "inf":
        return _INF_RAW
    m = _RATIONAL_RE.match(s)
    if not m:
        raise ValueError(f"malformed value string {s!r}; expected 'p/q' or 'inf'")
    num = int(m.group(1))
    den = m.group(2)
    if den is None:
        return num
    if int(den) == 0:
        raise ZeroDivisionError("zero denominator")
    return _normalize(Fraction(num, int(den)))


INF = ExtValue(math.inf)
ZERO = ExtValue(0)


def ext_sum(values) -> ExtValue:
    """Exact sum of an iterable of ExtValue (empty sum is 0)."""
    total = 0
    for v in values:
        r = v._raw
        if r == _INF_RAW:
            return INF
        total += r
    return ExtValue._wrap(_normalize(total))


def parse_value(obj, *, where: str = "value") -> ExtValue:
    """Decode one JSON-level cost: a nonnegative int, "p/q", or "inf".

    This is the file-format boundary, so it is stricter than the ExtValue
    constructor: floats are rejected outright and negative values are an
    error.  `where` names the offending location in error messages.
    """
    if isinstance(obj, bool):
        raise ValueError(f"{where}: booleans are not values")
    if isinstance(obj, int):
        if obj < 0:
            raise ValueError(f"{where}: negative value {obj}")
        return ExtValue.of(obj)
    if isinstance(obj, float):
        raise ValueError(f"{where}: floats are not exact; write integers, 'p/q', or 'inf'")
    if isinstance(obj, str):
        try:
            raw = _parse_raw(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{where}: {exc}") from None
        if raw != _INF_RAW and raw < 0:
            raise ValueError(f"{where}: negative value {obj!r}")
        return ExtValue.of(raw) if raw != _INF_RAW else INF
    raise ValueError(f"{where}: expected int, 'p/q', or 'inf', got {type(obj).__name__}")


def format_value(v: ExtValue):
    """Encode an ExtValue as its JSON form: int, "p/q", or "inf"."""
    raw = v.raw
    if raw == _INF_RAW:
        return "inf"
    if isinstance(raw, int):
        return raw
    return f"{raw.numerator}/{raw.denominator}"
