"""Scalar kernels: exact Gaussian rationals and double-precision complex.

Exact scalars are :class:`QQi` instances (``re + im*i`` with ``Fraction``
parts).  Floating scalars are plain Python ``complex``.  Both support the
usual arithmetic operators, ``abs`` and ``conjugate``, so matrix code is
written once and runs on either.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, ParseError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

__all__ = [
    "EXACT",
    "FLOAT",
    "MODES",
    "QQi",
    "TolerancePolicy",
    "DEFAULT_TOL",
    "to_scalar",
    "parse_exact",
    "format_scalar",
    "sup_abs",
]


class QQi:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "QQi":
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @staticmethod
    def _lift(x):
        if type(x) is QQi:
            return x
        if isinstance(x, (int, Rational)):
            return QQi._raw(Fraction(x), Fraction(0))
        if isinstance(x, complex):
            return QQi(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return QQi(Fraction(x))
        return NotImplemented

    def __add__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        return QQi._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        return QQi._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        return QQi._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return QQi._raw(a * c, b)
        return QQi._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        c, d = o.re, o.im
        if not d:
            if not c:
                raise ZeroDivisionError("QQi division by zero")
            return QQi._raw(self.re / c, self.im / c)
        den = c * c + d * d
        a, b = self.re, self.im
        return QQi._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QQi._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QQi(1) / (self ** -e)
        out = QQi(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __abs__(self) -> float:
        if not self.im:
            return abs(float(self.re))
        return math.hypot(float(self.re), float(self.im))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "QQi":
        return QQi._raw(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QQi({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


@dataclass(frozen=True)
class TolerancePolicy:
    """Zero test for floating values: ``|z| <= absolute_floor + relative_eps * scale``.

    ``scale`` is the largest entry magnitude of the object under test.  Exact
    arithmetic ignores the policy and tests for identical zero.
    """

    relative_eps: float = 1e-10
    absolute_floor: float = 1e-300

    def __post_init__(self):
        if not (self.relative_eps >= 0 and self.absolute_floor >= 0):
            raise DomainError("tolerances must be non-negative")

    def threshold(self, scale: float) -> float:
        return self.absolute_floor + self.relative_eps * scale

    def is_zero(self, z, scale: float) -> bool:
        if type(z) is QQi:
            return not z
        return abs(z) <= self.threshold(scale)


DEFAULT_TOL = TolerancePolicy()


def to_scalar(x, mode: str):
    """Coerce ``x`` (int, Fraction, float, complex, str, QQi) into the kernel ``mode``."""
    if mode == EXACT:
        if type(x) is QQi:
            return x
        if isinstance(x, str):
            return parse_exact(x)
        if isinstance(x, bool):
            return QQi(int(x))
        if isinstance(x, (int, Rational)):
            return QQi(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise DomainError(f"non-finite value {x!r}")
            return QQi(Fraction(x))
        if isinstance(x, complex):
            if not (math.isfinite(x.real) and math.isfinite(x.imag)):
                raise DomainError(f"non-finite value {x!r}")
            return QQi(Fraction(x.real), Fraction(x.imag))
        raise DomainError(f"cannot convert {x!r} to an exact scalar")
    if mode == FLOAT:
        if type(x) is QQi:
            z = complex(x)
        elif isinstance(x, str):
            z = complex(parse_exact(x)) if "/" in x else complex(x.replace("i", "j"))
        elif isinstance(x, (list, tuple)) and len(x) == 2:
            z = complex(float(x[0]), float(x[1]))
        else:
            try:
                z = complex(x)
            except (TypeError, ValueError):
                raise DomainError(f"cannot convert {x!r} to a float scalar") from None
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"non-finite value {x!r}")
        return z
    raise DomainError(f"unknown scalar mode {mode!r}")


_RAT = r"[+-]?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?|(?P<pure>{_RAT}|[+-]?)i)\s*$"
)


def parse_exact(text: str) -> QQi:
    """Parse ``"p/q"``, ``"p/q+r/si"``, ``"3i"``, ``"-i"`` into a :class:`QQi`."""
    m = _EXACT_RE.match(text)
    if not m:
        raise ParseError(f"bad exact scalar {text!r}")

    def frac(s):
        if s in ("", "+"):
            return Fraction(1)
        if s == "-":
            return Fraction(-1)
        try:
            return Fraction(s)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None

    if m.group("pure") is not None:
        return QQi(0, frac(m.group("pure")))
    re_part = frac(m.group("re"))
    im_part = frac(m.group("im")) if m.group("im") is not None else Fraction(0)
    return QQi(re_part, im_part)


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(z) -> str:
    """Inverse of :func:`parse_exact` for QQi; ``repr``-precise text for complex."""
    if type(z) is QQi:
        if not z.im:
            return _fmt_frac(z.re)
        im = _fmt_frac(abs(z.im))
        sign = "-" if z.im < 0 else "+"
        if not z.re:
            return f"{'-' if z.im < 0 else ''}{im}i"
        return f"{_fmt_frac(z.re)}{sign}{im}i"
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{'+' if math.copysign(1, z.imag) > 0 else '-'}{abs(z.imag)!r}i"


def sup_abs(z):
    """Magnitude used for residuals.

    Exact: ``max(|re|, |im|)`` as a Fraction, so zero means identically zero.
    Float: ``abs(z)``.
    """
    if type(z) is QQi:
        return max(abs(z.re), abs(z.im))
    return abs(z)
