"""Complex scalar arithmetic in two modes: exact Gaussian-rational and binary64.

Every other module computes over ``Scalar`` values.  Exact mode keeps the real
and imaginary parts as arbitrary-precision ``Fraction``s, so sums and products
never round; division is exact and only legal by a nonzero scalar.  Float mode
keeps binary64 components.  Mixing the two modes in one expression is a bug in
the caller and raises ``ScalarModeError`` instead of silently promoting.
"""

from __future__ import annotations

import math
from fractions import Fraction


class ScalarModeError(TypeError):
    """Raised when exact-mode and float-mode scalars meet in one operation."""


class Scalar:
    """A complex number with an explicit arithmetic mode."""

    __slots__ = ("re", "im", "exact")

    def __init__(self, re, im, exact):
        self.re = re
        self.im = im
        self.exact = exact

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_exact(re, im=0):
        return Scalar(Fraction(re), Fraction(im), True)

    @staticmethod
    def from_float(re, im=0.0):
        return Scalar(float(re), float(im), False)

    @staticmethod
    def from_int(k, exact):
        return Scalar.from_exact(k) if exact else Scalar.from_float(k)

    @staticmethod
    def zero(exact):
        return Scalar.from_int(0, exact)

    @staticmethod
    def one(exact):
        return Scalar.from_int(1, exact)

    # -- mode handling ------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.exact is not self.exact:
            raise ScalarModeError("cannot mix exact and float scalars")

    def to_float(self):
        """Convert to float mode (lossy for general rationals)."""
        return Scalar(float(self.re), float(self.im), False)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return Scalar(self.re + other.re, self.im + other.im, self.exact)

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.re - other.re, self.im - other.im, self.exact)

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.exact)

    def __mul__(self, other):
        self._check(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.exact,
        )

    def __truediv__(self, other):
        self._check(other)
        q = other.re * other.re + other.im * other.im
        if q == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(
            (self.re * other.re + self.im * other.im) / q,
            (self.im * other.re - self.re * other.im) / q,
            self.exact,
        )

    def conj(self):
        return Scalar(self.re, -self.im, self.exact)

    def mag_sq(self):
        """conj(self) * self, always real and non-negative."""
        return Scalar(self.re * self.re + self.im * self.im, self.re * 0, self.exact)

    def real_part(self):
        return Scalar(self.re, self.re * 0, self.exact)

    # -- predicates / comparison --------------------------------------

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.exact is other.exact and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im, self.exact))

    def __abs__(self):
        return math.sqrt(float(self.re) ** 2 + float(self.im) ** 2)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, exact={self.exact})"


def scalar_pow(s, e):
    """s**e for integer e >= 0 by repeated squaring; s**0 == 1 even for s == 0."""
    if e < 0:
        raise ValueError("negative exponent")
    result = Scalar.one(s.exact)
    base = s
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def magnitude_sq(s):
    """|s|^2 = conj(s)*s as a real non-negative scalar."""
    return s.mag_sq()


# -- parsing and printing ---------------------------------------------
#
# Accepted literal forms: "3", "-7/4", "1.5", "2e3", "2+3i", "1/2-1/3i",
# "i", "-i", "4i".  Exact parsing keeps rationals and decimal strings
# lossless (Fraction handles both); printing round-trips exact values.

def parse_scalar(text, exact):
    """Parse a real or complex literal into a Scalar of the given mode."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    conv = Fraction if exact else _to_float
    try:
        if not s.endswith(("i", "I")):
            return Scalar(conv(s), conv("0"), exact)
        body = s[:-1]
        # split real and imaginary parts at the last sign that is not a
        # leading sign and not part of an exponent like "2e-3"
        split = 0
        for idx in range(len(body) - 1, 0, -1):
            if body[idx] in "+-" and body[idx - 1] not in "eE":
                split = idx
                break
        re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return Scalar(conv(re_part) if re_part else conv("0"), conv(im_part), exact)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed scalar literal: {text!r}") from exc


def _to_float(text):
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def _format_real(v):
    if isinstance(v, Fraction):
        return str(v)
    return repr(v)


def format_scalar(s):
    """Print a scalar so that parse_scalar round-trips it (lossless when exact)."""
    if s.im == 0:
        return _format_real(s.re)
    im = _format_real(s.im)
    if not im.startswith("-"):
        im = "+" + im
    if s.re == 0:
        return im.lstrip("+") + "i" if not im.startswith("-") else im + "i"
    return _format_real(s.re) + im + "i"
