"""Exact Gaussian-rational scalars.

A GaussianRational is a complex number a + b*i with a, b rational, stored as
two ``fractions.Fraction`` values.  All field operations are exact; equality
is decidable.  These are the only scalars used anywhere in the package: no
floating point number ever enters a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "GaussianRational"]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """a + b*i with exact rational a, b."""

    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(value: ScalarLike) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: ScalarLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: ScalarLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __mul__(self, other: ScalarLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        if self.im == 0 and o.im == 0:
            return GaussianRational(self.re * o.re)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: ScalarLike) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(Fraction(other))
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    # -- structure ----------------------------------------------------

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|x|^2 = x * conj(x), an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def real_or_raise(self) -> Fraction:
        if self.im != 0:
            raise ValueError(f"expected a real value, got {self}")
        return self.re

    def sign(self) -> int:
        """Sign of a real value: -1, 0 or 1.  Raises on nonreal input."""
        r = self.real_or_raise()
        return (r > 0) - (r < 0)

    # -- formatting ---------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
HALF_I = GaussianRational(0, Fraction(1, 2))
TWO_I = GaussianRational(0, 2)


def format_scalar(x: GaussianRational) -> str:
    """Serialize as "a/b", "c/d*i" or "a/b+c/d*i" (never floats).

    The output is stable and parses back to the same value with
    ``parse_scalar``.
    """
    if x.im == 0:
        return str(x.re)
    if x.im == 1:
        im = "i"
    elif x.im == -1:
        im = "-i"
    else:
        im = f"{x.im}*i"
    if x.re == 0:
        return im
    sep = "+" if x.im > 0 else ""
    return f"{x.re}{sep}{im}"


def parse_scalar(text: str) -> GaussianRational:
    """Parse the serialization produced by ``format_scalar``.

    Accepts "a/b", "a/b+c/d*i", "a/b-c/d*i", "i", "-i", "c/d*i".
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    # Split into a real and an imaginary piece at the last +/- that is a
    # top-level separator (no parentheses in this grammar).
    if s.endswith("i"):
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # find the split point: a sign that is not the leading character
        split = -1
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/*":
                split = k
                break
        if split == -1:
            re_part, im_part = "0", body if body not in ("", "+", "-") else body + "1"
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return GaussianRational(Fraction(re_part), Fraction(im_part))
    return GaussianRational(Fraction(s))
