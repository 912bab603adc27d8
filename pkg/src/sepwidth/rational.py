"""Exact rationals at the text boundary: always ``"num/den"``, never decimals."""

from fractions import Fraction
import re

from .errors import ParseError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text):
    """Parse ``"p/q"`` or an integer literal into a Fraction.

    Decimal notation is rejected on purpose so that no binary floating point
    value ever enters a computation.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL.match(str(text))
    if m is None:
        raise ParseError(f"not an exact rational (use p/q): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
