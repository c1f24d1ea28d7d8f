"""Exact rational parsing and serialization.

All costs, penalties, and polynomial coefficients are `fractions.Fraction`
so that binary/Ising equivalence checks are bit-exact.  JSON carries
rationals as plain integers when integral and as "p/q" strings otherwise;
decimal strings like "1.5" are accepted on input.
"""

from fractions import Fraction

from .errors import ValidationError


def parse_rational(value, context="value") -> Fraction:
    """Convert an int, string, float, or Fraction to an exact Fraction.

    Floats are parsed through their shortest decimal repr, so a JSON file
    read with ``parse_float=str`` and a float passed directly give the
    same result.
    """
    if isinstance(value, bool):
        raise ValidationError(f"{context}: expected a number, got a bool")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{context}: bad rational {value!r}") from exc
    raise ValidationError(f"{context}: expected a number, got {type(value).__name__}")


def rational_to_json(value: Fraction):
    """Render a Fraction as an int when integral, else as a "p/q" string."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"
