"""Rendering helpers shared by the report types."""

from __future__ import annotations

from fractions import Fraction


def fmt_rational(x) -> str:
    """Render an exact rational as ``p/q`` in lowest terms, or ``p`` if integral.

    >>> fmt_rational(Fraction(10, 8))
    '5/4'
    """
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def jsonable(obj):
    """Recursively convert Fractions to ``p/q`` strings and tuples to lists."""
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def kv_line(pairs) -> str:
    """One ``key=value`` record; values containing spaces are not allowed."""
    out = []
    for k, v in pairs:
        if isinstance(v, Fraction):
            v = fmt_rational(v)
        elif isinstance(v, bool):
            v = "true" if v else "false"
        elif v is None:
            v = "-"
        out.append(f"{k}={v}")
    return " ".join(out)
