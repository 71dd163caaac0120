"""Exact rational scalars: Fraction re-export plus thresholds with infinities.

All solver arithmetic runs on `fractions.Fraction`; infinities appear only in
threshold boxes, never in edge weights or computed values.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def rational(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" into a reduced Fraction."""
    text = text.strip()
    try:
        if "/" in text:
            num, _, den = text.partition("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p" or reduced "p/q" (never a decimal)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class ExtRational:
    """A rational extended with +inf / -inf, for threshold boxes only.

    Comparisons implement -inf < q < +inf for every finite q.
    """

    __slots__ = ("tag", "value")

    POS = "+inf"
    NEG = "-inf"
    FIN = "finite"

    def __init__(self, value: Fraction | int | None = None, tag: str = FIN):
        if tag == self.FIN:
            if value is None:
                raise ValueError("finite ExtRational needs a value")
            self.value = Fraction(value)
        else:
            if tag not in (self.POS, self.NEG):
                raise ValueError(f"bad tag {tag!r}")
            self.value = None
        self.tag = tag

    @classmethod
    def pos_inf(cls) -> "ExtRational":
        return cls(tag=cls.POS)

    @classmethod
    def neg_inf(cls) -> "ExtRational":
        return cls(tag=cls.NEG)

    @classmethod
    def parse(cls, text: str) -> "ExtRational":
        text = text.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return cls.pos_inf()
        if text in ("-inf", "-infinity"):
            return cls.neg_inf()
        return cls(rational(text))

    @property
    def is_finite(self) -> bool:
        return self.tag == self.FIN

    def _key(self):
        if self.tag == self.NEG:
            return (0, 0)
        if self.tag == self.FIN:
            return (1, self.value)
        return (2, 0)

    def __eq__(self, other):
        other = _coerce(other)
        return self._key() == other._key()

    def __lt__(self, other):
        other = _coerce(other)
        a, b = self._key(), other._key()
        if a[0] != b[0]:
            return a[0] < b[0]
        return a[0] == 1 and a[1] < b[1]

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ExtRational({self})"

    def __str__(self):
        if self.tag == self.POS:
            return "inf"
        if self.tag == self.NEG:
            return "-inf"
        return format_rational(self.value)


def _coerce(x) -> ExtRational:
    if isinstance(x, ExtRational):
        return x
    return ExtRational(Fraction(x))
