"""Exact linear forms over logarithms of primes.

Values arising here are rational combinations of log2(p) for small primes p
(log2(2) = 1 folds into the rational part).  Two such forms are equal iff
their coefficient vectors coincide, so equality needs no tolerance.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

_MP_DPS = 60


def _factor(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class LogLinear:
    """rational + sum of coeff * log2(p) over odd primes p."""

    __slots__ = ("rational", "coeffs")

    def __init__(self, rational=0, coeffs: dict[int, Fraction] | None = None):
        self.rational = Fraction(rational)
        self.coeffs = {p: Fraction(c) for p, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def log2(cls, n: int, weight=1) -> "LogLinear":
        """weight * log2(n) for a positive integer n."""
        w = Fraction(weight)
        if n == 1 or w == 0:
            return cls()
        rational = Fraction(0)
        coeffs: dict[int, Fraction] = {}
        for p, e in _factor(n).items():
            if p == 2:
                rational += w * e
            else:
                coeffs[p] = coeffs.get(p, Fraction(0)) + w * e
        return cls(rational, coeffs)

    def __add__(self, other: "LogLinear") -> "LogLinear":
        coeffs = dict(self.coeffs)
        for p, c in other.coeffs.items():
            coeffs[p] = coeffs.get(p, Fraction(0)) + c
        return LogLinear(self.rational + other.rational, coeffs)

    def __sub__(self, other: "LogLinear") -> "LogLinear":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "LogLinear":
        f = Fraction(factor)
        return LogLinear(self.rational * f, {p: c * f for p, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogLinear):
            return NotImplemented
        return self.rational == other.rational and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rational, tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return self.rational == 0 and not self.coeffs

    def __float__(self) -> float:
        import math

        return float(self.rational) + sum(float(c) * math.log2(p) for p, c in self.coeffs.items())

    def mpf(self) -> mpmath.mpf:
        with mpmath.workdps(_MP_DPS):
            val = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            for p, c in self.coeffs.items():
                val += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(p, 2)
            return val

    def __lt__(self, other: "LogLinear") -> bool:
        if self == other:
            return False
        diff = float(self) - float(other)
        if abs(diff) > 1e-9:
            return diff < 0
        # near-tie between distinct forms: decide at high precision
        return self.mpf() < other.mpf()

    def __le__(self, other: "LogLinear") -> bool:
        return self == other or self < other

    def symbolic(self) -> str:
        """e.g. '1/4 + 1/2·log2(3)'."""
        parts = []
        if self.rational != 0 or not self.coeffs:
            parts.append(str(self.rational))
        for p in sorted(self.coeffs):
            c = self.coeffs[p]
            term = f"log2({p})" if c == 1 else f"{c}·log2({p})"
            parts.append(term)
        return " + ".join(parts)

    def __repr__(self):
        return f"LogLinear({self.symbolic()})"
