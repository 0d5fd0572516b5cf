"""
Surgery slopes p/q and their continuations (p', q') with p q' - q p' = 1.
"""

import logging
import re
from dataclasses import dataclass
from math import gcd
from typing import Tuple

from src.errors import ParseError, PreconditionError

logger = logging.getLogger(__name__)

_SLOPE_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a x + b y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


@dataclass(frozen=True)
class SurgerySlope:
    """A closed-surgery slope, stored with q > 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q == 0:
            raise PreconditionError("slope 1/0 is the trivial filling; closed surgeries need q != 0")
        if gcd(self.p, self.q) != 1:
            raise PreconditionError(f"slope {self.p}/{self.q} is not reduced")
        if self.q < 0:
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)

    @classmethod
    def parse(cls, text: str) -> "SurgerySlope":
        match = _SLOPE_RE.match(text)
        if not match:
            raise ParseError(f"malformed slope {text!r}; expected p/q")
        p = int(match.group(1))
        q = int(match.group(2)) if match.group(2) is not None else 1
        return cls(p, q)

    @property
    def continuation(self) -> Tuple[int, int]:
        """(p', q') with p q' - q p' = 1, |p'| minimal, ties broken towards q' >= 0."""
        p, q = self.p, self.q
        if p == 0:
            return -1, 0
        _, a, b = extended_gcd(p, q)
        # p*a + q*b = ±1
        sign = 1 if p * a + q * b == 1 else -1
        p0, q0 = -b * sign, a * sign
        k = -p0 // p
        candidates = [(p0 + j * p, q0 + j * q) for j in (k - 1, k, k + 1, k + 2)]
        best = min(candidates, key=lambda c: (abs(c[0]), c[1] < 0, abs(c[1])))
        if p * best[1] - q * best[0] != 1:
            raise PreconditionError(f"continuation of {self} failed")
        return best

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"
