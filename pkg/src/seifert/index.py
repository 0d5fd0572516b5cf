"""
Seifert indices {b, (o, g), (a_1, b_1), ..., (a_m, b_m)} and the admissible
(k_1, ..., k_m) tuples labelling their SL(2, C) characters.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, List, Sequence, Tuple

from src.errors import ParseError, PreconditionError, VerificationError
from src.surgery.slope import extended_gcd

logger = logging.getLogger(__name__)

_PAIR_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def bezout_pair(a: int, b: int) -> Tuple[int, int]:
    """(r, s) with a s - b r = -1 and s odd."""
    g, x, y = extended_gcd(a, b)
    if abs(g) != 1:
        raise PreconditionError(f"({a},{b}) is not a coprime pair")
    # a x + b y = g
    s, r = -x * g, y * g
    if s % 2 == 0:
        r, s = r + a, s + b
    if a * s - b * r != -1:
        raise VerificationError(f"Bezout pair for ({a},{b}) failed")
    return r, s


@dataclass(frozen=True)
class SeifertIndex:
    b: int
    g: int
    pairs: Tuple[Tuple[int, int], ...]
    rs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.g < 0:
            raise PreconditionError("genus must be nonnegative")
        for a, bi in self.pairs:
            if a < 1 or gcd(a, bi) != 1:
                raise PreconditionError(f"({a},{bi}) must be a coprime pair with a >= 1")
        if not self.rs:
            object.__setattr__(self, "rs", tuple(bezout_pair(a, bi) for a, bi in self.pairs))
        for (a, bi), (r, s) in zip(self.pairs, self.rs):
            if a * s - bi * r != -1:
                raise VerificationError(f"({r},{s}) does not satisfy {a}*s - {bi}*r = -1")

    @classmethod
    def parse(cls, text: str) -> "SeifertIndex":
        """``b;g;(a1,b1),(a2,b2),...``"""
        parts = text.split(";")
        if len(parts) != 3:
            raise ParseError(f"malformed Seifert index {text!r}; expected b;g;(a1,b1),...")
        try:
            b, g = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"malformed Seifert index {text!r}") from exc
        pairs = tuple((int(x), int(y)) for x, y in _PAIR_RE.findall(parts[2]))
        if not pairs or _PAIR_RE.sub("", parts[2]).replace(",", "").strip():
            raise ParseError(f"malformed fiber list {parts[2]!r}")
        return cls(b, g, pairs)

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def m_odd(self) -> int:
        return sum(1 for a, _ in self.pairs if a % 2)

    @property
    def orders(self) -> List[int]:
        return [a for a, _ in self.pairs]

    def euler_number(self) -> Fraction:
        return -self.b + sum(Fraction(bi, a) for a, bi in self.pairs)

    def shifted(self, i: int) -> "SeifertIndex":
        """The same index with the alternative pair (r_i + a_i, s_i + b_i)."""
        rs = list(self.rs)
        a, bi = self.pairs[i]
        r, s = rs[i]
        rs[i] = (r + a, s + bi)
        return SeifertIndex(self.b, self.g, self.pairs, tuple(rs))

    def __str__(self) -> str:
        fibers = ",".join(f"({a},{bi})" for a, bi in self.pairs)
        return f"{self.b};{self.g};{fibers}"


@dataclass(frozen=True)
class SeifertTuple:
    k: Tuple[int, ...]

    def validate(self, index: SeifertIndex) -> None:
        if len(self.k) != index.m:
            raise PreconditionError(f"tuple {self.k} has {len(self.k)} entries for {index.m} fibers")
        for ki, (a, bi) in zip(self.k, index.pairs):
            if not 0 <= ki <= a or (ki - bi) % 2:
                raise PreconditionError(f"k={ki} violates 0 <= k <= {a}, k = {bi} mod 2")


def admissible_tuples(index: SeifertIndex, interior: bool = True) -> Iterator[SeifertTuple]:
    """All parity-admissible tuples in lex order; interior keeps 0 < k_i < a_i."""
    ranges = []
    for a, bi in index.pairs:
        lo, hi = (1, a - 1) if interior else (0, a)
        ranges.append([k for k in range(lo, hi + 1) if (k - bi) % 2 == 0])
    for k in itertools.product(*ranges):
        yield SeifertTuple(tuple(k))


def brieskorn_index(orders: Sequence[int]) -> SeifertIndex:
    """Seifert index of the Brieskorn sphere with pairwise coprime orders, e * prod(a) = 1."""
    orders = list(orders)
    for x, y in itertools.combinations(orders, 2):
        if gcd(x, y) != 1:
            raise PreconditionError(f"Brieskorn orders {orders} are not pairwise coprime")
    total = prod(orders)
    pairs = []
    for a in orders:
        cofactor = total // a
        pairs.append((a, pow(cofactor, -1, a) if a > 1 else 0))
    b, rem = divmod(sum(bi * (total // a) for a, bi in pairs) - 1, total)
    if rem:
        raise VerificationError(f"CRT for {orders} left remainder {rem}")
    index = SeifertIndex(b, 0, tuple(pairs))
    if index.euler_number() * total not in (1, -1):
        raise VerificationError(f"Brieskorn index {index} is not a homology sphere")
    logger.debug(f"Sigma{tuple(orders)}: index {index}, pairs (r,s) {index.rs}")
    return index
