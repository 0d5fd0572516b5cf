"""
UniPoly: univariate polynomials over Z (or Q) with gcd and squarefree tools.

Coefficients are kept as a constant-first tuple of ints and Fractions; the
ring operations are carried out by sympy ``Poly`` over ZZ or QQ.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from sympy import Poly, Rational, Symbol
from sympy.polys.domains import QQ, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed

from src.errors import NotExactError, PreconditionError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def _normalize_number(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _to_sympy(c: Number):
    if isinstance(c, Fraction):
        return Rational(c.numerator, c.denominator)
    return int(c)


def _from_sympy(c) -> Number:
    if c.is_Integer:
        return int(c)
    return Fraction(int(c.p), int(c.q))


class UniPoly:
    """Immutable polynomial sum coeffs[i] * var^i, constant term first."""

    __slots__ = ("coeffs", "var", "_poly")

    def __init__(self, coeffs: Sequence[Number] = (), var: str = "x"):
        cs = [_normalize_number(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "_poly", None)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def constant(cls, c: Number, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def from_roots_int(cls, roots: Sequence[int], var: str = "x") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    @classmethod
    def from_poly(cls, poly: Poly, var: str) -> "UniPoly":
        return cls([_from_sympy(c) for c in reversed(poly.all_coeffs())], var)

    def as_poly(self, var: str = None) -> Poly:
        """The sympy Poly in ``var`` (default: own variable) over ZZ or QQ."""
        if var is not None and var != self.var:
            return self._build_poly(var)
        if self._poly is None:
            object.__setattr__(self, "_poly", self._build_poly(self.var))
        return self._poly

    def _build_poly(self, var: str) -> Poly:
        domain = ZZ if self.is_integral() else QQ
        return Poly.from_list([_to_sympy(c) for c in reversed(self.coeffs)], Symbol(var), domain=domain)

    def _wrap_poly(self, poly: Poly) -> "UniPoly":
        return UniPoly.from_poly(poly, self.var)

    # ── queries ──────────────────────────────────────────────
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_monic_up_to_sign(self) -> bool:
        return bool(self.coeffs) and abs(self.coeffs[-1]) == 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UniPoly([other], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # ── arithmetic ───────────────────────────────────────────
    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._wrap(other)
        return self._wrap_poly(self.as_poly() + other.as_poly(self.var))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UniPoly":
        other = self._wrap(other)
        return self._wrap_poly(self.as_poly() - other.as_poly(self.var))

    def __rsub__(self, other) -> "UniPoly":
        return self._wrap(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._wrap(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        return self._wrap_poly(self.as_poly() * other.as_poly(self.var))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise PreconditionError("negative power of a univariate polynomial")
        return self._wrap_poly(self.as_poly() ** n)

    def scale(self, k: Number) -> "UniPoly":
        return self * UniPoly([k], self.var)

    def shift_var(self, k: int) -> "UniPoly":
        """Multiply by var^k (k >= 0)."""
        return UniPoly([0] * k + list(self.coeffs), self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return self._wrap_poly(self.as_poly().diff())

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner); the result is in inner's variable."""
        if self.is_zero():
            return UniPoly([], inner.var)
        return UniPoly.from_poly(self.as_poly(inner.var).compose(inner.as_poly()), inner.var)

    def taylor_shift(self, a: int) -> "UniPoly":
        """f(x + a)."""
        if self.is_zero():
            return self
        return self._wrap_poly(self.as_poly().shift(a))

    def reverse(self) -> "UniPoly":
        return UniPoly(list(reversed(self.coeffs)), self.var)

    def substitute_scaled(self, k: int) -> "UniPoly":
        """f(k*x)."""
        return self.compose(UniPoly([0, k], self.var))

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    # ── content ──────────────────────────────────────────────
    def content(self) -> Number:
        """gcd of the coefficients; over Q this is gcd(numerators)/lcm(denominators)."""
        if not self.coeffs:
            return 0
        return _from_sympy(self.as_poly().content())

    def primitive(self) -> "UniPoly":
        """Primitive integer polynomial with positive leading coefficient."""
        if not self.coeffs:
            return self
        poly = self.as_poly()
        if not self.is_integral():
            _, poly = poly.clear_denoms(convert=True)
        _, prim = poly.primitive()
        if prim.LC() < 0:
            prim = -prim
        return self._wrap_poly(prim)

    def irreducible_factors(self) -> List[Tuple["UniPoly", int]]:
        """Irreducible factors over Z as primitive polynomials, with multiplicities; the content is dropped."""
        _, factors = self.as_poly().factor_list()
        return [(self._wrap_poly(g).primitive(), k) for g, k in factors if g.degree() > 0]

    def monic(self) -> "UniPoly":
        return self._wrap_poly(self.as_poly().monic())

    def clear_denominators(self) -> Tuple["UniPoly", int]:
        if self.is_integral():
            return self, 1
        den, poly = self.as_poly().clear_denoms(convert=True)
        return self._wrap_poly(poly), int(den)

    # ── division ─────────────────────────────────────────────
    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Division over Q; integral when the divisor is monic up to sign."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.degree < other.degree:
            return UniPoly([], self.var), self
        q, r = self.as_poly().div(other.as_poly(self.var))
        return self._wrap_poly(q), self._wrap_poly(r)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: Union["UniPoly", int]) -> "UniPoly":
        """Quotient with zero remainder; integral inputs must give an integral quotient."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            if self.is_zero():
                return self
            try:
                return self._wrap_poly(self.as_poly().exquo_ground(other))
            except ExactQuotientFailed:
                raise NotExactError(f"({self}) is not divisible by {other}") from None
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        try:
            q = self._wrap_poly(self.as_poly().exquo(other.as_poly(self.var)))
        except ExactQuotientFailed:
            r = self % other
            raise NotExactError(f"({self}) is not divisible by ({other})", remainder_lead=str(r.lead)) from None
        if self.is_integral() and other.is_integral() and not q.is_integral():
            raise NotExactError(f"({self}) / ({other}) is not integral")
        return q

    def prem(self, other: "UniPoly") -> "UniPoly":
        """Pseudo-remainder: lead(other)^(deg self - deg other + 1) * self mod other."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-division by zero")
        if self.degree < other.degree:
            return self
        return self._wrap_poly(self.as_poly().prem(other.as_poly(self.var)))

    # ── conversion / printing ────────────────────────────────
    def to_multipoly(self):
        from src.algebra.poly import MultiPoly

        if not self.is_integral():
            raise PreconditionError("MultiPoly carries integer coefficients only")
        return MultiPoly((self.var,), {(i,): c for i, c in enumerate(self.coeffs) if c})

    def __str__(self) -> str:
        if not self.is_integral():
            den_poly, den = self.clear_denominators()
            return f"({den_poly})/{den}"
        from src.algebra.poly import format_poly

        return format_poly(self.to_multipoly())

    def __repr__(self) -> str:
        return f"UniPoly({self}, var={self.var!r})"


# ──────────────────────────────────────────────────────────────
# gcd and squarefree decomposition
# ──────────────────────────────────────────────────────────────
def _integral_primitive(p: UniPoly) -> UniPoly:
    if not p.is_integral():
        p = p.clear_denominators()[0]
    return p.primitive()


def gcd_univariate(f: UniPoly, g: UniPoly) -> UniPoly:
    """Primitive gcd over Z with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise PreconditionError("gcd of two zero polynomials")
    if f.is_zero():
        return _integral_primitive(g).rename(f.var)
    if g.is_zero():
        return _integral_primitive(f)
    a, b = _integral_primitive(f), _integral_primitive(g)
    return UniPoly.from_poly(a.as_poly().gcd(b.as_poly(a.var)), f.var).primitive()


def squarefree_decompose(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Squarefree factors with multiplicities; primitive integer polynomials, pairwise coprime."""
    if f.is_zero():
        raise PreconditionError("squarefree decomposition of zero")
    p = _integral_primitive(f)
    if p.degree == 0:
        return []
    _, factors = p.as_poly().sqf_list()
    out = sorted(
        ((UniPoly.from_poly(g, f.var).primitive(), m) for g, m in factors if g.degree() > 0),
        key=lambda fm: fm[1],
    )
    logger.debug(f"squarefree decomposition of degree {p.degree}: multiplicities {[m for _, m in out]}")
    return out


def squarefree_unit(f: UniPoly, factors: List[Tuple[UniPoly, int]]) -> Fraction:
    """The constant u with f = u * prod(factor^mult)."""
    prod = UniPoly([1], f.var)
    for g, m in factors:
        prod = prod * g ** m
    return Fraction(f.lead) / prod.lead


def squarefree_part(f: UniPoly) -> UniPoly:
    p = UniPoly([1], f.var)
    for g, _ in squarefree_decompose(f):
        p = p * g
    return p
