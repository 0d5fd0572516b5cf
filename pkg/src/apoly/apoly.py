"""
A-polynomials of twist knots: elimination from the Riley locus and the
three-term recursion in the twist parameter.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple, Union

from src.algebra.poly import MultiPoly, content_primitive, divide_exact, divides, reduce_modulo
from src.algebra.unipoly import gcd_univariate
from src.errors import VerificationError
from src.representations.riley import (
    TwistKnotFamily,
    longitude_eigenvalue,
    riley_polynomial,
)
from src.representations.catalog import KnotCatalog
from src.resultants.resultant import norm_resultant

logger = logging.getLogger(__name__)

L, M = MultiPoly.var("L"), MultiPoly.var("M")


@lru_cache(maxsize=None)
def recursion_coefficients() -> Tuple[MultiPoly, MultiPoly]:
    """The (x, y) of the three-term recursion, read from the catalog."""
    catalog = KnotCatalog()
    return catalog.polynomial("recursion_x"), catalog.polynomial("recursion_y")


@dataclass(frozen=True)
class APoly:
    poly: MultiPoly
    provenance: str
    m: int
    removed: List[str] = field(default_factory=list)

    @property
    def degree_L(self) -> int:
        return self.poly.degree("L")

    def __str__(self) -> str:
        return str(self.poly)


FamilyLike = Union[TwistKnotFamily, int]


def _twist_m(family: FamilyLike) -> int:
    return family.m if isinstance(family, TwistKnotFamily) else int(family)


def canonical_sign(p: MultiPoly) -> MultiPoly:
    """Sign making the graded-lex leading coefficient positive."""
    if p.is_zero():
        return p
    return -p if p.leading_term()[1] < 0 else p


def meridian_one(p: MultiPoly) -> MultiPoly:
    """Sign making A(L, 1) have positive leading coefficient, i.e. A(L,1) = (L+1)^d."""
    at_one = p.specialize("M", 1) if p.min_degree("M") >= 0 else p.substitute({"M": 1})
    if at_one.is_zero():
        return p
    lead = at_one.leading_coefficient("L") if at_one.vars else at_one
    return -p if lead.constant_value() < 0 else p


def _is_squarefree(p: MultiPoly) -> bool:
    """Squarefree test in L by specialising M; the leading L-coefficient is a unit so degrees survive."""
    if p.degree("L") <= 1:
        return True
    for m0 in (2, 3, 5, 7, 11):
        u = p.specialize("M", m0).to_unipoly("L")
        if u.degree != p.degree("L"):
            continue
        if gcd_univariate(u, u.derivative()).degree == 0:
            return True
    return False


def clean_eliminant(raw: MultiPoly, m: int, provenance: str) -> APoly:
    """Remove content, monomial units and L - 1 factors; canonicalize the sign."""
    if raw.is_zero():
        raise VerificationError(f"J(2,{2 * m}): eliminant vanishes identically; the longitude word is wrong")
    removed: List[str] = []
    content, prim = content_primitive(raw, "L")
    if content != 1 and content != -1:
        removed.append(f"content {content}")
    powers, core = prim.split_monomial()
    unit = {v: k for v, k in powers.items() if k}
    if unit:
        removed.append(f"monomial {MultiPoly.monomial(1, unit)}")
    while core.degree("L") > 0 and divides(L - 1, core):
        core = divide_exact(core, L - 1)
        removed.append("L - 1")
    if not _is_squarefree(core):
        raise VerificationError(f"J(2,{2 * m}): cleaned eliminant is not squarefree in L")
    core = canonical_sign(core)
    for item in removed:
        logger.debug(f"J(2,{2 * m}): removed {item}")
    return APoly(core, provenance, m, removed)


@lru_cache(maxsize=None)
def a_polynomial(m: int) -> APoly:
    """A-polynomial of J(2,2m) from res_t(L - Lambda(M,t), phi(M,t))."""
    if m == 0:
        return APoly(MultiPoly.const(1), "unknot", 0)
    family = TwistKnotFamily(m)
    phi = riley_polynomial(family)
    lam = reduce_modulo(longitude_eigenvalue(family), phi, "t")
    raw = norm_resultant(L - lam, phi, "t").substitute({"s": M})
    logger.debug(f"{family.label}: raw eliminant deg_L {raw.degree('L')}, {len(raw.terms)} terms")
    apoly = clean_eliminant(raw, m, "raw-eliminant")
    logger.info(f"{family.label}: A-polynomial of L-degree {apoly.degree_L}, M-degree {apoly.poly.degree('M')}")
    return apoly


def a_polynomial_of(family: FamilyLike) -> APoly:
    return a_polynomial(_twist_m(family))


@lru_cache(maxsize=None)
def _recursion_term(m: int) -> MultiPoly:
    if m == 0:
        return MultiPoly.const(1)
    if m in (-1, 1, 2):
        return meridian_one(a_polynomial(m).poly)
    x, y = recursion_coefficients()
    if m > 2:
        return x * _recursion_term(m - 1) - y * _recursion_term(m - 2)
    return x * _recursion_term(m + 1) - y * _recursion_term(m + 2)


def hoste_shanahan(m: int) -> APoly:
    """A_m = x A_{m-1} - y A_{m-2} upward from (A_1, A_2); A_m = x A_{m+1} - y A_{m+2} downward from (A_-1, A_0)."""
    if m == 0:
        return APoly(MultiPoly.const(1), "unknot", 0)
    raw = _recursion_term(m)
    apoly = clean_eliminant(raw, m, "recursion")
    if apoly.removed:
        logger.warning(f"J(2,{2 * m}): recursion output needed cleanup: {apoly.removed}")
    return apoly


def same_up_to_unit(a: MultiPoly, b: MultiPoly) -> bool:
    """a = ±monomial * b."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    _, a0 = a.split_monomial()
    _, b0 = b.split_monomial()
    return a0 == b0 or a0 == -b0


def inversion_symmetry(a: APoly) -> bool:
    """A(L,M) and A(1/L,1/M) agree up to a unit and sign."""
    flipped = a.poly.substitute({"L": L ** -1, "M": M ** -1})
    return same_up_to_unit(a.poly, flipped)

