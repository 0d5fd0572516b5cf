"""
Monic integer annihilators of surgery torsion values.

H(x, s, t) = x*D - N is eliminated against phi (in t) and then S (in s).
The squarefree factors of the resulting A(x) are matched against the
numeric torsion values and split exactly along their irreducible factors
over Z; the product of the matching parts is the annihilator, which must be
monic for the values to be algebraic integers.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import mpmath as mp

from config.settings import CERTIFICATE_RESIDUAL_TOL, DEFAULT_PRECISION, FACTOR_MATCH_TOL
from src.algebra.poly import MultiPoly, reduce_modulo
from src.algebra.unipoly import UniPoly, squarefree_decompose
from src.errors import NotExactError, VerificationError
from src.extraction.schema import AnnihilatorCertificate, FactorMatch
from src.numerics.roots import roots, unipoly_residual
from src.representations.riley import TwistKnotFamily
from src.surgery.slope import SurgerySlope
from src.surgery.system import (
    Representation,
    eliminate,
    solution_points,
    solve_representations,
    surgery_system,
    torsion_expression,
)

logger = logging.getLogger(__name__)

X = MultiPoly.var("x")


def torsion_eliminant(family: TwistKnotFamily, slope: SurgerySlope) -> UniPoly:
    """A(x) = res_s(res_t(x*D - N, phi), S)."""
    system = surgery_system(family, slope)
    if system.S.degree < 1:
        raise VerificationError(f"{system.label}: S(s) is constant, nothing to eliminate")
    numerator, denominator = torsion_expression(family, slope)
    h, _ = reduce_modulo(X * denominator - numerator, system.phi, "t").clear_laurent("s")
    r, _ = eliminate(h, system.phi, "t").clear_laurent("s")
    logger.debug(f"{system.label}: R(x, s) of degrees x {r.degree('x')}, s {r.degree('s')}")
    a = eliminate(r, system.S.to_multipoly(), "s")
    if a.is_zero():
        raise VerificationError(f"{system.label}: torsion eliminant vanishes identically")
    out = a.to_unipoly("x")
    logger.info(f"{system.label}: torsion eliminant of degree {out.degree}")
    return out


def vanishes_at(f: UniPoly, tau, tol: float = FACTOR_MATCH_TOL) -> bool:
    """|f(tau)| < tol * (1 + |tau|)^deg f."""
    return abs(f(tau)) < tol * (1 + abs(tau)) ** f.degree


def torsion_part(factor: UniPoly, taus: Sequence, precision: int) -> Tuple[UniPoly, Optional[str], bool]:
    """The exact divisor of factor whose roots are torsion values.

    Returns (part, note, exact). factor is split along its irreducible factors
    over Z; an irreducible factor with only some of its roots among the torsion
    values admits no exact split, and then the whole factor comes back with
    exact=False.
    """

    def is_torsion(z) -> bool:
        return any(abs(z - tau) < FACTOR_MATCH_TOL * (1 + abs(tau)) for tau in taus)

    if all(is_torsion(r.value) for r in roots(factor, precision)):
        return factor, None, True
    part = UniPoly([1], factor.var)
    for g, _ in factor.irreducible_factors():
        hits = [is_torsion(r.value) for r in roots(g, precision)]
        if all(hits):
            part = part * g
        elif any(hits):
            return factor, f"irreducible factor {g} has roots that are not torsion values", False
    if part.degree < 1:
        return factor, f"no irreducible factor of degree-{factor.degree} factor {factor} is made of torsion values", False
    return part, f"split a degree-{part.degree} part off a degree-{factor.degree} factor", True


def torsion_annihilator(
    family: TwistKnotFamily,
    slope: SurgerySlope,
    precision: int = DEFAULT_PRECISION,
    cross_check: bool = False,
    reps: Optional[List[Representation]] = None,
) -> AnnihilatorCertificate:
    system = surgery_system(family, slope)
    reps = reps if reps is not None else solve_representations(family, slope, precision, cross_check)
    acyclic = [r for r in reps if r.acyclic]
    eliminant = torsion_eliminant(family, slope)
    notes: List[str] = []
    matches: List[FactorMatch] = []
    product = UniPoly([1], "x")
    covered = set()
    inexact = 0
    with mp.workprec(precision + 32):
        taus = [r.tau for r in acyclic]
        for factor, mult in squarefree_decompose(eliminant):
            matched = [i for i, tau in enumerate(taus) if vanishes_at(factor, tau)]
            if not matched:
                continue
            part, note, exact = torsion_part(factor, [taus[i] for i in matched], precision)
            if note:
                notes.append(note)
            if not exact:
                inexact += 1
            product = product * part
            covered.update(matched)
            matches.append(FactorMatch(factor=str(part), multiplicity=mult, degree=part.degree, matched=matched))
            logger.info(f"{system.label}: factor of degree {part.degree} (multiplicity {mult}) matches {len(matched)} values")
        if not matches and acyclic:
            raise VerificationError(f"{system.label}: no factor of the eliminant vanishes at a torsion value")
        if len(covered) < len(acyclic):
            notes.append(f"{len(acyclic) - len(covered)} torsion values matched no factor")
        product = product.primitive()
        residual = max((unipoly_residual(product, tau) for tau in taus), default=0.0)

    monic = product.lead == 1
    try:
        eliminant.exact_div(product)
        divides = True
    except NotExactError:
        divides = False
    verified = (
        monic
        and divides
        and not inexact
        and len(covered) == len(acyclic)
        and residual < CERTIFICATE_RESIDUAL_TOL
    )
    if not monic:
        logger.warning(f"{system.label}: matched product has leading coefficient {product.lead}; not certified")
    logger.info(f"{system.label}: annihilator of degree {product.degree}, verified={verified}")
    return AnnihilatorCertificate(
        subject=system.family.label,
        slope=str(slope),
        continuation=list(slope.continuation),
        annihilator=str(product),
        leading_coefficient=str(product.lead),
        monic=monic,
        verified=verified,
        eliminant_degree=eliminant.degree,
        divides_eliminant=divides,
        factors=matches,
        removed_factors=list(system.removed),
        witnesses=solution_points(reps),
        max_witness_residual=residual,
        notes=notes,
        riley=str(system.phi),
        s_eliminant=str(system.S),
    )
