"""
Common zeros of f_C(L, M) and A_K(M, L) away from (±1, ±1).
"""

import logging
from typing import List, Optional

import mpmath as mp

from config.settings import DEFAULT_PRECISION, SPLICE_RESIDUAL_TOL, SPLICE_TRIVIAL_TOL
from src.algebra.poly import MultiPoly
from src.algebra.unipoly import squarefree_part
from src.apoly.apoly import APoly
from src.errors import VerificationError
from src.extraction.schema import ComplexValue, SpliceReport, SpliceWitness
from src.numerics.roots import back_substitute, newton_polish_2d, relative_residual, roots
from src.representations.catalog import KnotCatalog
from src.resultants.resultant import resultant

logger = logging.getLogger(__name__)

L, M = MultiPoly.var("L"), MultiPoly.var("M")


def swapped(a: MultiPoly) -> MultiPoly:
    """A(M, L): the roles of L and M exchanged."""
    return a.substitute({"L": M, "M": L})


def elimination_variable(f: MultiPoly, g: MultiPoly) -> str:
    """Variable whose Sylvester matrix is smaller; L on ties."""
    size_l = f.degree("L") + g.degree("L")
    size_m = f.degree("M") + g.degree("M")
    return "L" if size_l <= size_m else "M"


def _is_trivial(l0, m0, tol: float = SPLICE_TRIVIAL_TOL) -> bool:
    return all(min(abs(z - 1), abs(z + 1)) < tol for z in (l0, m0))


def splice_condition_check(
    a: APoly, f_c: Optional[MultiPoly] = None, precision: int = DEFAULT_PRECISION
) -> SpliceReport:
    f_c = f_c if f_c is not None else KnotCatalog().polynomial("splice_f_c")
    subject = f"J(2,{2 * a.m})" if a.m else "unknot"
    g = swapped(a.poly)
    if g.is_constant():
        logger.info(f"{subject}: A is a unit, no common zeros")
        return SpliceReport(subject=subject, satisfied=False, eliminated="-", eliminant_degree=0)
    var = elimination_variable(f_c, g)
    other = "M" if var == "L" else "L"
    res = resultant(f_c, g, var)
    if res.is_zero():
        raise VerificationError(f"{subject}: f_C and A share a factor; the resultant vanishes")
    _, core = res.split_monomial()
    eliminant = squarefree_part(core.to_unipoly(other))
    logger.info(f"{subject}: eliminated {var}, eliminant of degree {eliminant.degree} in {other}")

    witnesses: List[SpliceWitness] = []
    if eliminant.degree > 0:
        with mp.workprec(precision + 32):
            for root in roots(eliminant, precision):
                z = root.value
                if abs(z) < SPLICE_RESIDUAL_TOL:
                    continue
                for cand in back_substitute(f_c, z, precision, s_var=other, t_var=var):
                    point = {other: z, var: cand.value}
                    if relative_residual(g, point) > SPLICE_RESIDUAL_TOL:
                        continue
                    point, residual = newton_polish_2d(f_c, g, point, precision)
                    l0, m0 = point["L"], point["M"]
                    if abs(l0) < SPLICE_RESIDUAL_TOL or abs(m0) < SPLICE_RESIDUAL_TOL or _is_trivial(l0, m0):
                        continue
                    witnesses.append(SpliceWitness(
                        L=ComplexValue.from_number(l0), M=ComplexValue.from_number(m0), residual=residual
                    ))
    satisfied = bool(witnesses)
    logger.info(f"{subject}: splice condition {'satisfied' if satisfied else 'not satisfied'} ({len(witnesses)} witnesses)")
    return SpliceReport(
        subject=subject,
        satisfied=satisfied,
        eliminated=var,
        eliminant_degree=eliminant.degree,
        witnesses=witnesses,
    )
