"""
Exact integrality certificates for surgeries on twist knots, and the
Perron test for the dominant torsion value.
"""

import logging
from dataclasses import dataclass

import mpmath as mp

from config.settings import DEFAULT_PRECISION, PERRON_MARGIN
from src.algebra.poly import MultiPoly
from src.algebra.unipoly import UniPoly, squarefree_decompose
from src.apoly.apoly import L, a_polynomial, meridian_one
from src.apoly.lemmas import monic_slope_poly
from src.errors import ConvergenceError, InternalConsistencyError, NotExactError, PreconditionError
from src.extraction.schema import CheckResult, ComplexValue, PerronReport, VerificationReport
from src.numerics.roots import bracket_real_root, roots
from src.representations.riley import TwistKnotFamily, riley_polynomial
from src.resultants.algebraic import reverse_poly, shift_invert
from src.resultants.resultant import resultant

logger = logging.getLogger(__name__)

X, S = MultiPoly.var("x"), MultiPoly.var("s")


def _figure_eight() -> MultiPoly:
    return meridian_one(a_polynomial(-1).poly)


# ──────────────────────────────────────────────────────────────
# Integer surgeries on the figure-eight knot
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class IntegerSurgeryEliminant:
    p: int
    h: UniPoly
    divisor: UniPoly
    quotient: UniPoly

    def report(self) -> VerificationReport:
        checks = [
            CheckResult(label="leading coefficient is ±16", passed=abs(self.h.lead) == 16, detail=str(self.h.lead)),
            CheckResult(label=f"{self.divisor} divides h", passed=True, quotient=str(self.quotient)),
            CheckResult(label="quotient is monic", passed=self.quotient.is_monic()),
        ]
        return VerificationReport.from_checks(
            "integer-surgery-eliminant", f"S^3_{self.p}(4_1)", checks, h=str(self.h)
        )


def integer_surgery_eliminant(p: int) -> IntegerSurgeryEliminant:
    """h(x) = res_s(x(s-1)^2 - 2(s^2-s+1), A(s^-p, s)) divided by 4(2x-3)^2 (p odd) or 16 (p even)."""
    if p == 0:
        raise PreconditionError("0-surgery is not covered; p must be nonzero")
    _, g = _figure_eight().substitute({"L": S ** -p, "M": S}).split_monomial()
    torsion_relation = X * (S - 1) ** 2 - 2 * (S ** 2 - S + 1)
    h = resultant(torsion_relation, g, "s").to_unipoly("x")
    if abs(h.lead) != 16:
        raise InternalConsistencyError(f"p={p}: leading coefficient of h is {h.lead}, expected ±16")
    if h.lead < 0:
        h = -h
    divisor = UniPoly([36, -48, 16], "x") if p % 2 else UniPoly([16], "x")
    try:
        quotient = h.exact_div(divisor)
    except NotExactError as exc:
        raise InternalConsistencyError(f"p={p}: {divisor} does not divide h") from exc
    if not quotient.is_monic():
        raise InternalConsistencyError(f"p={p}: h / ({divisor}) is not monic")
    logger.info(f"S^3_{p}(4_1): h of degree {h.degree}, monic quotient of degree {quotient.degree}")
    return IntegerSurgeryEliminant(p, h, divisor, quotient)


def one_over_q_certificate(q: int) -> VerificationReport:
    """f(L) = A(L, L^-q) = (L+1)^2 h(L) with f(1) = 4, h(1) = 1, and (L0 - 1)^-1 integral."""
    if q == 0:
        raise PreconditionError("q must be nonzero")
    _, f_multi = _figure_eight().substitute({"M": L ** -q}).split_monomial()
    f = f_multi.to_unipoly("L")
    checks = [
        CheckResult(label="f(-1) = 0", passed=f(-1) == 0),
        CheckResult(label="f'(-1) = 0", passed=f.derivative()(-1) == 0),
        CheckResult(label="f(1) = 4", passed=f(1) == 4, detail=str(f(1))),
    ]
    square = UniPoly([1, 2, 1], "L")
    try:
        h = f.exact_div(square)
    except NotExactError as exc:
        raise InternalConsistencyError(f"q={q}: (L+1)^2 does not divide f") from exc
    checks.append(CheckResult(label="f = (L+1)^2 h", passed=True, quotient=str(h)))
    checks.append(CheckResult(label="h(1) = 1", passed=h(1) == 1, detail=str(h(1))))
    failed = [c.label for c in checks if not c.passed]
    if failed:
        raise InternalConsistencyError(f"q={q}: {', '.join(failed)}")
    inverted = shift_invert(h if h.lead > 0 else -h)
    checks.append(CheckResult(label="(L0 - 1)^-1 is an algebraic integer", passed=inverted.is_monic(), quotient=str(inverted)))
    return VerificationReport.from_checks(
        "one-over-q", f"S^3_(1/{q})(4_1)", checks, f=str(f), h=str(h), shift_inverted=str(inverted)
    )


def integrality_chain(m: int, q: int) -> VerificationReport:
    """s0, 1/s0, t0 and (s0 - 1)^-1 integral for slope 1/q (q odd) on J(2,2m)."""
    if q % 2 == 0:
        raise PreconditionError("the integrality chain needs odd q")
    slope_poly = monic_slope_poly(m, q)
    f = slope_poly.f
    phi = riley_polynomial(TwistKnotFamily(m))
    t_lead = phi.leading_coefficient("t")
    inverse = reverse_poly(f)
    inverse = inverse if inverse.lead > 0 else -inverse
    checks = [
        CheckResult(label="s0 is an algebraic integer", passed=f.is_monic(), quotient=str(f)),
        CheckResult(label="1/s0 is an algebraic integer", passed=inverse.is_monic(), quotient=str(inverse)),
        CheckResult(label="t0 is integral over Z[s0, 1/s0]", passed=t_lead.is_unit(), detail=f"lead_t phi = {t_lead}"),
    ]
    try:
        shifted = shift_invert(f)
        checks.append(CheckResult(label="(s0 - 1)^-1 is an algebraic integer", passed=True, quotient=str(shifted)))
    except PreconditionError as exc:
        checks.append(CheckResult(label="(s0 - 1)^-1 is an algebraic integer", passed=False, detail=str(exc)))
    return VerificationReport.from_checks(
        "integrality-chain", f"J(2,{2 * m}) slope 1/{q}", checks, f_at_1=slope_poly.f_at_one
    )


# ──────────────────────────────────────────────────────────────
# Perron numbers
# ──────────────────────────────────────────────────────────────
def perron_check(poly: UniPoly, precision: int = DEFAULT_PRECISION) -> PerronReport:
    """Dominant root real, simple, > 1 and larger than every conjugate by PERRON_MARGIN."""
    if poly.degree < 1 or not poly.is_integral():
        raise PreconditionError("perron_check needs a nonconstant integer polynomial")
    repeated = {g for g, mult in squarefree_decompose(poly) if mult > 1}
    with mp.workprec(precision + 32):
        found = sorted(roots(poly, precision), key=lambda r: abs(r.value), reverse=True)
        worst = max(r.residual for r in found)
        if worst > 2.0 ** (-precision // 4):
            raise ConvergenceError(f"roots of {poly} not resolved at {precision} bits", residual=worst)
        top = found[0]
        second = abs(found[1].value) if len(found) > 1 else mp.mpf(0)
        modulus = abs(top.value)
        simple = not any(abs(g(top.value)) < 2.0 ** (-precision // 4) for g in repeated)
        is_real = top.is_real(2.0 ** (-precision // 4))
        is_perron = bool(is_real and simple and modulus > 1 and second < modulus * (1 - PERRON_MARGIN))
    bracket = None
    if is_real:
        n = int(mp.floor(top.re))
        if bracket_real_root(poly, n, n + 1) is not None:
            bracket = [n, n + 1]
    logger.info(f"perron check: dominant root {mp.nstr(top.value, 10)}, perron={is_perron}")
    return PerronReport(
        polynomial=str(poly),
        is_perron=is_perron,
        dominant_root=ComplexValue.from_number(top.value),
        second_modulus=float(second),
        bracket=bracket,
        precision=precision,
    )
