"""
Exact verification of the structural properties of twist-knot A-polynomials:
unit extreme coefficients, unit extremes of res_L(A, M^p L^q - 1), the
divisibility of derivatives at L = -1, and the monic slope polynomial f(s).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from config.settings import SLOPE_Q_VALUES
from src.algebra.poly import MultiPoly, divide_exact
from src.algebra.unipoly import UniPoly
from src.apoly.apoly import APoly, L, M, a_polynomial, inversion_symmetry, meridian_one
from src.apoly.newton import newton_polygon
from src.errors import InternalConsistencyError, NotExactError, PreconditionError, VerificationError
from src.extraction.schema import CheckResult, VerificationReport
from src.representations.riley import twist_degree
from src.resultants.resultant import DivisibilityCertificate, check_derivative_divisibility, resultant

logger = logging.getLogger(__name__)


def _unit_power(c: MultiPoly, var: str = "M"):
    """(sign, k) when c = ±var^k, else None."""
    if not c.is_unit() or any(v != var for v in c.vars):
        return None
    (e, coeff), = c.terms.items()
    return coeff, (e[0] if e else 0)


def verify_unit_extremes(a: APoly) -> VerificationReport:
    checks = []
    data = {}
    for label, coeff in (
        ("leading", a.poly.leading_coefficient("L")),
        ("trailing", a.poly.trailing_coefficient("L")),
    ):
        unit = _unit_power(coeff)
        checks.append(CheckResult(
            label=f"{label} L-coefficient is ±M^k",
            passed=unit is not None,
            detail=str(coeff),
        ))
        if unit is not None:
            data[label] = {"sign": unit[0], "k": unit[1]}
    report = VerificationReport.from_checks("unit-extremes", str(a.poly), checks, **data)
    if not report.verified:
        logger.warning(f"unit extremes fail for {a.poly}")
    return report


def verify_res_extremes(a: APoly, p: int, q: int) -> VerificationReport:
    """Highest and lowest M-coefficients of res_L(A, M^p L^q - 1) are ±1."""
    if p not in (1, -1):
        raise PreconditionError(f"p must be ±1, got {p}")
    if q <= 0:
        raise PreconditionError(f"q must be positive, got {q}; use the (L, M) -> (1/L, 1/M) symmetry")
    g = MultiPoly.monomial(1, {"M": p, "L": q}) - 1
    res = resultant(a.poly, g, "L")
    if res.is_zero():
        raise VerificationError(f"res_L(A, M^{p} L^{q} - 1) vanishes")
    top, low = res.leading_coefficient("M"), res.trailing_coefficient("M")
    checks = [
        CheckResult(label="highest M-coefficient is ±1", passed=top in (1, -1), detail=str(top)),
        CheckResult(label="lowest M-coefficient is ±1", passed=low in (1, -1), detail=str(low)),
    ]
    return VerificationReport.from_checks(
        "res-extremes", f"A(L,M), p={p}, q={q}", checks,
        resultant_degree=[res.min_degree("M"), res.degree("M")],
    )


def verify_diff_divisibility(m: int) -> VerificationReport:
    """(M^2 - 1)^(d - n) divides the n-th scaled L-derivative of A at L = -1, for 0 <= n < d."""
    if m == 0:
        raise PreconditionError("the unknot has no derivative lemma")
    d = twist_degree(m)
    a = meridian_one(a_polynomial(m).poly)
    base = M ** 2 - 1
    checks = []
    for n in range(d):
        at_minus_one = a.scaled_derivative("L", n).substitute({"L": -1})
        try:
            quotient = divide_exact(at_minus_one, base ** (d - n))
            checks.append(CheckResult(
                label=f"n={n}: (M^2-1)^{d - n} divides", passed=True, quotient=str(quotient)
            ))
        except NotExactError as exc:
            checks.append(CheckResult(label=f"n={n}: (M^2-1)^{d - n} divides", passed=False, detail=str(exc)))
    return VerificationReport.from_checks("derivative-divisibility", f"J(2,{2 * m})", checks, d=d)


def verify_newton_slopes(a: APoly) -> VerificationReport:
    polygon = newton_polygon(a.poly)
    checks = [
        CheckResult(
            label=f"side {polygon.vertices[i]} slope {s}",
            passed=s is None or (s.denominator == 1 and s.numerator % 2 == 0),
        )
        for i, s in enumerate(polygon.slopes)
    ]
    return VerificationReport.from_checks(
        "newton-slopes", str(a.poly), checks,
        vertices=[list(v) for v in polygon.vertices], degenerate=polygon.degenerate,
    )


def verify_symmetry(a: APoly) -> VerificationReport:
    ok = inversion_symmetry(a)
    checks = [CheckResult(label="A(L,M) ~ A(1/L,1/M) up to units", passed=ok)]
    return VerificationReport.from_checks("inversion-symmetry", str(a.poly), checks)


@dataclass(frozen=True)
class SlopePolynomial:
    m: int
    p: int
    q: int
    f: UniPoly
    f_at_one: int
    certificate: DivisibilityCertificate


def monic_slope_poly(m: int, q: int, p: int = 1) -> SlopePolynomial:
    """f(s) = res_L(A(L,s), s^p L^q - 1) / (s^p (-1)^q - 1)^d with unit monomials cleared.

    For odd q the result is monic with f(1) = ±1; even q is allowed and only reported.
    """
    if m == 0:
        raise PreconditionError("m = 0 is the unknot")
    if p not in (1, -1) or q <= 0:
        raise PreconditionError(f"need p = ±1 and q > 0, got p={p}, q={q}")
    d = twist_degree(m)
    a = a_polynomial(m).poly
    g = MultiPoly.monomial(1, {"M": p, "L": q}) - 1
    try:
        cert = check_derivative_divisibility(a, g, "L", -1, d)
    except VerificationError:
        logger.warning(f"J(2,{2 * m}): divisibility hypotheses fail for p={p}, q={q}")
        raise
    _, core = cert.conclusion.substitute({"M": MultiPoly.var("s")}).split_monomial()
    f = core.to_unipoly("s")
    if f.lead < 0:
        f = -f
    if not (f.is_monic() and abs(f[0]) == 1):
        raise InternalConsistencyError(f"J(2,{2 * m}), slope {p}/{q}: f(s) = {f} is not monic after unit clearing")
    f1 = f(1)
    if q % 2 and abs(f1) != 1:
        raise InternalConsistencyError(f"J(2,{2 * m}), slope {p}/{q}: f(1) = {f1}, expected ±1")
    logger.info(f"J(2,{2 * m}) slope {p}/{q}: f of degree {f.degree}, f(1) = {f1}")
    return SlopePolynomial(m, p, q, f, int(f1), cert)


def verify_slope_divisibility(m: int, ps=(1, -1), qs=SLOPE_Q_VALUES) -> VerificationReport:
    """(M^p (-1)^q - 1)^d divides res_L(A, M^p L^q - 1) over a grid of slopes."""
    d = twist_degree(m)
    a = a_polynomial(m).poly
    checks: List[CheckResult] = []
    for p in ps:
        for q in qs:
            g = MultiPoly.monomial(1, {"M": p, "L": q}) - 1
            label = f"p={p}, q={q}"
            try:
                cert = check_derivative_divisibility(a, g, "L", -1, d)
                checks.append(CheckResult(label=label, passed=cert.verify(), quotient=str(cert.conclusion)))
            except VerificationError as exc:
                checks.append(CheckResult(label=label, passed=False, detail=str(exc)))
    return VerificationReport.from_checks("slope-divisibility", f"J(2,{2 * m})", checks, d=d)


def verify_all(m: int, a: Optional[APoly] = None) -> List[VerificationReport]:
    a = a or a_polynomial(m)
    if m == 0:
        return [verify_symmetry(a)]
    reports = [
        verify_unit_extremes(a),
        verify_newton_slopes(a),
        verify_symmetry(a),
        verify_diff_divisibility(m),
        verify_slope_divisibility(m),
    ]
    for q in SLOPE_Q_VALUES:
        for p in (1, -1):
            reports.append(verify_res_extremes(a, p, q))
    return reports
