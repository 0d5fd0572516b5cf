"""
Sylvester resultants, multiplication-matrix (norm) resultants and the
derivative-divisibility certificate for res_x(f, g).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

from src.algebra.poly import MultiPoly, PolyLike, _coerce, divide_exact, reduce_modulo
from src.errors import InternalConsistencyError, NotExactError, PreconditionError, VerificationError
from src.resultants.matrix import PolyMatrix, determinant

logger = logging.getLogger(__name__)


def _cleared_in(p: MultiPoly, var: str) -> MultiPoly:
    low = p.min_degree(var)
    if low < 0:
        p = p * MultiPoly.monomial(1, {var: -low})
    return p


def sylvester_matrix(f: PolyLike, g: PolyLike, var: str) -> PolyMatrix:
    """The (n+m)x(n+m) band matrix: deg g rows of f-coefficients, then deg f rows of g."""
    f, g = _cleared_in(_coerce(f), var), _cleared_in(_coerce(g), var)
    if f.is_zero() or g.is_zero():
        raise PreconditionError("resultant with the zero polynomial")
    n, m = f.degree(var), g.degree(var)
    if n + m == 0:
        raise PreconditionError(f"both polynomials are constant in {var}")
    fc, gc = f.coefficients(var), g.coefficients(var)
    size = n + m
    zero = MultiPoly()
    rows: List[List[MultiPoly]] = []
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = gc.get(k, zero)
        rows.append(row)
    return PolyMatrix(rows)


def resultant(f: PolyLike, g: PolyLike, var: str, method: str = "auto") -> MultiPoly:
    """res_var(f, g) as the Sylvester determinant."""
    sm = sylvester_matrix(f, g, var)
    logger.debug(f"res_{var}: sylvester matrix {sm.rows}x{sm.cols}, method={method}")
    return determinant(sm, method)


def multiplication_matrix(f: PolyLike, modulus: MultiPoly, var: str) -> PolyMatrix:
    """Matrix of h -> f*h on Z[...][var]/(modulus) in the basis 1, var, ..., var^(n-1)."""
    f = _coerce(f)
    n = modulus.degree(var)
    if n <= 0:
        raise PreconditionError(f"modulus must have positive degree in {var}")
    x = MultiPoly.var(var)
    col = reduce_modulo(_cleared_in(f, var), modulus, var)
    columns = []
    for j in range(n):
        if j:
            col = reduce_modulo(col * x, modulus, var)
        coeffs = col.coefficients(var)
        columns.append([coeffs.get(i, MultiPoly()) for i in range(n)])
    return PolyMatrix([[columns[j][i] for j in range(n)] for i in range(n)])


def norm_resultant(f: PolyLike, modulus: MultiPoly, var: str, method: str = "auto") -> MultiPoly:
    """prod f(alpha) over the roots of a modulus whose leading var-coefficient is a unit.

    Equal to res_var(modulus, f) up to a unit; Laurent f is first cleared in var,
    which multiplies the result by a power of the modulus' norm of var.
    """
    mm = multiplication_matrix(f, modulus, var)
    logger.debug(f"norm resultant in {var}: {mm.rows}x{mm.cols} multiplication matrix")
    return determinant(mm, method)


# ──────────────────────────────────────────────────────────────
# Derivative divisibility
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class DivisibilityCertificate:
    f: MultiPoly
    g: MultiPoly
    var: str
    zeta: MultiPoly
    m: int
    g_at_zeta: MultiPoly
    quotients: List[MultiPoly] = field(default_factory=list)
    resultant: MultiPoly = field(default_factory=MultiPoly)
    conclusion: MultiPoly = field(default_factory=MultiPoly)

    def verify(self) -> bool:
        """Re-multiply every stored quotient against its claim."""
        for k, q in enumerate(self.quotients):
            lhs = self.f.scaled_derivative(self.var, k).substitute({self.var: self.zeta})
            if lhs != self.g_at_zeta ** (self.m - k) * q:
                return False
        return self.resultant == self.g_at_zeta ** self.m * self.conclusion


def check_derivative_divisibility(
    f: PolyLike, g: PolyLike, var: str, zeta: PolyLike, m: int, method: str = "auto"
) -> DivisibilityCertificate:
    """If g(zeta)^(m-k) divides f^(k)(zeta)/k! for k < m, then g(zeta)^m divides res_var(f, g)."""
    f, g, zeta = _coerce(f), _coerce(g), _coerce(zeta)
    if m > f.degree(var):
        raise PreconditionError(f"m={m} exceeds deg_{var} f = {f.degree(var)}")
    gz = g.substitute({var: zeta})
    if gz.is_zero():
        raise PreconditionError(f"g({zeta}) = 0; the divisibility statement needs g(zeta) != 0")
    quotients = []
    for k in range(m):
        dk = f.scaled_derivative(var, k).substitute({var: zeta})
        try:
            quotients.append(divide_exact(dk, gz ** (m - k)))
        except NotExactError as exc:
            raise VerificationError(
                f"hypothesis fails at k={k}: ({gz})^{m - k} does not divide f^({k})({zeta})/{k}!",
                index=k,
            ) from exc
    res = resultant(f, g, var, method)
    try:
        conclusion = divide_exact(res, gz ** m)
    except NotExactError as exc:
        raise InternalConsistencyError(
            f"hypotheses hold but ({gz})^{m} does not divide res_{var}(f, g)"
        ) from exc
    logger.info(f"divisibility certificate: ({gz})^{m} | res_{var}, {len(quotients)} hypotheses")
    return DivisibilityCertificate(f, g, var, zeta, m, gz, quotients, res, conclusion)
