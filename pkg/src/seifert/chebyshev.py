"""
Chebyshev polynomials T_n, the variant V_n, and annihilators of reciprocal
sines built from them.

    T_n(cos x) = cos(n x)
    V_n(2 cos x) = cos((n + 1/2) x) / cos(x / 2),  roots 2 cos((2k - 1) pi / (2n + 1))
"""

import logging
from functools import lru_cache

import mpmath as mp
from sympy.polys.domains import ZZ
from sympy.polys.orthopolys import dup_chebyshevt, dup_chebyshevu

from config.settings import DEFAULT_PRECISION, FACTOR_MATCH_TOL
from src.algebra.unipoly import UniPoly
from src.errors import InternalConsistencyError, PreconditionError
from src.numerics.roots import unipoly_residual

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def chebyshev_T(n: int) -> UniPoly:
    if n < 0:
        raise PreconditionError("chebyshev_T needs n >= 0")
    return UniPoly([int(c) for c in reversed(dup_chebyshevt(n, ZZ))])


def _chebyshev_S(n: int) -> UniPoly:
    """S_n(x) = U_n(x/2); the coefficient of x^k in U_n is divisible by 2^k."""
    if n < 0:
        return UniPoly([])
    return UniPoly([int(c) >> k for k, c in enumerate(reversed(dup_chebyshevu(n, ZZ)))])


@lru_cache(maxsize=None)
def chebyshev_V(n: int) -> UniPoly:
    if n < 0:
        raise PreconditionError("chebyshev_V needs n >= 0")
    return _chebyshev_S(n) - _chebyshev_S(n - 1)


def _positive(p: UniPoly) -> UniPoly:
    return p if p.lead > 0 else -p


def sin_inverse_certificate(a: int, k: int, doubled: bool = None, precision: int = DEFAULT_PRECISION) -> UniPoly:
    """Monic integer polynomial with root 1/(2 sin(k pi / 2a)) for odd a, 1/sin(k pi / 2a) for even a.

    Even a uses x^a T_a(1/x) and needs k odd; odd a uses the reverse of
    V_{(a-1)/2} and needs k odd and not divisible by a.
    """
    if a < 1:
        raise PreconditionError("a must be positive")
    if doubled is None:
        doubled = a % 2 == 1
    if doubled != (a % 2 == 1):
        raise PreconditionError(f"a={a}: the doubled form is for odd a, the plain form for even a")
    if k % 2 == 0 or k % a == 0 and a > 1:
        raise PreconditionError(f"k={k} must be odd and prime to the order for a={a}")
    base = chebyshev_V((a - 1) // 2) if doubled else chebyshev_T(a)
    if base.degree < 1:
        raise PreconditionError(f"a={a}: no nontrivial sine factor")
    cert = _positive(base.reverse())
    with mp.workprec(precision + 32):
        target = 1 / ((2 if doubled else 1) * mp.sin(k * mp.pi / (2 * a)))
        if unipoly_residual(cert, target) > FACTOR_MATCH_TOL:
            # 1/(2 sin) lands on -root for the other residue class of k mod 4
            cert = _positive(cert.substitute_scaled(-1))
        if unipoly_residual(cert, target) > FACTOR_MATCH_TOL:
            raise InternalConsistencyError(f"a={a}, k={k}: reciprocal sine is not a root of {cert}")
    return cert
