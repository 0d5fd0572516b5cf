"""
Exact transforms of algebraic numbers given by annihilating polynomials.
"""

from __future__ import annotations

import logging

from src.algebra.poly import MultiPoly
from src.algebra.unipoly import UniPoly
from src.errors import PreconditionError
from src.resultants.resultant import resultant

logger = logging.getLogger(__name__)


def reverse_poly(f: UniPoly) -> UniPoly:
    """x^deg f * f(1/x): the reciprocal roots."""
    if f.is_zero() or f[0] == 0:
        raise PreconditionError(f"reverse_poly needs f(0) != 0, got f = {f}")
    return f.reverse()


def shift_invert(f: UniPoly) -> UniPoly:
    """Monic g whose roots are 1/(alpha - 1) for the roots alpha of a monic f with f(1) = ±1."""
    if not f.is_integral() or not f.is_monic():
        raise PreconditionError(f"shift_invert needs a monic integer polynomial, got {f}")
    f1 = f(1)
    if f1 == 0:
        raise PreconditionError("f(1) = 0: strip the factor x - 1 first")
    if abs(f1) != 1:
        raise PreconditionError(f"f(1) = {f1}; (alpha-1)^-1 need not be integral unless f(1) = ±1")
    g = f.taylor_shift(1).reverse()
    return g if g.lead == 1 else -g


def alg_combine(p: UniPoly, q: UniPoly, mode: str = "sum") -> UniPoly:
    """Annihilator of alpha+beta (sum) or alpha*beta (product) over roots of p and q."""
    if p.is_zero() or q.is_zero() or p.degree < 1 or q.degree < 1:
        raise PreconditionError("alg_combine needs nonconstant p and q")
    y, x = MultiPoly.var("_y"), MultiPoly.var("_x")
    py = UniPoly(p.coeffs, "_y").to_multipoly()
    n = q.degree
    if mode == "sum":
        other = sum((c * (x - y) ** k for k, c in enumerate(q.coeffs) if c), MultiPoly())
    elif mode == "product":
        other = sum((c * x ** k * y ** (n - k) for k, c in enumerate(q.coeffs) if c), MultiPoly())
    else:
        raise PreconditionError(f"unknown combination mode {mode!r}")
    res = resultant(py, other, "_y")
    out = res.to_unipoly("_x").rename(p.var)
    logger.debug(f"alg_combine {mode}: degrees {p.degree}, {q.degree} -> {out.degree}")
    return out


def graeffe_square(p: UniPoly) -> UniPoly:
    """Polynomial whose roots are the squares of p's roots, res_y(p(y), x - y^2).

    With p(y) = E(y^2) + y*O(y^2) this is (-1)^deg p * (E(x)^2 - x*O(x)^2).
    """
    even = UniPoly(p.coeffs[0::2], p.var)
    odd = UniPoly(p.coeffs[1::2], p.var)
    out = even * even - (odd * odd).shift_var(1)
    return -out if p.degree % 2 else out
