"""
Representation equations of p/q-surgeries on twist knots and their numeric
solutions.

A non-abelian representation of S^3_{p/q}(J(2,2m)) is a point of the Riley
locus phi(s,t) = 0 where the longitude eigenvalue Lambda(s,t) satisfies
s^p Lambda^q = 1. Characters are listed once: of (s, t) ~ (1/s, t) the row
keeps Im s > 0, or |s| <= 1 when s is real.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath as mp

from config.settings import ACYCLIC_TOL, DEFAULT_PRECISION, FACTOR_MATCH_TOL, MIN_PRECISION, SOLUTION_RESIDUAL_TOL, TABLE_MATCH_TOL
from src.algebra.poly import MultiPoly, reduce_modulo
from src.algebra.unipoly import UniPoly, squarefree_decompose, squarefree_part
from src.errors import PreconditionError, VerificationError
from src.extraction.schema import ComplexValue, SolutionPoint
from src.numerics.roots import back_substitute, relative_residual, roots, unipoly_residual
from src.representations.riley import (
    TwistKnotFamily,
    complement_torsion,
    longitude_eigenvalue,
    longitude_inverse_eigenvalue,
    riley_polynomial,
)
from src.resultants.resultant import norm_resultant, resultant
from src.surgery.slope import SurgerySlope

logger = logging.getLogger(__name__)

S = MultiPoly.var("s")


def power_mod(base: MultiPoly, k: int, phi: MultiPoly) -> MultiPoly:
    """base^k reduced modulo phi in t after every product."""
    result = MultiPoly.const(1)
    square = reduce_modulo(base, phi, "t")
    while k:
        if k & 1:
            result = reduce_modulo(result * square, phi, "t")
        k >>= 1
        if k:
            square = reduce_modulo(square * square, phi, "t")
    return result


def eliminate(f: MultiPoly, modulus: MultiPoly, var: str) -> MultiPoly:
    """res_var(modulus, f), as a norm when the modulus has a unit leading coefficient."""
    if modulus.leading_coefficient(var).is_unit():
        return norm_resultant(f, modulus, var)
    logger.debug(f"modulus lead in {var} is not a unit; using the Sylvester resultant")
    return resultant(modulus, f, var)


def _as_univariate(p: MultiPoly, var: str) -> UniPoly:
    _, core = p.split_monomial()
    return core.to_unipoly(var)


@dataclass(frozen=True)
class SurgerySystem:
    family: TwistKnotFamily
    slope: SurgerySlope
    phi: MultiPoly
    P: MultiPoly
    S: UniPoly
    removed: List[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"{self.family.label} slope {self.slope}"


@lru_cache(maxsize=None)
def _riley_data(m: int):
    family = TwistKnotFamily(m)
    phi = riley_polynomial(family)
    lam = reduce_modulo(longitude_eigenvalue(family), phi, "t")
    lam_inv = reduce_modulo(longitude_inverse_eigenvalue(family), phi, "t")
    n_e, d_e = complement_torsion(family)
    return phi, lam, lam_inv, reduce_modulo(n_e, phi, "t"), d_e


def eigenvalue_power(family: TwistKnotFamily, a: int, b: int) -> MultiPoly:
    """s^a Lambda^b modulo phi; negative b uses 1/Lambda = rho(lambda)_22."""
    phi, lam, lam_inv, _, _ = _riley_data(family.m)
    base = lam if b >= 0 else lam_inv
    return reduce_modulo(S ** a * power_mod(base, abs(b), phi), phi, "t")


def s_minus_one_removal_allowed(family: TwistKnotFamily, slope: SurgerySlope) -> bool:
    """s = -1 is excluded for figure-eight slopes 1/q only."""
    return family.m == -1 and abs(slope.p) == 1


@lru_cache(maxsize=None)
def _surgery_system(m: int, p: int, q: int) -> SurgerySystem:
    family, slope = TwistKnotFamily(m), SurgerySlope(p, q)
    phi = _riley_data(m)[0]
    P, _ = (eigenvalue_power(family, slope.p, slope.q) - 1).clear_laurent("s")
    raw = eliminate(P, phi, "t")
    if raw.is_zero():
        raise VerificationError(f"{family.label} slope {slope}: eliminant vanishes identically")
    removed: List[str] = []
    powers, _ = raw.split_monomial()
    if powers.get("s"):
        removed.append(f"s^{powers['s']}")
    s_poly = squarefree_part(_as_univariate(raw, "s"))
    if s_poly.degree < raw.degree("s") - raw.min_degree("s"):
        removed.append("repeated factors")
    linear = [(UniPoly([-1, 1], "s"), 1, "s - 1")]
    if s_minus_one_removal_allowed(family, slope):
        linear.append((UniPoly([1, 1], "s"), -1, "s + 1"))
    for factor, root, name in linear:
        if s_poly.degree > 0 and s_poly(root) == 0:
            s_poly = s_poly.exact_div(factor)
            removed.append(name)
    for item in removed:
        logger.info(f"{family.label} slope {slope}: removed {item} from the s-eliminant")
    if s_poly.degree < 1:
        logger.warning(f"{family.label} slope {slope}: no non-abelian solutions off s = ±1")
    logger.info(f"{family.label} slope {slope}: S(s) of degree {s_poly.degree}")
    return SurgerySystem(family, slope, phi, P, s_poly, removed)


def surgery_system(family: TwistKnotFamily, slope: SurgerySlope) -> SurgerySystem:
    return _surgery_system(family.m, slope.p, slope.q)


def torsion_expression(family: TwistKnotFamily, slope: SurgerySlope) -> Tuple[MultiPoly, MultiPoly]:
    """(N, D) with tau = N/D = N_E * (-a) / (D_E * (a - 1)^2), a = s^p' Lambda^q', modulo phi."""
    phi, _, _, n_e, d_e = _riley_data(family.m)
    p1, q1 = slope.continuation
    a = eigenvalue_power(family, p1, q1)
    numerator = reduce_modulo(-n_e * a, phi, "t")
    denominator = reduce_modulo(d_e * (a - 1) ** 2, phi, "t")
    return numerator, denominator


# ──────────────────────────────────────────────────────────────
# Numeric solutions
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class Representation:
    """A solution at working precision; to_point() rounds it for output."""

    s: mp.mpc
    t: mp.mpc
    L: mp.mpc
    tau: mp.mpc
    acyclic: bool
    residual_phi: float
    residual_surgery: float
    precision: int

    def sort_key(self):
        return (float(abs(self.tau)), float(mp.arg(self.tau)) if self.tau != 0 else 0.0, float(abs(self.s)))

    def to_point(self, index: int, digits: int = 30) -> SolutionPoint:
        return SolutionPoint(
            index=index,
            s=ComplexValue.from_number(self.s, digits),
            t=ComplexValue.from_number(self.t, digits),
            L=ComplexValue.from_number(self.L, digits),
            tau=ComplexValue.from_number(self.tau, digits),
            acyclic=self.acyclic,
            residual_phi=self.residual_phi,
            residual_surgery=self.residual_surgery,
            precision=self.precision,
        )


def is_representative(s, precision: int) -> bool:
    tol = mp.mpf(2) ** (-(precision // 2))
    if s.imag > tol:
        return True
    if s.imag < -tol:
        return False
    return abs(s) <= 1 + tol


def _torsion_at(n_e: MultiPoly, d_e: MultiPoly, s, t, L, p1: int, q1: int):
    a = s ** p1 * L ** q1
    den_e = d_e.evaluate({"s": s})
    if abs(den_e) < ACYCLIC_TOL or abs(a - 1) < ACYCLIC_TOL:
        return mp.mpc(0), False
    num_e = n_e.evaluate({"s": s, "t": t})
    return -num_e * a / (den_e * (a - 1) ** 2), True


def _s_candidates(system: SurgerySystem, precision: int) -> List[mp.mpc]:
    out = []
    if system.S.degree > 0:
        out.extend(r.value for r in roots(system.S, precision))
    for name, value in (("s - 1", 1), ("s + 1", -1)):
        if name in system.removed:
            out.append(mp.mpc(value))
    return out


def solve_representations(
    family: TwistKnotFamily,
    slope: SurgerySlope,
    precision: int = DEFAULT_PRECISION,
    cross_check: bool = False,
) -> List[Representation]:
    if precision < MIN_PRECISION:
        raise PreconditionError(f"precision must be at least {MIN_PRECISION} bits")
    system = surgery_system(family, slope)
    phi, lam, _, n_e, d_e = _riley_data(family.m)
    p1, q1 = slope.continuation
    found: List[Representation] = []
    with mp.workprec(precision + 32):
        for s0 in _s_candidates(system, precision):
            if not is_representative(s0, precision):
                continue
            for t_root in back_substitute(phi, s0, precision):
                t0 = t_root.value
                point = {"s": s0, "t": t0}
                L0 = lam.evaluate(point)
                res_surgery = float(abs(s0 ** slope.p * L0 ** slope.q - 1))
                if res_surgery >= SOLUTION_RESIDUAL_TOL:
                    continue
                tau, acyclic = _torsion_at(n_e, d_e, s0, t0, L0, p1, q1)
                if cross_check and acyclic:
                    other, _ = _torsion_at(n_e, d_e, s0, t0, L0, p1 + slope.p, q1 + slope.q)
                    if abs(other - tau) > FACTOR_MATCH_TOL * max(1, abs(tau)):
                        raise VerificationError(
                            f"{system.label}: torsion depends on the continuation at s = {mp.nstr(s0, 8)}"
                        )
                found.append(Representation(
                    s=mp.mpc(s0), t=mp.mpc(t0), L=mp.mpc(L0), tau=mp.mpc(tau), acyclic=acyclic,
                    residual_phi=relative_residual(phi, point), residual_surgery=res_surgery,
                    precision=precision,
                ))
    found.sort(key=Representation.sort_key)
    non_acyclic = sum(1 for r in found if not r.acyclic)
    logger.info(f"{system.label}: {len(found)} representations, {non_acyclic} not acyclic")
    return found


def solution_points(reps: Sequence[Representation]) -> List[SolutionPoint]:
    return [r.to_point(i + 1) for i, r in enumerate(reps)]


def match_table(
    reps: Sequence[Representation], table: Sequence[Tuple[complex, complex, complex]], tol: float = TABLE_MATCH_TOL
) -> List[int]:
    """Indices of table rows (s, t, tau) with no matching representation; empty when the multisets agree."""
    unused = list(range(len(reps)))
    missing = []
    for i, (s, t, tau) in enumerate(table):
        hit = None
        for j in unused:
            r = reps[j]
            if all(
                abs(complex(x) - y) <= tol * max(1.0, abs(y))
                for x, y in ((r.s, s), (r.t, t), (r.tau, tau))
            ):
                hit = j
                break
        if hit is None:
            missing.append(i)
        else:
            unused.remove(hit)
    return missing


def witness_polynomials(
    system: SurgerySystem, rep: Representation, precision: int = DEFAULT_PRECISION
) -> Tuple[UniPoly, UniPoly]:
    """Squarefree factors of S(s) and of res_s(phi, S) vanishing at the representation's s and t."""
    if system.S.degree < 1:
        raise PreconditionError(f"{system.label}: S(s) is constant")
    s_modulus = system.S.to_multipoly()
    t_poly = _as_univariate(eliminate(system.phi, s_modulus, "s"), "t")

    def pick(f: UniPoly, z) -> Optional[UniPoly]:
        with mp.workprec(precision + 32):
            best = min(squarefree_decompose(f), key=lambda gm: unipoly_residual(gm[0], z))[0]
            return best if unipoly_residual(best, z) < FACTOR_MATCH_TOL else None

    s_factor, t_factor = pick(system.S, rep.s), pick(t_poly, rep.t)
    if s_factor is None or t_factor is None:
        raise VerificationError(f"{system.label}: no factor vanishes at the witness")
    return s_factor, t_factor
