"""
High-precision complex root finding (Aberth–Ehrlich) with mpmath.

The iteration starts from a fixed circle around the root centroid, so the
output is a deterministic function of (polynomial, precision).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from config.settings import ROOT_ITERATION_FACTOR
from src.algebra.poly import MultiPoly
from src.algebra.unipoly import UniPoly, squarefree_decompose
from src.errors import ConvergenceError, PreconditionError, VerificationError

logger = logging.getLogger(__name__)

# Angular offset of the starting circle.
START_ANGLE = 0.4


@dataclass(frozen=True)
class ComplexApprox:
    value: mp.mpc
    precision: int
    residual: float

    @property
    def re(self) -> mp.mpf:
        return self.value.real

    @property
    def im(self) -> mp.mpf:
        return self.value.imag

    def __complex__(self) -> complex:
        return complex(self.value)

    def is_real(self, tol: float = 1e-12) -> bool:
        return abs(self.value.imag) <= tol * max(1.0, float(abs(self.value)))


def _to_mp(c):
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / c.denominator
    return mp.mpmathify(c)


def _fujiwara_bound(coeffs: Sequence) -> mp.mpf:
    """Upper bound on root moduli; coeffs from the highest degree down."""
    n = len(coeffs) - 1
    lead = abs(coeffs[0])
    best = mp.mpf(0)
    for k in range(1, n + 1):
        c = abs(coeffs[k]) / lead
        if k == n:
            c = c / 2
        if c:
            best = max(best, c ** (mp.mpf(1) / k))
    return 2 * best if best else mp.mpf(1)


def _aberth(coeffs: List, precision: int) -> Tuple[List[mp.mpc], float, bool]:
    n = len(coeffs) - 1
    with mp.workprec(precision):
        cs = [_to_mp(c) for c in coeffs]
        dcs = [cs[k] * (n - k) for k in range(n)]
        center = -cs[1] / (n * cs[0])
        radius = _fujiwara_bound(cs)
        theta0 = mp.mpf(START_ANGLE)
        z = [center + radius * mp.expjpi(2 * mp.mpf(j) / n + theta0 / mp.pi) for j in range(n)]
        tol = mp.mpf(2) ** (-int(precision * 0.9))
        cap = ROOT_ITERATION_FACTOR * max(n, 1)
        converged = False
        step = mp.inf
        for it in range(cap):
            step = mp.mpf(0)
            for j in range(n):
                zj = z[j]
                p = mp.polyval(cs, zj)
                if p == 0:
                    continue
                dp = mp.polyval(dcs, zj)
                ratio = p / dp if dp != 0 else mp.mpf(1)
                acc = mp.mpc(0)
                for k in range(n):
                    if k != j:
                        diff = zj - z[k]
                        if diff != 0:
                            acc += 1 / diff
                denom = 1 - ratio * acc
                w = ratio / denom if denom != 0 else ratio
                z[j] = zj - w
                rel = abs(w) / max(abs(z[j]), mp.mpf(1))
                if rel > step:
                    step = rel
            if step < tol:
                converged = True
                logger.debug(f"aberth: degree {n} converged in {it + 1} sweeps at {precision} bits")
                break
        return z, float(step), converged


def complex_roots(coeffs: Sequence, precision: int = 256) -> List[ComplexApprox]:
    """All roots of sum coeffs[i]*x^(n-i) (highest degree first), complex coefficients allowed."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    n = len(coeffs) - 1
    if n < 1:
        raise PreconditionError("root finding needs a nonconstant polynomial")
    zeros = 0
    while coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1
    found: List[mp.mpc] = []
    prec = precision
    step = float("inf")
    if len(coeffs) > 1:
        for attempt in range(3):
            z, step, ok = _aberth(coeffs, prec + 32)
            if ok:
                found = z
                break
            logger.debug(f"aberth: no convergence at {prec} bits (step {step:.3e}), doubling")
            prec *= 2
        else:
            raise ConvergenceError(
                f"Aberth iteration did not converge for a degree-{len(coeffs) - 1} polynomial",
                residual=step,
            )
    out = []
    with mp.workprec(precision + 32):
        cs = [_to_mp(c) for c in coeffs]
        for root in found:
            root = _newton_polish(cs, root)
            out.append(ComplexApprox(mp.mpc(root), precision, _scaled_residual(cs, root)))
        out.extend(ComplexApprox(mp.mpc(0), precision, 0.0) for _ in range(zeros))
    out.sort(key=lambda r: (float(r.value.real), float(r.value.imag)))
    return out


def _newton_polish(cs: List, z, steps: int = 3):
    dcs = [cs[k] * (len(cs) - 1 - k) for k in range(len(cs) - 1)]
    for _ in range(steps):
        dp = mp.polyval(dcs, z)
        if dp == 0:
            break
        z = z - mp.polyval(cs, z) / dp
    return z


def _scaled_residual(cs: List, z) -> float:
    scale = mp.polyval([abs(c) for c in cs], abs(z))
    if scale == 0:
        return 0.0
    return float(abs(mp.polyval(cs, z)) / scale)


def roots(f: UniPoly, precision: int = 256) -> List[ComplexApprox]:
    """Roots of the squarefree part of f, each listed once."""
    if f.degree < 1:
        raise PreconditionError(f"root finding needs a nonconstant polynomial, got {f}")
    part = UniPoly([1], f.var)
    for g, _ in squarefree_decompose(f):
        part = part * g
    return complex_roots(list(reversed(part.coeffs)), precision)


def roots_with_multiplicity(f: UniPoly, precision: int = 256) -> List[Tuple[ComplexApprox, int]]:
    out = []
    for g, mult in squarefree_decompose(f):
        out.extend((r, mult) for r in complex_roots(list(reversed(g.coeffs)), precision))
    return out


def back_substitute(
    phi: MultiPoly, s0, precision: int = 256, s_var: str = "s", t_var: str = "t"
) -> List[ComplexApprox]:
    """Roots in t_var of phi with s_var specialised to the numeric value s0."""
    value = s0.value if isinstance(s0, ComplexApprox) else s0
    with mp.workprec(precision + 32):
        coeffs = phi.coefficients(t_var)
        deg = max(coeffs) if coeffs else -1
        if deg < 1 or min(coeffs) < 0:
            raise PreconditionError(f"{phi} is not a nonconstant polynomial in {t_var}")
        numeric = [coeffs[k].evaluate({s_var: value}) if k in coeffs else 0 for k in range(deg, -1, -1)]
        scale = max(abs(mp.mpmathify(c)) for c in numeric)
        if scale < mp.mpf(2) ** (-precision // 2):
            raise ConvergenceError(f"{phi} vanishes identically at {s_var} = {value}", residual=float(scale))
        tol = scale * mp.mpf(2) ** (-precision // 2)
        while len(numeric) > 1 and abs(mp.mpmathify(numeric[0])) < tol:
            numeric.pop(0)
    if len(numeric) < 2:
        raise PreconditionError(f"{phi} has degree 0 in {t_var} at {s_var} = {value}")
    return complex_roots(numeric, precision)


def polynomial_from_roots(values: Sequence, precision: int = 256) -> List[mp.mpc]:
    """Coefficients of prod (x - v), constant term first."""
    with mp.workprec(precision):
        coeffs = [mp.mpc(1)]
        for v in values:
            v = mp.mpmathify(v.value if isinstance(v, ComplexApprox) else v)
            nxt = [mp.mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= v * c
            coeffs = nxt
        return coeffs


def near_integer_vector(values: Sequence, tol: float) -> Tuple[List[int], float]:
    """Round each value to the nearest integer; fail if any deviation reaches tol."""
    ints = []
    worst = 0.0
    for v in values:
        z = mp.mpmathify(v.value if isinstance(v, ComplexApprox) else v)
        re = mp.re(z)
        k = int(mp.nint(re))
        dev = float(max(abs(re - k), abs(mp.im(z))))
        worst = max(worst, dev)
        ints.append(k)
    if worst >= tol:
        raise VerificationError(f"values are not within {tol:g} of integers (max deviation {worst:.3e})")
    return ints, worst


def bracket_real_root(f: UniPoly, lo, hi) -> Optional[Tuple[Fraction, Fraction]]:
    """Exact sign-change check f(lo)*f(hi) < 0; returns (f(lo), f(hi)) when it holds."""
    a, b = Fraction(lo), Fraction(hi)
    fa, fb = f(a), f(b)
    if fa * fb < 0:
        return Fraction(fa), Fraction(fb)
    return None


def newton_polish_2d(
    f: MultiPoly, g: MultiPoly, point: Dict[str, object], precision: int = 256, steps: int = 8
) -> Tuple[Dict[str, mp.mpc], float]:
    """Two-variable Newton refinement of a common zero; returns the point and max residual."""
    names = sorted(point)
    if len(names) != 2:
        raise PreconditionError("newton_polish_2d needs exactly two variables")
    u, v = names
    fu, fv, gu, gv = f.derivative(u), f.derivative(v), g.derivative(u), g.derivative(v)
    with mp.workprec(precision + 32):
        x = {k: mp.mpc(point[k]) for k in names}
        for _ in range(steps):
            F, G = f.evaluate(x), g.evaluate(x)
            a, b, c, d = fu.evaluate(x), fv.evaluate(x), gu.evaluate(x), gv.evaluate(x)
            det = a * d - b * c
            if det == 0:
                break
            du = (d * F - b * G) / det
            dv = (a * G - c * F) / det
            x = {u: x[u] - du, v: x[v] - dv}
            if abs(du) + abs(dv) < mp.mpf(2) ** (-precision):
                break
        residual = float(max(abs(f.evaluate(x)), abs(g.evaluate(x))))
        return x, residual


def relative_residual(p: MultiPoly, values: Dict[str, object]) -> float:
    """|p(values)| divided by sum |c| |values|^e, so the size of p's coefficients drops out."""
    total = 0
    scale = 0
    for e, c in p.terms.items():
        term = mp.mpf(c)
        for v, k in zip(p.vars, e):
            term = term * mp.mpmathify(values[v]) ** k
        total += term
        scale += abs(term)
    if scale == 0:
        return 0.0
    return float(abs(total) / scale)


def unipoly_residual(f: UniPoly, z) -> float:
    return _scaled_residual([_to_mp(c) for c in reversed(f.coeffs)], z)
