"""
Torsion of Seifert fibered homology spheres at the characters labelled by
admissible tuples, their integrality certificates, and torsion polynomials of
Brieskorn spheres.

    tau^-1 = 2^(4-m-g) prod (1 - (-1)^s_i cos(r_i k_i pi / a_i))
    tau    = 2^(2 m_o + g - 4) prod_{a_i odd} (2 sin(j_i pi / 2a_i))^-2 prod_{a_i even} sin(j_i pi / 2a_i)^-2

with j_i = a_i - r_i k_i.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import mpmath as mp

from config.settings import CERTIFICATE_RESIDUAL_TOL, DEFAULT_PRECISION, INTEGER_ROUNDING_TOL
from src.algebra.unipoly import UniPoly, squarefree_part
from src.errors import InternalConsistencyError, PreconditionError, VerificationError
from src.extraction.schema import SeifertCertificate, SeifertValue, SigmaReport
from src.numerics.roots import near_integer_vector, polynomial_from_roots, unipoly_residual
from src.resultants.algebraic import alg_combine, graeffe_square
from src.seifert.chebyshev import sin_inverse_certificate
from src.seifert.index import SeifertIndex, SeifertTuple, admissible_tuples, brieskorn_index

logger = logging.getLogger(__name__)

SIGMA_MIN_PRECISION = 128


@dataclass(frozen=True)
class SeifertTorsion:
    tuple: SeifertTuple
    tau: mp.mpf
    acyclic: bool
    product_form: Optional[mp.mpf] = None

    def to_value(self, digits: int = 20) -> SeifertValue:
        agrees = self.product_form is None or _close(self.tau, self.product_form)
        return SeifertValue(k=list(self.tuple.k), tau=mp.nstr(self.tau, digits), acyclic=self.acyclic,
                            product_form_agrees=agrees)


def _close(a, b) -> bool:
    return abs(a - b) <= CERTIFICATE_RESIDUAL_TOL * max(1, abs(a))


def _j(index: SeifertIndex, i: int, k: int) -> int:
    a = index.pairs[i][0]
    r, _ = index.rs[i]
    return a - r * k


def cosine_form(index: SeifertIndex, tup: SeifertTuple) -> mp.mpf:
    """tau^-1 from the cosine product; zero when the character is not acyclic."""
    inv = mp.mpf(2) ** (4 - index.m - index.g)
    for (a, _), (r, s), k in zip(index.pairs, index.rs, tup.k):
        inv *= 1 - (-1) ** s * mp.cos(r * k * mp.pi / a)
    return inv


def product_form(index: SeifertIndex, tup: SeifertTuple) -> mp.mpf:
    """tau from the sine product; needs every s_i odd."""
    if any(s % 2 == 0 for _, s in index.rs):
        raise PreconditionError("the sine product form needs odd s_i")
    tau = mp.mpf(2) ** (2 * index.m_odd + index.g - 4)
    for i, ((a, _), k) in enumerate(zip(index.pairs, tup.k)):
        sine = mp.sin(_j(index, i, k) * mp.pi / (2 * a))
        tau /= (2 * sine) ** 2 if a % 2 else sine ** 2
    return tau


def seifert_torsion_values(
    index: SeifertIndex, tuples: Iterable[SeifertTuple], precision: int = DEFAULT_PRECISION
) -> List[SeifertTorsion]:
    out = []
    odd_s = all(s % 2 for _, s in index.rs)
    with mp.workprec(precision + 32):
        zero = mp.mpf(2) ** (-(precision // 2))
        for tup in tuples:
            tup.validate(index)
            inv = cosine_form(index, tup)
            if abs(inv) < zero:
                out.append(SeifertTorsion(tup, mp.mpf(0), False))
                continue
            tau = 1 / inv
            other = product_form(index, tup) if odd_s else None
            if other is not None and not _close(tau, other):
                raise InternalConsistencyError(
                    f"{index} k={tup.k}: cosine form {mp.nstr(tau, 15)} != sine form {mp.nstr(other, 15)}"
                )
            out.append(SeifertTorsion(tup, tau, True, other))
    logger.info(f"{index}: {len(out)} tuples, {sum(1 for v in out if v.acyclic)} acyclic")
    return out


def _scale_roots(p: UniPoly, factor: int) -> UniPoly:
    """Polynomial whose roots are factor * (roots of p); monic stays monic."""
    n = p.degree
    return UniPoly([c * factor ** (n - i) for i, c in enumerate(p.coeffs)], p.var)


def seifert_integrality_certificate(
    index: SeifertIndex, tup: SeifertTuple, precision: int = DEFAULT_PRECISION
) -> SeifertCertificate:
    """Monic integer polynomial with tau as a root, for 2 m_o + g >= 4."""
    exponent = 2 * index.m_odd + index.g - 4
    if exponent < 0:
        raise PreconditionError(f"{index}: 2 m_o + g = {exponent + 4} < 4, integrality is not claimed")
    value = seifert_torsion_values(index, [tup], precision)[0]
    if not value.acyclic:
        raise PreconditionError(f"{index} k={tup.k}: character is not acyclic")
    tree: List[str] = []
    acc: Optional[UniPoly] = None
    for i, ((a, _), k) in enumerate(zip(index.pairs, tup.k)):
        if a == 1:
            raise PreconditionError(f"{index}: fibers of order 1 must be absorbed into b")
        j = _j(index, i, k)
        leaf = squarefree_part(graeffe_square(sin_inverse_certificate(a, j, precision=precision)))
        leaf = leaf if leaf.lead > 0 else -leaf
        form = "(2 sin)^-2" if a % 2 else "sin^-2"
        tree.append(f"{form}(pi*{j}/{2 * a}): {leaf}")
        acc = leaf if acc is None else squarefree_part(alg_combine(acc, leaf, "product"))
    if exponent:
        acc = _scale_roots(acc, 2 ** exponent)
        tree.append(f"scale by 2^{exponent}")
    acc = acc if acc.lead > 0 else -acc
    if acc.lead != 1:
        raise InternalConsistencyError(f"{index} k={tup.k}: combined annihilator has leading coefficient {acc.lead}")
    with mp.workprec(precision + 32):
        residual = unipoly_residual(acc, value.tau)
    if residual >= CERTIFICATE_RESIDUAL_TOL:
        raise InternalConsistencyError(f"{index} k={tup.k}: tau is not a root of the certificate ({residual:.3e})")
    tree.append(f"product: {acc}")
    logger.info(f"{index} k={tup.k}: certificate of degree {acc.degree}")
    return SeifertCertificate(
        index=str(index), k=list(tup.k), tau=mp.nstr(value.tau, 30),
        annihilator=str(acc), degree=acc.degree, residual=residual, combination=tree,
    )


def dedupe_by_value(values: Sequence[SeifertTorsion]) -> List[SeifertTorsion]:
    kept: List[SeifertTorsion] = []
    for v in values:
        if v.acyclic and not any(_close(v.tau, w.tau) for w in kept):
            kept.append(v)
    return kept


def torsion_sigma(
    index: SeifertIndex,
    tuples: Optional[Iterable[SeifertTuple]] = None,
    precision: int = DEFAULT_PRECISION,
    subject: Optional[str] = None,
) -> SigmaReport:
    """prod (t - tau) over the distinct acyclic values, rounded to integers."""
    if precision < SIGMA_MIN_PRECISION:
        raise PreconditionError(f"torsion polynomials need at least {SIGMA_MIN_PRECISION} bits")
    subject = subject or str(index)
    tuples = list(tuples) if tuples is not None else list(admissible_tuples(index))
    values = seifert_torsion_values(index, tuples, precision)
    distinct = dedupe_by_value(values)
    acyclic = sum(1 for v in values if v.acyclic)
    if len(distinct) < acyclic:
        logger.info(f"{subject}: {acyclic - len(distinct)} repeated torsion values dropped")
    with mp.workprec(precision + 32):
        coeffs = polynomial_from_roots([v.tau for v in distinct], precision)
        try:
            ints, deviation = near_integer_vector(coeffs, INTEGER_ROUNDING_TOL)
        except VerificationError as exc:
            raise VerificationError(
                f"{subject}: {exc}; either the tuple set is not the character set "
                f"or {precision} bits are not enough"
            ) from exc
    sigma = UniPoly(ints, "t")
    logger.info(f"{subject}: sigma = {sigma}")
    return SigmaReport(
        subject=subject,
        sigma=str(sigma),
        degree=sigma.degree,
        max_deviation=deviation,
        values=[v.to_value() for v in values],
    )


def brieskorn_sigma(
    orders: Sequence[int],
    tuples: Optional[Iterable[SeifertTuple]] = None,
    precision: int = DEFAULT_PRECISION,
) -> SigmaReport:
    """Torsion polynomial of the Brieskorn sphere Sigma(a1, a2, a3)."""
    subject = "Sigma(" + ",".join(map(str, orders)) + ")"
    return torsion_sigma(brieskorn_index(orders), tuples, precision, subject)
