"""
Riley representations of twist knot groups and the polynomials built from them.

Everything is an exact Laurent polynomial in s and a polynomial in t:
    rho(x) = [[s, 1], [0, 1/s]]      rho(y) = [[s, 0], [-t, 1/s]]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.poly import MultiPoly, reduce_modulo
from src.errors import ParseError, PreconditionError, VerificationError
from src.representations.words import DEFAULT_GENERATORS, Presentation, Word, parse_word
from src.resultants.matrix import PolyMatrix

logger = logging.getLogger(__name__)

S, T = MultiPoly.var("s"), MultiPoly.var("t")
S_INV = S ** -1

FoxSum = Dict[Word, int]


# ──────────────────────────────────────────────────────────────
# Representations and word evaluation
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class Rep2x2:
    generators: Tuple[str, ...]
    images: Tuple[PolyMatrix, ...]
    inverses: Tuple[PolyMatrix, ...] = field(default=())

    def __post_init__(self):
        if len(self.images) != len(self.generators):
            raise PreconditionError("one image per generator is required")
        for name, m in zip(self.generators, self.images):
            if m.shape != (2, 2):
                raise PreconditionError(f"image of {name} is not 2x2")
            if m.determinant() != 1:
                raise PreconditionError(f"image of {name} has determinant {m.determinant()}, not 1")
        object.__setattr__(self, "inverses", tuple(m.adjugate2() for m in self.images))

    def image(self, name: str) -> PolyMatrix:
        return self.images[self.generators.index(name)]

    def letter(self, g: int, e: int) -> PolyMatrix:
        return self.images[g] if e == 1 else self.inverses[g]


def riley_rep(generators: Sequence[str] = DEFAULT_GENERATORS) -> Rep2x2:
    x = PolyMatrix([[S, 1], [0, S_INV]])
    y = PolyMatrix([[S, 0], [-T, S_INV]])
    return Rep2x2(tuple(generators), (x, y))


def word_eval(w: Word, rep: Rep2x2) -> PolyMatrix:
    """rho(w); inverse letters use the adjugate, valid since every image has det 1."""
    if w.generators != rep.generators:
        raise PreconditionError(f"word over {w.generators}, representation over {rep.generators}")
    m = PolyMatrix.identity(2)
    for g, e in w:
        m = m * rep.letter(g, e)
    return m


def prefix_images(w: Word, rep: Rep2x2) -> List[PolyMatrix]:
    """rho of every prefix w[:k], k = 0..len(w)."""
    out = [PolyMatrix.identity(2)]
    for g, e in w:
        out.append(out[-1] * rep.letter(g, e))
    return out


# ──────────────────────────────────────────────────────────────
# Fox calculus
# ──────────────────────────────────────────────────────────────
def fox_derivative(w: Word, gen: str) -> FoxSum:
    """Formal sum for dw/dgen: +w[:i] for each letter gen, -w[:i+1] for each gen^-1."""
    g = w.generators.index(gen)
    out: FoxSum = {}
    for i, (h, e) in enumerate(w):
        if h != g:
            continue
        prefix = w.prefix(i) if e == 1 else w.prefix(i + 1)
        key = prefix.free_reduce()
        out[key] = out.get(key, 0) + e
    return {k: c for k, c in out.items() if c}


def fox_eval(w: Word, gen: str, rep: Rep2x2) -> PolyMatrix:
    """rho(dw/dgen) using running prefix products."""
    g = w.generators.index(gen)
    prefixes = prefix_images(w, rep)
    acc = PolyMatrix.zeros(2, 2)
    for i, (h, e) in enumerate(w):
        if h == g:
            acc = acc + prefixes[i] if e == 1 else acc - prefixes[i + 1]
    return acc


def eval_group_ring(terms: FoxSum, rep: Rep2x2) -> PolyMatrix:
    acc = PolyMatrix.zeros(2, 2)
    for word, c in terms.items():
        acc = acc + word_eval(word, rep) * c
    return acc


# ──────────────────────────────────────────────────────────────
# Twist knots
# ──────────────────────────────────────────────────────────────
def twist_degree(m: int) -> int:
    """d(m) = deg_t of the Riley polynomial."""
    if m == 0:
        raise PreconditionError("twist parameter m must be nonzero")
    return 2 * m - 1 if m > 0 else -2 * m


@dataclass(frozen=True)
class TwistKnotFamily:
    """J(2, 2m) with relator word w = [y, x^-1]^m and longitude [x, y^-1]^m [y, x^-1]^m."""

    m: int
    relator_template: str = "[y,x^-1]^({m})"
    longitude_template: str = "[x,y^-1]^({m})[y,x^-1]^({m})"

    def __post_init__(self):
        if self.m == 0:
            raise PreconditionError("J(2,0) is the unknot; twist families need m != 0")

    @property
    def w(self) -> Word:
        return parse_word(self.relator_template.format(m=self.m))

    @property
    def longitude(self) -> Word:
        return parse_word(self.longitude_template.format(m=self.m))

    @property
    def d(self) -> int:
        return twist_degree(self.m)

    @property
    def relator(self) -> Word:
        """r = w x w^-1 y^-1 from wx = yw."""
        x, y = Word.generator("x"), Word.generator("y")
        w = self.w
        return w * x * w.inverse() * y.inverse()

    @property
    def presentation(self) -> Presentation:
        return Presentation(DEFAULT_GENERATORS, (self.relator,))

    @property
    def label(self) -> str:
        return f"J(2,{2 * self.m})"


def parse_knot(token: str) -> TwistKnotFamily:
    """Accept ``J(2,2m)`` or a catalog name such as ``5_2``."""
    text = token.replace(" ", "")
    if text.upper().startswith("J(2,") and text.endswith(")"):
        try:
            n = int(text[4:-1])
        except ValueError as exc:
            raise ParseError(f"malformed knot token {token!r}") from exc
        if n % 2:
            raise ParseError(f"twist knots are J(2,2m); {token!r} has an odd second index")
        if n == 0:
            raise PreconditionError("J(2,0) is the unknot; twist families need m != 0")
        return TwistKnotFamily(n // 2)
    from src.representations.catalog import KnotCatalog

    return TwistKnotFamily(KnotCatalog().twist_parameter(text))


def riley_polynomial(family: TwistKnotFamily) -> MultiPoly:
    """phi(s,t): the (1,2) entry of rho(w x) - rho(y w), i.e. W11 - (s - 1/s) W12."""
    wm = word_eval(family.w, riley_rep())
    phi = wm[0, 0] - (S - S_INV) * wm[0, 1]
    lead = phi.leading_coefficient("t")
    if not lead.is_unit() or phi.degree("t") != family.d:
        raise VerificationError(
            f"{family.label}: Riley polynomial has t-degree {phi.degree('t')} and leading coefficient {lead}"
        )
    logger.debug(f"{family.label}: phi has {len(phi.terms)} terms, deg_t {family.d}")
    return phi


def longitude_matrix(family: TwistKnotFamily) -> PolyMatrix:
    return word_eval(family.longitude, riley_rep())


def longitude_eigenvalue(family: TwistKnotFamily) -> MultiPoly:
    """Lambda(s,t) = rho(lambda)_11, the longitude eigenvalue on the Riley locus."""
    return longitude_matrix(family)[0, 0]


def longitude_inverse_eigenvalue(family: TwistKnotFamily) -> MultiPoly:
    """rho(lambda)_22, which equals 1/Lambda wherever phi vanishes."""
    return longitude_matrix(family)[1, 1]


def complement_torsion(family: TwistKnotFamily) -> Tuple[MultiPoly, MultiPoly]:
    """(N_E, D_E) with tau(E(K)) = det rho(dr/dy) / det(rho(x) - I)."""
    rep = riley_rep()
    fox = fox_eval(family.relator, "y", rep)
    numerator = fox.determinant()
    denominator = (rep.image("x") - PolyMatrix.identity(2)).determinant()
    return numerator, denominator


# ──────────────────────────────────────────────────────────────
# Exact identities modulo phi
# ──────────────────────────────────────────────────────────────
def reduce_mod_riley(p: MultiPoly, phi: MultiPoly) -> MultiPoly:
    return reduce_modulo(p, phi, "t")


def riley_criterion_check(family: TwistKnotFamily) -> bool:
    """Every entry of rho(w x) - rho(y w) vanishes modulo phi."""
    rep = riley_rep()
    phi = riley_polynomial(family)
    w = word_eval(family.w, rep)
    defect = w * rep.image("x") - rep.image("y") * w
    return all(reduce_mod_riley(defect[i, j], phi).is_zero() for i in range(2) for j in range(2))


def longitude_commutation_check(family: TwistKnotFamily) -> bool:
    """rho(lambda) commutes with rho(x) and is upper triangular modulo phi."""
    rep = riley_rep()
    phi = riley_polynomial(family)
    lam = longitude_matrix(family)
    defect = lam * rep.image("x") - rep.image("x") * lam
    entries = [defect[i, j] for i in range(2) for j in range(2)] + [lam[1, 0]]
    return all(reduce_mod_riley(e, phi).is_zero() for e in entries)


def at_imaginary_unit(p: MultiPoly, var: str = "s") -> MultiPoly:
    """Image of p in Z[i][...] with var = i, written with var^0 and var^1 only."""
    i = p._index(var)
    if i < 0:
        return p
    out: Dict[tuple, int] = {}
    for e, c in p.terms.items():
        k = e[i] % 4
        sign = -1 if k >= 2 else 1
        key = e[:i] + (k % 2,) + e[i + 1:]
        out[key] = out.get(key, 0) + sign * c
    return MultiPoly(p.vars, out)


def torsion_identity_mod_riley(
    family: TwistKnotFamily, target_num: MultiPoly, target_den: MultiPoly = MultiPoly.const(1), at_i: bool = False
) -> MultiPoly:
    """Remainder of target_den*N_E - target_num*D_E modulo phi (zero when N_E/D_E = target)."""
    n_e, d_e = complement_torsion(family)
    phi = riley_polynomial(family)
    diff = target_den * n_e - target_num * d_e
    if at_i:
        phi = at_imaginary_unit(phi)
        rem = at_imaginary_unit(reduce_mod_riley(at_imaginary_unit(diff), phi))
        return rem
    return reduce_mod_riley(diff, phi)
