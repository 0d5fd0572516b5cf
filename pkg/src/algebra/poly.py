"""
MultiPoly: exact multivariate Laurent polynomials with integer coefficients.

A polynomial is held as ``x^shift * core`` where ``core`` is a sympy
``PolyElement`` over ZZ that no variable divides and ``shift`` is an integer
exponent vector. The variable tuple is always the sorted tuple of variables
that actually occur, so two equal polynomials have identical internal state,
print identically and hash identically.
"""

from __future__ import annotations

import json
import logging
import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import Add, Symbol, expand
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from src.errors import NotExactError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
PolyLike = Union["MultiPoly", int]


@lru_cache(maxsize=None)
def laurent_ring(names: Tuple[str, ...]) -> PolyRing:
    """Polynomial ring ZZ[names] holding the cores; lex order on the sorted names."""
    return PolyRing(names, ZZ)


def _normalize(names: Tuple[str, ...], shift: Exponents, core: PolyElement):
    """Move common monomial factors of core into shift and drop unused variables."""
    if not core:
        return (), (), laurent_ring(()).zero
    if not names:
        return names, shift, core
    cols = list(zip(*core.itermonoms()))
    low = [min(c) for c in cols]
    shift = tuple(a + b for a, b in zip(shift, low))
    keep = [j for j in range(len(names)) if shift[j] or max(cols[j]) > low[j]]
    if len(keep) == len(names) and not any(low):
        return names, shift, core
    names = tuple(names[j] for j in keep)
    ring = laurent_ring(names)
    core = ring.from_dict(
        {tuple(m[j] - low[j] for j in keep): c for m, c in core.iterterms()}
    )
    return names, tuple(shift[j] for j in keep), core


class MultiPoly:
    """Immutable Laurent polynomial in named variables over Z."""

    __slots__ = ("vars", "shift", "core", "_terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Optional[Mapping[Exponents, int]] = None):
        vars = tuple(vars)
        order = sorted(range(len(vars)), key=lambda i: vars[i])
        names = tuple(vars[i] for i in order)
        clean = {tuple(e[i] for i in order): int(c) for e, c in (terms or {}).items() if c}
        if clean and names:
            low = tuple(min(col) for col in zip(*clean))
            clean = {tuple(a - b for a, b in zip(e, low)): c for e, c in clean.items()}
        else:
            low = (0,) * len(names)
        core = laurent_ring(names).from_dict(clean)
        self._set(*_normalize(names, low, core))

    def _set(self, names, shift, core) -> None:
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "_terms", None)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, names: Tuple[str, ...], shift: Exponents, core: PolyElement) -> "MultiPoly":
        p = cls.__new__(cls)
        p._set(*_normalize(names, shift, core))
        return p

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # ── constructors ─────────────────────────────────────────
    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        return cls._make((), (), laurent_ring(()).ground_new(int(c)))

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._make((name,), (1,), laurent_ring((name,)).one)

    @classmethod
    def monomial(cls, coeff: int, powers: Mapping[str, int]) -> "MultiPoly":
        names = tuple(sorted(powers))
        return cls._make(names, tuple(powers[v] for v in names), laurent_ring(names).ground_new(int(coeff)))

    @classmethod
    def from_coefficients(cls, var: str, coeffs: Mapping[int, PolyLike]) -> "MultiPoly":
        """Assemble sum_k coeffs[k] * var^k; coefficients must not involve var."""
        out = cls()
        x = cls.var(var)
        for k, c in coeffs.items():
            c = _coerce(c)
            if c.is_zero():
                continue
            if var in c.vars:
                raise PreconditionError(f"coefficient of {var}^{k} involves {var}")
            out = out + c * x ** k
        return out

    # ── basic queries ────────────────────────────────────────
    @property
    def terms(self) -> Dict[Exponents, int]:
        """Exponent vector -> coefficient, with the shift applied."""
        if self._terms is None:
            shift = self.shift
            object.__setattr__(
                self,
                "_terms",
                {tuple(a + b for a, b in zip(m, shift)): int(c) for m, c in self.core.iterterms()},
            )
        return self._terms

    def is_zero(self) -> bool:
        return not self.core

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> int:
        if self.vars:
            raise PreconditionError(f"{self} is not a constant")
        return int(self.core.get((), 0))

    def is_monomial(self) -> bool:
        return len(self.core) == 1

    def is_unit(self) -> bool:
        """True for ±(monomial), the units of the Laurent ring."""
        return len(self.core) == 1 and abs(int(self.core.LC)) == 1

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            return -1

    def degree(self, var: Optional[str] = None) -> int:
        """Degree in var (total degree if var is None); -1 for the zero polynomial."""
        if not self.core:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._index(var)
        if i < 0:
            return 0
        return self.shift[i] + self.core.degree(i)

    def min_degree(self, var: str) -> int:
        i = self._index(var)
        return self.shift[i] if i >= 0 else 0

    def coefficients(self, var: str) -> Dict[int, "MultiPoly"]:
        """Coefficients in var as polynomials in the remaining variables."""
        i = self._index(var)
        if i < 0:
            return {0: self} if self.core else {}
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: Dict[int, Dict[Exponents, int]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiPoly(rest, t) for k, t in buckets.items()}

    def coefficient(self, var: str, k: int) -> "MultiPoly":
        return self.coefficients(var).get(k, MultiPoly())

    def leading_coefficient(self, var: str) -> "MultiPoly":
        return self.coefficient(var, self.degree(var))

    def trailing_coefficient(self, var: str) -> "MultiPoly":
        return self.coefficient(var, self.min_degree(var))

    def leading_term(self) -> Tuple[Exponents, int]:
        """Leading term in graded lex order."""
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def sorted_terms(self) -> List[Tuple[Exponents, int]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # ── arithmetic ───────────────────────────────────────────
    def __neg__(self) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p._set(self.vars, self.shift, -self.core)
        return p

    def __add__(self, other: PolyLike) -> "MultiPoly":
        other = _coerce(other)
        names, (sa, ca), (sb, cb) = _align(self, other)
        low = tuple(map(min, sa, sb))
        if sa != low:
            ca = ca.mul_monom(tuple(a - b for a, b in zip(sa, low)))
        if sb != low:
            cb = cb.mul_monom(tuple(a - b for a, b in zip(sb, low)))
        return MultiPoly._make(names, low, ca + cb)

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        other = _coerce(other)
        if not self.core or not other.core:
            return MultiPoly()
        names, (sa, ca), (sb, cb) = _align(self, other)
        return MultiPoly._make(names, tuple(a + b for a, b in zip(sa, sb)), ca * cb)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n == 0:
            return MultiPoly.const(1)
        if n < 0:
            if not self.is_monomial():
                raise PreconditionError(f"negative power of a non-monomial: ({self})^{n}")
            if not self.is_unit():
                raise PreconditionError(f"monomial {self} is not a unit over Z")
            return MultiPoly._make(self.vars, tuple(n * k for k in self.shift), self.core ** (-n))
        return MultiPoly._make(self.vars, tuple(n * k for k in self.shift), self.core ** n)

    def scale(self, k: int) -> "MultiPoly":
        return MultiPoly._make(self.vars, self.shift, self.core.mul_ground(k))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.shift == other.shift
            and dict.__eq__(self.core, other.core)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.vars, self.shift, frozenset(self.core.items())))
            )
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.core)

    # ── Laurent bookkeeping ──────────────────────────────────
    def monomial_part(self) -> Dict[str, int]:
        """Minimal exponent of each variable: the largest monomial dividing self."""
        if not self.core:
            return {}
        return dict(zip(self.vars, self.shift))

    def split_monomial(self) -> Tuple[Dict[str, int], "MultiPoly"]:
        """Return (powers, core) with self = x^powers * core and core free of monomial factors."""
        powers = self.monomial_part()
        if not any(powers.values()):
            return powers, self
        return powers, MultiPoly._make(self.vars, (0,) * len(self.vars), self.core)

    def clear_laurent(self, var: Optional[str] = None) -> Tuple["MultiPoly", Dict[str, int]]:
        """Multiply by the minimal monomial making exponents nonnegative.

        Returns (cleared, unit) where self = x^unit * cleared. With var given,
        only that variable is cleared.
        """
        powers = self.monomial_part()
        unit = {v: k for v, k in powers.items() if k < 0 and (var is None or v == var)}
        if not unit:
            return self, {}
        return self * MultiPoly.monomial(1, {v: -k for v, k in unit.items()}), unit

    # ── substitution and evaluation ──────────────────────────
    def substitute(self, bindings: Mapping[str, PolyLike]) -> "MultiPoly":
        """Exact composition; a negative exponent requires a unit monomial binding."""
        bound = {v: _coerce(p) for v, p in bindings.items()}
        if not any(v in bound for v in self.vars):
            return self
        cache: Dict[Tuple[str, int], MultiPoly] = {}

        def power(v: str, k: int) -> MultiPoly:
            key = (v, k)
            if key not in cache:
                base = bound[v]
                if k < 0 and not base.is_unit():
                    raise PreconditionError(
                        f"cannot substitute non-monomial {base} into negative power {v}^{k}"
                    )
                cache[key] = base ** k
            return cache[key]

        free = [i for i, v in enumerate(self.vars) if v not in bound]
        free_vars = tuple(self.vars[i] for i in free)
        bound_idx = [i for i, v in enumerate(self.vars) if v in bound]
        groups: Dict[Exponents, Dict[Exponents, int]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in bound_idx)
            groups.setdefault(key, {})[tuple(e[i] for i in free)] = c
        out = MultiPoly()
        for key, rest in groups.items():
            factor = MultiPoly.const(1)
            for i, k in zip(bound_idx, key):
                if k:
                    factor = factor * power(self.vars[i], k)
            out = out + factor * MultiPoly(free_vars, rest)
        return out

    def specialize(self, var: str, value: int) -> "MultiPoly":
        """Substitute an integer for var; var must occur with nonnegative exponents."""
        i = self._index(var)
        if i < 0:
            return self
        if self.shift[i] < 0:
            raise PreconditionError(f"{var} has a negative exponent; clear it before specializing")
        rest = self.vars[:i] + self.vars[i + 1:]
        ring = laurent_ring(rest)
        at = self.core.evaluate(i, value)
        core = ring.from_dict(dict(at)) if isinstance(at, PolyElement) else ring.ground_new(at)
        core = core.mul_ground(value ** self.shift[i])
        return MultiPoly._make(rest, self.shift[:i] + self.shift[i + 1:], core)

    def evaluate(self, values: Mapping[str, object]):
        """Numeric evaluation; values may be ints, Fractions, floats or mpmath numbers."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                x = values[v]
                if k < 0 and isinstance(x, int):
                    term = term * Fraction(1, x ** (-k))
                else:
                    term = term * x ** k
            total = total + term
        return total

    # ── calculus ─────────────────────────────────────────────
    def scaled_derivative(self, var: str, k: int) -> "MultiPoly":
        """(1/k!) d^k/dvar^k; the division by k! is exact over Z."""
        if k < 0:
            raise PreconditionError("derivative order must be nonnegative")
        if k == 0:
            return self
        i = self._index(var)
        if i < 0:
            return MultiPoly()
        if self.shift[i] < 0:
            raise PreconditionError(f"{var} has negative exponents in {self}")
        core = self.core.mul_monom(_unit_vector(len(self.vars), i, self.shift[i]))
        for _ in range(k):
            core = core.diff(i)
        if core:
            core = core.quo_ground(factorial(k))
        shift = self.shift[:i] + (0,) + self.shift[i + 1:]
        return MultiPoly._make(self.vars, shift, core)

    def derivative(self, var: str) -> "MultiPoly":
        """Partial derivative; Laurent exponents allowed."""
        i = self._index(var)
        if i < 0:
            return MultiPoly()
        n = len(self.vars)
        # d(x^k c) = x^(k-1) (k c + x c')
        core = self.core.mul_ground(self.shift[i]) + self.core.diff(i).mul_monom(_unit_vector(n, i, 1))
        shift = tuple(k - 1 if j == i else k for j, k in enumerate(self.shift))
        return MultiPoly._make(self.vars, shift, core)

    # ── conversions ──────────────────────────────────────────
    def to_unipoly(self, var: str):
        from src.algebra.unipoly import UniPoly

        extra = [v for v in self.vars if v != var]
        if extra:
            raise PreconditionError(f"{self} involves {extra} besides {var}")
        if self.min_degree(var) < 0:
            raise PreconditionError(f"{self} is Laurent in {var}; clear it first")
        coeffs = [0] * (self.degree(var) + 1) if self.core else []
        for e, c in self.terms.items():
            coeffs[e[0] if e else 0] = c
        return UniPoly(coeffs, var)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "MultiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            vars = tuple(data["vars"])
            terms: Dict[Exponents, int] = {}
            for e, c in data["terms"]:
                if len(e) != len(vars):
                    raise ParseError(f"exponent vector {e} does not match vars {vars}")
                key = tuple(int(x) for x in e)
                terms[key] = terms.get(key, 0) + int(c)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls(vars, terms)


# ──────────────────────────────────────────────────────────────
# Helpers
# ──────────────────────────────────────────────────────────────
def _coerce(p: PolyLike) -> MultiPoly:
    if isinstance(p, MultiPoly):
        return p
    if isinstance(p, int):
        return MultiPoly.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def _align(a: MultiPoly, b: MultiPoly):
    """Common sorted variables and both (shift, core) pairs lifted into that ring."""
    if a.vars == b.vars:
        return a.vars, (a.shift, a.core), (b.shift, b.core)
    names = tuple(sorted(set(a.vars) | set(b.vars)))
    return names, _lift(a, names), _lift(b, names)


def _lift(p: MultiPoly, names: Tuple[str, ...]) -> Tuple[Exponents, PolyElement]:
    at = dict(zip(p.vars, p.shift))
    return tuple(at.get(v, 0) for v in names), p.core.set_ring(laurent_ring(names))


def _unit_vector(n: int, i: int, k: int) -> Exponents:
    return tuple(k if j == i else 0 for j in range(n))


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(c: int) -> MultiPoly:
    return MultiPoly.const(c)


# ──────────────────────────────────────────────────────────────
# Exact division and reduction
# ──────────────────────────────────────────────────────────────
def divide_exact(f: PolyLike, g: PolyLike) -> MultiPoly:
    """Quotient q with f = g*q in the Laurent ring; NotExactError otherwise.

    Monomials are units, so divisibility is decided on the cores alone.
    """
    f, g = _coerce(f), _coerce(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return MultiPoly()
    names, (sf, cf), (sg, cg) = _align(f, g)
    try:
        q = cf.exquo(cg)
    except ExactQuotientFailed:
        _, rem = cf.div(cg)
        lead = MultiPoly._make(names, (0,) * len(names), rem.ring.term_new(rem.LM, rem.LC))
        raise NotExactError(f"({f}) is not divisible by ({g})", remainder_lead=str(lead)) from None
    return MultiPoly._make(names, tuple(a - b for a, b in zip(sf, sg)), q)


def divides(g: PolyLike, f: PolyLike) -> bool:
    try:
        divide_exact(f, g)
        return True
    except NotExactError:
        return False


def reduce_modulo(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Remainder of f modulo g in var, where g's leading var-coefficient is a unit.

    The pseudo-remainder lc^N * f mod g is divided back by the unit lc^N, so the
    result is the exact reduction over the coefficient ring.
    """
    f, g = _coerce(f), _coerce(g)
    if f.min_degree(var) < 0 or g.min_degree(var) < 0:
        raise PreconditionError(f"reduction modulo a polynomial needs nonnegative {var}-exponents")
    if g.is_zero():
        raise ZeroDivisionError("reduction modulo zero")
    lc = g.leading_coefficient(var)
    if not lc.is_unit():
        raise PreconditionError(f"leading coefficient {lc} of the modulus is not a unit")
    dg = g.degree(var)
    if dg == 0:
        return MultiPoly()
    if f.is_zero() or f.degree(var) < dg:
        return f
    names, (sf, cf), (sg, cg) = _align(f, g)
    i = names.index(var)
    n = len(names)
    cf = cf.mul_monom(_unit_vector(n, i, sf[i]))
    cg = cg.mul_monom(_unit_vector(n, i, sg[i]))
    rest_shift = tuple(0 if j == i else k for j, k in enumerate(sf))
    power = f.degree(var) - dg + 1
    remainder = MultiPoly._make(names, rest_shift, cf.prem(cg, i))
    lead = MultiPoly._make(names, (0,) * n, cg.coeff_wrt(i, dg))
    return remainder * lead ** (-power)


# ──────────────────────────────────────────────────────────────
# Content
# ──────────────────────────────────────────────────────────────
def content_primitive(f: MultiPoly, var: str) -> Tuple[MultiPoly, MultiPoly]:
    """Split f = content * primitive with content free of var.

    The content is the gcd of the var-coefficients, taken by sympy over ZZ
    in the remaining variables. The primitive part is signed so its leading
    term (graded lex) is positive.
    """
    if f.is_zero():
        raise PreconditionError("content of the zero polynomial")
    i = f._index(var)
    if i < 0:
        content = f
    else:
        core = f.core
        degrees = sorted({m[i] for m in core.itermonoms()})
        common = reduce(lambda a, b: a.gcd(b), (core.coeff_wrt(i, k) for k in degrees))
        rest_shift = tuple(0 if j == i else k for j, k in enumerate(f.shift))
        content = MultiPoly._make(f.vars, rest_shift, common)
    primitive = divide_exact(f, content)
    if primitive.leading_term()[1] < 0:
        primitive, content = -primitive, -content
    return content, primitive


# ──────────────────────────────────────────────────────────────
# Text grammar
# ──────────────────────────────────────────────────────────────
def format_poly(p: MultiPoly) -> str:
    """Canonical text form, terms in descending graded lex order."""
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for e, c in p.sorted_terms():
        factors = []
        for v, k in zip(p.vars, e):
            if k == 1:
                factors.append(v)
            elif k:
                factors.append(f"{v}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_GRAMMAR = re.compile(r"[A-Za-z0-9+\-*^()\s]+")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_TRANSFORMS = standard_transformations + (convert_xor,)


def parse_poly(text: str) -> MultiPoly:
    """Parse the text grammar, e.g. ``L^2*M^4 - L*M^8 + M^4``.

    Every name is bound to a plain sympy Symbol, so no sympy constant or
    function can leak into the result.
    """
    if not text or not text.strip():
        raise ParseError("empty polynomial text")
    if not _GRAMMAR.fullmatch(text):
        bad = next(ch for ch in text if not _GRAMMAR.fullmatch(ch))
        raise ParseError(f"unexpected character {bad!r} in {text!r}")
    symbols = {name: Symbol(name) for name in _NAME.findall(text)}
    try:
        expr = parse_expr(text, local_dict=symbols, transformations=_TRANSFORMS)
    except Exception as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from exc
    return _from_expr(expand(expr), text)


def _from_expr(expr, text: str) -> MultiPoly:
    names = tuple(sorted(str(s) for s in expr.free_symbols))
    index = {name: j for j, name in enumerate(names)}
    terms: Dict[Exponents, int] = {}
    for term in Add.make_args(expr):
        coeff, factors = term.as_coeff_mul()
        if not coeff.is_Integer:
            raise ParseError(f"non-integer coefficient {coeff} in {text!r}")
        e = [0] * len(names)
        for factor in factors:
            base, k = factor.as_base_exp()
            if not (base.is_Symbol and k.is_Integer):
                raise ParseError(f"{factor} is not a Laurent monomial in {text!r}")
            e[index[str(base)]] += int(k)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + int(coeff)
    return MultiPoly(names, terms)
