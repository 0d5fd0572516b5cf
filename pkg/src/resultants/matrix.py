"""
PolyMatrix: dense matrices over Z[vars^{±1}] and their exact determinants.

Three determinant strategies:
    - cofactor expansion (dimension <= 4, also the test oracle)
    - fraction-free Bareiss elimination with exact division (the default above 4x4)
    - evaluation/interpolation: specialise one variable at integer points,
      recurse down to integer matrices, and interpolate back exactly
Integer matrices at the bottom of either route go to sympy's DomainMatrix.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Sequence

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.algebra.poly import MultiPoly, PolyLike, _coerce, divide_exact
from src.errors import InternalConsistencyError, PreconditionError

logger = logging.getLogger(__name__)


class PolyMatrix:
    """Immutable rectangular grid of MultiPoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, grid: Sequence[Sequence[PolyLike]]):
        entries = [[_coerce(e) for e in row] for row in grid]
        widths = {len(r) for r in entries}
        if len(widths) > 1:
            raise PreconditionError(f"ragged matrix rows: widths {sorted(widths)}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", widths.pop() if widths else 0)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> List[MultiPoly]:
        return list(self.entries[i])

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def __mul__(self, other) -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            c = _coerce(other)
            return self.map(lambda e: e * c)
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MultiPoly()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    __rmul__ = __mul__

    def _check_same_shape(self, other: "PolyMatrix") -> None:
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch {self.shape} vs {other.shape}")

    def trace(self) -> MultiPoly:
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), MultiPoly())

    def adjugate2(self) -> "PolyMatrix":
        """Adjugate of a 2x2 matrix; the inverse when the determinant is 1."""
        if self.shape != (2, 2):
            raise PreconditionError("adjugate2 needs a 2x2 matrix")
        (a, b), (c, d) = self.entries
        return PolyMatrix([[d, -b], [-c, a]])

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.rows) and self.rows == self.cols

    def variables(self) -> List[str]:
        return sorted({v for row in self.entries for e in row for v in e.vars})

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix([{body}])"

    def determinant(self, method: str = "auto") -> MultiPoly:
        return determinant(self, method)


# ──────────────────────────────────────────────────────────────
# Determinants
# ──────────────────────────────────────────────────────────────
def determinant(m: PolyMatrix, method: str = "auto") -> MultiPoly:
    """Exact determinant. method: auto | cofactor | bareiss | interpolate.

    ``auto`` expands cofactors up to 4x4 and runs Bareiss elimination above that.
    """
    if m.rows != m.cols:
        raise PreconditionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if method not in ("auto", "cofactor", "bareiss", "interpolate"):
        raise PreconditionError(f"unknown determinant method {method!r}")
    n = m.rows
    if n == 0:
        return MultiPoly.const(1)
    if method == "cofactor" or (method == "auto" and n <= 4):
        return _cofactor(m.entries)
    if all(e.is_constant() for row in m.entries for e in row):
        return MultiPoly.const(bareiss_int([[e.constant_value() for e in row] for row in m.entries]))
    if method == "interpolate":
        return _interpolated(m.entries)
    return _bareiss_poly(m.entries)


def _cofactor(a: List[List[MultiPoly]]) -> MultiPoly:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = MultiPoly()
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_int(a: List[List[int]]) -> int:
    """Determinant of an integer matrix by sympy's fraction-free elimination over ZZ."""
    if not a:
        return 1
    return int(DomainMatrix.from_list(a, ZZ).det())


def _bareiss_poly(a: List[List[MultiPoly]]) -> MultiPoly:
    """Bareiss over the polynomial ring, pivoting on the lowest-total-degree entry.

    Ties go to the lowest row index so the elimination order is deterministic.
    """
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        best: Optional[int] = None
        best_deg = None
        for i in range(k, n):
            e = m[i][k]
            if e.is_zero():
                continue
            d = (e.degree(), len(e.terms))
            if best is None or d < best_deg:
                best, best_deg = i, d
        if best is None:
            return MultiPoly()
        if best != k:
            m[k], m[best] = m[best], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            lead = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pivot - lead * m[k][j]
                m[i][j] = divide_exact(num, prev) if k else num
        prev = pivot
        logger.debug(f"bareiss step {k + 1}/{n - 1}")
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _interpolated(a: List[List[MultiPoly]]) -> MultiPoly:
    """Determinant by specialising variables at integer points and interpolating."""
    # Clear Laurent exponents row by row; the determinant picks up the product.
    cleared: List[List[MultiPoly]] = []
    unit: Dict[str, int] = {}
    for row in a:
        powers: Dict[str, int] = {}
        for e in row:
            for v, k in e.monomial_part().items():
                powers[v] = min(powers.get(v, 0), k)
        shift = {v: -k for v, k in powers.items() if k < 0}
        if shift:
            mono = MultiPoly.monomial(1, shift)
            row = [e * mono for e in row]
            for v, k in shift.items():
                unit[v] = unit.get(v, 0) + k
        cleared.append(row)
    det = _interpolate_recursive(cleared)
    if unit:
        det = det * MultiPoly.monomial(1, {v: -k for v, k in unit.items()})
    return det


def _degree_bound(a: List[List[MultiPoly]], v: str) -> int:
    n = len(a)
    row_sum = 0
    for row in a:
        d = max((e.degree(v) for e in row if e), default=-1)
        if d < 0:
            return -1
        row_sum += d
    col_sum = 0
    for j in range(n):
        d = max((a[i][j].degree(v) for i in range(n) if a[i][j]), default=-1)
        if d < 0:
            return -1
        col_sum += d
    return min(row_sum, col_sum)


def _interpolate_recursive(a: List[List[MultiPoly]]) -> MultiPoly:
    variables = sorted({v for row in a for e in row for v in e.vars})
    if not variables:
        return MultiPoly.const(bareiss_int([[e.constant_value() for e in row] for row in a]))
    # Interpolate the variable with the smallest bound at the top level.
    bounds = {v: _degree_bound(a, v) for v in variables}
    if any(b < 0 for b in bounds.values()):
        return MultiPoly()
    v = min(variables, key=lambda x: (bounds[x], x))
    bound = bounds[v]
    points = _sample_points(bound + 1)
    values = []
    for x0 in points:
        specialized = [[e.specialize(v, x0) for e in row] for row in a]
        values.append(_interpolate_recursive(specialized))
    logger.debug(f"interpolated determinant in {v}: {len(points)} points, remaining {len(variables) - 1} vars")
    return interpolate_poly(v, points, values)


def _sample_points(n: int) -> List[int]:
    pts = [0]
    k = 1
    while len(pts) < n:
        pts.append(k)
        if len(pts) < n:
            pts.append(-k)
        k += 1
    return pts


def interpolate_poly(v: str, points: Sequence[int], values: Sequence[MultiPoly]) -> MultiPoly:
    """Exact interpolation, coefficientwise over the remaining variables.

    Every coefficient column is solved against the same Vandermonde system
    over QQ; a non-integral solution is an internal error.
    """
    others = tuple(sorted({o for val in values for o in val.vars}))
    aligned = []
    for val in values:
        d = {}
        for e, c in val.terms.items():
            full = dict(zip(val.vars, e))
            d[tuple(full.get(o, 0) for o in others)] = c
        aligned.append(d)
    keys = sorted(set().union(*aligned))
    if not keys:
        return MultiPoly()
    n = len(points)
    vandermonde = DomainMatrix.from_list([[x ** k for k in range(n)] for x in points], QQ)
    rhs = DomainMatrix.from_list([[d.get(key, 0) for key in keys] for d in aligned], QQ)
    solution = vandermonde.lu_solve(rhs).to_list()
    out: Dict[tuple, int] = {}
    for k, row in enumerate(solution):
        for key, c in zip(keys, row):
            if QQ.denom(c) != 1:
                raise InternalConsistencyError(f"interpolated coefficient {c} of {v}^{k} is not an integer")
            if c:
                out[key + (k,)] = int(QQ.numer(c))
    return MultiPoly(others + (v,), out)
