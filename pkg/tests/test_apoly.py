import numpy as np
import pytest

from config.settings import SLOPE_Q_VALUES
from src.algebra.poly import MultiPoly
from src.apoly.apoly import (
    L,
    M,
    a_polynomial,
    canonical_sign,
    hoste_shanahan,
    inversion_symmetry,
    meridian_one,
    same_up_to_unit,
)
from src.apoly.lemmas import (
    monic_slope_poly,
    verify_all,
    verify_diff_divisibility,
    verify_res_extremes,
    verify_unit_extremes,
)
from src.apoly.newton import convex_hull, newton_polygon
from src.errors import PreconditionError
from src.representations.riley import twist_degree


class TestElimination:
    def test_figure_eight(self, reference):
        assert same_up_to_unit(a_polynomial(-1).poly, reference("apoly_4_1"))

    def test_five_two(self, reference):
        assert same_up_to_unit(a_polynomial(2).poly, reference("apoly_5_2"))

    def test_unknot(self):
        a = a_polynomial(0)
        assert a.poly == 1 and a.provenance == "unknot"

    @pytest.mark.parametrize("m", [-2, -1, 1, 2])
    def test_meridian_one_normalization(self, m):
        a = meridian_one(a_polynomial(m).poly)
        assert a.substitute({"M": 1}) == (L + 1) ** twist_degree(m)

    @pytest.mark.parametrize("m", [-1, 2])
    def test_inversion_symmetry(self, m):
        assert inversion_symmetry(a_polynomial(m))

    def test_canonical_sign(self):
        assert canonical_sign(-(L ** 2) + M) == L ** 2 - M
        assert canonical_sign(MultiPoly()).is_zero()


class TestRecursion:
    @pytest.mark.slow
    @pytest.mark.parametrize("m", [-3, -2, 3])
    def test_recursion_equals_elimination(self, m):
        assert same_up_to_unit(hoste_shanahan(m).poly, a_polynomial(m).poly)

    def test_seeds_pass_through(self):
        assert hoste_shanahan(2).poly == a_polynomial(2).poly
        assert hoste_shanahan(0).poly == 1


class TestNewtonPolygon:
    def test_hull_drops_interior_and_collinear(self):
        pts = np.array(sorted([(0, 0), (1, 0), (2, 0), (1, 1), (0, 2), (2, 2)]))
        assert convex_hull(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]

    def test_figure_eight_slopes(self, reference):
        polygon = newton_polygon(reference("apoly_4_1"))
        assert sorted(int(s) for s in polygon.finite_slopes()) == [-4, -4, 4, 4]
        assert polygon.all_slopes_even()

    def test_degenerate_support(self):
        polygon = newton_polygon(L ** 2 + 1)
        assert polygon.degenerate
        with pytest.raises(PreconditionError):
            newton_polygon(MultiPoly())


class TestLemmas:
    def test_unit_extremes(self):
        report = verify_unit_extremes(a_polynomial(2))
        assert report.verified
        assert report.data["leading"]["k"] == 0

    def test_res_extremes_precondition(self):
        with pytest.raises(PreconditionError):
            verify_res_extremes(a_polynomial(-1), 2, 1)
        with pytest.raises(PreconditionError):
            verify_res_extremes(a_polynomial(-1), 1, 0)
        with pytest.raises(PreconditionError):
            verify_res_extremes(a_polynomial(-1), 0, 3)
        with pytest.raises(PreconditionError):
            verify_res_extremes(a_polynomial(-1), -1, -3)

    @pytest.mark.parametrize("q", [3, 5])
    @pytest.mark.parametrize("p", [1, -1])
    def test_res_extremes_higher_q(self, p, q):
        report = verify_res_extremes(a_polynomial(-1), p, q)
        assert report.verified
        low, high = report.data["resultant_degree"]
        assert high > low

    @pytest.mark.parametrize("m", [-2, -1, 1, 2])
    def test_derivative_divisibility(self, m):
        report = verify_diff_divisibility(m)
        assert report.verified
        assert len(report.checks) == twist_degree(m)

    def test_verify_all_figure_eight(self):
        reports = verify_all(-1)
        assert all(r.verified for r in reports), [r.name for r in reports if not r.verified]
        assert sum(r.name == "res-extremes" for r in reports) == 2 * len(SLOPE_Q_VALUES)

    def test_slope_polynomial_even_q(self, reference):
        sp = monic_slope_poly(-1, 2)
        assert sp.f == reference("slope_1_2_on_4_1_s").to_unipoly("s")
        assert sp.f_at_one == -49

    def test_slope_polynomial_odd_q(self):
        sp = monic_slope_poly(-1, 3)
        assert sp.f.is_monic()
        assert abs(sp.f_at_one) == 1

    def test_slope_polynomial_rejects_unknot(self):
        with pytest.raises(PreconditionError):
            monic_slope_poly(0, 1)

    @pytest.mark.parametrize("q, p", [(0, 1), (-3, 1), (3, 2), (3, 0)])
    def test_slope_polynomial_preconditions(self, q, p):
        with pytest.raises(PreconditionError):
            monic_slope_poly(-1, q, p)
