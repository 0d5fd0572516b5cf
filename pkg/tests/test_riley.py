import pytest

from config.settings import TWIST_RANGE
from src.algebra.poly import MultiPoly
from src.errors import ParseError, PreconditionError
from src.representations.riley import (
    TwistKnotFamily,
    at_imaginary_unit,
    complement_torsion,
    eval_group_ring,
    fox_derivative,
    fox_eval,
    longitude_commutation_check,
    longitude_eigenvalue,
    longitude_inverse_eigenvalue,
    parse_knot,
    reduce_mod_riley,
    riley_criterion_check,
    riley_polynomial,
    riley_rep,
    torsion_identity_mod_riley,
    twist_degree,
    word_eval,
)
from src.representations.words import Presentation, Word, parse_word
from src.resultants.matrix import PolyMatrix

s = MultiPoly.var("s")
TWISTS = [m for m in range(TWIST_RANGE[0], TWIST_RANGE[1] + 1) if m]


class TestWords:
    def test_commutator_expansion(self):
        assert str(parse_word("[y,x^-1]")) == "y x^-1 y^-1 x"
        assert len(parse_word("[y,x^-1]^2")) == 8
        assert parse_word("[y,x^-1]^(-1)") == parse_word("x^-1 y x y^-1")

    def test_free_reduce(self):
        assert len(parse_word("x y y^-1 x^-1").free_reduce()) == 0
        assert parse_word("x x^-1 y").free_reduce() == Word.generator("y")

    @pytest.mark.parametrize("text", ["z", "[x,y", "x^", "x^-", "(x y"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_word(text)

    def test_presentation_reduces_relators(self):
        p = Presentation.parse(("x", "y"), ["x y y^-1 x"])
        assert p.relators == (parse_word("x^2"),)


class TestFoxCalculus:
    def test_derivative_of_single_relator(self):
        w = parse_word("x^-1 y x y^-1")
        assert fox_derivative(w, "y") == {parse_word("x^-1"): 1, w: -1}

    def test_fundamental_formula(self):
        rep = riley_rep()
        w = TwistKnotFamily(2).relator
        lhs = PolyMatrix.zeros(2, 2)
        for g in ("x", "y"):
            lhs = lhs + fox_eval(w, g, rep) * (rep.image(g) - PolyMatrix.identity(2))
        assert lhs == word_eval(w, rep) - PolyMatrix.identity(2)

    def test_running_products_match_formal_sum(self):
        rep = riley_rep()
        w = TwistKnotFamily(-1).relator
        assert fox_eval(w, "y", rep) == eval_group_ring(fox_derivative(w, "y"), rep)


class TestRileyPolynomial:
    def test_five_two_matches_reference(self, reference):
        phi = riley_polynomial(TwistKnotFamily(2))
        expected = reference("riley_5_2")
        assert phi in (expected, -expected)

    def test_five_two_at_imaginary_unit(self, reference):
        phi_i = at_imaginary_unit(riley_polynomial(TwistKnotFamily(2)))
        expected = reference("riley_5_2_at_i")
        assert phi_i in (expected, -expected)

    def test_figure_eight_degree(self):
        phi = riley_polynomial(parse_knot("4_1"))
        assert phi.degree("t") == 2
        assert phi.leading_coefficient("t").is_unit()

    @pytest.mark.parametrize("m", TWISTS)
    def test_degree_matches_twist_degree(self, m):
        assert riley_polynomial(TwistKnotFamily(m)).degree("t") == twist_degree(m)

    def test_unknot_rejected(self):
        with pytest.raises(PreconditionError):
            parse_knot("J(2,0)")
        with pytest.raises(PreconditionError):
            TwistKnotFamily(0)
        with pytest.raises(ParseError):
            parse_knot("J(2,3)")

    def test_twist_degree(self):
        assert [twist_degree(m) for m in (1, 2, 3)] == [1, 3, 5]
        assert [twist_degree(m) for m in (-1, -2, -3)] == [2, 4, 6]


class TestIdentitiesModuloPhi:
    @pytest.mark.parametrize("m", [-2, -1, 1, 2])
    def test_riley_criterion(self, m):
        assert riley_criterion_check(TwistKnotFamily(m))

    @pytest.mark.parametrize("m", [-1, 2])
    def test_longitude_commutes_with_meridian(self, m):
        assert longitude_commutation_check(TwistKnotFamily(m))

    @pytest.mark.parametrize("m", [-1, 2])
    def test_longitude_eigenvalue_is_a_unit(self, m):
        family = TwistKnotFamily(m)
        product = longitude_eigenvalue(family) * longitude_inverse_eigenvalue(family)
        assert reduce_mod_riley(product - 1, riley_polynomial(family)).is_zero()

    def test_figure_eight_torsion(self):
        target = -2 * (s + s ** -1 - 1)
        assert torsion_identity_mod_riley(TwistKnotFamily(-1), target).is_zero()

    def test_five_two_torsion_at_imaginary_unit(self, reference):
        rem = torsion_identity_mod_riley(
            TwistKnotFamily(2), reference("torsion_5_2_at_i"), MultiPoly.const(2), at_i=True
        )
        assert rem.is_zero()

    def test_meridian_denominator(self):
        _, d_e = complement_torsion(TwistKnotFamily(1))
        assert d_e == -(s - 1) * (s - 1) * s ** -1
