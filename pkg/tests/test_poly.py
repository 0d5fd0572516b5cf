import pytest

from src.algebra.poly import MultiPoly, content_primitive, divide_exact, divides, parse_poly, reduce_modulo
from src.algebra.unipoly import UniPoly, gcd_univariate, squarefree_decompose, squarefree_part, squarefree_unit
from src.errors import NotExactError, ParseError, PreconditionError

x, y, s, t = (MultiPoly.var(v) for v in "xyst")


class TestMultiPoly:
    def test_parse_and_print(self):
        assert str(parse_poly("x^2 - 1")) == "x^2 - 1"
        p = parse_poly("L^2*M^4 - L*M^8 + M^4")
        assert parse_poly(str(p)) == p
        assert p.degree("L") == 2 and p.degree("M") == 8

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_poly("x^^2")
        with pytest.raises(ParseError):
            parse_poly("3*(x + 1")

    def test_json_form(self):
        p = parse_poly("3*x^2*y - y^-1 + 7")
        assert MultiPoly.from_json(p.to_json()) == p
        assert all(isinstance(c, str) for _, c in p.to_json()["terms"])

    def test_ring_operations(self):
        assert (x + 1) * (x - 1) == x ** 2 - 1
        assert (x + y) ** 3 == x ** 3 + 3 * x ** 2 * y + 3 * x * y ** 2 + y ** 3
        assert s * s ** -1 == 1
        assert (x - x).is_zero()
        assert (x ** 2 * y) ** 0 == 1

    def test_negative_powers(self):
        assert s ** -1 * s == 1
        assert (s ** 2) ** -1 * s ** 2 == 1
        assert (s ** 2) ** -1 == s ** -2
        assert (-(s * t)) ** -3 == -(s ** -3) * t ** -3
        assert (s ** -1).degree("s") == -1 and (s ** -1).min_degree("s") == -1

    def test_parse_negative_exponents(self):
        L, M = MultiPoly.var("L"), MultiPoly.var("M")
        assert parse_poly("L*M^(-8)") * M ** 8 == L
        assert parse_poly("s^-1") == s ** -1
        assert parse_poly("s^-1") * s == 1
        assert str(parse_poly("s + s^-1")) == "s + s^-1"

    def test_parse_rejects_non_polynomials(self):
        for text in ("", "x/2", "(x + 1)^-1", "x^y", "2^-1", "x_1"):
            with pytest.raises(ParseError):
                parse_poly(text)

    def test_negative_power_of_non_monomial(self):
        with pytest.raises(PreconditionError):
            (x + 1) ** -1

    def test_equal_polynomials_share_state(self):
        a = (x + y) * (x - y) + y ** 2
        assert a == x ** 2
        assert a.vars == ("x",)
        assert hash(a) == hash(x ** 2)

    def test_substitute(self):
        assert (x ** 2 + y).substitute({"x": y + 1}) == y ** 2 + 3 * y + 1
        assert (s ** -2 * t).substitute({"s": t}) == t ** -1
        with pytest.raises(PreconditionError):
            (s ** -1).substitute({"s": t + 1})

    def test_scaled_derivative(self):
        assert (x ** 4).scaled_derivative("x", 2) == 6 * x ** 2
        assert (x ** 3 * y).scaled_derivative("x", 3) == y
        assert (x ** 3).scaled_derivative("x", 4).is_zero()
        assert (x ** 2 + y).scaled_derivative("x", 0) == x ** 2 + y

    def test_divide_exact(self):
        assert divide_exact(x ** 2 - 1, x - 1) == x + 1
        assert divide_exact(s ** 3 - s, s ** -1 * (s - 1)) == s ** 2 * (s + 1)
        with pytest.raises(NotExactError) as info:
            divide_exact(x ** 2 + 1, x - 1)
        assert info.value.remainder_lead
        assert divides(x + y, x ** 2 - y ** 2)
        assert not divides(x + y + 1, x ** 2 - y ** 2)

    def test_reduce_modulo_unit_leading(self):
        phi = t ** 2 + s * t + 1
        assert reduce_modulo(t ** 2, phi, "t") == -s * t - 1
        with pytest.raises(PreconditionError):
            reduce_modulo(t ** 2, 2 * t ** 2 + 1, "t")

    def test_content_primitive(self):
        content, primitive = content_primitive(2 * x * y + 4 * y, "x")
        assert content == 2 * y
        assert primitive == x + 2
        content, primitive = content_primitive(-(x ** 2) * (y ** 2 - 1) + (y - 1), "x")
        assert content * primitive == -(x ** 2) * (y ** 2 - 1) + (y - 1)
        assert primitive.leading_term()[1] > 0


class TestUniPoly:
    def test_gcd(self):
        f = UniPoly.from_roots_int([1, 2, 3])
        g = UniPoly.from_roots_int([2, 3, 5])
        assert gcd_univariate(f, g) == UniPoly.from_roots_int([2, 3])
        assert gcd_univariate(f, UniPoly([7])) == UniPoly([1])

    def test_squarefree_decompose(self):
        a, b = UniPoly([-1, 1]), UniPoly([1, 0, 1])
        f = a * b ** 2 * UniPoly([2])
        factors = squarefree_decompose(f)
        assert factors == [(a, 1), (b, 2)]
        assert squarefree_unit(f, factors) == 2
        assert squarefree_part(f) == a * b

    def test_squarefree_of_zero(self):
        with pytest.raises(PreconditionError):
            squarefree_decompose(UniPoly([]))

    def test_taylor_shift_and_reverse(self):
        f = UniPoly([-2, 0, 1])
        assert f.taylor_shift(1) == UniPoly([-1, 2, 1])
        assert f.reverse() == UniPoly([1, 0, -2])
        assert f.substitute_scaled(-1) == f

    def test_exact_div(self):
        f = UniPoly.from_roots_int([1, -1])
        assert f.exact_div(UniPoly([-1, 1])) == UniPoly([1, 1])
        with pytest.raises(NotExactError):
            UniPoly([1, 0, 1]).exact_div(UniPoly([-1, 1]))
        with pytest.raises(NotExactError):
            UniPoly([1, 1]).exact_div(UniPoly([1, 2]))
