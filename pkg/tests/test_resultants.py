import random

import mpmath as mp
import pytest

from src.algebra.poly import MultiPoly, divide_exact, reduce_modulo
from src.algebra.unipoly import UniPoly, gcd_univariate
from src.errors import PreconditionError, VerificationError
from src.numerics.roots import roots, unipoly_residual
from src.representations.riley import TwistKnotFamily, longitude_eigenvalue, riley_polynomial
from src.resultants.algebraic import alg_combine, graeffe_square, reverse_poly, shift_invert
from src.resultants.matrix import PolyMatrix, bareiss_int, determinant
from src.resultants.resultant import (
    check_derivative_divisibility,
    norm_resultant,
    resultant,
    sylvester_matrix,
)

x, y, a, b = (MultiPoly.var(v) for v in ("x", "y", "a", "b"))


def random_poly(rng: random.Random, degree: int, var: str = "x") -> UniPoly:
    coeffs = [rng.randint(-9, 9) for _ in range(degree)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return UniPoly(coeffs, var)


class TestSylvester:
    def test_linear_pair(self):
        m = sylvester_matrix(x - a, x - b, "x")
        assert m == PolyMatrix([[1, -a], [1, -b]])

    def test_worked_example(self):
        f, g = 2 * x ** 2 + y ** 2 - 1, x * y - 1
        assert sylvester_matrix(f, g, "x").shape == (3, 3)
        assert resultant(f, g, "x") == y ** 4 - y ** 2 + 2

    def test_shape(self):
        m = sylvester_matrix(x ** 2 + 1, x ** 3 + x + 1, "x")
        assert m.shape == (5, 5)
        assert m.row(0)[:3] == [1, 0, 1] and m.row(3)[:4] == [1, 0, 1, 1]

    def test_constant_inputs_rejected(self):
        with pytest.raises(PreconditionError):
            sylvester_matrix(MultiPoly.const(2), MultiPoly.const(3), "x")


class TestDeterminant:
    def test_identity_and_duplicate_row(self):
        assert determinant(PolyMatrix.identity(5)) == 1
        rows = [[x, y, 1], [x, y, 1], [2, x * y, y]]
        assert determinant(PolyMatrix(rows)).is_zero()

    def test_non_square(self):
        with pytest.raises(PreconditionError):
            determinant(PolyMatrix([[1, 2]]))

    def test_bareiss_int_matches_cofactor(self):
        rng = random.Random(5)
        for _ in range(20):
            grid = [[rng.randint(-20, 20) for _ in range(5)] for _ in range(5)]
            assert bareiss_int(grid) == determinant(PolyMatrix(grid), "cofactor").constant_value()

    @pytest.mark.parametrize("method", ["bareiss", "interpolate"])
    def test_polynomial_strategies_agree(self, method):
        rng = random.Random(11)
        for n in (3, 4, 5):
            grid = [
                [rng.randint(-3, 3) * x ** rng.randint(0, 2) + rng.randint(-3, 3) * y ** rng.randint(0, 2)
                 for _ in range(n)]
                for _ in range(n)
            ]
            m = PolyMatrix(grid)
            assert determinant(m, method) == determinant(m, "cofactor")

    def test_unknown_method(self):
        with pytest.raises(PreconditionError):
            determinant(PolyMatrix.identity(5), "gauss")

    @pytest.mark.slow
    def test_strategies_agree_on_twist_knot_sylvester_matrix(self):
        family = TwistKnotFamily(4)
        phi = riley_polynomial(family)
        lam = reduce_modulo(longitude_eigenvalue(family), phi, "t")
        m = sylvester_matrix(MultiPoly.var("L") - lam, phi, "t")
        assert m.rows > 4
        assert determinant(m) == determinant(m, "interpolate")


class TestResultant:
    def test_vanishes_on_common_factor(self):
        rng = random.Random(3)
        for _ in range(20):
            common = random_poly(rng, 1)
            f = (common * random_poly(rng, 2)).to_multipoly()
            g = (common * random_poly(rng, 3)).to_multipoly()
            assert resultant(f, g, "x").is_zero()
            assert gcd_univariate(f.to_unipoly("x"), g.to_unipoly("x")).degree >= 1

    def test_self_resultant(self):
        assert resultant(x ** 3 - 2 * x + 5, x ** 3 - 2 * x + 5, "x").is_zero()

    def test_multiplicative(self):
        rng = random.Random(7)
        for _ in range(50):
            f, g, h = (random_poly(rng, rng.randint(1, 4)).to_multipoly() for _ in range(3))
            assert resultant(f, g * h, "x") == resultant(f, g, "x") * resultant(f, h, "x")

    def test_product_over_roots(self):
        rng = random.Random(13)
        checked = 0
        for _ in range(200):
            f, g = random_poly(rng, rng.randint(1, 6)), random_poly(rng, rng.randint(1, 6))
            if gcd_univariate(f, f.derivative()).degree > 0:
                continue
            exact = resultant(f.to_multipoly(), g.to_multipoly(), "x").constant_value()
            with mp.workprec(128):
                value = mp.mpf(f.lead) ** g.degree
                for r in roots(f, 128):
                    value *= g(r.value)
                assert abs(value - exact) <= 1e-6 * max(1, abs(exact))
            checked += 1
        assert checked > 150

    def test_norm_resultant_agrees_up_to_sign(self):
        phi = y ** 3 + a * y + 1
        f = y ** 2 - a * y + 3
        assert norm_resultant(f, phi, "y") in (resultant(phi, f, "y"), -resultant(phi, f, "y"))


class TestDerivativeDivisibility:
    def test_constructed_hypotheses(self):
        # f = sum_k g(zeta)^(m-k) c_k (x - zeta)^k + (x - zeta)^m r with zeta = -1 in Z[M]
        M = MultiPoly.var("M")
        g = M * x - 1
        gz = -M - 1
        m = 3
        f = sum(gz ** (m - k) * (k + 2) * (x + 1) ** k for k in range(m)) + (x + 1) ** m * (x ** 2 + M)
        cert = check_derivative_divisibility(f, g, "x", -1, m)
        assert cert.verify()
        assert divide_exact(resultant(f, g, "x"), gz ** m) == cert.conclusion

    def test_failing_hypothesis_names_k(self):
        M = MultiPoly.var("M")
        with pytest.raises(VerificationError) as info:
            check_derivative_divisibility(x ** 2 + x + 1, M * x - 1, "x", -1, 2)
        assert info.value.index == 0

    def test_degenerate_zeta(self):
        with pytest.raises(PreconditionError):
            check_derivative_divisibility((x + 1) ** 2 * (x - 3), x + 1, "x", -1, 2)


class TestAlgebraicTransforms:
    def test_shift_invert_golden_ratio(self):
        f = UniPoly([-1, -1, 1])
        g = shift_invert(f)
        assert g.is_monic() and g.degree == 2
        with mp.workprec(128):
            for r in roots(f, 128):
                assert unipoly_residual(g, 1 / (r.value - 1)) < 1e-8

    def test_shift_invert_linear(self):
        assert shift_invert(UniPoly([-2, 1])) == UniPoly([-1, 1])

    def test_shift_invert_rejects_non_monic(self):
        with pytest.raises(PreconditionError):
            shift_invert(UniPoly([1, 2, 2]))
        with pytest.raises(PreconditionError):
            shift_invert(UniPoly([-3, 1]))

    def test_product_of_square_roots(self):
        p = alg_combine(UniPoly([-2, 0, 1]), UniPoly([-3, 0, 1]), "product")
        assert p.degree == 4 and abs(p.lead) == 1
        with mp.workprec(128):
            assert unipoly_residual(p, mp.sqrt(6)) < 1e-30

    def test_sum_of_linear(self):
        p = alg_combine(UniPoly([-2, 1]), UniPoly([-5, 1]), "sum")
        assert p in (UniPoly([-7, 1]), UniPoly([7, -1]))

    def test_reverse_poly(self):
        assert reverse_poly(UniPoly([-1, 0, 2])) == UniPoly([2, 0, -1])
        assert reverse_poly(UniPoly([1, 3, 1])) == UniPoly([1, 3, 1])
        with pytest.raises(PreconditionError):
            reverse_poly(UniPoly([0, 1]))

    def test_graeffe_square(self):
        # roots 1, 2, -3 -> 1, 4, 9
        p = graeffe_square(UniPoly.from_roots_int([1, 2, -3]))
        assert p == UniPoly.from_roots_int([1, 4, 9])
