import random

import mpmath as mp
import pytest

from src.algebra.poly import parse_poly
from src.algebra.unipoly import UniPoly
from src.errors import ParseError, PreconditionError
from src.seifert.chebyshev import chebyshev_T, chebyshev_V, sin_inverse_certificate
from src.seifert.index import SeifertIndex, SeifertTuple, admissible_tuples, bezout_pair, brieskorn_index
from src.seifert.torsion import (
    brieskorn_sigma,
    cosine_form,
    product_form,
    seifert_integrality_certificate,
    seifert_torsion_values,
    torsion_sigma,
)


class TestChebyshev:
    def test_small_cases(self):
        assert chebyshev_T(2) == UniPoly([-1, 0, 2])
        assert chebyshev_V(2) == UniPoly([-1, -1, 1])

    def test_cosine_identities(self):
        rng = random.Random(17)
        with mp.workprec(128):
            for _ in range(500):
                n = rng.randint(0, 50)
                theta = mp.mpf(rng.uniform(0.01, 3.1))
                assert abs(chebyshev_T(n)(mp.cos(theta)) - mp.cos(n * theta)) < 1e-12
                lhs = chebyshev_V(n)(2 * mp.cos(theta))
                assert abs(lhs - mp.cos((n + mp.mpf(1) / 2) * theta) / mp.cos(theta / 2)) < 1e-12

    def test_v_monic_with_unit_constant(self):
        for n in range(101):
            v = chebyshev_V(n)
            assert v.is_monic() and abs(v(0)) == 1

    def test_sin_inverse_certificates(self):
        with mp.workprec(128):
            golden = sin_inverse_certificate(5, 1)
            assert golden == UniPoly([-1, -1, 1])
            assert abs(golden(-1 / (2 * mp.sin(mp.pi / 10)))) > 1e-3
            assert abs(sin_inverse_certificate(4, 3)(1 / mp.sin(3 * mp.pi / 8))) < 1e-20
        with pytest.raises(PreconditionError):
            sin_inverse_certificate(5, 5)
        with pytest.raises(PreconditionError):
            sin_inverse_certificate(4, 2)


class TestIndex:
    def test_parse_and_print(self):
        text = "1;0;(2,1),(3,1),(5,1)"
        index = SeifertIndex.parse(text)
        assert str(index) == text
        assert index.m == 3 and index.m_odd == 2

    @pytest.mark.parametrize("text", ["1;0", "x;0;(2,1)", "1;0;(2,1)x", "1;0;"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            SeifertIndex.parse(text)

    def test_rejects_non_coprime_pair(self):
        with pytest.raises(PreconditionError):
            SeifertIndex.parse("1;0;(2,2)")

    @pytest.mark.parametrize("a, b", [(2, 1), (3, 1), (5, 1), (7, 6), (3, 2), (9, 4)])
    def test_bezout_pair(self, a, b):
        r, s = bezout_pair(a, b)
        assert a * s - b * r == -1
        assert s % 2 == 1

    def test_brieskorn_index(self):
        index = brieskorn_index((2, 3, 5))
        assert index.b == 1 and index.pairs == ((2, 1), (3, 1), (5, 1))
        assert abs(index.euler_number()) * 30 == 1
        with pytest.raises(PreconditionError):
            brieskorn_index((2, 4, 5))

    def test_admissible_tuples(self):
        index = brieskorn_index((2, 3, 5))
        assert [t.k for t in admissible_tuples(index)] == [(1, 1, 1), (1, 1, 3)]
        with pytest.raises(PreconditionError):
            SeifertTuple((1, 2, 1)).validate(index)
        with pytest.raises(PreconditionError):
            SeifertTuple((1, 1)).validate(index)


class TestPoincareSphere:
    @pytest.fixture
    def index(self):
        return brieskorn_index((2, 3, 5))

    def test_values(self, index):
        values = seifert_torsion_values(index, admissible_tuples(index), 128)
        taus = sorted(float(v.tau) for v in values)
        assert taus == pytest.approx([3 - 5 ** 0.5, 3 + 5 ** 0.5])
        assert all(v.acyclic and v.to_value().product_form_agrees for v in values)

    def test_forms_agree(self, index):
        with mp.workprec(160):
            for tup in admissible_tuples(index):
                assert abs(1 / cosine_form(index, tup) - product_form(index, tup)) < 1e-20

    def test_maximal_value(self, index):
        with mp.workprec(160):
            values = seifert_torsion_values(index, admissible_tuples(index), 128)
            expected = (4 * mp.sin(mp.pi / 4) * mp.sin(mp.pi / 6) * mp.sin(mp.pi / 10)) ** -2
            assert abs(max(v.tau for v in values) - expected) < 1e-20

    def test_certificates(self, index):
        for tup in admissible_tuples(index):
            cert = seifert_integrality_certificate(index, tup, 128)
            assert parse_poly(cert.annihilator).to_unipoly("x") == UniPoly([4, -6, 1])
            assert cert.residual < 1e-20
            assert cert.combination[-1].startswith("product")

    def test_sigma(self):
        report = brieskorn_sigma((2, 3, 5), precision=128)
        assert report.sigma == "t^2 - 6*t + 4"
        assert report.subject == "Sigma(2,3,5)"
        assert report.max_deviation < 1e-15

    def test_invariant_under_alternative_pairs(self, index):
        base = sorted(float(v.tau) for v in seifert_torsion_values(index, admissible_tuples(index)))
        for i in range(index.m):
            moved = index.shifted(i)
            shifted = sorted(float(v.tau) for v in seifert_torsion_values(moved, admissible_tuples(moved)))
            assert shifted == pytest.approx(base)


@pytest.mark.parametrize("orders", [(2, 3, 7), (3, 5, 7)])
def test_brieskorn_sigma_rounds_to_integers(orders):
    report = brieskorn_sigma(orders, precision=256)
    assert report.max_deviation < 1e-15
    sigma = parse_poly(report.sigma).to_unipoly("t")
    assert sigma.is_monic()
    assert sigma.degree == len({v.tau for v in report.values if v.acyclic})


def test_sigma_precision_floor():
    with pytest.raises(PreconditionError):
        torsion_sigma(brieskorn_index((2, 3, 5)), precision=64)


def test_certificate_needs_enough_odd_fibers():
    index = SeifertIndex.parse("0;0;(2,1),(3,1)")
    with pytest.raises(PreconditionError):
        seifert_integrality_certificate(index, SeifertTuple((1, 1)))
