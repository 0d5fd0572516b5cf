import mpmath as mp
import pytest

from config.settings import DIV16_P_RANGE
from src.algebra.poly import parse_poly
from src.apoly.apoly import a_polynomial
from src.errors import ParseError, PreconditionError
from src.representations.riley import TwistKnotFamily
from src.surgery.annihilator import torsion_annihilator, torsion_part
from src.surgery.certificates import (
    integer_surgery_eliminant,
    integrality_chain,
    one_over_q_certificate,
    perron_check,
)
from src.surgery.slope import SurgerySlope, extended_gcd
from src.surgery.splice import splice_condition_check
from src.surgery.system import (
    match_table,
    solve_representations,
    surgery_system,
    torsion_expression,
    witness_polynomials,
)

FIGURE_EIGHT, FIVE_TWO = TwistKnotFamily(-1), TwistKnotFamily(2)


def as_x(poly_text: str):
    return parse_poly(poly_text).to_unipoly("x")


class TestSlopes:
    @pytest.mark.parametrize(
        "text, expected",
        [("2/3", (1, 2)), ("1/5", (0, 1)), ("7", (-1, 0)), ("0/1", (-1, 0)), ("-2/3", (-1, 1))],
    )
    def test_continuation(self, text, expected):
        slope = SurgerySlope.parse(text)
        assert slope.continuation == expected
        p1, q1 = expected
        assert slope.p * q1 - slope.q * p1 == 1

    def test_sign_normalized(self):
        slope = SurgerySlope.parse("3/-4")
        assert (slope.p, slope.q) == (-3, 4)
        assert str(slope) == "-3/4"

    def test_rejections(self):
        with pytest.raises(ParseError):
            SurgerySlope.parse("two/three")
        with pytest.raises(PreconditionError):
            SurgerySlope.parse("1/0")
        with pytest.raises(PreconditionError):
            SurgerySlope.parse("2/4")

    def test_extended_gcd(self):
        g, a, b = extended_gcd(240, 46)
        assert g == 2 and 240 * a + 46 * b == 2


@pytest.fixture(scope="module")
def two_thirds_on_figure_eight():
    slope = SurgerySlope(2, 3)
    reps = solve_representations(FIGURE_EIGHT, slope, 256)
    return reps, torsion_annihilator(FIGURE_EIGHT, slope, 256, reps=reps)


@pytest.fixture(scope="module")
def one_half_on_five_two():
    slope = SurgerySlope(1, 2)
    reps = solve_representations(FIVE_TWO, slope, 256)
    return reps, torsion_annihilator(FIVE_TWO, slope, 256, reps=reps)


@pytest.mark.slow
class TestFigureEightTwoThirds:
    def test_solution_table(self, two_thirds_on_figure_eight, catalog):
        reps, _ = two_thirds_on_figure_eight
        assert len(reps) == 12
        assert all(r.acyclic for r in reps)
        assert match_table(reps, catalog.table("4_1 2/3")) == []

    def test_s_eliminant(self, reference):
        system = surgery_system(FIGURE_EIGHT, SurgerySlope(2, 3))
        system.S.exact_div(reference("slope_2_3_on_4_1_s").to_unipoly("s"))
        assert "s + 1" not in system.removed

    def test_annihilator(self, two_thirds_on_figure_eight, reference):
        _, cert = two_thirds_on_figure_eight
        assert cert.verified and cert.monic
        assert as_x(cert.annihilator) == reference("annihilator_2_3_on_4_1").to_unipoly("x")
        assert any(f.multiplicity == 2 for f in cert.factors)
        assert cert.max_witness_residual < 1e-20

    def test_perron(self, two_thirds_on_figure_eight):
        _, cert = two_thirds_on_figure_eight
        report = perron_check(as_x(cert.annihilator))
        assert report.is_perron
        assert report.bracket == [94, 95]
        assert report.dominant_root.to_complex().real == pytest.approx(94.3908, abs=1e-3)

    def test_torsion_expression_matches_rows(self, two_thirds_on_figure_eight):
        reps, _ = two_thirds_on_figure_eight
        num, den = torsion_expression(FIGURE_EIGHT, SurgerySlope(2, 3))
        with mp.workprec(256):
            for r in reps:
                point = {"s": r.s, "t": r.t}
                value = num.evaluate(point) / den.evaluate(point)
                assert abs(value - r.tau) < 1e-25 * max(1, abs(r.tau))

    def test_witness_factors(self, two_thirds_on_figure_eight):
        reps, _ = two_thirds_on_figure_eight
        system = surgery_system(FIGURE_EIGHT, SurgerySlope(2, 3))
        s_factor, t_factor = witness_polynomials(system, reps[-1])
        assert s_factor.degree >= 1 and t_factor.degree >= 1


@pytest.mark.slow
class TestFiveTwoOneHalf:
    def test_solution_table(self, one_half_on_five_two, catalog):
        reps, _ = one_half_on_five_two
        assert len(reps) == 17
        trivial = [r for r in reps if not r.acyclic]
        assert len(trivial) == 3
        assert all(abs(r.s - 1) < 1e-20 and r.tau == 0 for r in trivial)
        assert match_table(reps, catalog.table("5_2 1/2")) == []

    def test_annihilator(self, one_half_on_five_two, reference):
        _, cert = one_half_on_five_two
        assert cert.verified
        ann = as_x(cert.annihilator)
        assert ann == reference("annihilator_1_2_on_5_2").to_unipoly("x")
        assert ann[0] == 13778944

    def test_perron(self, one_half_on_five_two):
        _, cert = one_half_on_five_two
        report = perron_check(as_x(cert.annihilator))
        assert report.is_perron
        assert report.dominant_root.to_complex().real == pytest.approx(148.658, abs=1e-3)


@pytest.mark.slow
class TestTorsionPolynomial:
    def test_one_surgery_on_figure_eight(self, reference):
        cert = torsion_annihilator(FIGURE_EIGHT, SurgerySlope(1, 1), 128)
        assert cert.verified
        assert as_x(cert.annihilator) == reference("sigma_surgery_1_on_4_1").to_unipoly("x")

    def test_deterministic_across_precisions(self):
        low = torsion_annihilator(FIGURE_EIGHT, SurgerySlope(1, 1), 128)
        high = torsion_annihilator(FIGURE_EIGHT, SurgerySlope(1, 1), 256)
        assert low.annihilator == high.annihilator
        assert low.verified == high.verified

    def test_solutions_need_precision(self):
        with pytest.raises(PreconditionError):
            solve_representations(FIGURE_EIGHT, SurgerySlope(1, 1), 16)


class TestTorsionPart:
    def test_whole_factor_of_torsion_values(self):
        with mp.workprec(160):
            part, note, exact = torsion_part(as_x("x^2 - 2"), [mp.sqrt(2), -mp.sqrt(2)], 128)
        assert exact and note is None
        assert part == as_x("x^2 - 2")

    def test_split_along_irreducible_factors(self):
        with mp.workprec(160):
            part, note, exact = torsion_part(as_x("(x^2 - 2)*(x - 3)"), [mp.mpf(3)], 128)
        assert exact and "split" in note
        assert part == as_x("x - 3")

    def test_partial_irreducible_factor_is_not_exact(self):
        # only one conjugate of sqrt(2) is a torsion value, so no integer divisor isolates it
        with mp.workprec(160):
            part, note, exact = torsion_part(as_x("x^2 - 2"), [mp.sqrt(2)], 128)
        assert not exact and note
        assert part == as_x("x^2 - 2")


class TestCertificates:
    @pytest.mark.slow
    @pytest.mark.parametrize("p", [p for p in range(DIV16_P_RANGE[0], DIV16_P_RANGE[1] + 1) if p])
    def test_integer_surgery_eliminant(self, p):
        result = integer_surgery_eliminant(p)
        assert result.h.lead == 16
        assert result.quotient.is_monic()
        assert result.report().verified

    def test_integer_surgery_contains_torsion_polynomial(self, reference):
        quotient = integer_surgery_eliminant(1).quotient
        quotient.exact_div(reference("sigma_surgery_1_on_4_1").to_unipoly("x"))

    def test_zero_surgery_rejected(self):
        with pytest.raises(PreconditionError):
            integer_surgery_eliminant(0)

    @pytest.mark.parametrize("q", [1, 2, 3, -2])
    def test_one_over_q(self, q):
        report = one_over_q_certificate(q)
        assert report.verified
        assert parse_poly(report.data["h"]).to_unipoly("L")(1) == 1

    def test_integrality_chain(self):
        assert integrality_chain(-1, 3).verified
        with pytest.raises(PreconditionError):
            integrality_chain(-1, 2)

    def test_perron_rejects_constants(self):
        with pytest.raises(PreconditionError):
            perron_check(as_x("7"))

    def test_perron_golden_ratio(self):
        report = perron_check(as_x("x^2 - x - 1"))
        assert report.is_perron and report.bracket == [1, 2]
        assert not perron_check(as_x("x^2 - 2")).is_perron


class TestSplice:
    @pytest.mark.slow
    @pytest.mark.parametrize("m", [1, -1])
    def test_satisfied(self, m):
        report = splice_condition_check(a_polynomial(m))
        assert report.satisfied
        for w in report.witnesses:
            assert w.residual < 1e-10
            assert abs(w.L.to_complex()) > 0 and abs(w.M.to_complex()) > 0

    def test_unknot_not_satisfied(self):
        report = splice_condition_check(a_polynomial(0))
        assert not report.satisfied
        assert report.eliminant_degree == 0
