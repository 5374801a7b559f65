from fractions import Fraction

import pytest

from src.models.errors import DivisionByZero, NotDivisible, ParseError
from src.models.poly import ArithKind, Poly, RatioPair, RationalValue, poly_arith
from src.utils.chebyshev import chebyshev_q


class TestPoly:
    @pytest.mark.parametrize(
        ["coeffs", "expected"],
        [
            [(0, -2, 0, 1), "d^3-2*d"],
            [(), "0"],
            [(0, 0), "0"],
            [(1,), "1"],
            [(-1, 0, 2), "2*d^2-1"],
            [(0, 1), "d"],
            [(5, -1), "-d+5"],
        ],
    )
    def test_to_text(self, coeffs: tuple[int, ...], expected: str) -> None:
        assert Poly(coeffs=coeffs).to_text() == expected, "canonical text is wrong"

    @pytest.mark.parametrize(
        ["text", "expected"],
        [
            ["d^3-2*d", Poly(coeffs=(0, -2, 0, 1))],
            ["0", Poly.zero()],
            ["d^58", Poly.monomial(58)],
            ["- d + 5", Poly(coeffs=(5, -1))],
            ["3*d^2+d-7", Poly(coeffs=(-7, 1, 3))],
        ],
    )
    def test_parse(self, text: str, expected: Poly) -> None:
        assert Poly.parse(text) == expected, "parsed polynomial is wrong"

    @pytest.mark.parametrize(["text"], [[""], ["x^2"], ["d^"], ["2d"], ["d**2"]])
    def test_parse_rejects(self, text: str) -> None:
        with pytest.raises(ParseError):
            Poly.parse(text)

    def test_trailing_zeros_are_stripped(self) -> None:
        assert Poly(coeffs=(1, 2, 0, 0)) == Poly(coeffs=(1, 2))
        assert Poly(coeffs=(0, 0)).is_zero()
        assert Poly.zero().degree == -1

    def test_arithmetic(self) -> None:
        d: Poly = Poly.delta()
        assert d * d - 2 == Poly.parse("d^2-2")
        assert (d + 1) * (d - 1) == Poly.parse("d^2-1")
        assert 3 - d == Poly.parse("-d+3")
        assert -(d * 2) == Poly.parse("-2*d")
        assert (d + 1) ** 3 == Poly.parse("d^3+3*d^2+3*d+1")
        assert (d + 1) ** 0 == Poly.one()
        assert Poly.parse("d^2-1").scale_by_monomial(2, 3) == Poly.parse("3*d^4-3*d^2")

    def test_divexact(self) -> None:
        product: Poly = Poly.parse("d^8") * Poly.parse("d^2-2") ** 2
        assert product.divexact(chebyshev_q(3)) == Poly.parse("d^9-2*d^7")

    def test_divexact_failures(self) -> None:
        with pytest.raises(NotDivisible):
            Poly.parse("d^2+1").divexact(Poly.parse("d-1"))
        with pytest.raises(DivisionByZero):
            Poly.one().divexact(Poly.zero())

    @pytest.mark.parametrize(
        ["text", "x", "expected"],
        [
            ["d^2-1", "1", "0"],
            ["d^3-2*d", "3", "21"],
            ["d^2", "1/2", "1/4"],
            ["d^3-2*d", "-1/2", "7/8"],
        ],
    )
    def test_evaluate(self, text: str, x: str, expected: str) -> None:
        actual: RationalValue = Poly.parse(text).evaluate(RationalValue.parse(x))
        assert actual.to_text() == expected, "evaluation is wrong"

    def test_to_latex(self) -> None:
        assert Poly.parse("d^4-5*d^2+5").to_latex() == "\\delta^{4}-5\\delta^{2}+5"
        assert Poly.delta().to_latex() == "\\delta"

    def test_poly_arith_dispatch(self) -> None:
        a: Poly = Poly.parse("d+1")
        assert poly_arith(a, Poly.parse("d"), ArithKind.ADD) == Poly.parse("2*d+1")
        assert poly_arith(a, Poly.parse("d"), ArithKind.SUB) == Poly.one()
        assert poly_arith(a, a, ArithKind.MUL) == Poly.parse("d^2+2*d+1")
        assert poly_arith(a, Poly.parse("d^2"), ArithKind.SCALE_BY_MONOMIAL) == Poly.parse("d^3+d^2")

    def test_scale_by_non_monomial_is_rejected(self) -> None:
        with pytest.raises(ParseError):
            poly_arith(Poly.one(), Poly.parse("d+1"), ArithKind.SCALE_BY_MONOMIAL)


class TestRationalValue:
    @pytest.mark.parametrize(
        ["text", "expected"],
        [["3", Fraction(3)], ["-1/2", Fraction(-1, 2)], ["4/6", Fraction(2, 3)], ["0", Fraction(0)]],
    )
    def test_parse(self, text: str, expected: Fraction) -> None:
        assert RationalValue.parse(text).as_fraction() == expected

    @pytest.mark.parametrize(["text"], [["a"], ["1/"], ["1.5"], [""]])
    def test_parse_rejects(self, text: str) -> None:
        with pytest.raises(ParseError):
            RationalValue.parse(text)

    def test_zero_denominator(self) -> None:
        with pytest.raises(DivisionByZero):
            RationalValue.parse("1/0")
        with pytest.raises(DivisionByZero):
            RationalValue(numerator=1, denominator=0)

    def test_reduced_on_construction(self) -> None:
        value: RationalValue = RationalValue(numerator=6, denominator=-4)
        assert (value.numerator, value.denominator) == (-3, 2)
        assert value.to_text() == "-3/2"


class TestRatioPair:
    def test_zero_denominator(self) -> None:
        with pytest.raises(DivisionByZero):
            RatioPair(num=Poly.one(), den=Poly.zero())

    def test_same_ratio(self) -> None:
        a: RatioPair = RatioPair(num=Poly.parse("d^2-1"), den=Poly.parse("d-1"))
        b: RatioPair = RatioPair(num=Poly.parse("d+1"), den=Poly.one())
        assert a.same_ratio(b)

    def test_follows(self) -> None:
        first: RatioPair = RatioPair(num=chebyshev_q(3), den=chebyshev_q(2))
        second: RatioPair = RatioPair(num=chebyshev_q(4), den=chebyshev_q(3))
        assert second.follows(first)
        assert not first.follows(second)
