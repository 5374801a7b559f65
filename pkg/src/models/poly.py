import re
from enum import Enum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, SkipValidation, model_validator
from sympy.polys.densearith import (
    dup_add,
    dup_exquo,
    dup_lshift,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_sub,
)
from sympy.polys.densetools import dup_eval
from sympy.polys.domains import QQ, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed

from src.models.errors import DivisionByZero, NotDivisible, ParseError

_TERM: re.Pattern[str] = re.compile(r"[+-]?[^+-]+")
_MONOMIAL: re.Pattern[str] = re.compile(r"(?:(\d+)\*)?d(?:\^(\d+))?")
_CONSTANT: re.Pattern[str] = re.compile(r"\d+")


class ArithKind(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SCALE_BY_MONOMIAL = "scale-by-monomial"


class Poly(BaseModel):
    """
    Exact polynomial in delta with integer coefficients.

    coeffs are stored low degree first (coeffs[k] is the coefficient of d^k)
    and are always canonical: no trailing zeros, the zero polynomial is ()

    The heavy lifting is done by sympy's dense univariate arithmetic over ZZ,
    which stores coefficients high degree first, hence the reversals below
    """

    coeffs: SkipValidation[tuple[int, ...]] = ()
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _canonicalise(cls, data: Any) -> Any:
        if isinstance(data, dict) and "coeffs" in data:
            coeffs: list[int] = [int(c) for c in data["coeffs"]]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            data = {**data, "coeffs": tuple(coeffs)}
        return data

    @staticmethod
    def zero() -> "Poly":
        return Poly(coeffs=())

    @staticmethod
    def one() -> "Poly":
        return Poly(coeffs=(1,))

    @staticmethod
    def constant(value: int) -> "Poly":
        return Poly(coeffs=(value,))

    @staticmethod
    def monomial(degree: int, coefficient: int = 1) -> "Poly":
        return Poly(coeffs=(0,) * degree + (coefficient,))

    @staticmethod
    def delta() -> "Poly":
        return Poly.monomial(1)

    @staticmethod
    def _from_dup(dense: list[Any]) -> "Poly":
        return Poly(coeffs=tuple(int(c) for c in reversed(dense)))

    def _dup(self) -> list[Any]:
        return list(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c != 0) == 1 and self.coeffs[-1] == 1

    @staticmethod
    def _coerce(other: "Poly | int") -> "Poly":
        return Poly.constant(other) if isinstance(other, int) else other

    def __add__(self, other: "Poly | int") -> "Poly":
        return Poly._from_dup(dup_add(self._dup(), Poly._coerce(other)._dup(), ZZ))

    __radd__ = __add__

    def __sub__(self, other: "Poly | int") -> "Poly":
        return Poly._from_dup(dup_sub(self._dup(), Poly._coerce(other)._dup(), ZZ))

    def __rsub__(self, other: int) -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            return Poly._from_dup(dup_mul_ground(self._dup(), other, ZZ))
        return Poly._from_dup(dup_mul(self._dup(), other._dup(), ZZ))

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        return Poly._from_dup(dup_neg(self._dup(), ZZ))

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise NotDivisible(f"negative power {exponent} of {self.to_text()}")
        return Poly._from_dup(dup_pow(self._dup(), exponent, ZZ))

    def scale_by_monomial(self, degree: int, coefficient: int = 1) -> "Poly":
        return Poly._from_dup(
            dup_mul_ground(dup_lshift(self._dup(), degree, ZZ), coefficient, ZZ)
        )

    def divexact(self, divisor: "Poly") -> "Poly":
        if divisor.is_zero():
            raise DivisionByZero(f"division of {self.to_text()} by the zero polynomial")
        try:
            return Poly._from_dup(dup_exquo(self._dup(), divisor._dup(), ZZ))
        except ExactQuotientFailed:
            raise NotDivisible(
                f"{self.to_text()} is not divisible by {divisor.to_text()}"
            )

    def evaluate(self, x: "RationalValue") -> "RationalValue":
        dense: list[Any] = [QQ(c) for c in self._dup()]
        value: Any = dup_eval(dense, QQ(x.numerator, x.denominator), QQ)
        return RationalValue(
            numerator=int(value.numerator), denominator=int(value.denominator)
        )

    def evaluate_integer(self, x: int) -> int:
        return int(dup_eval(self._dup(), x, ZZ))

    def to_text(self) -> str:
        """
        Canonical text: descending degree, "d" for delta, no spaces
        e.g. "d^3-2*d", zero polynomial is "0"
        """
        if self.is_zero():
            return "0"
        terms: list[str] = []
        for degree in range(self.degree, -1, -1):
            coefficient: int = self.coeffs[degree]
            if coefficient == 0:
                continue
            term: str = _format_term(coefficient, degree, "d", "*", "^{}")
            if terms and not term.startswith("-"):
                term = "+" + term
            terms.append(term)
        return "".join(terms)

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        terms: list[str] = []
        for degree in range(self.degree, -1, -1):
            coefficient: int = self.coeffs[degree]
            if coefficient == 0:
                continue
            term: str = _format_term(coefficient, degree, "\\delta", "", "^{{{}}}")
            if terms and not term.startswith("-"):
                term = "+" + term
            terms.append(term)
        return "".join(terms)

    @staticmethod
    def parse(text: str) -> "Poly":
        compact: str = "".join(text.split())
        if not compact:
            raise ParseError("empty polynomial text")
        if "".join(m.group(0) for m in _TERM.finditer(compact)) != compact:
            raise ParseError(f"cannot parse polynomial {text!r}")
        total: Poly = Poly.zero()
        for match in _TERM.finditer(compact):
            term: str = match.group(0)
            sign: int = -1 if term.startswith("-") else 1
            body: str = term.lstrip("+-")
            if _CONSTANT.fullmatch(body):
                total = total + Poly.constant(sign * int(body))
                continue
            monomial: re.Match[str] | None = _MONOMIAL.fullmatch(body)
            if monomial is None:
                raise ParseError(f"cannot parse term {term!r} of {text!r}")
            coefficient: int = int(monomial.group(1)) if monomial.group(1) else 1
            degree: int = int(monomial.group(2)) if monomial.group(2) else 1
            total = total + Poly.monomial(degree, sign * coefficient)
        return total

    def __str__(self) -> str:
        return self.to_text()


def _format_term(
    coefficient: int, degree: int, symbol: str, times: str, power: str
) -> str:
    if degree == 0:
        return str(coefficient)
    variable: str = symbol if degree == 1 else symbol + power.format(degree)
    if coefficient == 1:
        return variable
    if coefficient == -1:
        return "-" + variable
    return f"{coefficient}{times}{variable}"


def poly_arith(a: Poly, b: Poly, kind: ArithKind) -> Poly:
    """
    Dispatcher kept for callers that select the operation at runtime
    (SCALE_BY_MONOMIAL expects b to be a single term c*d^k)
    """
    match kind:
        case ArithKind.ADD:
            return a + b
        case ArithKind.SUB:
            return a - b
        case ArithKind.MUL:
            return a * b
        case ArithKind.SCALE_BY_MONOMIAL:
            if b.is_zero():
                return Poly.zero()
            if any(c != 0 for c in b.coeffs[:-1]):
                raise ParseError(f"{b.to_text()} is not a monomial")
            return a.scale_by_monomial(b.degree, b.coeffs[-1])


class RationalValue(BaseModel):
    numerator: int
    denominator: int = 1
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, data: Any) -> Any:
        if isinstance(data, dict):
            denominator: int = int(data.get("denominator", 1))
            if denominator == 0:
                raise DivisionByZero("rational value with zero denominator")
            reduced: Fraction = Fraction(int(data["numerator"]), denominator)
            data = {
                "numerator": reduced.numerator,
                "denominator": reduced.denominator,
            }
        return data

    @staticmethod
    def of(value: int | Fraction) -> "RationalValue":
        fraction: Fraction = Fraction(value)
        return RationalValue(
            numerator=fraction.numerator, denominator=fraction.denominator
        )

    @staticmethod
    def parse(text: str) -> "RationalValue":
        """accepts "a" or "a/b" with integer a, b"""
        if not re.fullmatch(r"\s*[+-]?\d+\s*(/\s*[+-]?\d+\s*)?", text):
            raise ParseError(f"cannot parse rational value {text!r}")
        try:
            return RationalValue.of(Fraction(text.replace(" ", "")))
        except ZeroDivisionError:
            raise DivisionByZero(f"rational value {text!r} has zero denominator")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def to_text(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __str__(self) -> str:
        return self.to_text()


class RatioPair(BaseModel):
    """
    An unreduced quotient num/den of polynomials.
    Equality of ratios is decided by cross multiplication
    """

    num: Poly
    den: Poly
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _nonzero_denominator(self) -> "RatioPair":
        if self.den.is_zero():
            raise DivisionByZero("ratio with zero denominator")
        return self

    def same_ratio(self, other: "RatioPair") -> bool:
        return self.num * other.den == other.num * self.den

    def follows(self, previous: "RatioPair") -> bool:
        """
        True when self = d - 1/previous as rational functions
        (d - num/den)^-1 is written as den/num, so previous.num must be nonzero
        """
        if previous.num.is_zero():
            return False
        expected: RatioPair = RatioPair(
            num=Poly.delta() * previous.num - previous.den, den=previous.num
        )
        return self.same_ratio(expected)
