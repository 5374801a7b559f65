import pytest

from src.models.errors import InvalidIndex
from src.models.poly import Poly, RationalValue
from src.utils.chebyshev import chebyshev_p, chebyshev_q


class TestChebyshev:
    @pytest.mark.parametrize(
        ["s", "expected"],
        [[0, "0"], [1, "1"], [2, "d"], [3, "d^2-1"], [4, "d^3-2*d"], [5, "d^4-3*d^2+1"]],
    )
    def test_p(self, s: int, expected: str) -> None:
        assert chebyshev_p(s) == Poly.parse(expected), f"P_{s} is wrong"

    @pytest.mark.parametrize(
        ["t", "expected"],
        [
            [1, "1"],
            [2, "d^2"],
            [3, "d^3-2*d"],
            [4, "d^4-3*d^2"],
            [5, "d^5-4*d^3+2*d"],
            [6, "d^6-5*d^4+5*d^2"],
        ],
    )
    def test_q(self, t: int, expected: str) -> None:
        assert chebyshev_q(t) == Poly.parse(expected), f"Q_{t} is wrong"

    @pytest.mark.parametrize(["t", "expected"], [[2, "1"], [3, "-1"], [4, "-2"]])
    def test_q_at_one(self, t: int, expected: str) -> None:
        assert chebyshev_q(t).evaluate(RationalValue.parse("1")).to_text() == expected

    def test_invalid_indices(self) -> None:
        with pytest.raises(InvalidIndex):
            chebyshev_q(0)
        with pytest.raises(InvalidIndex):
            chebyshev_p(-1)

    @pytest.mark.parametrize(["index"], [[1500], [2000]])
    def test_large_index_on_cold_cache(self, index: int) -> None:
        chebyshev_p.cache_clear()
        chebyshev_q.cache_clear()
        p: Poly = chebyshev_p(index)
        q: Poly = chebyshev_q(index)
        assert p.degree == index - 1 and p.coeffs[-1] == 1
        assert q.degree == index and q.coeffs[-1] == 1
        # P_s(2) = s and Q_t(2) = 4 for t >= 2
        assert p.evaluate_integer(2) == index
        assert q.evaluate_integer(2) == 4
