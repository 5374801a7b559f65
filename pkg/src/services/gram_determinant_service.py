import logging
import math
from collections import Counter
from functools import lru_cache

from src.models.cell_label import CellKind, CellLabel
from src.models.errors import InvalidArguments, MethodUnsupported
from src.models.poly import Poly, RatioPair, RationalValue
from src.models.results import DetMethod, DetResult, Verdict, Witness
from src.services.cellular_service import CellularService
from src.services.diagram_service import DiagramService
from src.utils.chebyshev import chebyshev_p, chebyshev_q
from src.utils.determinants import det_bareiss
from src.utils.logging_utils import setup_logging


class GramDeterminantService:
    """
    Gram determinants by three routes (elimination on the matrix, the
    recurrence in n, the closed product of Q's) and the semi-simplicity and
    quasi-heredity deciders built on them
    """

    def __init__(self, cellular_service: CellularService | None = None) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        self.__cellular_service: CellularService = cellular_service or CellularService()
        setup_logging(self.__logger)

    def det_gram(self, n: int, cell: CellLabel, method: DetMethod) -> DetResult:
        cell.check_for(n)
        p: int = cell.p(n)
        value: Poly
        match method:
            case DetMethod.DIRECT:
                self.__logger.debug(f"direct determinant of {cell.to_text()} at n={n}")
                value = det_bareiss(self.__cellular_service.gram(n, cell).entries)
            case DetMethod.RECURRENCE:
                if cell.kind == CellKind.PLAIN:
                    value = _plain_recurrence(n, p)
                elif cell.is_signed:
                    value = _signed_det(p)
                else:
                    dimension: int = _binomial(n, p) - _binomial(n, p - 1)
                    value = Poly.monomial(dimension) * _type_a_recurrence(n, p)
            case DetMethod.CLOSED:
                if cell.kind != CellKind.PLAIN:
                    raise MethodUnsupported(
                        f"the closed formula covers plain cells only, got {cell.to_text()}"
                    )
                value = GramDeterminantService.closed_formula(n, p)
        return DetResult(n=n, cell=cell.to_text(), method=method, value=value)

    def det_gram_all(self, n: int, cell: CellLabel) -> list[DetResult]:
        """every route that applies to cell"""
        methods: list[DetMethod] = [DetMethod.DIRECT, DetMethod.RECURRENCE]
        if cell.kind == CellKind.PLAIN:
            methods.append(DetMethod.CLOSED)
        return [self.det_gram(n, cell, method) for method in methods]

    def det_gram_type_a(self, n: int, p: int, method: DetMethod) -> DetResult:
        _check_shape(n, p)
        value: Poly
        match method:
            case DetMethod.DIRECT:
                value = det_bareiss(self.__cellular_service.gram_type_a(n, p).entries)
            case DetMethod.RECURRENCE:
                value = _type_a_recurrence(n, p)
            case _:
                raise MethodUnsupported("type A determinants have no closed route here")
        return DetResult(n=n, cell=f"typeA:{p}", method=method, value=value)

    def det_pseudo(self, p: int) -> Poly:
        """det of the (2p, p) pseudo matrix by elimination"""
        return det_bareiss(self.__cellular_service.gram_pseudo(p).entries)

    @staticmethod
    def signed_det(p: int) -> Poly:
        """det G+(2p,p) = det G-(2p,p) = d^{C(2p,p)/2} det G(2p-1,p-1)"""
        if p < 1:
            raise InvalidArguments(f"signed cells need p >= 1, got {p}")
        return _signed_det(p)

    @staticmethod
    def pseudo_det(p: int) -> Poly:
        if p < 1:
            raise InvalidArguments(f"pseudo matrix needs p >= 1, got {p}")
        return _signed_det(p) ** 2

    def recurrence_step(self, n: int, p: int) -> bool:
        """
        det G(n,p) * Q_{m+1}^e == det G(n-1,p) * Q_{m+2}^e * det G(n-1,p-1)
        with m = n-2p, e = C(n-1,p-1); the direct determinants are used on
        both sides and the pseudo matrix stands in for G(2p,p)
        """
        if p < 1 or n < 2 * p + 1:
            raise InvalidArguments(f"recurrence step needs p >= 1 and n >= 2p+1, got n={n} p={p}")
        m: int = n - 2 * p
        exponent: int = _binomial(n - 1, p - 1)
        current: Poly = self.det_gram(n, CellLabel.plain(m), DetMethod.DIRECT).value
        previous: Poly = (
            self.det_pseudo(p)
            if n - 1 == 2 * p
            else self.det_gram(n - 1, CellLabel.plain(m - 1), DetMethod.DIRECT).value
        )
        smaller: Poly = self.det_gram(n - 1, CellLabel.plain(m + 1), DetMethod.DIRECT).value
        left: Poly = current * chebyshev_q(m + 1) ** exponent
        right: Poly = previous * chebyshev_q(m + 2) ** exponent * smaller
        quotient_exact: bool = True
        try:
            quotient_exact = right.divexact(chebyshev_q(m + 1) ** exponent) == current
        except ArithmeticError:
            quotient_exact = False
        return left == right and quotient_exact

    @staticmethod
    def closed_formula_exponents(n: int, p: int) -> dict[int, int]:
        """
        Net exponent of each Q_t in the closed product for det G(n, p);
        Q_1 = 1 is dropped, as are indices whose exponents cancel
        """
        _check_shape(n, p)
        net: Counter[int] = Counter()
        for r in range(p):
            net[n - p - r + 1] += _binomial(n, r)
            net[p - r] -= _binomial(n, r)
        for s in range(1, p):
            outer: int = _binomial(n - 2 * (p - s + 1), s - 1)
            for r in range(p - s):
                inner: int = _binomial(2 * (p - s) + 1, r) * outer
                net[p - s - r + 2] += inner
                net[p - s - r] -= inner
        return {t: e for t, e in sorted(net.items(), reverse=True) if e != 0 and t != 1}

    @staticmethod
    def closed_formula(n: int, p: int) -> Poly:
        return _from_exponents(GramDeterminantService.closed_formula_exponents(n, p))

    @staticmethod
    def r_ratio(n: int, p: int) -> RatioPair:
        if n < 2 * p + 1:
            raise InvalidArguments(f"r(n,p) needs n >= 2p+1, got n={n} p={p}")
        return RatioPair(num=chebyshev_q(n - 2 * p + 2), den=chebyshev_q(n - 2 * p + 1))

    @staticmethod
    def check_product_identity(n: int, p: int) -> bool:
        """
        The product identity behind the closed formula, with denominators
        cleared: prod_{r<p} (Q_{n-p-r+1}/Q_{p-r})^{C(n,r)} equals
        prod_{r<p} (Q_{n-p-r}/Q_{p-r})^{C(n-1,r)} (Q_{n-2p+2}/Q_{n-2p+1})^{C(n-1,p-1)}
        prod_{r<p-1} (Q_{n-p-r+1}/Q_{p-r-1})^{C(n-1,r)}
        """
        _check_shape(n, p)
        if p == 0:
            return True
        left_num: Counter[int] = Counter()
        left_den: Counter[int] = Counter()
        right_num: Counter[int] = Counter()
        right_den: Counter[int] = Counter()
        for r in range(p):
            left_num[n - p - r + 1] += _binomial(n, r)
            left_den[p - r] += _binomial(n, r)
            right_num[n - p - r] += _binomial(n - 1, r)
            right_den[p - r] += _binomial(n - 1, r)
        right_num[n - 2 * p + 2] += _binomial(n - 1, p - 1)
        right_den[n - 2 * p + 1] += _binomial(n - 1, p - 1)
        for r in range(p - 1):
            right_num[n - p - r + 1] += _binomial(n - 1, r)
            right_den[p - r - 1] += _binomial(n - 1, r)
        left: Poly = _power_product(left_num) * _power_product(right_den)
        right: Poly = _power_product(right_num) * _power_product(left_den)
        return left == right

    @staticmethod
    def semisimple(n: int, delta: RationalValue) -> Verdict:
        """
        Semi-simple exactly when P_s(delta) != 0 for 1 < s <= n and
        Q_t(delta) != 0 for 2 < t <= n
        """
        if n < 4:
            raise InvalidArguments(f"the semi-simplicity criterion needs n >= 4, got {n}")
        witnesses: list[Witness] = _vanishing("P", range(2, n + 1), delta) + _vanishing(
            "Q", range(3, n + 1), delta
        )
        return Verdict(decision=not witnesses, witnesses=witnesses)

    def semisimple_crosscheck(self, n: int, delta: RationalValue) -> Verdict:
        """every cell determinant, computed directly, is nonzero at delta"""
        if n not in (4, 5):
            raise InvalidArguments(f"the determinant cross-check runs for n = 4 or n = 5, got {n}")
        witnesses: list[Witness] = []
        for cell in DiagramService.cells(n):
            value: RationalValue = self.det_gram(n, cell, DetMethod.DIRECT).value.evaluate(delta)
            if value.is_zero():
                witnesses.append(
                    Witness(family="det", index=n, value=value.to_text(), cell=cell.to_text())
                )
        return Verdict(decision=not witnesses, witnesses=witnesses)

    def quasihereditary(self, n: int, delta: RationalValue) -> Verdict:
        """
        Quasi-hereditary exactly when delta != 0. At delta = 0 every dotted
        form vanishes identically, those cells are the witnesses
        """
        if n < 2:
            raise InvalidArguments(f"n must be at least 2, got {n}")
        if not delta.is_zero():
            return Verdict(decision=True)
        witnesses: list[Witness] = []
        for cell in DiagramService.cells(n):
            if not cell.is_dotted:
                continue
            entries = self.__cellular_service.gram(n, cell).entries
            if all(entry.evaluate(delta).is_zero() for row in entries for entry in row):
                witnesses.append(
                    Witness(family="Phi", index=cell.through, value="0", cell=cell.to_text())
                )
        return Verdict(decision=False, witnesses=witnesses)

    @staticmethod
    def quasi_heredity_witnesses(n: int) -> list[tuple[CellLabel, str, bool]]:
        """
        For every cell below the top one, an element x = e_1 e_3 ... (with
        e_{1bar} in front for the dotted and 0- cells) lying in that cell with
        x^2 = d^k x, k the number of its caps plus one for a decorated circuit.
        Returns (cell, word, identity holds)
        """
        results: list[tuple[CellLabel, str, bool]] = []
        for cell in DiagramService.cells(n):
            p: int = cell.p(n)
            if p == 0 and not cell.is_dotted:
                continue
            caps: list[str] = [f"e{2 * i + 1}" for i in range(p)]
            if cell.kind == CellKind.ZERO_MINUS:
                caps[0] = "eb1"
            elif cell.is_dotted:
                caps.insert(0, "eb1")
            word: str = " ".join(caps)
            x = DiagramService.evaluate_word(n, word)
            square = DiagramService.multiply(x, x)
            expected: int = 2 * x.delta_power + p + (1 if cell.is_dotted else 0)
            holds: bool = (
                DiagramService.cell_of(x) == cell
                and square.diagram_part() == x.diagram_part()
                and square.delta_power == expected
            )
            results.append((cell, word, holds))
        return results


def _binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def _check_shape(n: int, p: int) -> None:
    if p < 0 or 2 * p > n:
        raise InvalidArguments(f"need 0 <= 2p <= n, got n={n} p={p}")


def _power_product(exponents: Counter[int]) -> Poly:
    product: Poly = Poly.one()
    for index, exponent in exponents.items():
        if exponent:
            product = product * chebyshev_q(index) ** exponent
    return product


def _from_exponents(exponents: dict[int, int]) -> Poly:
    numerator: Poly = Poly.one()
    denominator: Poly = Poly.one()
    for index, exponent in exponents.items():
        if exponent > 0:
            numerator = numerator * chebyshev_q(index) ** exponent
        else:
            denominator = denominator * chebyshev_q(index) ** -exponent
    return numerator.divexact(denominator)


def _vanishing(family: str, indices: range, delta: RationalValue) -> list[Witness]:
    sequence = chebyshev_p if family == "P" else chebyshev_q
    witnesses: list[Witness] = []
    for index in indices:
        value: RationalValue = sequence(index).evaluate(delta)
        if value.is_zero():
            witnesses.append(Witness(family=family, index=index, value=value.to_text()))
    return witnesses


@lru_cache(maxsize=None)
def _plain_recurrence(n: int, p: int) -> Poly:
    if p == 0:
        return Poly.one()
    if p == 1 and n >= 3:
        return chebyshev_q(n)
    m: int = n - 2 * p
    exponent: int = _binomial(n - 1, p - 1)
    previous: Poly = _signed_det(p) ** 2 if n - 1 == 2 * p else _plain_recurrence(n - 1, p)
    numerator: Poly = previous * chebyshev_q(m + 2) ** exponent * _plain_recurrence(n - 1, p - 1)
    return numerator.divexact(chebyshev_q(m + 1) ** exponent)


@lru_cache(maxsize=None)
def _signed_det(p: int) -> Poly:
    return Poly.monomial(_binomial(2 * p, p) // 2) * _plain_recurrence(2 * p - 1, p - 1)


@lru_cache(maxsize=None)
def _type_a_recurrence(n: int, p: int) -> Poly:
    """
    det of the type A form: 1 at p = 0; at n = 2p a power of d times the
    (n-1, p-1) determinant; otherwise the P-ratio recurrence
    """
    if p == 0:
        return Poly.one()
    exponent: int = _binomial(n - 1, p - 1) - _binomial(n - 1, p - 2)
    if n == 2 * p:
        return Poly.monomial(exponent) * _type_a_recurrence(n - 1, p - 1)
    m: int = n - 2 * p
    numerator: Poly = (
        _type_a_recurrence(n - 1, p)
        * chebyshev_p(m + 2) ** exponent
        * _type_a_recurrence(n - 1, p - 1)
    )
    return numerator.divexact(chebyshev_p(m + 1) ** exponent)
