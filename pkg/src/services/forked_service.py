import logging
import math

from src.models.cell_label import CellKind, CellLabel
from src.models.errors import InvalidArguments, SizeMismatch
from src.models.ftl_element import FtlElement
from src.models.half_diagram import HalfDiagram
from src.models.poly import RationalValue
from src.models.results import Verdict, Witness
from src.services.cellular_service import CellularService
from src.services.diagram_service import DiagramService
from src.utils.chebyshev import chebyshev_q
from src.utils.logging_utils import setup_logging


class ForkedService:
    """
    The forked quotient, TLD_n modulo the ideal spanned by first type
    diagrams. Its cells are the TLD cells without the dotted labels
    """

    def __init__(self) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        setup_logging(self.__logger)

    @staticmethod
    def ftl_multiply(a: FtlElement, b: FtlElement) -> FtlElement:
        if a.n != b.n:
            raise SizeMismatch(f"cannot multiply elements on {a.n} and {b.n} dots")
        if a.diagram is None or b.diagram is None:
            return FtlElement.zero(a.n)
        return FtlElement.lift(DiagramService.multiply(a.diagram, b.diagram))

    @staticmethod
    def ftl_evaluate_word(n: int, word: str) -> FtlElement:
        result: FtlElement = FtlElement.lift(DiagramService.identity(n))
        for token in word.split():
            result = ForkedService.ftl_multiply(
                result, FtlElement.lift(DiagramService.evaluate_word(n, token))
            )
        return result

    @staticmethod
    def ftl_dim(n: int) -> int:
        if n < 2:
            raise InvalidArguments(f"n must be at least 2, got {n}")
        return math.comb(2 * n, n) // 2

    @staticmethod
    def ftl_cells(n: int) -> list[CellLabel]:
        return [cell for cell in DiagramService.cells(n) if not cell.is_dotted]

    @staticmethod
    def ftl_cell_dimension(n: int) -> int:
        """sum of squared cell basis sizes over the retained cells"""
        return sum(
            len(CellularService.basis_for(n, cell)) ** 2 for cell in ForkedService.ftl_cells(n)
        )

    @staticmethod
    def ftl_qh_witness(n: int, p: int) -> tuple[HalfDiagram, HalfDiagram]:
        """
        S = (1,2)(3,4)...(2p-1,2p) and T = (2,3)(4,5)...(2p,2p+1) in the plain
        cell with p pairs; their form has no loops, so it is 1 at d = 0
        """
        if n % 2 == 0 or not 0 <= 2 * p < n:
            raise InvalidArguments(f"the witness pair needs odd n > 2p, got n={n} p={p}")
        s = HalfDiagram(n=n, pairs=tuple((2 * i + 1, 2 * i + 2) for i in range(p)))
        t = HalfDiagram(n=n, pairs=tuple((2 * i + 2, 2 * i + 3) for i in range(p)))
        return s, t

    def ftl_quasihereditary(self, n: int, delta: RationalValue) -> Verdict:
        """
        Quasi-hereditary for d != 0. At d = 0 exactly when n is odd: every
        cell form then takes the value 1 on a witness pair, while for even
        n the forms of both signed cells vanish
        """
        if n < 2:
            raise InvalidArguments(f"n must be at least 2, got {n}")
        if not delta.is_zero():
            return Verdict(decision=True)
        witnesses: list[Witness] = []
        if n % 2:
            for cell in self.ftl_cells(n):
                s, t = self.ftl_qh_witness(n, cell.p(n))
                value: RationalValue = CellularService.bilinear(cell, s, t).evaluate(delta)
                witnesses.append(
                    Witness(family="Phi", index=cell.through, value=value.to_text(), cell=cell.to_text())
                )
            decision: bool = all(w.value != "0" for w in witnesses)
            self.__logger.info(f"forked n={n} at d=0: {len(witnesses)} cell witnesses")
            return Verdict(decision=decision, witnesses=witnesses)
        for cell in self.ftl_cells(n):
            if cell.kind not in (CellKind.ZERO_PLUS, CellKind.ZERO_MINUS):
                continue
            entries = CellularService.gram(n, cell).entries
            if all(entry.evaluate(delta).is_zero() for row in entries for entry in row):
                witnesses.append(Witness(family="Phi", index=0, value="0", cell=cell.to_text()))
        return Verdict(decision=False, witnesses=witnesses)

    @staticmethod
    def ftl_semisimple(n: int, delta: RationalValue) -> Verdict:
        """semi-simple exactly when Q_t(d) != 0 for 2 <= t <= n"""
        if n < 3:
            raise InvalidArguments(f"n must be at least 3, got {n}")
        witnesses: list[Witness] = []
        for t in range(2, n + 1):
            value: RationalValue = chebyshev_q(t).evaluate(delta)
            if value.is_zero():
                witnesses.append(Witness(family="Q", index=t, value=value.to_text()))
        return Verdict(decision=not witnesses, witnesses=witnesses)
