import logging
import math
from functools import lru_cache

from src.models.cell_label import CellLabel
from src.models.errors import (
    IncompatibleHalves,
    InvalidArguments,
    RenormalizationError,
    SizeMismatch,
)
from src.models.half_diagram import BasisVariant, HalfDiagram, Pair
from src.models.tl_diagram import Arc, GeneratorId, TLDiagram
from src.services.half_diagram_service import HalfDiagramService
from src.utils.logging_utils import setup_logging


class DiagramService:
    def __init__(self) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        setup_logging(self.__logger)

    @staticmethod
    def identity(n: int) -> TLDiagram:
        if n < 1:
            raise InvalidArguments(f"n must be positive, got {n}")
        return TLDiagram(n=n, matching=tuple((e + n) % (2 * n) for e in range(2 * n)))

    @staticmethod
    def generator(g: GeneratorId, n: int) -> TLDiagram:
        """
        e_i: cap at (i, i+1) on top, cup at (i, i+1) at the bottom,
        vertical strands elsewhere. e_{1bar} has the shape of e_1 with
        both horizontal arcs decorated
        """
        if n < 2:
            raise InvalidArguments(f"generators need n >= 2, got {n}")
        g.check_for(n)
        i: int = g.index - 1
        matching: list[int] = list(DiagramService.identity(n).matching)
        matching[i], matching[i + 1] = i + 1, i
        matching[n + i], matching[n + i + 1] = n + i + 1, n + i
        decorated: tuple[Arc, ...] = ((i, i + 1), (n + i, n + i + 1)) if g.bar else ()
        return TLDiagram(n=n, matching=tuple(matching), decorated=decorated)

    @staticmethod
    def cells(n: int) -> list[CellLabel]:
        """The cell poset in descending order"""
        if n < 2:
            raise InvalidArguments(f"cells need n >= 2, got {n}")
        labels: list[CellLabel] = [CellLabel.plain(k) for k in range(n, 0, -2)]
        if n % 2 == 0:
            labels.extend([CellLabel.zero_plus(), CellLabel.zero_minus()])
        labels.extend(CellLabel.dotted(k) for k in range(n - 2, -1, -2))
        return labels

    @staticmethod
    def check_member(d: HalfDiagram, n: int, cell: CellLabel) -> None:
        """raises IncompatibleHalves unless d belongs to the basis of cell"""
        report = HalfDiagramService.validate(d)
        if not report.ok:
            raise IncompatibleHalves(f"{d.to_text()} is invalid: {report.detail}")
        if d.n != n or d.p != cell.p(n):
            raise IncompatibleHalves(
                f"{d.to_text()} does not have shape ({n},{cell.p(n)}) of {cell.to_text()}"
            )
        variant: BasisVariant = cell.variant
        if variant == BasisVariant.UNDECORATED and d.decorations:
            raise IncompatibleHalves(f"{d.to_text()} is decorated but {cell.to_text()} is dotted")
        if variant == BasisVariant.EVEN and d.decoration_count % 2:
            raise IncompatibleHalves(f"{d.to_text()} has odd decorations, cell 0+")
        if variant == BasisVariant.ODD and d.decoration_count % 2 == 0:
            raise IncompatibleHalves(f"{d.to_text()} has even decorations, cell 0-")

    @staticmethod
    def from_halves(s: HalfDiagram, t: HalfDiagram, cell: CellLabel) -> TLDiagram:
        """
        s is drawn as the top arcs and t as the bottom arcs; the isolated dots
        are joined left to right by vertical strands. An odd total decoration
        count on s and t is balanced by decorating the leftmost vertical.
        Dotted cells carry undecorated halves and a decorated circuit
        """
        if s.n != t.n:
            raise IncompatibleHalves(f"halves on {s.n} and {t.n} dots")
        if len(s.isolated) != len(t.isolated):
            raise IncompatibleHalves(
                f"{len(s.isolated)} and {len(t.isolated)} isolated dots do not match"
            )
        n: int = s.n
        try:
            cell.check_for(n)
        except InvalidArguments as e:
            raise IncompatibleHalves(str(e))
        DiagramService.check_member(s, n, cell)
        DiagramService.check_member(t, n, cell)
        matching: list[int] = [0] * (2 * n)
        decorated: list[Arc] = []
        for i, j in s.pairs:
            matching[i - 1], matching[j - 1] = j - 1, i - 1
            if (i, j) in s.decorations:
                decorated.append((i - 1, j - 1))
        for i, j in t.pairs:
            matching[n + i - 1], matching[n + j - 1] = n + j - 1, n + i - 1
            if (i, j) in t.decorations:
                decorated.append((n + i - 1, n + j - 1))
        verticals: list[Arc] = [
            (top - 1, n + bottom - 1) for top, bottom in zip(s.isolated, t.isolated)
        ]
        for top, bottom in verticals:
            matching[top], matching[bottom] = bottom, top
        if (s.decoration_count + t.decoration_count) % 2:
            decorated.append(verticals[0])
        return TLDiagram(
            n=n,
            matching=tuple(matching),
            decorated=tuple(decorated),
            decorated_circuit=cell.is_dotted,
        )

    @staticmethod
    def cut(d: TLDiagram) -> tuple[HalfDiagram, HalfDiagram]:
        n: int = d.n
        top: list[Pair] = []
        top_decorated: list[Pair] = []
        bottom: list[Pair] = []
        bottom_decorated: list[Pair] = []
        for a, b in d.arcs():
            if b < n:
                top.append((a + 1, b + 1))
                if d.is_decorated((a, b)):
                    top_decorated.append((a + 1, b + 1))
            elif a >= n:
                bottom.append((a - n + 1, b - n + 1))
                if d.is_decorated((a, b)):
                    bottom_decorated.append((a - n + 1, b - n + 1))
        return (
            HalfDiagram(n=n, pairs=top, decorations=top_decorated),
            HalfDiagram(n=n, pairs=bottom, decorations=bottom_decorated),
        )

    @staticmethod
    def cell_of(d: TLDiagram) -> CellLabel:
        through: int = len(d.verticals())
        if d.decorated_circuit:
            return CellLabel.dotted(through)
        if through:
            return CellLabel.plain(through)
        top, _ = DiagramService.cut(d)
        return CellLabel.zero_plus() if top.decoration_count % 2 == 0 else CellLabel.zero_minus()

    @staticmethod
    def is_basis_diagram(d: TLDiagram) -> bool:
        """true when d (ignoring its delta power) is a from_halves image"""
        top, bottom = DiagramService.cut(d)
        try:
            rebuilt: TLDiagram = DiagramService.from_halves(
                top, bottom, DiagramService.cell_of(d)
            )
        except (IncompatibleHalves, InvalidArguments):
            return False
        return rebuilt == d.diagram_part()

    @staticmethod
    def multiply(a: TLDiagram, b: TLDiagram) -> TLDiagram:
        """
        a stacked on top of b. Points 0..n-1 are a's top row, n..2n-1 the
        glued middle row, 2n..3n-1 b's bottom row. Every strand is traced
        while summing its decorations mod 2
        """
        if a.n != b.n:
            raise SizeMismatch(f"cannot multiply diagrams on {a.n} and {b.n} dots")
        n: int = a.n
        edges: list[tuple[int, int, int]] = []
        incident: dict[int, list[int]] = {point: [] for point in range(3 * n)}
        for diagram, offset in ((a, 0), (b, n)):
            for x, y in diagram.arcs():
                incident[x + offset].append(len(edges))
                incident[y + offset].append(len(edges))
                edges.append((x + offset, y + offset, int(diagram.is_decorated((x, y)))))

        visited: set[int] = set()

        def trace(start: int) -> tuple[int, int]:
            """
            Follow the strand leaving start until it reaches the top or bottom
            row, or comes back to start. Returns (end point, parity)
            """
            current: int = start
            came_by: int = -1
            parity: int = 0
            while True:
                visited.add(current)
                edge: int = next(e for e in incident[current] if e != came_by)
                u, v, bit = edges[edge]
                current = v if u == current else u
                came_by = edge
                parity ^= bit
                if current == start or current < n or current >= 2 * n:
                    visited.add(current)
                    return current, parity

        matching: list[int] = [0] * (2 * n)
        odd_strands: list[Arc] = []
        for point in [*range(n), *range(2 * n, 3 * n)]:
            if point in visited:
                continue
            end, parity = trace(point)
            x: int = point if point < n else point - n
            y: int = end if end < n else end - n
            matching[x], matching[y] = y, x
            if parity:
                odd_strands.append((min(x, y), max(x, y)))

        even_loops: int = 0
        odd_loops: int = 0
        for point in range(n, 2 * n):
            if point in visited:
                continue
            _, parity = trace(point)
            if parity:
                odd_loops += 1
            else:
                even_loops += 1

        delta_power: int = a.delta_power + b.delta_power + even_loops
        circuits: int = odd_loops + int(a.decorated_circuit) + int(b.decorated_circuit)
        if circuits:
            # decorated circuits merge into one, each extra one leaves a factor d
            return TLDiagram(
                n=n,
                matching=tuple(matching),
                decorated_circuit=True,
                delta_power=delta_power + circuits - 1,
            )
        shape: TLDiagram = TLDiagram(
            n=n, matching=tuple(matching), decorated=tuple(odd_strands)
        )
        return DiagramService._renormalise(shape).with_delta_power(delta_power)

    @staticmethod
    def _renormalise(shape: TLDiagram) -> TLDiagram:
        """
        Rebuild a second type product in the from_halves normal form: the
        decorations of horizontal arcs stay where they are, the parity of the
        verticals is pushed to the leftmost vertical
        """
        top, bottom = DiagramService.cut(shape)
        through: int = len(shape.verticals())
        cell: CellLabel
        if through:
            cell = CellLabel.plain(through)
        elif top.decoration_count % 2 == 0:
            cell = CellLabel.zero_plus()
        else:
            cell = CellLabel.zero_minus()
        try:
            return DiagramService.from_halves(top, bottom, cell)
        except IncompatibleHalves as e:
            raise RenormalizationError(
                f"product halves {top.to_text()} / {bottom.to_text()} are not a basis pair: {e}"
            )

    @staticmethod
    def star(d: TLDiagram) -> TLDiagram:
        """flip top and bottom"""
        n: int = d.n

        def flip(e: int) -> int:
            return (e + n) % (2 * n)

        matching: list[int] = [0] * (2 * n)
        for e, f in enumerate(d.matching):
            matching[flip(e)] = flip(f)
        return TLDiagram(
            n=n,
            matching=tuple(matching),
            decorated=tuple((flip(a), flip(b)) for a, b in d.decorated),
            decorated_circuit=d.decorated_circuit,
            delta_power=d.delta_power,
        )

    @staticmethod
    def evaluate_word(n: int, word: str) -> TLDiagram:
        """product of whitespace separated generators, left to right"""
        result: TLDiagram = DiagramService.identity(n)
        for token in word.split():
            result = DiagramService.multiply(
                result, DiagramService.generator(GeneratorId.parse(token), n)
            )
        return result

    @staticmethod
    def basis_violations(d: TLDiagram) -> list[str]:
        """
        Which of the structural conditions on a basis diagram fail: a decorated
        circuit forbids any other decoration and the identity shape; otherwise
        the decoration total is even and every decorated arc is exposed to
        the left edge (not nested under an arc of its own row, and no vertical
        strand to its left; a decorated vertical is the leftmost one)
        """
        violations: list[str] = []
        n: int = d.n
        if d.decorated_circuit:
            if d.decorated:
                violations.append("decorations next to a decorated circuit")
            if len(d.verticals()) == n:
                violations.append("decorated circuit on the identity")
            return violations
        if len(d.decorated) % 2:
            violations.append("odd number of decorations")
        verticals: list[Arc] = d.verticals()
        for a, b in d.decorated:
            if a < n <= b:
                if verticals and (a, b) != verticals[0]:
                    violations.append(f"decorated vertical {d.label(a)}-{d.label(b)} is not leftmost")
                continue
            row: int = 0 if b < n else n
            left: int = a - row
            right: int = b - row
            for x, y in d.arcs():
                if (y < n) == (row == 0) and x >= row and x - row < left and right < y - row:
                    violations.append(
                        f"decorated {d.label(a)}-{d.label(b)} nested under {d.label(x)}-{d.label(y)}"
                    )
            for top, bottom in verticals:
                column: int = top if row == 0 else bottom - n
                if column < left:
                    violations.append(
                        f"decorated {d.label(a)}-{d.label(b)} right of a vertical strand"
                    )
                    break
        return violations

    @staticmethod
    def basis(n: int) -> list[TLDiagram]:
        return list(_basis(n))

    @staticmethod
    def basis_count(n: int) -> tuple[int, int, int]:
        """(total, first type, second type) from the enumerated basis"""
        if n < 2:
            raise InvalidArguments(f"basis_count needs n >= 2, got {n}")
        diagrams: tuple[TLDiagram, ...] = _basis(n)
        first: int = sum(1 for d in diagrams if d.decorated_circuit)
        return len(diagrams), first, len(diagrams) - first

    @staticmethod
    def dimension_formula(n: int) -> int:
        """(n+3)/(2(n+1)) * C(2n, n) - 1"""
        return (n + 3) * math.comb(2 * n, n) // (2 * (n + 1)) - 1


@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[TLDiagram, ...]:
    diagrams: list[TLDiagram] = []
    for cell in DiagramService.cells(n):
        members = HalfDiagramService.enumerate_basis(n, cell.p(n), cell.variant).members
        for s in members:
            for t in members:
                diagrams.append(DiagramService.from_halves(s, t, cell))
    return tuple(diagrams)
