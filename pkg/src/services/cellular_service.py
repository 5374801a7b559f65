import logging
from functools import lru_cache
from typing import Callable, Sequence

from src.models.cell_label import CellLabel
from src.models.errors import BasisMismatch, IncompatibleHalves, InvalidArguments
from src.models.gram_matrix import ActionMatrix, GramKind, GramMatrix
from src.models.half_diagram import BasisVariant, CellBasis, HalfDiagram, Pair
from src.models.poly import Poly
from src.models.results import BlockCheck, BranchingReport
from src.models.tl_diagram import GeneratorId, TLDiagram
from src.services.diagram_service import DiagramService
from src.services.half_diagram_service import HalfDiagramService
from src.utils.logging_utils import setup_logging
from src.utils.poly_matrix import PolyMatrix, as_matrix, scale, submatrix

ActResult = tuple[int, HalfDiagram] | None


class CellularService:
    """
    The cell datum of the decorated algebra: cell bases, the bilinear forms,
    Gram matrices, the action on cell modules and the restriction checks
    """

    def __init__(self) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        setup_logging(self.__logger)

    @staticmethod
    def cells(n: int) -> list[CellLabel]:
        return DiagramService.cells(n)

    @staticmethod
    def basis_for(n: int, cell: CellLabel) -> CellBasis:
        cell.check_for(n)
        return HalfDiagramService.enumerate_basis(n, cell.p(n), cell.variant)

    @staticmethod
    def bilinear(cell: CellLabel, t: HalfDiagram, u: HalfDiagram) -> Poly:
        """
        Stack the cap diagram of t over the cup diagram of u. A closed loop
        with an odd number of decorations gives 0, as does (outside the
        signed cells) losing through connections: fewer than the cell's
        through count of paths joining a t-isolated dot to a u-isolated dot.
        Otherwise d^loops, one more factor d for dotted cells
        """
        for d in (t, u):
            try:
                DiagramService.check_member(d, t.n, cell)
            except IncompatibleHalves as e:
                raise BasisMismatch(str(e))
        if t.n != u.n:
            raise BasisMismatch(f"halves on {t.n} and {u.n} dots")
        through, loops, odd_loop = _stack(t, u)
        if odd_loop:
            return Poly.zero()
        if not cell.is_signed and through < cell.through:
            return Poly.zero()
        return Poly.monomial(loops + 1 if cell.is_dotted else loops)

    @staticmethod
    def gram(n: int, cell: CellLabel) -> GramMatrix:
        return _gram(n, cell)

    @staticmethod
    def gram_pseudo(p: int) -> GramMatrix:
        """
        The (2p, p) matrix with entries taken from the form of plain:1 at 2p+1
        dots on the diagrams extended by an isolated last dot. Not the Gram
        matrix of a cell; block diagonal over the even/odd decoration split
        """
        if p < 1:
            raise InvalidArguments(f"gram_pseudo needs p >= 1, got {p}")
        return _gram_pseudo(p)

    @staticmethod
    def gram_type_a(n: int, p: int) -> GramMatrix:
        return _gram_type_a(n, p)

    @staticmethod
    def act(cell: CellLabel, a: TLDiagram, s: HalfDiagram) -> ActResult:
        """
        a times the basis vector of s: None when the product falls into a
        lower cell, else (power of d, resulting half diagram)
        """
        n: int = s.n
        basis: CellBasis = CellularService.basis_for(n, cell)
        if s not in basis:
            raise BasisMismatch(f"{s.to_text()} is not in the basis of {cell.to_text()}")
        if a.n != n:
            raise BasisMismatch(f"diagram on {a.n} dots acting on {n} dots")
        product: TLDiagram = DiagramService.multiply(
            a, DiagramService.from_halves(s, basis.members[0], cell)
        )
        if product.decorated_circuit and not cell.is_dotted:
            return None
        if len(product.verticals()) < cell.through:
            return None
        top, _ = DiagramService.cut(product)
        return product.delta_power, top

    @staticmethod
    def action_matrix(n: int, cell: CellLabel, g: GeneratorId) -> ActionMatrix:
        matrix: ActionMatrix = CellularService.action_matrix_of(
            cell, DiagramService.generator(g, n)
        )
        return matrix.model_copy(update={"generator": g})

    @staticmethod
    def action_matrix_of(cell: CellLabel, a: TLDiagram) -> ActionMatrix:
        basis: CellBasis = CellularService.basis_for(a.n, cell)
        size: int = len(basis)
        columns: list[list[Poly]] = []
        for s in basis.members:
            column: list[Poly] = [Poly.zero()] * size
            result: ActResult = CellularService.act(cell, a, s)
            if result is not None:
                power, image = result
                column[basis.index(image)] = Poly.monomial(power)
            columns.append(column)
        entries: PolyMatrix = tuple(
            tuple(columns[j][i] for j in range(size)) for i in range(size)
        )
        return ActionMatrix(n=a.n, cell=cell, basis=basis, entries=entries)

    @staticmethod
    def restriction_generators(n: int) -> list[GeneratorId]:
        """generators of the algebra on n-1 dots, seen inside the one on n"""
        return [GeneratorId.bar1()] + [GeneratorId.e(i) for i in range(1, n - 1)]

    def branching_check(self, n: int, p: int) -> BranchingReport:
        """
        Restriction of S(n, p) to n-1 dots. With the diagrams whose last dot
        is isolated listed first, every generator acts block lower triangular:
        the leading block is S(n-1, p) (or the signed pair at n = 2p+1) and the
        trailing block is S(n-1, p-1) through gamma. At n = 2p each signed
        module restricts to S(2p-1, p-1) through beta
        """
        if n < 4 or p < 1 or 2 * p > n:
            raise InvalidArguments(f"branching_check needs n >= 4 and 1 <= p <= n/2, got n={n} p={p}")
        report: BranchingReport = BranchingReport(n=n, p=p)
        generators: list[GeneratorId] = CellularService.restriction_generators(n)
        if n == 2 * p:
            for cell, sign in ((CellLabel.zero_plus(), 1), (CellLabel.zero_minus(), -1)):
                basis: CellBasis = CellularService.basis_for(n, cell)
                images: list[HalfDiagram] = [
                    HalfDiagramService.map_beta(d, sign) for d in basis.members
                ]
                for g in generators:
                    big: PolyMatrix = CellularService.action_matrix(n, cell, g).entries
                    small: ActionMatrix = CellularService.action_matrix(n - 1, CellLabel.plain(1), g)
                    report.checks.append(
                        _block_check(
                            f"{cell.to_text()} restricted, {g.to_text()}",
                            big, list(range(len(basis))), small, images,
                        )
                    )
        else:
            self._branching_plain(n, p, generators, report)
        self._branching_dotted(n, p, generators, report)
        if not report.passed:
            self.__logger.error(f"branching check failed at n={n} p={p}")
        return report

    @staticmethod
    def _branching_plain(
        n: int, p: int, generators: list[GeneratorId], report: BranchingReport
    ) -> None:
        cell: CellLabel = CellLabel.plain(n - 2 * p)
        basis: CellBasis = CellularService.basis_for(n, cell)
        head: list[int] = [i for i, d in enumerate(basis.members) if d.partner(n) == n]
        tail: list[int] = [i for i, d in enumerate(basis.members) if d.partner(n) != n]
        report.checks.append(
            BlockCheck(
                name="last-dot-isolated members come first",
                passed=head == list(range(len(head))),
            )
        )
        shrunk: list[HalfDiagram] = [_drop_last_dot(basis.members[i]) for i in head]
        quotient: list[HalfDiagram] = [
            HalfDiagramService.map_gamma(basis.members[i]) for i in tail
        ]
        for g in generators:
            big: PolyMatrix = CellularService.action_matrix(n, cell, g).entries
            zero_block: bool = all(big[i][j].is_zero() for i in tail for j in head)
            report.checks.append(
                BlockCheck(name=f"submodule is invariant, {g.to_text()}", passed=zero_block)
            )
            if n > 2 * p + 1:
                small: ActionMatrix = CellularService.action_matrix(
                    n - 1, CellLabel.plain(n - 1 - 2 * p), g
                )
                report.checks.append(
                    _block_check(f"submodule is S({n - 1},{p}), {g.to_text()}", big, head, small, shrunk)
                )
            else:
                plus: list[int] = [i for i, d in zip(head, shrunk) if d.decoration_count % 2 == 0]
                minus: list[int] = [i for i, d in zip(head, shrunk) if d.decoration_count % 2 == 1]
                cross: bool = all(
                    big[i][j].is_zero() for i in plus for j in minus
                ) and all(big[i][j].is_zero() for i in minus for j in plus)
                report.checks.append(
                    BlockCheck(name=f"submodule splits by parity, {g.to_text()}", passed=cross)
                )
                for signed, rows in ((CellLabel.zero_plus(), plus), (CellLabel.zero_minus(), minus)):
                    small = CellularService.action_matrix(n - 1, signed, g)
                    report.checks.append(
                        _block_check(
                            f"summand {signed.to_text()}, {g.to_text()}",
                            big, rows, small,
                            [_drop_last_dot(basis.members[i]) for i in rows],
                        )
                    )
            quotient_cell: CellLabel = CellLabel.plain(n - 2 * p + 1)
            small_quotient: ActionMatrix = CellularService.action_matrix(n - 1, quotient_cell, g)
            report.checks.append(
                _block_check(
                    f"quotient is S({n - 1},{p - 1}), {g.to_text()}",
                    big, tail, small_quotient, quotient,
                )
            )

    @staticmethod
    def _branching_dotted(
        n: int, p: int, generators: list[GeneratorId], report: BranchingReport
    ) -> None:
        """
        The dotted cells restrict like their undecorated counterparts; checked
        wherever the cells on n-1 dots exist
        """
        cell: CellLabel = CellLabel.dotted(n - 2 * p)
        try:
            cell.check_for(n)
        except InvalidArguments:
            return
        basis: CellBasis = CellularService.basis_for(n, cell)
        head: list[int] = [i for i, d in enumerate(basis.members) if d.partner(n) == n]
        tail: list[int] = [i for i, d in enumerate(basis.members) if d.partner(n) != n]
        targets: list[tuple[str, list[int], int, Callable[[HalfDiagram], HalfDiagram]]] = []
        if head:
            targets.append(("dotted submodule", head, n - 1 - 2 * p, _drop_last_dot))
        targets.append(("dotted quotient", tail, n - 2 * p + 1, _drop_last_pair))
        for g in generators:
            big: PolyMatrix = CellularService.action_matrix(n, cell, g).entries
            if head:
                report.checks.append(
                    BlockCheck(
                        name=f"dotted submodule is invariant, {g.to_text()}",
                        passed=all(big[i][j].is_zero() for i in tail for j in head),
                    )
                )
            for name, rows, through, shrink in targets:
                small_cell: CellLabel = CellLabel.dotted(through)
                try:
                    small_cell.check_for(n - 1)
                except InvalidArguments:
                    continue
                small: ActionMatrix = CellularService.action_matrix(n - 1, small_cell, g)
                report.checks.append(
                    _block_check(
                        f"{name} {small_cell.to_text()}, {g.to_text()}",
                        big, rows, small, [shrink(basis.members[i]) for i in rows],
                    )
                )

    @staticmethod
    def block_structure_check(n: int, p: int) -> list[BlockCheck]:
        """
        Block form of G(n, p) for 2p < n: the leading block is G(n-1, p) (the
        pseudo matrix when n-1 = 2p), diagrams with n-1 isolated are orthogonal
        to those pairing n-1 with n, the latter carry d*G(n-2, p-1), and a
        diagram pairing n-1 with k < n-1 meets them as G(n-2, p-1) does
        """
        if p < 1 or 2 * p >= n:
            raise InvalidArguments(f"block structure needs 1 <= p and 2p < n, got n={n} p={p}")
        gram: GramMatrix = _gram(n, CellLabel.plain(n - 2 * p))
        members: tuple[HalfDiagram, ...] = gram.basis.members
        entries: PolyMatrix = gram.entries
        head: list[int] = [i for i, d in enumerate(members) if d.partner(n) == n]
        pinned: list[int] = [i for i in head if members[i].partner(n - 1) == n - 1]
        folded: list[int] = [i for i in head if members[i].partner(n - 1) != n - 1]
        last_pair: list[int] = [i for i, d in enumerate(members) if d.partner(n) == n - 1]
        checks: list[BlockCheck] = []

        leading: GramMatrix = _gram_pseudo(p) if n - 1 == 2 * p else _gram(n - 1, CellLabel.plain(n - 1 - 2 * p))
        checks.append(
            BlockCheck(
                name="leading block",
                passed=head == list(range(len(head)))
                and submatrix(entries, head, head) == leading.entries,
            )
        )
        checks.append(
            BlockCheck(
                name="last pair follows the leading block",
                passed=last_pair == list(range(len(head), len(head) + len(last_pair))),
            )
        )
        checks.append(
            BlockCheck(
                name="isolated n-1 against pair (n-1,n)",
                passed=all(entries[i][j].is_zero() for i in pinned for j in last_pair),
            )
        )
        inner: GramMatrix = _gram(n - 2, CellLabel.plain(n - 2 * p))
        inner_order: list[HalfDiagram] = [_drop_last_pair(members[i]) for i in last_pair]
        positions: list[int] = [inner.basis.index(d) for d in inner_order]
        checks.append(
            BlockCheck(
                name="pair (n-1,n) block is d times G(n-2,p-1)",
                passed=submatrix(entries, last_pair, last_pair)
                == scale(submatrix(inner.entries, positions, positions), Poly.delta()),
            )
        )
        rows_match: bool = True
        for i in folded:
            shrunk: HalfDiagram = _drop_last_two_dots(members[i])
            row: int = inner.basis.index(shrunk)
            for column, j in zip(positions, last_pair):
                if entries[i][j] != inner.entries[row][column]:
                    rows_match = False
        checks.append(BlockCheck(name="folded rows against pair (n-1,n)", passed=rows_match))
        return checks

    @staticmethod
    def cell_product_check(
        cell: CellLabel, x: HalfDiagram, s: HalfDiagram, t: HalfDiagram, y: HalfDiagram
    ) -> bool:
        """
        C(x,s) C(t,y) equals Phi(s,t) C(x,y) modulo lower cells: when the form
        is nonzero the product is that multiple of C(x,y), otherwise it falls
        into a lower cell
        """
        product: TLDiagram = DiagramService.multiply(
            DiagramService.from_halves(x, s, cell), DiagramService.from_halves(t, y, cell)
        )
        form: Poly = CellularService.bilinear(cell, s, t)
        expected: TLDiagram = DiagramService.from_halves(x, y, cell)
        if form.is_zero():
            lower: bool = len(product.verticals()) < cell.through or (
                product.decorated_circuit and not cell.is_dotted
            )
            return lower
        return (
            product.diagram_part() == expected
            and Poly.monomial(product.delta_power) == form
        )


def _stack(t: HalfDiagram, u: HalfDiagram) -> tuple[int, int, bool]:
    """
    (through connections, closed loops, some loop has odd decorations) for
    the caps of t stacked on the cups of u
    """
    n: int = t.n
    edges: list[tuple[int, int, int]] = []
    incident: dict[int, list[int]] = {dot: [] for dot in range(1, n + 1)}
    for half in (t, u):
        for i, j in half.pairs:
            incident[i].append(len(edges))
            incident[j].append(len(edges))
            edges.append((i, j, int((i, j) in half.decorations)))
    t_isolated: set[int] = set(t.isolated)
    u_isolated: set[int] = set(u.isolated)
    visited: set[int] = set()

    def trace(start: int) -> tuple[int, int]:
        current: int = start
        came_by: int = -1
        parity: int = 0
        while True:
            visited.add(current)
            choices: list[int] = [e for e in incident[current] if e != came_by]
            if not choices:
                return current, parity
            edge: int = choices[0]
            i, j, bit = edges[edge]
            current = j if i == current else i
            came_by = edge
            parity ^= bit
            if current == start:
                return current, parity

    through: int = 0
    for dot in sorted(t_isolated | u_isolated):
        if dot in visited:
            continue
        end, _ = trace(dot)
        if (dot in t_isolated and end in u_isolated) or (dot in u_isolated and end in t_isolated):
            through += 1
    loops: int = 0
    odd_loop: bool = False
    for dot in range(1, n + 1):
        if dot in visited:
            continue
        _, parity = trace(dot)
        loops += 1
        odd_loop = odd_loop or bool(parity)
    return through, loops, odd_loop


def _drop_last_dot(d: HalfDiagram) -> HalfDiagram:
    return HalfDiagram(n=d.n - 1, pairs=d.pairs, decorations=d.decorations)


def _drop_last_pair(d: HalfDiagram) -> HalfDiagram:
    last: Pair = (d.partner(d.n), d.n)
    return HalfDiagram(
        n=d.n - 1,
        pairs=[pair for pair in d.pairs if pair != last],
        decorations=[pair for pair in d.decorations if pair != last],
    )


def _drop_last_two_dots(d: HalfDiagram) -> HalfDiagram:
    """
    For a diagram pairing k with n-1 and leaving n isolated: remove both dots,
    k becomes isolated and loses any decoration
    """
    fold: Pair = (d.partner(d.n - 1), d.n - 1)
    return HalfDiagram(
        n=d.n - 2,
        pairs=[pair for pair in d.pairs if pair != fold],
        decorations=[pair for pair in d.decorations if pair != fold],
    )


def _block_check(
    name: str,
    big: PolyMatrix,
    rows: Sequence[int],
    small: ActionMatrix,
    images: Sequence[HalfDiagram],
) -> BlockCheck:
    try:
        positions: list[int] = [small.basis.index(d) for d in images]
    except ValueError:
        return BlockCheck(name=name, passed=False, detail="image outside the smaller basis")
    if sorted(positions) != list(range(len(small.basis))) or positions != sorted(positions):
        return BlockCheck(name=name, passed=False, detail="map is not an order isomorphism")
    passed: bool = submatrix(big, rows, rows) == small.entries
    return BlockCheck(name=name, passed=passed, detail=None if passed else "blocks differ")


@lru_cache(maxsize=None)
def _gram(n: int, cell: CellLabel) -> GramMatrix:
    basis: CellBasis = CellularService.basis_for(n, cell)
    entries: PolyMatrix = as_matrix(
        [[CellularService.bilinear(cell, t, u) for u in basis.members] for t in basis.members]
    )
    return GramMatrix(n=n, kind=GramKind.CELL, cell=cell, basis=basis, entries=entries)


@lru_cache(maxsize=None)
def _gram_pseudo(p: int) -> GramMatrix:
    basis: CellBasis = HalfDiagramService.enumerate_basis(2 * p, p, BasisVariant.ALL)
    extended: list[HalfDiagram] = [HalfDiagramService.embed(d) for d in basis.members]
    cell: CellLabel = CellLabel.plain(1)
    entries: PolyMatrix = as_matrix(
        [[CellularService.bilinear(cell, t, u) for u in extended] for t in extended]
    )
    return GramMatrix(n=2 * p, kind=GramKind.PSEUDO, basis=basis, entries=entries)


@lru_cache(maxsize=None)
def _gram_type_a(n: int, p: int) -> GramMatrix:
    basis: CellBasis = HalfDiagramService.enumerate_basis(n, p, BasisVariant.UNDECORATED)
    rows: list[list[Poly]] = []
    for t in basis.members:
        row: list[Poly] = []
        for u in basis.members:
            through, loops, _ = _stack(t, u)
            row.append(Poly.monomial(loops) if through == n - 2 * p else Poly.zero())
        rows.append(row)
    return GramMatrix(n=n, kind=GramKind.TYPE_A, basis=basis, entries=as_matrix(rows))
