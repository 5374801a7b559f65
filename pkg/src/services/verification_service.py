import json
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable

from src.models.cell_label import CellLabel
from src.models.errors import InvalidArguments, TldkitError
from src.models.ftl_element import FtlElement
from src.models.half_diagram import BasisVariant, CellBasis, HalfDiagram
from src.models.poly import Poly, RationalValue
from src.models.results import CaseResult, DetMethod
from src.models.tl_diagram import GeneratorId, TLDiagram
from src.services.cellular_service import CellularService
from src.services.diagram_service import DiagramService
from src.services.forked_service import ForkedService
from src.services.gram_determinant_service import GramDeterminantService
from src.services.half_diagram_service import HalfDiagramService
from src.utils.chebyshev import chebyshev_p, chebyshev_q
from src.utils.logging_utils import setup_logging
from src.utils.poly_matrix import scale
from src.utils.runtime_config import RuntimeConfig

FIXTURES: Path = Path(__file__).resolve().parent.parent / "fixtures"

SUITES: tuple[str, ...] = (
    "relations",
    "order",
    "maps",
    "branching",
    "gram52",
    "recurrence",
    "closed",
    "typea",
    "forked",
    "deciders",
)

SAMPLE_DELTAS: tuple[str, ...] = ("-2", "-1", "-1/2", "0", "1/2", "1", "3/2", "2", "3")

# a check returns the list of its failures, empty when it passes
Check = Callable[[], list[str]]
Case = tuple[str, str, Check]


def load_fixture(name: str) -> dict[str, Any]:
    with open(FIXTURES / name, encoding="utf-8") as fixture:
        return json.load(fixture)


class VerificationService:
    """
    Runs named suites of exact checks. Cases are independent and run on a
    thread pool; the report is sorted by (suite, key) so it does not depend
    on scheduling
    """

    def __init__(self, config: RuntimeConfig = RuntimeConfig()) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        setup_logging(
            self.__logger,
            log_to_file=config.log_to_file,
            file_path=config.log_file,
            level=config.log_level,
        )
        self.__config: RuntimeConfig = config
        self.__determinants: GramDeterminantService = GramDeterminantService()
        self.__forked: ForkedService = ForkedService()
        self.__cellular: CellularService = CellularService()
        self.__half_diagrams: HalfDiagramService = HalfDiagramService()

    def run(self, suite: str, max_n: int) -> list[CaseResult]:
        if suite != "all" and suite not in SUITES:
            raise InvalidArguments(f"unknown suite {suite!r}, expected one of {', '.join(SUITES)} or all")
        if max_n < 4:
            raise InvalidArguments(f"--max-n must be at least 4, got {max_n}")
        cases: list[Case] = []
        for name in SUITES if suite == "all" else (suite,):
            cases.extend(self._cases(name, max_n))
        self.__logger.info(
            f"running {len(cases)} cases of {suite} up to n={max_n} on {self.__config.worker_count} threads"
        )
        with ThreadPoolExecutor(max_workers=self.__config.worker_count) as executor:
            results: list[CaseResult] = list(executor.map(self._run_case, cases))
        results.sort(key=lambda result: (result.suite, result.key))
        failed: int = sum(1 for result in results if not result.passed)
        if failed:
            self.__logger.error(f"{failed} of {len(results)} cases failed")
        else:
            self.__logger.info(f"all {len(results)} cases passed")
        return results

    def _run_case(self, case: Case) -> CaseResult:
        suite, key, check = case
        try:
            failures: list[str] = check()
        except (TldkitError, ValueError, ArithmeticError) as e:
            failures = [f"{type(e).__name__}: {e}"]
        if failures:
            self.__logger.error(f"{suite} {key}: {failures[0]}")
        else:
            self.__logger.debug(f"{suite} {key} passed")
        return CaseResult(
            suite=suite,
            key=key,
            passed=not failures,
            detail="; ".join(failures[:5]) if failures else None,
        )

    def _cases(self, suite: str, max_n: int) -> list[Case]:
        builders: dict[str, Callable[[int], list[tuple[str, Check]]]] = {
            "relations": self._relation_cases,
            "order": self._order_cases,
            "maps": self._map_cases,
            "branching": self._branching_cases,
            "gram52": self._gram52_cases,
            "recurrence": self._recurrence_cases,
            "closed": self._closed_cases,
            "typea": self._type_a_cases,
            "forked": self._forked_cases,
            "deciders": self._decider_cases,
        }
        return [(suite, key, check) for key, check in builders[suite](max_n)]

    def _relation_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for n in range(4, min(max_n, 7) + 1):
            cases.append((f"n={n:02d} generators", _bind(check_relations, n)))
        for n in range(4, min(max_n, 6) + 1):
            cases.append((f"n={n:02d} associativity", _bind(self._check_associativity, n)))
        return cases

    def _check_associativity(self, n: int) -> list[str]:
        """(ab)c = a(bc) and (ab)* = b* a* on random basis triples"""
        basis: list[TLDiagram] = DiagramService.basis(n)
        sampler: random.Random = random.Random(self.__config.random_seed + n)
        failures: list[str] = []
        for sample in range(self.__config.associativity_samples):
            a, b, c = (sampler.choice(basis) for _ in range(3))
            ab: TLDiagram = DiagramService.multiply(a, b)
            if DiagramService.multiply(ab, c) != DiagramService.multiply(a, DiagramService.multiply(b, c)):
                failures.append(f"sample {sample} is not associative")
            if DiagramService.star(ab) != DiagramService.multiply(DiagramService.star(b), DiagramService.star(a)):
                failures.append(f"sample {sample} breaks the anti-involution")
        return failures

    def _order_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = [
            ("counts", lambda: [str(m) for m in self.__half_diagrams.check_counts(max(max_n, 12))]),
            ("order 5,2", check_order_5_2),
        ]
        for n in range(4, min(max_n, 7) + 1):
            cases.append((f"n={n:02d} basis", _bind(check_basis, n)))
        return cases

    @staticmethod
    def _map_cases(max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for p in range(1, 7):
            cases.append((f"alpha p={p}", _bind(check_alpha, p)))
            for sign in (1, -1):
                cases.append((f"beta{'+' if sign == 1 else '-'} p={p}", _bind(check_beta, p, sign)))
        for n in range(3, 11):
            for p in range(1, (n - 1) // 2 + 1):
                cases.append((f"gamma n={n:02d} p={p}", _bind(check_gamma, n, p)))
        return cases

    def _branching_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for n in range(4, max_n + 1):
            for p in range(1, n // 2 + 1):
                cases.append((f"restriction n={n:02d} p={p}", _bind(self._check_branching, n, p)))
                if 2 * p < n:
                    cases.append((f"blocks n={n:02d} p={p}", _bind(check_blocks, n, p)))
        cases.append(("cell products n=04", _bind(check_cell_products, 4)))
        return cases

    def _check_branching(self, n: int, p: int) -> list[str]:
        return [
            check.name + (f" ({check.detail})" if check.detail else "")
            for check in self.__cellular.branching_check(n, p).checks
            if not check.passed
        ]

    @staticmethod
    def _gram52_cases(max_n: int) -> list[tuple[str, Check]]:
        return [("gram 5,2", check_gram_5_2)]

    def _recurrence_cases(self, max_n: int) -> list[tuple[str, Check]]:
        service: GramDeterminantService = self.__determinants
        cases: list[tuple[str, Check]] = []
        for n in range(3, max_n + 1):
            for p in range(1, (n - 1) // 2 + 1):
                cases.append(
                    (
                        f"step n={n:02d} p={p}",
                        _bind(lambda n, p: [] if service.recurrence_step(n, p) else ["step fails"], n, p),
                    )
                )
        for n in range(4, max_n + 1):
            cases.append((f"routes n={n:02d}", _bind(self._check_routes, n)))
        for p in range(1, min(max_n // 2, 4) + 1):
            cases.append((f"signed p={p}", _bind(self._check_signed, p)))
        cases.append(("det G(n,1) = Q_n", self._check_first_column))
        for n in range(3, max_n):
            for p in range(0, (n - 1) // 2 + 1):
                cases.append((f"ratio n={n:02d} p={p}", _bind(check_ratio, n, p)))
        return cases

    def _check_routes(self, n: int) -> list[str]:
        failures: list[str] = []
        for cell in DiagramService.cells(n):
            direct: Poly = self.__determinants.det_gram(n, cell, DetMethod.DIRECT).value
            recurrence: Poly = self.__determinants.det_gram(n, cell, DetMethod.RECURRENCE).value
            if direct != recurrence:
                failures.append(f"{cell.to_text()}: direct {direct} != recurrence {recurrence}")
        return failures

    def _check_signed(self, p: int) -> list[str]:
        n: int = 2 * p
        failures: list[str] = []
        expected: Poly = GramDeterminantService.signed_det(p)
        plus = CellularService.gram(n, CellLabel.zero_plus())
        minus = CellularService.gram(n, CellLabel.zero_minus())
        if plus.entries != minus.entries:
            failures.append("G+ and G- differ")
        for cell in (CellLabel.zero_plus(), CellLabel.zero_minus()):
            direct: Poly = self.__determinants.det_gram(n, cell, DetMethod.DIRECT).value
            if direct != expected:
                failures.append(f"det {cell.to_text()} = {direct}, expected {expected}")
        if self.__determinants.det_pseudo(p) != GramDeterminantService.pseudo_det(p):
            failures.append("pseudo determinant is not the square of the signed one")
        return failures

    def _check_first_column(self) -> list[str]:
        failures: list[str] = []
        for n in range(3, 11):
            value: Poly = self.__determinants.det_gram(n, CellLabel.plain(n - 2), DetMethod.DIRECT).value
            if value != chebyshev_q(n):
                failures.append(f"det G({n},1) = {value}, expected {chebyshev_q(n)}")
        return failures

    def _closed_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for n in range(3, max_n + 1):
            for p in range(1, (n - 1) // 2 + 1):
                cases.append((f"closed n={n:02d} p={p}", _bind(self._check_closed, n, p)))
        for n in range(2, max(max_n, 8) + 1):
            for p in range(1, n // 2 + 1):
                cases.append(
                    (
                        f"identity n={n:02d} p={p}",
                        _bind(
                            lambda n, p: []
                            if GramDeterminantService.check_product_identity(n, p)
                            else ["sides differ"],
                            n,
                            p,
                        ),
                    )
                )
        cases.append(("pseudo 2 cross-route", self._check_pseudo_cross_route))
        cases.append(("closed 8,3", check_closed_8_3))
        return cases

    def _check_closed(self, n: int, p: int) -> list[str]:
        cell: CellLabel = CellLabel.plain(n - 2 * p)
        direct: Poly = self.__determinants.det_gram(n, cell, DetMethod.DIRECT).value
        closed: Poly = self.__determinants.det_gram(n, cell, DetMethod.CLOSED).value
        return [] if direct == closed else [f"direct {direct} != closed {closed}"]

    def _check_pseudo_cross_route(self) -> list[str]:
        expected: Poly = Poly.monomial(8) * (Poly.monomial(2) - 2) ** 2
        routes: dict[str, Poly] = {
            "elimination": self.__determinants.det_pseudo(2),
            "signed square": GramDeterminantService.pseudo_det(2),
            "closed": GramDeterminantService.closed_formula(4, 2),
        }
        return [f"{name} gives {value}" for name, value in routes.items() if value != expected]

    def _type_a_cases(self, max_n: int) -> list[tuple[str, Check]]:
        return [(f"n={n:02d}", _bind(self._check_type_a, n)) for n in range(2, min(max_n, 8) + 1)]

    def _check_type_a(self, n: int) -> list[str]:
        failures: list[str] = []
        for p in range(0, n // 2 + 1):
            plain = CellularService.gram_type_a(n, p)
            if p >= 1:
                dotted = CellularService.gram(n, CellLabel.dotted(n - 2 * p))
                if dotted.entries != scale(plain.entries, Poly.delta()):
                    failures.append(f"dotted:{n - 2 * p} is not d times the type A matrix")
            direct: Poly = self.__determinants.det_gram_type_a(n, p, DetMethod.DIRECT).value
            recurrence: Poly = self.__determinants.det_gram_type_a(n, p, DetMethod.RECURRENCE).value
            if direct != recurrence:
                failures.append(f"p={p}: direct {direct} != recurrence {recurrence}")
            if p == 1 and direct != chebyshev_p(n):
                failures.append(f"det of the type A matrix at ({n},1) is {direct}, expected P_{n}")
        return failures

    def _forked_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for n in range(2, min(max_n, 7) + 1):
            cases.append((f"dimension n={n:02d}", _bind(check_forked_dimension, n)))
        cases.append(("products n=04", _bind(check_forked_products, 4)))
        for n in (4, 5):
            cases.append((f"relations n={n:02d}", _bind(check_forked_relations, n)))
        return cases

    def _decider_cases(self, max_n: int) -> list[tuple[str, Check]]:
        cases: list[tuple[str, Check]] = []
        for n in (4, 5):
            for text in SAMPLE_DELTAS:
                cases.append((f"n={n:02d} d={text}", _bind(self._check_deciders, n, text)))
        for n in range(4, max_n + 1):
            cases.append((f"idempotents n={n:02d}", _bind(check_idempotents, n)))
        return cases

    def _check_deciders(self, n: int, text: str) -> list[str]:
        delta: RationalValue = RationalValue.parse(text)
        failures: list[str] = []
        criterion = GramDeterminantService.semisimple(n, delta)
        crosscheck = self.__determinants.semisimple_crosscheck(n, delta)
        if criterion.decision != crosscheck.decision:
            failures.append(f"criterion {criterion.decision} != determinants {crosscheck.decision}")
        if criterion.decision and not ForkedService.ftl_semisimple(n, delta).decision:
            failures.append("the quotient of a semi-simple algebra is not semi-simple")
        if self.__determinants.quasihereditary(n, delta).decision != (not delta.is_zero()):
            failures.append("quasi-heredity does not follow d != 0")
        if self.__forked.ftl_quasihereditary(n, delta).decision != (not delta.is_zero() or n % 2 == 1):
            failures.append("forked quasi-heredity does not follow d != 0 or n odd")
        return failures


def _bind(check: Callable[..., list[str]], *args: Any) -> Check:
    return lambda: check(*args)


def generators(n: int) -> list[GeneratorId]:
    return [GeneratorId.bar1()] + [GeneratorId.e(i) for i in range(1, n)]


def connected(a: GeneratorId, b: GeneratorId) -> bool:
    """edges of the type D graph: 1bar - 2, 1 - 2, i - i+1"""
    if a.bar or b.bar:
        other: GeneratorId = b if a.bar else a
        return not other.bar and other.index == 2
    return abs(a.index - b.index) == 1


def check_relations(n: int) -> list[str]:
    failures: list[str] = []
    gens: list[GeneratorId] = generators(n)
    diagram: dict[GeneratorId, TLDiagram] = {g: DiagramService.generator(g, n) for g in gens}
    for a in gens:
        if DiagramService.multiply(diagram[a], diagram[a]) != diagram[a].with_delta_power(1):
            failures.append(f"{a}^2 != d {a}")
        for b in gens:
            if a == b:
                continue
            ab: TLDiagram = DiagramService.multiply(diagram[a], diagram[b])
            if connected(a, b):
                if DiagramService.multiply(ab, diagram[a]) != diagram[a]:
                    failures.append(f"{a} {b} {a} != {a}")
            elif ab != DiagramService.multiply(diagram[b], diagram[a]):
                failures.append(f"{a} and {b} do not commute")
    return failures


def check_order_5_2() -> list[str]:
    fixture: dict[str, Any] = load_fixture("gram_5_2.json")
    basis: CellBasis = HalfDiagramService.enumerate_basis(5, 2)
    order: list[str] = [d.to_text() for d in basis.members]
    seqs: list[str] = [HalfDiagramService.assoc_seq(d).to_text() for d in basis.members]
    failures: list[str] = []
    if order != fixture["order"]:
        failures.append(f"order {order}")
    if seqs != fixture["assocSeqs"]:
        failures.append(f"sequences {seqs}")
    return failures


def check_basis(n: int) -> list[str]:
    total, _, second = DiagramService.basis_count(n)
    failures: list[str] = []
    if total != DiagramService.dimension_formula(n):
        failures.append(f"{total} basis diagrams, expected {DiagramService.dimension_formula(n)}")
    if second != math.comb(2 * n, n) // 2:
        failures.append(f"{second} second type diagrams, expected {math.comb(2 * n, n) // 2}")
    for d in DiagramService.basis(n):
        violations: list[str] = DiagramService.basis_violations(d)
        if violations:
            failures.append(violations[0])
    return failures


def _check_order_preserving(
    name: str, domain: list[HalfDiagram], images: list[HalfDiagram], target: CellBasis
) -> list[str]:
    positions: list[int] = [target.index(image) for image in images]
    failures: list[str] = []
    if sorted(positions) != list(range(len(target))):
        failures.append(f"{name} is not a bijection onto {len(target)} diagrams")
    if any(a >= b for a, b in zip(positions, positions[1:])):
        failures.append(f"{name} does not preserve the order")
    return failures


def check_alpha(p: int) -> list[str]:
    domain: list[HalfDiagram] = list(HalfDiagramService.enumerate_basis(2 * p, p, BasisVariant.EVEN).members)
    target: CellBasis = HalfDiagramService.enumerate_basis(2 * p, p, BasisVariant.ODD)
    return _check_order_preserving(
        "alpha", domain, [HalfDiagramService.map_alpha(d) for d in domain], target
    )


def check_beta(p: int, sign: int) -> list[str]:
    variant: BasisVariant = BasisVariant.EVEN if sign == 1 else BasisVariant.ODD
    domain: list[HalfDiagram] = list(HalfDiagramService.enumerate_basis(2 * p, p, variant).members)
    target: CellBasis = HalfDiagramService.enumerate_basis(2 * p - 1, p - 1)
    return _check_order_preserving(
        "beta", domain, [HalfDiagramService.map_beta(d, sign) for d in domain], target
    )


def check_gamma(n: int, p: int) -> list[str]:
    domain: list[HalfDiagram] = [
        d for d in HalfDiagramService.enumerate_basis(n, p).members if d.partner(n) != n
    ]
    target: CellBasis = HalfDiagramService.enumerate_basis(n - 1, p - 1)
    return _check_order_preserving(
        "gamma", domain, [HalfDiagramService.map_gamma(d) for d in domain], target
    )


def check_blocks(n: int, p: int) -> list[str]:
    return [check.name for check in CellularService.block_structure_check(n, p) if not check.passed]


def check_cell_products(n: int) -> list[str]:
    failures: list[str] = []
    for cell in DiagramService.cells(n):
        members: tuple[HalfDiagram, ...] = CellularService.basis_for(n, cell).members
        for x in members:
            for s in members:
                for t in members:
                    for y in members:
                        if not CellularService.cell_product_check(cell, x, s, t, y):
                            failures.append(
                                f"{cell.to_text()}: C({x},{s}) C({t},{y})"
                            )
    return failures


def check_gram_5_2() -> list[str]:
    fixture: dict[str, Any] = load_fixture("gram_5_2.json")
    gram = CellularService.gram(fixture["n"], CellLabel.parse(fixture["cell"]))
    failures: list[str] = []
    order: list[str] = [d.to_text() for d in gram.basis.members]
    if order != fixture["order"]:
        failures.append("basis order differs from the golden one")
    expected: list[list[Poly]] = [[Poly.parse(entry) for entry in row] for row in fixture["entries"]]
    for i, row in enumerate(expected):
        for j, entry in enumerate(row):
            if gram.entries[i][j] != entry:
                failures.append(f"entry ({i + 1},{j + 1}) is {gram.entries[i][j]}, expected {entry}")
    return failures


def expected_det_8_3() -> Poly:
    fixture: dict[str, Any] = load_fixture("det_gram_8_3.json")
    product: Poly = Poly.one()
    for factor in fixture["factors"]:
        product = product * Poly.parse(factor["poly"]) ** int(factor["exponent"])
    return product


def check_closed_8_3() -> list[str]:
    expected: Poly = expected_det_8_3()
    failures: list[str] = []
    if GramDeterminantService.closed_formula(8, 3) != expected:
        failures.append("closed formula")
    exponents: dict[int, int] = GramDeterminantService.closed_formula_exponents(8, 3)
    if exponents != {6: 1, 5: 8, 4: 29, 3: 8, 2: -9}:
        failures.append(f"exponents {exponents}")
    return failures


def check_ratio(n: int, p: int) -> list[str]:
    current = GramDeterminantService.r_ratio(n, p)
    following = GramDeterminantService.r_ratio(n + 1, p)
    return [] if following.follows(current) else [f"r({n + 1},{p}) != d - 1/r({n},{p})"]


def check_forked_dimension(n: int) -> list[str]:
    _, _, second = DiagramService.basis_count(n)
    failures: list[str] = []
    if ForkedService.ftl_dim(n) != second:
        failures.append(f"dimension {ForkedService.ftl_dim(n)} != {second} second type diagrams")
    if ForkedService.ftl_cell_dimension(n) != ForkedService.ftl_dim(n):
        failures.append("cell bases do not add up to the dimension")
    return failures


def check_forked_products(n: int) -> list[str]:
    failures: list[str] = []
    second: list[TLDiagram] = [d for d in DiagramService.basis(n) if not d.decorated_circuit]
    for a in second:
        for b in second:
            product: TLDiagram = DiagramService.multiply(a, b)
            image: FtlElement = ForkedService.ftl_multiply(FtlElement.lift(a), FtlElement.lift(b))
            if image.is_zero != product.decorated_circuit:
                failures.append("zero product does not match the first type")
            elif image.diagram is not None and image.diagram != product:
                failures.append("quotient product differs")
    return failures


def check_forked_relations(n: int) -> list[str]:
    failures: list[str] = []
    gens: list[GeneratorId] = generators(n)
    if not ForkedService.ftl_evaluate_word(n, "eb1 e1").is_zero:
        failures.append("eb1 e1 is not zero")
    for a in gens:
        square: FtlElement = ForkedService.ftl_evaluate_word(n, f"{a} {a}")
        single: FtlElement = ForkedService.ftl_evaluate_word(n, f"{a}")
        if single.diagram is None or square.diagram != single.diagram.with_delta_power(1):
            failures.append(f"{a}^2 != d {a}")
        for b in gens:
            if a == b:
                continue
            if connected(a, b):
                if ForkedService.ftl_evaluate_word(n, f"{a} {b} {a}") != single:
                    failures.append(f"{a} {b} {a} != {a}")
            elif ForkedService.ftl_evaluate_word(n, f"{a} {b}") != ForkedService.ftl_evaluate_word(n, f"{b} {a}"):
                failures.append(f"{a} and {b} do not commute")
    return failures


def check_idempotents(n: int) -> list[str]:
    return [
        f"{cell.to_text()}: {word}"
        for cell, word, holds in GramDeterminantService.quasi_heredity_witnesses(n)
        if not holds
    ]
