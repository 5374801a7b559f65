import logging
import math
from functools import lru_cache

from src.models.errors import InvalidArguments
from src.models.half_diagram import (
    INFINITY,
    AssocSeq,
    BasisVariant,
    CellBasis,
    DiagramViolation,
    HalfDiagram,
    Pair,
    SeqEntry,
    ValidationReport,
)
from src.utils.logging_utils import setup_logging


class HalfDiagramService:
    """
    Decorated parenthesis diagrams: validation, the ordered cell bases and the
    maps between them (alpha toggles the last pair's decoration, beta removes
    the last pair at n = 2p, gamma removes it at n > 2p)
    """

    def __init__(self) -> None:
        self.__logger: logging.Logger = logging.Logger(__name__)
        setup_logging(self.__logger)

    @staticmethod
    def validate(d: HalfDiagram) -> ValidationReport:
        dots: list[int] = [dot for pair in d.pairs for dot in pair]
        for i, j in d.pairs:
            if i < 1 or j > d.n:
                return ValidationReport(
                    violation=DiagramViolation.DOT_OUT_OF_RANGE,
                    detail=f"pair ({i},{j}) outside 1..{d.n}",
                )
            if i == j:
                return ValidationReport(
                    violation=DiagramViolation.NOT_AN_INVOLUTION,
                    detail=f"dot {i} paired with itself",
                )
        if len(set(dots)) != len(dots):
            return ValidationReport(
                violation=DiagramViolation.NOT_AN_INVOLUTION,
                detail="a dot belongs to two pairs",
            )
        isolated: tuple[int, ...] = d.isolated
        for i, j in d.pairs:
            for dot in isolated:
                if i < dot < j:
                    return ValidationReport(
                        violation=DiagramViolation.ISOLATED_DOT_UNDER_ARC,
                        detail=f"dot {dot} isolated under ({i},{j})",
                    )
        for i, k in d.pairs:
            for j, l in d.pairs:
                if i < j < k < l:
                    return ValidationReport(
                        violation=DiagramViolation.CROSSING_PAIRS,
                        detail=f"({i},{k}) crosses ({j},{l})",
                    )
        for pair in d.decorations:
            if pair not in d.pairs:
                return ValidationReport(
                    violation=DiagramViolation.DECORATION_NOT_A_PAIR,
                    detail=f"decorated {pair} is not a pair",
                )
        for i, j in d.decorations:
            left: list[int] = [dot for dot in isolated if dot < j]
            if left:
                return ValidationReport(
                    violation=DiagramViolation.DECORATION_RIGHT_OF_ISOLATED_DOT,
                    detail=f"decorated ({i},{j}) right of isolated dot {left[0]}",
                )
        for k, l in d.decorations:
            for i, j in d.pairs:
                if i < k and l < j:
                    return ValidationReport(
                        violation=DiagramViolation.DECORATED_PAIR_NESTED,
                        detail=f"decorated ({k},{l}) nested in ({i},{j})",
                    )
        return ValidationReport()

    @staticmethod
    def assoc_seq(d: HalfDiagram) -> AssocSeq:
        entries: list[SeqEntry] = sorted((j for _, j in d.pairs), reverse=True)
        entries.extend(sorted(j for _, j in d.decorations))
        entries.extend([INFINITY] * (2 * d.p - len(entries)))
        return AssocSeq(entries=tuple(entries))

    @staticmethod
    def count(n: int, p: int) -> int:
        _check_size(n, p)
        return math.comb(n, p)

    @staticmethod
    def enumerate_basis(
        n: int, p: int, variant: BasisVariant = BasisVariant.ALL
    ) -> CellBasis:
        _check_size(n, p)
        if variant in (BasisVariant.EVEN, BasisVariant.ODD) and n != 2 * p:
            raise InvalidArguments(
                f"variant {variant.value} needs n = 2p, got n={n} p={p}"
            )
        return _enumerate(n, p, variant)

    @staticmethod
    def map_alpha(d: HalfDiagram) -> HalfDiagram:
        if d.n != 2 * d.p:
            raise InvalidArguments(f"alpha needs n = 2p, got n={d.n} p={d.p}")
        last: Pair = (d.partner(d.n), d.n)
        decorations: set[Pair] = set(d.decorations) ^ {last}
        return HalfDiagram(n=d.n, pairs=d.pairs, decorations=decorations)

    @staticmethod
    def map_beta(d: HalfDiagram, sign: int) -> HalfDiagram:
        """sign is +1 (even decoration count) or -1 (odd)"""
        if d.n != 2 * d.p:
            raise InvalidArguments(f"beta needs n = 2p, got n={d.n} p={d.p}")
        if sign not in (1, -1):
            raise InvalidArguments(f"beta sign must be +1 or -1, got {sign}")
        if (d.decoration_count % 2 == 0) != (sign == 1):
            raise InvalidArguments(
                f"beta{'+' if sign == 1 else '-'} applied to a diagram with "
                f"{d.decoration_count} decorations"
            )
        return _drop_last_pair(d)

    @staticmethod
    def map_gamma(d: HalfDiagram) -> HalfDiagram:
        if d.n == 2 * d.p:
            raise InvalidArguments("gamma needs n > 2p")
        if d.partner(d.n) == d.n:
            raise InvalidArguments(f"gamma needs dot {d.n} to be paired")
        return _drop_last_pair(d)

    @staticmethod
    def attach_last_pair(d: HalfDiagram, decorated: bool = False) -> HalfDiagram:
        """
        Inverse of beta and gamma: pair a new dot n+1 with the rightmost
        isolated dot of d
        """
        isolated: tuple[int, ...] = d.isolated
        if not isolated:
            raise InvalidArguments("no isolated dot to attach a pair to")
        pair: Pair = (isolated[-1], d.n + 1)
        decorations: tuple[Pair, ...] = d.decorations + ((pair,) if decorated else ())
        return HalfDiagram(n=d.n + 1, pairs=d.pairs + (pair,), decorations=decorations)

    @staticmethod
    def embed(d: HalfDiagram) -> HalfDiagram:
        """the inclusion (n-1, p) -> (n, p) adding an isolated dot n"""
        return HalfDiagram(n=d.n + 1, pairs=d.pairs, decorations=d.decorations)

    def check_counts(self, max_n: int) -> list[tuple[int, int, int, int]]:
        """(n, p, enumerated, binomial) for every mismatch up to max_n"""
        mismatches: list[tuple[int, int, int, int]] = []
        for n in range(0, max_n + 1):
            for p in range(0, n // 2 + 1):
                size: int = len(_enumerate(n, p, BasisVariant.ALL))
                if size != math.comb(n, p):
                    self.__logger.error(
                        f"enumerate({n},{p}) produced {size}, expected {math.comb(n, p)}"
                    )
                    mismatches.append((n, p, size, math.comb(n, p)))
        return mismatches


def _check_size(n: int, p: int) -> None:
    if n < 0 or p < 0 or 2 * p > n:
        raise InvalidArguments(f"need 0 <= 2p <= n, got n={n} p={p}")


def _drop_last_pair(d: HalfDiagram) -> HalfDiagram:
    last: Pair = (d.partner(d.n), d.n)
    return HalfDiagram(
        n=d.n - 1,
        pairs=tuple(pair for pair in d.pairs if pair != last),
        decorations=tuple(pair for pair in d.decorations if pair != last),
    )


@lru_cache(maxsize=None)
def _extensions(n: int, p: int, decorated: bool) -> tuple[HalfDiagram, ...]:
    """
    Every (n, p) diagram, built from the (n-1, .) ones by looking at dot n:
    either n is isolated, or n is paired with the rightmost isolated dot of
    an (n-1, p-1) diagram. That new pair may carry a decoration only when no
    isolated dot is left of it, which happens exactly when n = 2p
    """
    if n == 0:
        return (HalfDiagram(n=0),) if p == 0 else ()
    result: list[HalfDiagram] = []
    if 2 * p <= n - 1:
        result.extend(HalfDiagramService.embed(d) for d in _extensions(n - 1, p, decorated))
    if p >= 1:
        for d in _extensions(n - 1, p - 1, decorated):
            if not d.isolated:
                continue
            result.append(HalfDiagramService.attach_last_pair(d))
            if decorated and n == 2 * p:
                result.append(HalfDiagramService.attach_last_pair(d, decorated=True))
    return tuple(result)


@lru_cache(maxsize=None)
def _enumerate(n: int, p: int, variant: BasisVariant) -> CellBasis:
    members: list[HalfDiagram] = list(
        _extensions(n, p, variant != BasisVariant.UNDECORATED)
    )
    if variant == BasisVariant.EVEN:
        members = [d for d in members if d.decoration_count % 2 == 0]
    elif variant == BasisVariant.ODD:
        members = [d for d in members if d.decoration_count % 2 == 1]
    members.sort(key=lambda d: HalfDiagramService.assoc_seq(d).entries)
    return CellBasis(n=n, p=p, variant=variant, members=tuple(members))
