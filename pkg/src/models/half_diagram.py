import re
from enum import Enum
from functools import total_ordering
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.errors import ParseError

Pair = tuple[int, int]

_TOKEN: re.Pattern[str] = re.compile(r"\((\d+)(?:,(\d+))?\)([•*]?)")


class HalfDiagram(BaseModel):
    """
    A decorated parenthesis diagram on dots 1..n: a partial matching given by
    its pairs (i, j) with i < j, and the subset of pairs carrying a decoration.
    Dots in no pair are isolated.

    Construction only normalises (orders each pair and sorts the lists);
    the structural rules are checked by HalfDiagramService.validate so that
    invalid diagrams can still be built and reported on
    """

    n: int
    pairs: tuple[Pair, ...] = ()
    decorations: tuple[Pair, ...] = ()
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _normalise(cls, data: Any) -> Any:
        if isinstance(data, dict):
            data = dict(data)
            for key in ("pairs", "decorations"):
                if key in data:
                    data[key] = tuple(
                        sorted(
                            (min(int(a), int(b)), max(int(a), int(b)))
                            for a, b in data[key]
                        )
                    )
        return data

    @property
    def p(self) -> int:
        return len(self.pairs)

    @property
    def isolated(self) -> tuple[int, ...]:
        paired: set[int] = {dot for pair in self.pairs for dot in pair}
        return tuple(dot for dot in range(1, self.n + 1) if dot not in paired)

    def partner(self, dot: int) -> int:
        """sigma(dot), dot itself when isolated"""
        for i, j in self.pairs:
            if dot == i:
                return j
            if dot == j:
                return i
        return dot

    def is_decorated(self, pair: Pair) -> bool:
        return (min(pair), max(pair)) in self.decorations

    @property
    def decoration_count(self) -> int:
        return len(self.decorations)

    def undecorated(self) -> "HalfDiagram":
        return HalfDiagram(n=self.n, pairs=self.pairs)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "pairs": [list(pair) for pair in self.pairs],
            "decorations": [list(pair) for pair in self.decorations],
        }

    @staticmethod
    def from_json(data: dict[str, Any]) -> "HalfDiagram":
        return HalfDiagram(
            n=data["n"],
            pairs=data.get("pairs", []),
            decorations=data.get("decorations", []),
        )

    def to_text(self) -> str:
        """
        Bracket rendering, pairs first then isolated dots,
        a trailing bullet marks a decorated pair: (1,2)•(3,4)(5)
        """
        parts: list[str] = [
            f"({i},{j}){'•' if (i, j) in self.decorations else ''}"
            for i, j in self.pairs
        ]
        parts.extend(f"({dot})" for dot in self.isolated)
        return "".join(parts)

    @staticmethod
    def from_text(text: str) -> "HalfDiagram":
        """
        Inverse of to_text; '*' is accepted in place of the bullet.
        n is the number of dots mentioned
        """
        compact: str = "".join(text.split())
        tokens: list[re.Match[str]] = list(_TOKEN.finditer(compact))
        if "".join(token.group(0) for token in tokens) != compact:
            raise ParseError(f"cannot parse half diagram {text!r}")
        pairs: list[Pair] = []
        decorations: list[Pair] = []
        dots: int = 0
        for token in tokens:
            if token.group(2) is None:
                dots += 1
                if token.group(3):
                    raise ParseError(f"isolated dot cannot be decorated in {text!r}")
                continue
            pair: Pair = (int(token.group(1)), int(token.group(2)))
            dots += 2
            pairs.append(pair)
            if token.group(3):
                decorations.append(pair)
        return HalfDiagram(n=dots, pairs=pairs, decorations=decorations)

    def __str__(self) -> str:
        return self.to_text()


@total_ordering
class _Infinity:
    """Greater than every integer, equal only to itself"""

    _instance: "_Infinity | None" = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("infinity")

    def __repr__(self) -> str:
        return "inf"


INFINITY: _Infinity = _Infinity()

SeqEntry = int | _Infinity


@total_ordering
class AssocSeq(BaseModel):
    """
    The sequence attached to a (n, p) diagram that fixes the total order of a
    cell basis: second coordinates of the pairs in descending order, then the
    second coordinates of the decorated pairs in ascending order, padded to
    length 2p with INFINITY. Compared lexicographically
    """

    entries: tuple[Any, ...]
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def __lt__(self, other: "AssocSeq") -> bool:
        return self.entries < other.entries

    def to_text(self) -> str:
        return "(" + ",".join("∞" if e is INFINITY else str(e) for e in self.entries) + ")"


class BasisVariant(str, Enum):
    ALL = "all"
    EVEN = "even"
    ODD = "odd"
    UNDECORATED = "undecorated"


class DiagramViolation(str, Enum):
    DOT_OUT_OF_RANGE = "dot_out_of_range"
    NOT_AN_INVOLUTION = "not_an_involution"
    ISOLATED_DOT_UNDER_ARC = "isolated_dot_under_arc"
    CROSSING_PAIRS = "crossing_pairs"
    DECORATION_NOT_A_PAIR = "decoration_not_a_pair"
    DECORATION_RIGHT_OF_ISOLATED_DOT = "decoration_right_of_isolated_dot"
    DECORATED_PAIR_NESTED = "decorated_pair_nested"


class ValidationReport(BaseModel):
    violation: DiagramViolation | None = None
    detail: str | None = None
    model_config = ConfigDict(frozen=True)

    @property
    def ok(self) -> bool:
        return self.violation is None


class CellBasis(BaseModel):
    n: int
    p: int
    variant: BasisVariant
    members: tuple[HalfDiagram, ...]
    model_config = ConfigDict(frozen=True)

    def __len__(self) -> int:
        return len(self.members)

    def index(self, diagram: HalfDiagram) -> int:
        return self.members.index(diagram)

    def __contains__(self, diagram: object) -> bool:
        return diagram in self.members
