import re
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.errors import InvalidArguments, ParseError

Arc = tuple[int, int]


class GeneratorId(BaseModel):
    """e_index, or e_{1bar} when bar is set (index is then 1)"""

    index: int
    bar: bool = False
    model_config = ConfigDict(frozen=True)

    @staticmethod
    def bar1() -> "GeneratorId":
        return GeneratorId(index=1, bar=True)

    @staticmethod
    def e(index: int) -> "GeneratorId":
        return GeneratorId(index=index)

    def check_for(self, n: int) -> None:
        if not 1 <= self.index <= n - 1:
            raise InvalidArguments(f"generator {self.to_text()} out of range for n={n}")

    def to_text(self) -> str:
        return "eb1" if self.bar else f"e{self.index}"

    @staticmethod
    def parse(token: str) -> "GeneratorId":
        if token == "eb1":
            return GeneratorId.bar1()
        match: re.Match[str] | None = re.fullmatch(r"e(\d+)", token)
        if match is None:
            raise ParseError(f"unknown generator {token!r}, expected e<i> or eb1")
        return GeneratorId.e(int(match.group(1)))

    def __str__(self) -> str:
        return self.to_text()


class TLDiagram(BaseModel):
    """
    A decorated Temperley-Lieb n-diagram times d^delta_power.

    Endpoints are numbered 0..2n-1: top dot i is i-1, bottom dot i is n+i-1.
    matching[e] is the endpoint joined to e. decorated lists the arcs (a, b),
    a < b, that carry one decoration. decorated_circuit marks a first type
    diagram, whose arcs are then all undecorated
    """

    n: int
    matching: tuple[int, ...]
    decorated: tuple[Arc, ...] = ()
    decorated_circuit: bool = False
    delta_power: int = 0
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _normalise(cls, data: Any) -> Any:
        if isinstance(data, dict) and "decorated" in data:
            data = {
                **data,
                "decorated": tuple(sorted((min(a, b), max(a, b)) for a, b in data["decorated"])),
            }
        return data

    @model_validator(mode="after")
    def _perfect_matching(self) -> "TLDiagram":
        size: int = 2 * self.n
        if len(self.matching) != size:
            raise ValueError(f"matching has {len(self.matching)} entries, expected {size}")
        for e, partner in enumerate(self.matching):
            if not 0 <= partner < size or partner == e or self.matching[partner] != e:
                raise ValueError(f"endpoint {e} is not properly matched")
        for a, b in self.decorated:
            if self.matching[a] != b:
                raise ValueError(f"decorated ({a},{b}) is not an arc")
        return self

    def is_top(self, e: int) -> bool:
        return e < self.n

    def label(self, e: int) -> str:
        return f"t{e + 1}" if e < self.n else f"b{e - self.n + 1}"

    def endpoint(self, label: str) -> int:
        match: re.Match[str] | None = re.fullmatch(r"([tb])(\d+)", label)
        if match is None or not 1 <= int(match.group(2)) <= self.n:
            raise ParseError(f"bad endpoint label {label!r}")
        offset: int = 0 if match.group(1) == "t" else self.n
        return offset + int(match.group(2)) - 1

    def arcs(self) -> list[Arc]:
        return [(e, f) for e, f in enumerate(self.matching) if e < f]

    def verticals(self) -> list[Arc]:
        """(top endpoint, bottom endpoint), left to right"""
        return [(e, f) for e, f in self.arcs() if e < self.n <= f]

    def is_decorated(self, arc: Arc) -> bool:
        return (min(arc), max(arc)) in self.decorated

    def diagram_part(self) -> "TLDiagram":
        return self.model_copy(update={"delta_power": 0})

    def with_delta_power(self, power: int) -> "TLDiagram":
        return self.model_copy(update={"delta_power": power})

    def is_planar(self) -> bool:
        """
        Walk the boundary of the rectangle (top left to right, then bottom
        right to left); the matching is planar when no two chords interleave
        """
        position: dict[int, int] = {e: e for e in range(self.n)}
        position.update({self.n + i: 2 * self.n - 1 - i for i in range(self.n)})
        chords: list[Arc] = [
            (min(position[a], position[b]), max(position[a], position[b]))
            for a, b in self.arcs()
        ]
        for i, k in chords:
            for j, l in chords:
                if i < j < k < l:
                    return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "edges": [
                {"a": self.label(a), "b": self.label(b), "dec": self.is_decorated((a, b))}
                for a, b in self.arcs()
            ],
            "decoratedCircuit": self.decorated_circuit,
            "deltaPower": self.delta_power,
        }

    @staticmethod
    def from_json(data: dict[str, Any]) -> "TLDiagram":
        n: int = int(data["n"])
        labels: TLDiagram = TLDiagram(n=n, matching=tuple((e + n) % (2 * n) for e in range(2 * n)))
        matching: list[int] = [-1] * (2 * n)
        decorated: list[Arc] = []
        for edge in data["edges"]:
            a: int = labels.endpoint(edge["a"])
            b: int = labels.endpoint(edge["b"])
            matching[a], matching[b] = b, a
            if edge.get("dec", False):
                decorated.append((a, b))
        if -1 in matching:
            raise InvalidArguments("edges do not form a perfect matching")
        return TLDiagram(
            n=n,
            matching=tuple(matching),
            decorated=tuple(decorated),
            decorated_circuit=bool(data.get("decoratedCircuit", False)),
            delta_power=int(data.get("deltaPower", 0)),
        )
