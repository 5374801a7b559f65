import re
from enum import Enum

from pydantic import BaseModel, ConfigDict

from src.models.errors import InvalidArguments, ParseError
from src.models.half_diagram import BasisVariant


class CellKind(str, Enum):
    PLAIN = "plain"
    ZERO_PLUS = "0+"
    ZERO_MINUS = "0-"
    DOTTED = "dotted"


class CellLabel(BaseModel):
    """
    An element of the cell poset: Plain(k), ZeroPlus, ZeroMinus or Dotted(k).
    value is the number of through strands k (0 for the signed cells)
    """

    kind: CellKind
    value: int = 0
    model_config = ConfigDict(frozen=True)

    @staticmethod
    def plain(k: int) -> "CellLabel":
        return CellLabel(kind=CellKind.PLAIN, value=k)

    @staticmethod
    def zero_plus() -> "CellLabel":
        return CellLabel(kind=CellKind.ZERO_PLUS)

    @staticmethod
    def zero_minus() -> "CellLabel":
        return CellLabel(kind=CellKind.ZERO_MINUS)

    @staticmethod
    def dotted(k: int) -> "CellLabel":
        return CellLabel(kind=CellKind.DOTTED, value=k)

    @property
    def is_signed(self) -> bool:
        return self.kind in (CellKind.ZERO_PLUS, CellKind.ZERO_MINUS)

    @property
    def is_dotted(self) -> bool:
        return self.kind == CellKind.DOTTED

    @property
    def through(self) -> int:
        return self.value

    def p(self, n: int) -> int:
        return (n - self.value) // 2

    @property
    def variant(self) -> BasisVariant:
        match self.kind:
            case CellKind.ZERO_PLUS:
                return BasisVariant.EVEN
            case CellKind.ZERO_MINUS:
                return BasisVariant.ODD
            case CellKind.DOTTED:
                return BasisVariant.UNDECORATED
            case _:
                return BasisVariant.ALL

    def check_for(self, n: int) -> None:
        if n < 1:
            raise InvalidArguments(f"n must be positive, got {n}")
        match self.kind:
            case CellKind.PLAIN:
                if self.value < 1 or self.value > n or (n - self.value) % 2:
                    raise InvalidArguments(
                        f"plain:{self.value} is not a cell for n={n}"
                    )
            case CellKind.ZERO_PLUS | CellKind.ZERO_MINUS:
                if n % 2:
                    raise InvalidArguments(f"{self.kind.value} needs even n, got {n}")
            case CellKind.DOTTED:
                if self.value < 0 or self.value > n - 2 or (n - self.value) % 2:
                    raise InvalidArguments(
                        f"dotted:{self.value} is not a cell for n={n}"
                    )

    def to_text(self) -> str:
        if self.is_signed:
            return self.kind.value
        return f"{self.kind.value}:{self.value}"

    @staticmethod
    def parse(text: str) -> "CellLabel":
        compact: str = text.strip().lower()
        if compact in ("0+", "zero+", "zeroplus"):
            return CellLabel.zero_plus()
        if compact in ("0-", "zero-", "zerominus"):
            return CellLabel.zero_minus()
        match: re.Match[str] | None = re.fullmatch(r"(plain|dotted):(\d+)", compact)
        if match is None:
            raise ParseError(
                f"cannot parse cell {text!r}, expected plain:k, 0+, 0- or dotted:k"
            )
        return CellLabel(kind=CellKind(match.group(1)), value=int(match.group(2)))

    def __str__(self) -> str:
        return self.to_text()
