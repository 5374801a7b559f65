from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, SkipValidation

from src.models.cell_label import CellLabel
from src.models.half_diagram import CellBasis
from src.models.tl_diagram import GeneratorId
from src.utils.formatting import to_csv_rows, to_latex_matrix
from src.utils.poly_matrix import PolyMatrix, to_text_rows


class GramKind(str, Enum):
    CELL = "cell"
    PSEUDO = "pseudo"
    TYPE_A = "typeA"


class GramMatrix(BaseModel):
    """
    Matrix of the bilinear form over an ordered basis. kind CELL carries the
    cell label; PSEUDO is the (2p, p) matrix computed through the cell plain:1
    at 2p+1 dots; TYPE_A is the undecorated Temperley-Lieb form
    """

    n: int
    kind: GramKind
    cell: CellLabel | None = None
    basis: CellBasis
    entries: SkipValidation[PolyMatrix]
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def size(self) -> int:
        return len(self.entries)

    def label(self) -> str:
        match self.kind:
            case GramKind.CELL:
                return self.cell.to_text() if self.cell else ""
            case GramKind.PSEUDO:
                return "pseudo"
            case _:
                return f"typeA:{self.basis.p}"

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "cell": self.label(),
            "order": [member.to_json() for member in self.basis.members],
            "entries": to_text_rows(self.entries),
        }

    def to_latex(self) -> str:
        return to_latex_matrix(self.entries)

    def to_csv(self) -> str:
        return to_csv_rows(self.entries)


class ActionMatrix(BaseModel):
    """column j holds the expansion of g acting on basis member j"""

    n: int
    cell: CellLabel
    generator: GeneratorId | None = None
    basis: CellBasis
    entries: SkipValidation[PolyMatrix]
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "cell": self.cell.to_text(),
            "generator": self.generator.to_text() if self.generator else None,
            "order": [member.to_json() for member in self.basis.members],
            "entries": to_text_rows(self.entries),
        }
