from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.errors import InvalidArguments
from src.models.tl_diagram import TLDiagram


class FtlElement(BaseModel):
    """
    An element of the forked quotient: a second type diagram times a power
    of d, or zero (diagram is None). First type diagrams span the ideal
    that is factored out, so they never appear here
    """

    n: int
    diagram: TLDiagram | None = None
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _second_type(self) -> "FtlElement":
        if self.diagram is not None:
            if self.diagram.decorated_circuit:
                raise InvalidArguments("first type diagrams are zero in the forked quotient")
            if self.diagram.n != self.n:
                raise InvalidArguments(f"diagram has {self.diagram.n} dots, expected {self.n}")
        return self

    @staticmethod
    def zero(n: int) -> "FtlElement":
        return FtlElement(n=n)

    @staticmethod
    def lift(d: TLDiagram) -> "FtlElement":
        """the image of a diagram under the quotient map"""
        return FtlElement(n=d.n, diagram=None if d.decorated_circuit else d)

    @property
    def is_zero(self) -> bool:
        return self.diagram is None

    def to_json(self) -> dict[str, Any]:
        if self.diagram is None:
            return {"n": self.n, "zero": True}
        return self.diagram.to_json()
