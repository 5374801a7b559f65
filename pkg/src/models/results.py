from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict

from src.models.poly import Poly


class DetMethod(str, Enum):
    DIRECT = "direct"
    RECURRENCE = "recurrence"
    CLOSED = "closed"


class DetResult(BaseModel):
    n: int
    cell: str
    method: DetMethod
    value: Poly
    model_config = ConfigDict(frozen=True)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "cell": self.cell,
            "method": self.method.value,
            "det": self.value.to_text(),
        }


class Witness(BaseModel):
    """
    Why a verdict is false (or what certifies it): family is P or Q for the
    Chebyshev sequences, det for a cell determinant, Phi for a bilinear form
    """

    family: str
    index: int
    value: str
    cell: str | None = None
    model_config = ConfigDict(frozen=True)


class Verdict(BaseModel):
    decision: bool
    witnesses: list[Witness] = []

    def to_json(self) -> dict[str, Any]:
        return {
            "decision": self.decision,
            "witnesses": [w.model_dump(exclude_none=True) for w in self.witnesses],
        }


class BlockCheck(BaseModel):
    name: str
    passed: bool
    detail: str | None = None


class BranchingReport(BaseModel):
    n: int
    p: int
    checks: list[BlockCheck] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "passed": self.passed,
            "checks": [check.model_dump(exclude_none=True) for check in self.checks],
        }


class CaseResult(BaseModel):
    """one verification case, key sorts the report"""

    suite: str
    key: str
    passed: bool
    detail: str | None = None

    def to_json(self) -> dict[str, Any]:
        return self.model_dump(exclude_none=True)
