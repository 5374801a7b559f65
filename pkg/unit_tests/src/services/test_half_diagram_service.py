import math

import pytest

from src.models.errors import InvalidArguments
from src.models.half_diagram import BasisVariant, DiagramViolation, HalfDiagram
from src.services.half_diagram_service import HalfDiagramService


def _texts(n: int, p: int, variant: BasisVariant = BasisVariant.ALL) -> list[str]:
    return [d.to_text() for d in HalfDiagramService.enumerate_basis(n, p, variant).members]


class TestValidate:
    @pytest.mark.parametrize(
        ["diagram", "violation"],
        [
            [HalfDiagram(n=3, pairs=[(0, 2)]), DiagramViolation.DOT_OUT_OF_RANGE],
            [HalfDiagram(n=4, pairs=[(1, 5)]), DiagramViolation.DOT_OUT_OF_RANGE],
            [HalfDiagram(n=3, pairs=[(1, 2), (2, 3)]), DiagramViolation.NOT_AN_INVOLUTION],
            [HalfDiagram(n=4, pairs=[(1, 3)]), DiagramViolation.ISOLATED_DOT_UNDER_ARC],
            [HalfDiagram(n=4, pairs=[(1, 3), (2, 4)]), DiagramViolation.CROSSING_PAIRS],
            [
                HalfDiagram(n=4, pairs=[(3, 4)], decorations=[(1, 2)]),
                DiagramViolation.DECORATION_NOT_A_PAIR,
            ],
            [
                HalfDiagram(n=3, pairs=[(2, 3)], decorations=[(2, 3)]),
                DiagramViolation.DECORATION_RIGHT_OF_ISOLATED_DOT,
            ],
            [
                HalfDiagram(n=4, pairs=[(1, 4), (2, 3)], decorations=[(2, 3)]),
                DiagramViolation.DECORATED_PAIR_NESTED,
            ],
        ],
    )
    def test_violations(self, diagram: HalfDiagram, violation: DiagramViolation) -> None:
        report = HalfDiagramService.validate(diagram)
        assert report.violation == violation, f"expected {violation.value}"
        assert not report.ok

    @pytest.mark.parametrize(["text"], [["(1,2)•(3,4)•(5)"], ["(1,4)•(2,3)(5)"], ["(2,5)(3,4)(1)"], ["(1)(2)(3)"]])
    def test_valid(self, text: str) -> None:
        assert HalfDiagramService.validate(HalfDiagram.from_text(text)).ok


class TestEnumerate:
    def test_order_5_2(self) -> None:
        assert _texts(5, 2) == [
            "(1,2)•(3,4)•(5)",
            "(1,2)•(3,4)(5)",
            "(1,2)(3,4)•(5)",
            "(1,2)(3,4)(5)",
            "(1,4)•(2,3)(5)",
            "(1,4)(2,3)(5)",
            "(1,2)•(4,5)(3)",
            "(1,2)(4,5)(3)",
            "(2,3)(4,5)(1)",
            "(2,5)(3,4)(1)",
        ]

    def test_sequences_5_2(self) -> None:
        members = HalfDiagramService.enumerate_basis(5, 2).members
        assert [HalfDiagramService.assoc_seq(d).to_text() for d in members][:3] == [
            "(4,2,2,4)",
            "(4,2,2,∞)",
            "(4,2,4,∞)",
        ]

    def test_variants_4_2(self) -> None:
        assert _texts(4, 2) == [
            "(1,2)•(3,4)•",
            "(1,2)•(3,4)",
            "(1,2)(3,4)•",
            "(1,2)(3,4)",
            "(1,4)•(2,3)",
            "(1,4)(2,3)",
        ]
        assert _texts(4, 2, BasisVariant.EVEN) == ["(1,2)•(3,4)•", "(1,2)(3,4)", "(1,4)(2,3)"]
        assert _texts(4, 2, BasisVariant.ODD) == ["(1,2)•(3,4)", "(1,2)(3,4)•", "(1,4)•(2,3)"]
        assert _texts(4, 2, BasisVariant.UNDECORATED) == ["(1,2)(3,4)", "(1,4)(2,3)"]

    @pytest.mark.parametrize(["n", "p"], [[n, p] for n in range(0, 11) for p in range(0, n // 2 + 1)])
    def test_counts(self, n: int, p: int) -> None:
        assert len(HalfDiagramService.enumerate_basis(n, p)) == HalfDiagramService.count(n, p) == math.comb(n, p)
        undecorated: int = math.comb(n, p) - (math.comb(n, p - 1) if p else 0)
        assert len(HalfDiagramService.enumerate_basis(n, p, BasisVariant.UNDECORATED)) == undecorated

    def test_every_member_is_valid(self) -> None:
        for d in HalfDiagramService.enumerate_basis(8, 3).members:
            assert HalfDiagramService.validate(d).ok, d.to_text()

    def test_invalid_shapes(self) -> None:
        with pytest.raises(InvalidArguments):
            HalfDiagramService.enumerate_basis(3, 2)
        with pytest.raises(InvalidArguments):
            HalfDiagramService.enumerate_basis(5, 2, BasisVariant.EVEN)

    def test_check_counts(self) -> None:
        assert HalfDiagramService().check_counts(12) == []


class TestMaps:
    def test_alpha(self) -> None:
        assert HalfDiagramService.map_alpha(HalfDiagram.from_text("(1,2)•(3,4)•")).to_text() == "(1,2)•(3,4)"
        assert HalfDiagramService.map_alpha(HalfDiagram.from_text("(1,4)(2,3)")).to_text() == "(1,4)•(2,3)"
        with pytest.raises(InvalidArguments):
            HalfDiagramService.map_alpha(HalfDiagram.from_text("(1,2)(3)"))

    @pytest.mark.parametrize(
        ["text", "sign", "expected"],
        [
            ["(1,2)•(3,4)•", 1, "(1,2)•(3)"],
            ["(1,2)(3,4)", 1, "(1,2)(3)"],
            ["(1,4)(2,3)", 1, "(2,3)(1)"],
            ["(1,4)•(2,3)", -1, "(2,3)(1)"],
            ["(1,2)(3,4)•", -1, "(1,2)(3)"],
        ],
    )
    def test_beta(self, text: str, sign: int, expected: str) -> None:
        assert HalfDiagramService.map_beta(HalfDiagram.from_text(text), sign).to_text() == expected

    def test_beta_sign_must_match_parity(self) -> None:
        with pytest.raises(InvalidArguments):
            HalfDiagramService.map_beta(HalfDiagram.from_text("(1,2)•(3,4)"), 1)

    def test_gamma(self) -> None:
        assert HalfDiagramService.map_gamma(HalfDiagram.from_text("(2,5)(3,4)(1)")).to_text() == "(3,4)(1)(2)"
        with pytest.raises(InvalidArguments):
            HalfDiagramService.map_gamma(HalfDiagram.from_text("(1,2)(3,4)(5)"))

    def test_attach_last_pair_inverts_gamma(self) -> None:
        d: HalfDiagram = HalfDiagram.from_text("(2,3)(4,5)(1)")
        assert HalfDiagramService.attach_last_pair(HalfDiagramService.map_gamma(d)) == d
