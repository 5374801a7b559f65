import pytest
from pydantic import ValidationError

from src.models.errors import ParseError
from src.models.tl_diagram import GeneratorId, TLDiagram


class TestGeneratorId:
    @pytest.mark.parametrize(
        ["token", "expected"],
        [["eb1", GeneratorId.bar1()], ["e1", GeneratorId.e(1)], ["e12", GeneratorId.e(12)]],
    )
    def test_parse(self, token: str, expected: GeneratorId) -> None:
        assert GeneratorId.parse(token) == expected
        assert expected.to_text() == token

    @pytest.mark.parametrize(["token"], [["eb2"], ["f1"], ["e"], ["E1"]])
    def test_parse_rejects(self, token: str) -> None:
        with pytest.raises(ParseError):
            GeneratorId.parse(token)


class TestTLDiagram:
    def test_rejects_bad_matching(self) -> None:
        with pytest.raises(ValidationError):
            TLDiagram(n=2, matching=(1, 0, 2, 3))
        with pytest.raises(ValidationError):
            TLDiagram(n=2, matching=(2, 3, 0, 1), decorated=((0, 1),))

    def test_labels_and_arcs(self) -> None:
        # e_1 on three dots: cap t1-t2, cup b1-b2, vertical t3-b3
        d: TLDiagram = TLDiagram(n=3, matching=(1, 0, 5, 4, 3, 2))
        assert d.arcs() == [(0, 1), (2, 5), (3, 4)]
        assert d.verticals() == [(2, 5)]
        assert d.label(5) == "b3"
        assert d.endpoint("t3") == 2
        assert d.is_planar()

    def test_crossing_is_not_planar(self) -> None:
        assert not TLDiagram(n=2, matching=(3, 2, 1, 0)).is_planar()

    def test_json(self) -> None:
        d: TLDiagram = TLDiagram(
            n=2, matching=(1, 0, 3, 2), decorated=((0, 1), (2, 3)), delta_power=2
        )
        assert d.to_json() == {
            "n": 2,
            "edges": [
                {"a": "t1", "b": "t2", "dec": True},
                {"a": "b1", "b": "b2", "dec": True},
            ],
            "decoratedCircuit": False,
            "deltaPower": 2,
        }
        assert TLDiagram.from_json(d.to_json()) == d

    def test_delta_power_helpers(self) -> None:
        d: TLDiagram = TLDiagram(n=1, matching=(1, 0), delta_power=3)
        assert d.diagram_part().delta_power == 0
        assert d.with_delta_power(1).delta_power == 1
