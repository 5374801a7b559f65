import json
from typing import Any

from src.utils.poly_matrix import PolyMatrix


def to_json_text(payload: Any) -> str:
    """one JSON document per line, key order as built"""
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def to_latex_matrix(entries: PolyMatrix) -> str:
    """
    pmatrix environment, one row per line:
    \\begin{pmatrix}
    \\delta^{2} & 0 \\\\
    0 & \\delta^{2}
    \\end{pmatrix}
    """
    rows: list[str] = [" & ".join(entry.to_latex() for entry in row) for row in entries]
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


def to_csv_rows(entries: PolyMatrix) -> str:
    return "\n".join(",".join(entry.to_text() for entry in row) for row in entries)
