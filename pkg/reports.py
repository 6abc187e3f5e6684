# reports.py

import json
import logging

import scalars
from freealg import FreeElement, POSITIVE
from rmatrix import TCoefficients
from errors import SpecError

log = logging.getLogger("REPORTS")

# --- Format Output ---


def to_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_lines(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "ya" if value else "tidak"
    if isinstance(value, (dict, list)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)


def to_text(payload):
    return "\n".join(_text_lines(payload)) + "\n"


# --- LaTeX ---


def latex_word(side, word):
    if not word:
        return "1"
    sign = "" if side == POSITIVE else "-"
    return "".join(f"e_{{{sign}{letter}}}" for letter in word)


def latex_index(word):
    return "(" + "".join(str(letter) for letter in word) + ")"


def latex_free(x):
    if not x:
        return "0"
    pieces = []
    for word, coeff in x.items():
        text = latex_word(x.side, word)
        if coeff == 1:
            pieces.append(text)
        elif coeff == -1:
            pieces.append(f"-{text}")
        else:
            pieces.append(f"\\left({scalars.to_latex(coeff)}\\right){text}")
    return " + ".join(pieces).replace("+ -", "- ")


def latex_rmatrix(R):
    """Tabel t^{(a')}_{(a)} per grade."""
    lines = [
        "\\begin{tabular}{lll}",
        "grade & $t^{(\\alpha')}_{(\\alpha)}$ & nilai \\\\",
        "\\hline",
    ]
    for lower, upper, coeff in R.rows():
        if not lower:
            continue
        lines.append(
            f"{len(lower)} & $t^{{{latex_index(upper)}}}_{{{latex_index(lower)}}}$ & "
            f"${scalars.to_latex(coeff)}$ \\\\"
        )
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def latex_constants(items):
    """items: list (multidegree, list FreeElement)."""
    lines = ["\\begin{itemize}"]
    for d, basis in items:
        label = ",".join(str(x) for x in d)
        if not basis:
            lines.append(f"\\item $({label})$: tidak ada konstanta")
            continue
        for element in basis:
            lines.append(f"\\item $({label})$: ${latex_free(element)}$")
    lines.append("\\end{itemize}")
    return "\n".join(lines)


def to_latex_document(body):
    return "\n".join([
        "\\documentclass{article}",
        "\\usepackage{amsmath}",
        "\\begin{document}",
        body,
        "\\end{document}",
    ]) + "\n"


def render(payload, fmt, latex_body=None):
    """Serialisasi deterministik: key terurut, scalar dalam bentuk kanonik."""
    if fmt == "json":
        return to_json(payload)
    if fmt == "text":
        return to_text(payload)
    if fmt == "latex":
        if latex_body is None:
            latex_body = "\\begin{verbatim}\n" + to_text(payload) + "\\end{verbatim}"
        return to_latex_document(latex_body)
    raise SpecError(f"format output tidak dikenal: {fmt!r}")


# --- Pembaca Ulang ---


def load_rmatrix_table(data, spec):
    """Baca ulang tabel t dari dict RMatrix.to_dict() menjadi TCoefficients."""
    field = spec.field
    try:
        K = int(data["K"])
        rows = data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"tabel R tidak valid: {exc}")
    table = {(): FreeElement.one(POSITIVE, field)}
    for row in rows:
        lower = tuple(int(x) for x in row["lower"])
        upper = tuple(int(x) for x in row["upper"])
        coeff = scalars.parse_scalar(row["coeff"], field)
        element = table.get(lower, FreeElement.zero(POSITIVE, field))
        table[lower] = element + FreeElement.word(POSITIVE, field, upper, coeff)
    provenance = {int(g): p for g, p in data.get("provenance", {}).items()}
    log.debug("Tabel R dibaca ulang: %d kata bawah", len(table))
    return TCoefficients(spec, K, table, provenance)
