"""Matrix file format and JSON/text report rendering.

Matrix files::

    # comment lines start with '#'
    field gf 7          # or: field q
    2 2
    1 2
    3 4

JSON reports serialize every field element as a string so rationals stay
exact; keys are emitted in a fixed order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .contra import ContraBlock, ContraKind, ContraReport, RankProfile
from .errors import ParseError
from .factor import PrimePowerFactorization
from .field import FieldSpec, parse_field
from .jordan import JordanForm, JordanReport
from .linalg import Matrix
from .poly import Polynomial


def parse_matrix_text(text: str) -> Matrix:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty matrix file")
    lineno, head = lines[0]
    words = head.split(None, 1)
    if words[0].lower() != "field" or len(words) != 2:
        raise ParseError("expected 'field q' or 'field gf <p>'", lineno)
    try:
        field = parse_field(words[1])
    except ParseError as exc:
        raise ParseError(str(exc), lineno) from None
    if len(lines) < 2:
        raise ParseError("missing dimensions line", lineno)
    lineno, dims = lines[1]
    try:
        rows, cols = (int(t) for t in dims.split())
    except ValueError:
        raise ParseError(f"expected '<rows> <cols>', got {dims!r}", lineno) from None
    if rows < 0 or cols < 0:
        raise ParseError("negative dimension", lineno)
    body = lines[2:]
    if cols == 0 and not body:
        # an r x 0 matrix has no entry lines to write
        return Matrix.zeros(field, rows, 0)
    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {rows} entry rows, found {len(body)}", where)
    data = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", lineno)
        try:
            data.append([field.parse(t) for t in tokens])
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return Matrix(field, data, cols=cols)


def parse_matrix_file(path: str | Path) -> Matrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_text(text)


def format_matrix(M: Matrix) -> str:
    out = [f"field {M.field}", f"{M.rows} {M.cols}"]
    if M.cols:
        out.extend(" ".join(M.field.format(x) for x in row) for row in M.data)
    return "\n".join(out) + "\n"


# -- JSON ---------------------------------------------------------------------


def _entries(M: Matrix) -> list[list[str]]:
    return [[M.field.format(x) for x in row] for row in M.data]


def _coeffs(p: Polynomial) -> list[str]:
    return [p.field.format(c) for c in p.coeffs]


def jordan_form_json(form: JordanForm) -> list[dict[str, Any]]:
    return [{"prime": _coeffs(b.prime), "power": b.power} for b in form.blocks]


def jordan_json(report: JordanReport) -> dict[str, Any]:
    return {
        "field": str(report.field),
        "n": report.form.total_dim,
        "blocks": jordan_form_json(report.form),
        "form": _entries(report.form_matrix),
        "transform": _entries(report.transform),
    }


def _rank_profile_json(rp: RankProfile) -> dict[str, Any]:
    return {"t": rp.t, "a_chain": list(rp.a_chain), "b_chain": list(rp.b_chain)}


def _contra_block_json(b: ContraBlock) -> dict[str, Any]:
    return {
        "kind": b.kind.value,
        "m_i": b.rows,
        "n_i": b.cols,
        "jordan": jordan_form_json(b.jordan) if b.kind is ContraKind.INVERTIBLE else None,
    }


def contra_json(report: ContraReport, profile: RankProfile) -> dict[str, Any]:
    return {
        "m": report.pair.m,
        "n": report.pair.n,
        "field": str(report.pair.field),
        "blocks": [_contra_block_json(b) for b in report.blocks],
        "canonical_A": _entries(report.canonical_A),
        "canonical_B": _entries(report.canonical_B),
        "S": _entries(report.S),
        "T": _entries(report.T),
        "rank_profile": _rank_profile_json(profile),
    }


def minpoly_json(field: FieldSpec, n: int, p: Polynomial) -> dict[str, Any]:
    return {"field": str(field), "n": n, "minpoly": _coeffs(p), "text": str(p)}


def factor_json(p: Polynomial, fac: PrimePowerFactorization) -> dict[str, Any]:
    return {
        "field": str(p.field),
        "input": _coeffs(p),
        "unit": p.field.format(fac.unit),
        "factors": [{"prime": _coeffs(q), "power": k} for q, k in fac.factors],
    }


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


# -- plain text -----------------------------------------------------------------


def _matrix_lines(M: Matrix, indent: str = "  ") -> list[str]:
    if M.rows == 0 or M.cols == 0:
        return [f"{indent}({M.rows}x{M.cols})"]
    cells = _entries(M)
    width = max(len(c) for row in cells for c in row)
    return [indent + " ".join(c.rjust(width) for c in row) for row in cells]


def jordan_text(report: JordanReport) -> str:
    out = [f"field: {report.field}", f"n: {report.form.total_dim}", "blocks:"]
    out.extend(f"  {b}" for b in report.form.blocks)
    out.append("form:")
    out.extend(_matrix_lines(report.form_matrix))
    out.append("transform P (P^-1 A P = form):")
    out.extend(_matrix_lines(report.transform))
    return "\n".join(out) + "\n"


def contra_text(report: ContraReport, profile: RankProfile) -> str:
    out = [
        f"field: {report.pair.field}",
        f"m: {report.pair.m}  n: {report.pair.n}",
        "blocks:",
    ]
    out.extend(f"  {b}" for b in report.blocks)
    for name, M in (
        ("canonical A", report.canonical_A),
        ("canonical B", report.canonical_B),
        ("S (S^-1 A T = canonical A)", report.S),
        ("T (T^-1 B S = canonical B)", report.T),
    ):
        out.append(f"{name}:")
        out.extend(_matrix_lines(M))
    out.append(f"rank profile (t={profile.t}):")
    out.append(f"  A, BA, ABA, ...: {list(profile.a_chain)}")
    out.append(f"  B, AB, BAB, ...: {list(profile.b_chain)}")
    return "\n".join(out) + "\n"


def factor_text(fac: PrimePowerFactorization) -> str:
    return str(fac) + "\n"
