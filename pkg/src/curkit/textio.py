"""Plain-text formats for complexes and codes.

Complex files::

    n=3
    0 1
    1 2

The body may instead be the single word ``VOID`` or ``EMPTY``.  Code files
use the same header and list one codeword per line, with ``-`` for the empty
codeword.  Lines starting with ``#`` are ignored in both.
"""
from __future__ import annotations

from pathlib import Path

from .complex import Code, SimplicialComplex, empty, face, from_facets, verts, void
from .errors import CurError, ParseError


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header(lines: list[str]) -> int:
    if not lines:
        raise ParseError("empty input")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise ParseError(f"expected 'n=<int>' header, got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise ParseError(f"bad ground size in {lines[0]!r}") from None
    if n < 0:
        raise ParseError("ground size must be non-negative")
    return n


def _ids(line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"bad vertex list {line!r}") from None


def parse_complex(text: str) -> SimplicialComplex:
    lines = _lines(text)
    n = _header(lines)
    body = lines[1:]
    try:
        if body == ["VOID"]:
            return void(n)
        if body == ["EMPTY"]:
            return empty(n)
        if any(line in ("VOID", "EMPTY") for line in body):
            raise ParseError("VOID/EMPTY must be the sole body line")
        return from_facets(n, [_ids(line) for line in body])
    except ParseError:
        raise
    except CurError as exc:
        raise ParseError(str(exc)) from exc


def format_complex(cx: SimplicialComplex) -> str:
    lines = [f"n={cx.n}"]
    if cx.is_void:
        lines.append("VOID")
    elif cx.is_empty_complex:
        lines.append("EMPTY")
    else:
        lines += [" ".join(map(str, verts(f))) for f in cx.facets]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    lines = _lines(text)
    n = _header(lines)
    try:
        words = [0 if line == "-" else face(_ids(line)) for line in lines[1:]]
        return Code.from_words(n, words)
    except CurError as exc:
        raise ParseError(str(exc)) from exc


def format_code(code: Code) -> str:
    lines = [f"n={code.n}"]
    for w in code.sorted_words():
        lines.append(" ".join(map(str, verts(w))) if w else "-")
    return "\n".join(lines) + "\n"


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())
