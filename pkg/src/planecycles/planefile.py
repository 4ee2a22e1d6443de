"""Plain-text plane files.

Layout (LF newlines, ``#`` starts a comment, blank lines ignored)::

    plane <kind> order <q> points <P> lines <L>
    classes <n>            # affine planes only
    class <i>: <line ids>  # one per class
    line <id>: <point ids>

Loading re-checks the axioms of the declared kind, so a file that parses
but lies about being a plane raises AxiomViolation, not garbage output.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .plane import KINDS, Plane
from .verify import check_axioms

_TOKEN = re.compile(r"\S+")


def _tokens(text: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]


def _int(tok: str, col: int, lineno: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", lineno, col) from None
    if v < 0:
        raise ParseError(f"{what} must be non-negative, got {v}", lineno, col)
    return v


def loads_plane(text: str) -> Plane:
    rows = []  # (lineno, raw, tokens)
    for i, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body)
        if toks:
            rows.append((i, toks))
    if not rows:
        raise ParseError("empty plane file", 1)

    lineno, toks = rows[0]
    words = [t for t, _ in toks]
    if len(toks) != 8 or words[0] != "plane" or words[2] != "order" or words[4] != "points" or words[6] != "lines":
        raise ParseError(
            "header must read: plane <kind> order <q> points <P> lines <L>", lineno, toks[0][1]
        )
    kind = words[1]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})", lineno, toks[1][1])
    order = _int(words[3], toks[3][1], lineno, "order")
    n_points = _int(words[5], toks[5][1], lineno, "point count")
    n_lines = _int(words[7], toks[7][1], lineno, "line count")

    pos = 1
    classes = None
    if kind == "affine":
        if pos >= len(rows):
            raise ParseError("missing classes section", lineno)
        lineno, toks = rows[pos]
        words = [t for t, _ in toks]
        if len(toks) != 2 or words[0] != "classes":
            raise ParseError("affine plane needs: classes <n>", lineno, toks[0][1])
        n_classes = _int(words[1], toks[1][1], lineno, "class count")
        pos += 1
        classes = [None] * n_classes
        for _ in range(n_classes):
            if pos >= len(rows):
                raise ParseError(f"expected {n_classes} class rows, file ended early", lineno)
            lineno, toks = rows[pos]
            words = [t for t, _ in toks]
            if len(toks) < 2 or words[0] != "class" or not words[1].endswith(":"):
                raise ParseError("expected: class <i>: <line ids>", lineno, toks[0][1])
            ci = _int(words[1][:-1], toks[1][1], lineno, "class index")
            if not 0 <= ci < n_classes:
                raise ParseError(f"class index {ci} out of range 0..{n_classes - 1}", lineno, toks[1][1])
            if classes[ci] is not None:
                raise ParseError(f"class {ci} given twice", lineno, toks[1][1])
            ids = [_int(t, c, lineno, "line id") for t, c in toks[2:]]
            for (t, c), v in zip(toks[2:], ids):
                if v >= n_lines:
                    raise ParseError(f"line id {v} out of range 0..{n_lines - 1}", lineno, c)
            classes[ci] = tuple(ids)
            pos += 1

    lines = [None] * n_lines
    for _ in range(n_lines):
        if pos >= len(rows):
            raise ParseError(f"expected {n_lines} line rows, file ended early", lineno)
        lineno, toks = rows[pos]
        words = [t for t, _ in toks]
        if len(toks) < 2 or words[0] != "line" or not words[1].endswith(":"):
            raise ParseError("expected: line <id>: <point ids>", lineno, toks[0][1])
        lid = _int(words[1][:-1], toks[1][1], lineno, "line id")
        if not 0 <= lid < n_lines:
            raise ParseError(f"line id {lid} out of range 0..{n_lines - 1}", lineno, toks[1][1])
        if lines[lid] is not None:
            raise ParseError(f"line {lid} given twice", lineno, toks[1][1])
        pts = []
        for t, c in toks[2:]:
            v = _int(t, c, lineno, "point id")
            if v >= n_points:
                raise ParseError(f"point id {v} out of range 0..{n_points - 1}", lineno, c)
            pts.append(v)
        lines[lid] = tuple(pts)
        pos += 1
    if pos < len(rows):
        lineno, toks = rows[pos]
        raise ParseError("unexpected content after the last line row", lineno, toks[0][1])

    plane = Plane(kind, order, n_points, lines, classes)
    check_axioms(plane)
    return plane


def load_plane(path: str) -> Plane:
    with open(path, encoding="utf-8") as fh:
        return loads_plane(fh.read())


def save_plane(plane: Plane, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(plane.canonical_text())
