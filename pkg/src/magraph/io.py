"""File formats and builtin examples.

The ``.mag`` text format is line-oriented UTF-8. ``#`` starts a comment to
end of line; blank lines are ignored. Sections, in order::

    *mag <name>
    *aspect <name>
    <one element label per line>
    ...more aspects...
    *edges
    a1,...,ap -> b1,...,bp [: weight]

Labels are trimmed and may not contain ``,``, ``->``, ``:``, ``#`` or
newlines; element labels may not start with ``*``. Edge weight defaults to
1.0 when omitted. Aspect order, element order, edge order, and weights all
round-trip exactly through write/parse.

Matrices export to Matrix Market coordinate format (1-based indices,
row-major entries, 17 significant digits).
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import TextIO

from .core import Aspect, AspectList, Mag, MagEdge, build_mag
from .errors import (
    DuplicateEdgeError,
    EdgeArityError,
    EmptyAspectError,
    InvalidAspectError,
    MagError,
    MagParseError,
    NonPositiveWeightError,
    UnknownExampleError,
)
from .sparse import SparseMatrix

_FORBIDDEN_IN_LABEL = (",", "->", ":", "#", "\n")


def _check_label(token: str, line: int | None) -> str:
    if not token:
        raise MagParseError("empty label", line=line)
    if token.startswith("*"):
        raise MagParseError(f"label {token!r} may not start with '*'", line=line)
    for bad in _FORBIDDEN_IN_LABEL:
        if bad in token:
            raise MagParseError(f"label {token!r} contains {bad!r}", line=line)
    return token


def parse_mag(text: str) -> Mag:
    """Parse ``.mag`` text into a validated graph.

    Every diagnostic carries the 1-based source line; a duplicate edge is
    reported at its second occurrence.
    """
    name: str | None = None
    aspect_names: list[str] = []
    aspect_elements: list[list[str]] = []
    aspect_lines: list[int] = []
    in_edges = False
    edge_rows: list[tuple[list[str], list[str], float, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("*"):
            directive, _, rest = line.partition(" ")
            rest = rest.strip()
            if directive == "*mag":
                if name is not None:
                    raise MagParseError("second *mag section", line=lineno)
                if aspect_names or in_edges:
                    raise MagParseError("*mag must come first", line=lineno)
                if not rest:
                    raise MagParseError("*mag needs a name", line=lineno)
                name = rest
            elif directive == "*aspect":
                if name is None:
                    raise MagParseError("*aspect before *mag", line=lineno)
                if in_edges:
                    raise MagParseError(
                        "aspect sections must precede *edges", line=lineno
                    )
                if not rest:
                    raise MagParseError("*aspect needs a name", line=lineno)
                if rest in aspect_names:
                    raise InvalidAspectError(
                        f"duplicate aspect name {rest!r}", line=lineno
                    )
                aspect_names.append(rest)
                aspect_elements.append([])
                aspect_lines.append(lineno)
            elif directive == "*edges":
                if name is None or not aspect_names:
                    raise MagParseError("*edges before any aspect", line=lineno)
                if in_edges:
                    raise MagParseError("second *edges section", line=lineno)
                in_edges = True
            else:
                raise MagParseError(f"unknown directive {directive!r}", line=lineno)
            continue
        if in_edges:
            edge_rows.append(_parse_edge_line(line, lineno, len(aspect_names)))
        elif aspect_names:
            label = _check_label(line, lineno)
            if label in aspect_elements[-1]:
                raise InvalidAspectError(
                    f"duplicate element {label!r} in aspect {aspect_names[-1]!r}",
                    line=lineno,
                )
            aspect_elements[-1].append(label)
        else:
            raise MagParseError(f"unexpected line {line!r}", line=lineno)

    if name is None:
        raise MagParseError("missing *mag section", line=1)
    if not aspect_names:
        raise MagParseError("no aspects declared", line=1)
    for aname, elements, lineno in zip(aspect_names, aspect_elements, aspect_lines):
        if not elements:
            raise EmptyAspectError(f"aspect {aname!r} has no elements", line=lineno)

    aspects = AspectList(
        tuple(Aspect(a, tuple(es)) for a, es in zip(aspect_names, aspect_elements))
    )

    edges: list[MagEdge] = []
    seen: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    for origin, destination, weight, lineno in edge_rows:
        try:
            edge = aspects.edge(origin, destination, weight)
        except MagError as exc:
            raise type(exc)(exc.args[0], line=lineno) from None
        key = edge.endpoints()
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {edge}", line=lineno)
        seen.add(key)
        edges.append(edge)
    return build_mag(aspects, edges, name)


def _parse_edge_line(
    line: str, lineno: int, order: int
) -> tuple[list[str], list[str], float, int]:
    head, _, weight_part = line.partition(":")
    sides = head.split("->")
    if len(sides) != 2:
        raise MagParseError(f"edge line needs exactly one '->': {line!r}", line=lineno)
    origin = [_check_label(t.strip(), lineno) for t in sides[0].split(",")]
    destination = [_check_label(t.strip(), lineno) for t in sides[1].split(",")]
    if len(origin) != order or len(destination) != order:
        raise EdgeArityError(
            f"edge has {len(origin)}+{len(destination)} elements, "
            f"expected {order}+{order}",
            line=lineno,
        )
    weight = 1.0
    if weight_part.strip():
        try:
            weight = float(weight_part.strip())
        except ValueError:
            raise MagParseError(
                f"malformed weight {weight_part.strip()!r}", line=lineno
            ) from None
        if not weight > 0:
            raise NonPositiveWeightError(f"weight {weight} must be > 0", line=lineno)
    elif ":" in line:
        raise MagParseError("':' without a weight", line=lineno)
    return origin, destination, weight, lineno


def _check_writable(token: str, what: str) -> str:
    if token != token.strip() or "\n" in token or "#" in token:
        raise MagParseError(f"{what} {token!r} cannot be written to .mag")
    return token


def write_mag(mag: Mag) -> str:
    """Serialize a graph so that parse_mag(write_mag(m)) == m exactly."""
    lines = [f"*mag {_check_writable(mag.name, 'name')}"]
    for a in mag.aspects.aspects:
        lines.append(f"*aspect {_check_writable(a.name, 'aspect name')}")
        for label in a.elements:
            _check_label(_check_writable(label, "label"), None)
            lines.append(label)
    lines.append("*edges")
    for e in mag.edges:
        row = ",".join(e.origin.labels) + " -> " + ",".join(e.destination.labels)
        if e.weight != 1.0:
            row += f" : {e.weight!r}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def load_mag(path) -> Mag:
    return parse_mag(Path(path).read_text(encoding="utf-8"))


def save_mag(mag: Mag, path) -> None:
    Path(path).write_text(write_mag(mag), encoding="utf-8")


# ---------------------------------------------------------------------------
# Matrix Market coordinate format

_MM_HEADER = "%%MatrixMarket matrix coordinate real general"


def export_matrix_market(matrix: SparseMatrix, destination) -> None:
    """Write coordinate-format Matrix Market: 1-based, row-major, 17 digits."""
    lines = [_MM_HEADER, f"{matrix.rows} {matrix.cols} {matrix.nnz}"]
    lines.extend(f"{i + 1} {j + 1} {v:.17g}" for i, j, v in matrix.entries())
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def read_matrix_market(source: str | TextIO) -> SparseMatrix:
    """Parse coordinate-format Matrix Market text (or a readable handle)."""
    text = source if isinstance(source, str) else source.read()
    lines = text.splitlines()
    if not lines:
        raise MagParseError("empty Matrix Market input", line=1)
    header = lines[0].split()
    expected = _MM_HEADER.lower().split()
    if [t.lower() for t in header] != expected:
        raise MagParseError(f"unsupported Matrix Market header {lines[0]!r}", line=1)
    body = [
        (i, ln)
        for i, ln in enumerate(lines[1:], start=2)
        if ln.strip() and not ln.lstrip().startswith("%")
    ]
    if not body:
        raise MagParseError("missing size line", line=2)
    size_line, rest = body[0], body[1:]
    parts = size_line[1].split()
    if len(parts) != 3:
        raise MagParseError(f"malformed size line {size_line[1]!r}", line=size_line[0])
    rows, cols, nnz = (int(p) for p in parts)
    if len(rest) != nnz:
        raise MagParseError(f"expected {nnz} entries, found {len(rest)}")
    entries = []
    for lineno, ln in rest:
        fields = ln.split()
        if len(fields) != 3:
            raise MagParseError(f"malformed entry {ln!r}", line=lineno)
        entries.append((int(fields[0]) - 1, int(fields[1]) - 1, float(fields[2])))
    return SparseMatrix.from_entries(rows, cols, entries)


# ---------------------------------------------------------------------------
# builtin examples

# Urban-transit example: 3 locations x {Bus, Subway} x 3 times. Location 1 has
# no bus stop and location 3 no subway station, so six composite vertices stay
# unconnected. Edge order is pinned (layer transitions, then waits, then
# trips); incidence rows and weight vectors follow it.
_T_EDGES = (
    (("2", "Bus", "t1"), ("2", "Subway", "t1")),
    (("2", "Subway", "t1"), ("2", "Bus", "t1")),
    (("2", "Bus", "t2"), ("2", "Subway", "t2")),
    (("2", "Subway", "t2"), ("2", "Bus", "t2")),
    (("2", "Bus", "t3"), ("2", "Subway", "t3")),
    (("2", "Subway", "t3"), ("2", "Bus", "t3")),
    (("2", "Bus", "t1"), ("2", "Bus", "t2")),
    (("3", "Bus", "t1"), ("3", "Bus", "t2")),
    (("1", "Subway", "t1"), ("1", "Subway", "t2")),
    (("2", "Subway", "t1"), ("2", "Subway", "t2")),
    (("2", "Bus", "t2"), ("2", "Bus", "t3")),
    (("3", "Bus", "t2"), ("3", "Bus", "t3")),
    (("1", "Subway", "t2"), ("1", "Subway", "t3")),
    (("2", "Subway", "t2"), ("2", "Subway", "t3")),
    (("2", "Bus", "t1"), ("3", "Bus", "t2")),
    (("3", "Bus", "t1"), ("2", "Bus", "t2")),
    (("1", "Subway", "t1"), ("2", "Subway", "t2")),
    (("2", "Subway", "t1"), ("1", "Subway", "t2")),
    (("2", "Bus", "t2"), ("3", "Bus", "t3")),
    (("3", "Bus", "t2"), ("2", "Bus", "t3")),
    (("1", "Subway", "t2"), ("2", "Subway", "t3")),
    (("2", "Subway", "t2"), ("1", "Subway", "t3")),
)

# Two-aspect example whose aggregation over the second aspect creates a
# 1 -> 2 -> 3 chain that the full graph does not support end to end.
_R_EDGES = (
    (("1", "1"), ("1", "2")),
    (("2", "1"), ("3", "1")),
    (("2", "1"), ("2", "2")),
    (("3", "1"), ("3", "2")),
    (("1", "2"), ("2", "2")),
)


@lru_cache(maxsize=None)
def builtin_example(name: str) -> Mag:
    """The bundled examples: "T" (3x2x3 transit) and "R" (3x2 chain)."""
    if name == "T":
        aspects = AspectList(
            (
                Aspect("Location", ("1", "2", "3")),
                Aspect("Mode", ("Bus", "Subway")),
                Aspect("Time", ("t1", "t2", "t3")),
            )
        )
        return build_mag(aspects, [aspects.edge(o, d) for o, d in _T_EDGES], "T")
    if name == "R":
        aspects = AspectList(
            (Aspect("a1", ("1", "2", "3")), Aspect("a2", ("1", "2")))
        )
        return build_mag(aspects, [aspects.edge(o, d) for o, d in _R_EDGES], "R")
    raise UnknownExampleError(f"no builtin example {name!r} (try T or R)")
