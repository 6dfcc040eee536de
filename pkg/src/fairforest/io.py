"""Text formats for instances and results.

Instance format (``#`` starts a comment, blank lines are ignored)::

    fcc v1 n=<n> k=<k>
    <color of vertex 0> <color of vertex 1> ...
    <u> <v>
    ...

Results are single-line JSON objects with a fixed field order.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .core import Clustering, ColoredForest, validate_instance
from .errors import ParseError


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(token: str, no: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", no, col) from None


def parse_instance(text: str) -> ColoredForest:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty instance")
    no, header = lines[0]
    tokens = header.split()
    if tokens[:2] == ["fcc", "v1"]:
        tokens = tokens[2:]
    elif tokens and tokens[0] == "fcc":
        raise ParseError(f"unsupported format version {' '.join(tokens[:2])!r}", no)
    fields = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in ("n", "k"):
            raise ParseError(f"unexpected header token {tok!r}", no)
        fields[key] = _int(value, no, header.index(tok) + 1)
    if "n" not in fields:
        raise ParseError("header must give n=<vertex count>", no)
    n = fields["n"]
    if len(lines) < 2:
        raise ParseError("missing color line", no + 1)
    no, color_line = lines[1]
    colors = [_int(t, no, i + 1) for i, t in enumerate(color_line.split())]
    if len(colors) != n:
        raise ParseError(f"expected {n} colors, got {len(colors)}", no)
    edges = []
    for no, line in lines[2:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"edge line must hold two vertex ids: {line!r}", no)
        edges.append((_int(parts[0], no, 1), _int(parts[1], no, 2)))
    return validate_instance(n, edges, colors, k=fields.get("k"))


def serialize_instance(forest: ColoredForest, comment: str | None = None) -> str:
    out = [f"fcc v1 n={forest.n} k={forest.k}"]
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append(" ".join(map(str, forest.color)))
    out += [f"{u} {v}" for u, v in forest.edges]
    return "\n".join(out) + "\n"


def serialize_result(clustering: Clustering, metadata: Mapping[str, Any] | None = None) -> str:
    """Result document; extra ``metadata`` fields follow the fixed ones in the given order."""
    meta = dict(metadata or {})
    doc = {
        "format": "fcc-result v1",
        "solver": meta.pop("solver", clustering.solver),
        "n": len(clustering.assignment),
        "num_clusters": clustering.num_clusters,
        "assignment": list(clustering.assignment),
        "chi": clustering.chi,
        "psi": clustering.psi,
        "total": clustering.total,
    }
    doc.update(meta)
    return json.dumps(doc) + "\n"


def parse_result(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "assignment" not in doc:
        raise ParseError("result document needs an assignment field")
    return doc


def parse_assignment(text: str) -> list[int]:
    """Assignment from a result document or a whitespace-separated list of cluster ids."""
    if text.lstrip().startswith("{"):
        return list(parse_result(text)["assignment"])
    out = []
    for no, line in _content_lines(text):
        out += [_int(t, no, i + 1) for i, t in enumerate(line.split())]
    return out
