"""Writers (and a Pajek reader) for every pipeline artifact.

All writers are byte-deterministic: fixed 6-decimal number formatting,
LF line endings, UTF-8, no timestamps.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from coword import __version__
from coword.errors import CowordError, FormatError
from coword.layout import Embedding
from coword.semgraph import Node, SemanticGraph

FORMAT_VERSION = 1


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if value == 0:
        value = 0.0  # no "-0.000000"
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _write_text(path, text):
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CowordError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def _check_cover(g: SemanticGraph, e: Embedding):
    if not g.nodes:
        raise CowordError("refusing to write an empty graph (Pajek needs at least one vertex)")
    ids = set(g.node_ids())
    if ids != set(e.positions):
        raise CowordError(
            f"embedding covers {len(e.positions)} nodes but the graph has {len(ids)}; "
            f"mismatched: {sorted(ids ^ set(e.positions))[:5]}"
        )


# --- Pajek ---------------------------------------------------------------


def format_pajek(g: SemanticGraph, e: Embedding) -> str:
    _check_cover(g, e)
    index = {n.word_id: k for k, n in enumerate(g.nodes, start=1)}
    lines = [f"*Vertices {len(g.nodes)}"]
    for node in g.nodes:
        x, y = e.positions[node.word_id]
        label = node.surface.replace('"', "'")
        lines.append(f'{index[node.word_id]} "{label}" {_fmt(x)} {_fmt(y)}')
    lines.append("*Edges")
    for i, j, w in sorted((index[a], index[b], w) for a, b, w in g.edges):
        lines.append(f"{i} {j} {_fmt(w)}")
    return "\n".join(lines) + "\n"


def write_pajek(g: SemanticGraph, e: Embedding, path):
    """Write ``*Vertices``/``*Edges`` with 1-based ids in word-id order and coordinates."""
    return _write_text(path, format_pajek(g, e))


def parse_pajek(text: str, threshold: float = 0.0, measure: str = "cosine"):
    """Parse the dialect produced by :func:`format_pajek`.

    Word ids of the result are the 0-based vertex positions; frequencies are
    not stored in the file and come back as 0.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0].lower() != "*vertices" or not head[1].isdigit():
        raise FormatError(f"expected '*Vertices N', got {lines[0]!r}", 1)
    n = int(head[1])

    nodes, positions = [], {}
    lineno = 1
    for k in range(n):
        lineno = k + 2
        if lineno > len(lines):
            raise FormatError(f"file ends after {k} of {n} vertices", lineno)
        line = lines[lineno - 1]
        if line.startswith("*"):
            raise FormatError(f"expected vertex {k + 1} of {n}, found section {line!r}", lineno)
        try:
            idx, rest = line.split(" ", 1)
            q1 = rest.index('"')
            q2 = rest.index('"', q1 + 1)
            label = rest[q1 + 1:q2]
            coords = rest[q2 + 1:].split()
            x, y = float(coords[0]), float(coords[1])
        except (ValueError, IndexError):
            raise FormatError(f"malformed vertex line {line!r}", lineno) from None
        if int(idx) != k + 1:
            raise FormatError(f"vertex numbered {idx}, expected {k + 1}", lineno)
        nodes.append(Node(k, label))
        positions[k] = (x, y)

    lineno = n + 2
    if lineno > len(lines):
        raise FormatError("missing '*Edges' section", lineno)
    section = lines[lineno - 1].strip()
    if section.lower() in ("*arcs", "*arcslist", "*edgeslist", "*matrix"):
        raise FormatError(f"unsupported section {section!r}; only undirected '*Edges' is read", lineno)
    if section.lower() != "*edges":
        raise FormatError(f"expected '*Edges', got {section!r}", lineno)

    edges = []
    for lineno in range(n + 3, len(lines) + 1):
        line = lines[lineno - 1]
        if line.startswith("*"):
            raise FormatError(f"unsupported section {line.strip()!r}", lineno)
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"malformed edge line {line!r}", lineno)
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise FormatError(f"malformed edge line {line!r}", lineno) from None
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise FormatError(f"edge {i}-{j} refers to unknown vertices or is a loop", lineno)
        edges.append((min(i, j) - 1, max(i, j) - 1, w))

    g = SemanticGraph(tuple(nodes), tuple(sorted(edges)), threshold, measure)
    xy = np.array([positions[k] for k in range(n)]) if n else np.zeros((0, 2))
    box = tuple(float(v) for v in (*xy.min(axis=0), *xy.max(axis=0))) if n else ()
    e = Embedding(positions, (box,) if n else (), (), math.nan, 0, False)
    return g, e


def read_pajek(path, threshold: float = 0.0, measure: str = "cosine"):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CowordError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_pajek(text, threshold, measure)


# --- SVG -----------------------------------------------------------------


@dataclass(frozen=True)
class SvgOptions:
    size: int = 800
    margin: int = 60
    radius: float = 5.0
    max_radius: float = 14.0
    size_by_units: bool = False
    font_size: int = 11


def format_svg(g: SemanticGraph, e: Embedding, options: SvgOptions | None = None) -> str:
    """One ``<line>`` per edge (width linear in weight), one ``<circle>`` and ``<text>`` per node.

    With ``size_by_units`` the node radius is proportional to the square
    root of the number of units the word occurs in.
    """
    opt = options or SvgOptions()
    _check_cover(g, e)
    span = opt.size - 2 * opt.margin

    def at(wid):
        x, y = e.positions[wid]
        return opt.margin + x * span, opt.margin + (1.0 - y) * span

    top_units = max((n.unit_freq for n in g.nodes), default=0)

    def radius(node):
        if not opt.size_by_units or top_units <= 0:
            return opt.radius
        return opt.max_radius * math.sqrt(node.unit_freq / top_units)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opt.size}" height="{opt.size}" '
        f'viewBox="0 0 {opt.size} {opt.size}">',
        f'<rect x="0" y="0" width="{opt.size}" height="{opt.size}" fill="white"/>',
        '<g stroke="#7f7f7f" stroke-opacity="0.8">',
    ]
    for i, j, w in g.edges:
        (x1, y1), (x2, y2) = at(i), at(j)
        out.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke-width="{0.5 + 2.5 * max(w, 0.0):.3f}"/>'
        )
    out.append("</g>")
    out.append(f'<g font-family="Helvetica, Arial, sans-serif" font-size="{opt.font_size}">')
    for node in g.nodes:
        x, y = at(node.word_id)
        r = radius(node)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="#d62728" stroke="black" stroke-width="0.5"/>')
        out.append(f'<text x="{x + r + 2:.2f}" y="{y + opt.font_size / 3:.2f}">{escape(node.surface)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(g: SemanticGraph, e: Embedding, path, options: SvgOptions | None = None):
    return _write_text(path, format_svg(g, e, options))


# --- tables --------------------------------------------------------------


def format_matrix_csv(matrix, row_labels, col_labels) -> str:
    m = np.asarray(matrix)
    if m.shape != (len(row_labels), len(col_labels)):
        raise ValueError(f"matrix {m.shape} does not match {len(row_labels)} x {len(col_labels)} labels")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["", *col_labels])
    for label, row in zip(row_labels, m):
        writer.writerow([label, *(_fmt(v) for v in row)])
    return buf.getvalue()


def write_matrix_csv(matrix, row_labels, col_labels, path):
    return _write_text(path, format_matrix_csv(matrix, row_labels, col_labels))


def format_freqlist(vocab) -> str:
    entries = sorted(vocab, key=lambda e: (-e.total_freq, e.surface))
    return "".join(f"{e.surface}\t{e.total_freq}\t{e.unit_freq}\n" for e in entries)


def write_freqlist(vocab, path):
    """``word<TAB>total_freq<TAB>unit_freq``, most frequent first, ties alphabetical."""
    return _write_text(path, format_freqlist(vocab))


def format_loadings_csv(model) -> str:
    names = [f"F{f + 1}" for f in range(model.k)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["", *names])
    writer.writerow(["eigenvalue", *(_fmt(v) for v in model.eigenvalues[:model.k])])
    writer.writerow(["variance_explained", *(_fmt(v) for v in model.variance_explained[:model.k])])
    for label, row in zip(model.labels, model.loadings):
        writer.writerow([label, *(_fmt(v) for v in row)])
    return buf.getvalue()


def write_loadings_csv(model, path):
    return _write_text(path, format_loadings_csv(model))


# --- run report ----------------------------------------------------------


@dataclass
class RunReport:
    config: dict = field(default_factory=dict)
    corpus: dict = field(default_factory=dict)
    graph: dict = field(default_factory=dict)
    layout: dict = field(default_factory=dict)
    factors: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    tool_version: str = __version__
    format_version: int = FORMAT_VERSION

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        return cls(**known)


def format_report(report) -> str:
    data = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_report(report, path):
    return _write_text(path, format_report(report))


def read_report(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CowordError(f"cannot read run report {path}: {exc}") from exc
