"""Human-writable documents for patterns and mixed-sign Coxeter graphs.

Two document types share one line-based syntax (``key: value`` lines, a
``#`` starts a comment, indices are 1-based in files):

Pattern document::

    type: pattern
    format: 1
    alpha: 2
    beta: 2
    X:
    1 1
    1 1
    word: a1+ a2+ b1- b2-      # optional
    signs: + + - -             # optional, per curve a1..an then b1..bm
    frame a1: b1 b2            # optional cyclic order along a curve
    orient: + - + -            # optional, one sign per intersection, row-major

Graph document::

    type: graph
    vertices: 4
    signs: + - + -
    edges:
    1 2
    2 3
    3 4
    1 4

Both round-trip losslessly through ``format_document`` / ``parse_document``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coxeter import MixedSignCoxeterGraph
from .errors import DocumentError
from .surfaces import FramedPattern
from .twists import IntersectionPattern, TwistWord

FORMAT_VERSION = 1


@dataclass(frozen=True)
class PatternDocument:
    """An intersection pattern with optional word, framing and sign data."""

    pattern: IntersectionPattern
    word: Optional[TwistWord] = None
    alpha_orders: Optional[tuple] = None
    beta_orders: Optional[tuple] = None
    orientations: Optional[tuple] = None
    signs: Optional[tuple] = None

    @property
    def has_framing(self):
        return (
            self.alpha_orders is not None
            or self.beta_orders is not None
            or self.orientations is not None
        )

    def framed(self) -> FramedPattern:
        """Build the framed pattern, filling unspecified parts with defaults."""
        orientations = None
        if self.orientations is not None:
            orientations = tuple(self.orientations)
        return FramedPattern(
            self.pattern, self.alpha_orders, self.beta_orders, orientations
        )

    def graph(self) -> MixedSignCoxeterGraph:
        """The intersection graph, signed by ``signs`` or alternating."""
        base = self.pattern.graph()
        if self.signs is not None:
            return base.with_signs(self.signs)
        return base


@dataclass(frozen=True)
class GraphDocument:
    graph: MixedSignCoxeterGraph


def _parse_sign(tok, where):
    if tok == "+":
        return 1
    if tok == "-":
        return -1
    raise DocumentError("expected '+' or '-' in %s, got %r" % (where, tok))


def _parse_int(tok, where):
    try:
        return int(tok)
    except ValueError:
        raise DocumentError("expected an integer in %s, got %r" % (where, tok)) from None


def _logical_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_document(text: str):
    """Parse a pattern or graph document; returns PatternDocument or GraphDocument."""
    lines = list(_logical_lines(text))
    fields = {}
    frames = {}
    blocks = {}
    i = 0
    while i < len(lines):
        line = lines[i]
        if ":" not in line:
            raise DocumentError("expected 'key: value', got %r" % line)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        i += 1
        if key in ("X", "edges"):
            rows = []
            while i < len(lines) and ":" not in lines[i]:
                rows.append(lines[i].split())
                i += 1
            blocks[key] = rows
        elif key.startswith("frame "):
            frames[key[len("frame "):].strip()] = value.split()
        elif key in fields:
            raise DocumentError("duplicate key %r" % key)
        else:
            fields[key] = value

    version = _parse_int(fields.pop("format", "1"), "format")
    if version != FORMAT_VERSION:
        raise DocumentError("unsupported format version %d" % version)
    doc_type = fields.pop("type", None)
    if doc_type is None:
        doc_type = "graph" if "vertices" in fields else "pattern"
    if doc_type == "pattern":
        return _parse_pattern(fields, blocks, frames)
    if doc_type == "graph":
        if frames:
            raise DocumentError("graph documents do not carry framing data")
        return _parse_graph(fields, blocks)
    raise DocumentError("unknown document type %r" % doc_type)


def _parse_pattern(fields, blocks, frames):
    for need in ("alpha", "beta"):
        if need not in fields:
            raise DocumentError("pattern documents need an '%s:' line" % need)
    n = _parse_int(fields.pop("alpha"), "alpha")
    m = _parse_int(fields.pop("beta"), "beta")
    if n < 1 or m < 1:
        raise DocumentError("alpha and beta counts must be positive")
    if "X" not in blocks:
        raise DocumentError("pattern documents need an 'X:' block")
    rows = blocks.pop("X")
    if len(rows) != n:
        raise DocumentError("X block has %d rows, expected %d" % (len(rows), n))
    matrix = []
    for row in rows:
        if len(row) != m:
            raise DocumentError("X row %r has %d entries, expected %d" % (row, len(row), m))
        matrix.append([_parse_int(tok, "X") for tok in row])
    if any(v < 0 for row in matrix for v in row):
        raise DocumentError("intersection counts must be nonnegative")
    if blocks:
        raise DocumentError("unexpected block %r in a pattern document" % next(iter(blocks)))
    pattern = IntersectionPattern(matrix)

    word = None
    if "word" in fields:
        try:
            word = TwistWord.from_string(fields.pop("word"))
        except Exception as exc:
            raise DocumentError("bad word: %s" % exc) from None

    signs = None
    if "signs" in fields:
        toks = fields.pop("signs").split()
        if len(toks) != n + m:
            raise DocumentError("signs line needs %d entries" % (n + m))
        signs = tuple(_parse_sign(t, "signs") for t in toks)

    alpha_orders, beta_orders = _parse_frames(pattern, frames)

    orientations = None
    if "orient" in fields:
        toks = fields.pop("orient").split()
        points = sum(1 for row in pattern.intersections for v in row if v)
        if len(toks) != points:
            raise DocumentError("orient line needs %d entries (one per intersection)" % points)
        orientations = tuple(0 if _parse_sign(t, "orient") == 1 else 1 for t in toks)

    if fields:
        raise DocumentError("unknown key %r" % next(iter(fields)))
    return PatternDocument(pattern, word, alpha_orders, beta_orders, orientations, signs)


def _parse_frames(pattern, frames):
    if not frames:
        return None, None
    alpha_orders = [None] * pattern.n
    beta_orders = [None] * pattern.m
    for name, partners in frames.items():
        if len(name) < 2 or name[0] not in "ab":
            raise DocumentError("bad frame target %r" % name)
        index = _parse_int(name[1:], "frame") - 1
        ids = []
        for tok in partners:
            if len(tok) < 2 or tok[0] not in "ab":
                raise DocumentError("bad partner %r in frame %s" % (tok, name))
            ids.append(_parse_int(tok[1:], "frame") - 1)
        if name[0] == "a":
            if not 0 <= index < pattern.n:
                raise DocumentError("frame %s: no such component" % name)
            if any(tok[0] != "b" for tok in partners):
                raise DocumentError("frame %s must list b-partners" % name)
            alpha_orders[index] = tuple(ids)
        else:
            if not 0 <= index < pattern.m:
                raise DocumentError("frame %s: no such component" % name)
            if any(tok[0] != "a" for tok in partners):
                raise DocumentError("frame %s must list a-partners" % name)
            beta_orders[index] = tuple(ids)
    x = pattern.intersections
    for i in range(pattern.n):
        if alpha_orders[i] is None:
            alpha_orders[i] = tuple(j for j in range(pattern.m) if x[i][j])
    for j in range(pattern.m):
        if beta_orders[j] is None:
            beta_orders[j] = tuple(i for i in range(pattern.n) if x[i][j])
    return tuple(alpha_orders), tuple(beta_orders)


def _parse_graph(fields, blocks):
    if "vertices" not in fields:
        raise DocumentError("graph documents need a 'vertices:' line")
    n = _parse_int(fields.pop("vertices"), "vertices")
    if n < 1:
        raise DocumentError("vertex count must be positive")
    rows = blocks.pop("edges", [])
    if blocks:
        raise DocumentError("unexpected block %r in a graph document" % next(iter(blocks)))
    edges = []
    for row in rows:
        if len(row) != 2:
            raise DocumentError("edge line %r needs two vertex labels" % (row,))
        a, b = (_parse_int(t, "edges") - 1 for t in row)
        if not (0 <= a < n and 0 <= b < n):
            raise DocumentError("edge %r out of range" % (row,))
        edges.append((a, b))
    if "signs" in fields:
        toks = fields.pop("signs").split()
        if len(toks) != n:
            raise DocumentError("signs line needs %d entries" % n)
        signs = tuple(_parse_sign(t, "signs") for t in toks)
    else:
        signs = (1,) * n
    if fields:
        raise DocumentError("unknown key %r" % next(iter(fields)))
    try:
        graph = MixedSignCoxeterGraph(n, edges, signs)
    except Exception as exc:
        raise DocumentError(str(exc)) from None
    return GraphDocument(graph)


def _sign_str(s):
    return "+" if s > 0 else "-"


def format_document(doc) -> str:
    """Serialize a document back to text."""
    if isinstance(doc, GraphDocument):
        g = doc.graph
        lines = ["type: graph", "format: %d" % FORMAT_VERSION, "vertices: %d" % g.vertex_count]
        lines.append("signs: " + " ".join(_sign_str(s) for s in g.signs))
        lines.append("edges:")
        for a, b in sorted(g.edges):
            lines.append("%d %d" % (a + 1, b + 1))
        return "\n".join(lines) + "\n"
    if not isinstance(doc, PatternDocument):
        raise DocumentError("cannot serialize %r" % type(doc).__name__)
    p = doc.pattern
    lines = [
        "type: pattern",
        "format: %d" % FORMAT_VERSION,
        "alpha: %d" % p.n,
        "beta: %d" % p.m,
        "X:",
    ]
    for row in p.intersections:
        lines.append(" ".join(str(v) for v in row))
    if doc.word is not None:
        lines.append("word: %s" % doc.word)
    if doc.signs is not None:
        lines.append("signs: " + " ".join(_sign_str(s) for s in doc.signs))
    if doc.alpha_orders is not None:
        for i, order in enumerate(doc.alpha_orders):
            lines.append("frame a%d: %s" % (i + 1, " ".join("b%d" % (j + 1) for j in order)))
    if doc.beta_orders is not None:
        for j, order in enumerate(doc.beta_orders):
            lines.append("frame b%d: %s" % (j + 1, " ".join("a%d" % (i + 1) for i in order)))
    if doc.orientations is not None:
        lines.append("orient: " + " ".join("+" if b == 0 else "-" for b in doc.orientations))
    return "\n".join(lines) + "\n"


def load_document(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_document(handle.read())
