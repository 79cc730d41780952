"""Text formats: hypergraph documents, voltage files and integer matrices.

Hypergraph document::

    # comment
    uniform 3
    vertices 1 2 3 4        (optional; otherwise first-use order)
    edge 1 2 3
    sign - edge 2 3 4       (signed documents only)

Voltage file (edge indices are 1-based, images are g(1) ... g(k))::

    k 2
    1 2 : 2 1
"""

from __future__ import annotations

from .errors import ParseError
from .hypergraph import Hypergraph
from .invariants import SignedHypergraph
from .matrix import IntegerMatrix
from .permutation import Permutation
from .voltage import VoltageAssignment


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_document(text: str) -> tuple[Hypergraph, tuple[int, ...] | None]:
    """Parse a hypergraph document; signs are returned when any edge is signed."""
    m = None
    declared: list[str] | None = None
    order: list[str] = []
    known: set[str] = set()
    edges: list[list[str]] = []
    signs: list[int] = []
    signed = False
    seen_edges: dict[frozenset, int] = {}

    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "uniform":
            if m is not None:
                raise ParseError("repeated 'uniform' directive", lineno)
            if len(toks) != 2:
                raise ParseError("expected 'uniform <m>'", lineno)
            try:
                m = int(toks[1])
            except ValueError:
                raise ParseError(f"uniformity is not an integer: {toks[1]!r}", lineno) from None
            if m < 2:
                raise ParseError(f"uniformity must be at least 2, got {m}", lineno)
        elif head == "vertices":
            if declared is not None:
                raise ParseError("repeated 'vertices' directive", lineno)
            if edges:
                raise ParseError("'vertices' must precede the edges", lineno)
            declared = toks[1:]
            if len(set(declared)) != len(declared):
                raise ParseError("duplicate vertex in 'vertices'", lineno)
            order = list(declared)
            known = set(declared)
        elif head in ("edge", "sign"):
            sgn = 1
            if head == "sign":
                if len(toks) < 3 or toks[1] not in ("+", "-") or toks[2] != "edge":
                    raise ParseError("expected 'sign <+|-> edge <ids...>'", lineno)
                sgn = 1 if toks[1] == "+" else -1
                signed = True
                toks = toks[2:]
            if m is None:
                raise ParseError("edge before 'uniform' directive", lineno)
            ids = toks[1:]
            if len(set(ids)) != len(ids):
                raise ParseError(f"duplicate vertex in edge {ids}", lineno)
            if len(ids) != m:
                raise ParseError(f"edge has {len(ids)} vertices, expected {m}", lineno)
            key = frozenset(ids)
            if key in seen_edges:
                raise ParseError(f"duplicate edge (same as line {seen_edges[key]})", lineno)
            seen_edges[key] = lineno
            for v in ids:
                if v not in known:
                    if declared is not None:
                        raise ParseError(f"undeclared vertex {v!r}", lineno)
                    known.add(v)
                    order.append(v)
            edges.append(ids)
            signs.append(sgn)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if m is None:
        raise ParseError("missing 'uniform' directive")
    H = Hypergraph(m, order, edges)
    return H, (tuple(signs) if signed else None)


def parse_hypergraph(text: str) -> Hypergraph:
    return parse_document(text)[0]


def parse_signed_hypergraph(text: str) -> SignedHypergraph:
    H, signs = parse_document(text)
    return SignedHypergraph(H, signs or (1,) * H.num_edges)


def _check_id(v: str) -> str:
    if not v or any(c.isspace() for c in v) or "#" in v or v == ":":
        raise ValueError(f"vertex id {v!r} cannot be written to a document")
    return v


def serialize_hypergraph(G: Hypergraph | SignedHypergraph) -> str:
    if isinstance(G, SignedHypergraph):
        H, signs = G.base, G.signs
    else:
        H, signs = G, None
    lines = [f"uniform {H.m}", "vertices " + " ".join(_check_id(v) for v in H.vertices)]
    for i, edge in enumerate(H.edges):
        prefix = "" if signs is None else ("sign + " if signs[i] > 0 else "sign - ")
        lines.append(prefix + "edge " + " ".join(edge))
    return "\n".join(lines) + "\n"


def parse_voltage(text: str, H: Hypergraph) -> VoltageAssignment:
    k = None
    assignment = {}
    where = {}
    for lineno, toks in _lines(text):
        if toks[0] == "k":
            if k is not None:
                raise ParseError("repeated 'k' header", lineno)
            if len(toks) != 2:
                raise ParseError("expected 'k <int>'", lineno)
            try:
                k = int(toks[1])
            except ValueError:
                raise ParseError(f"fold is not an integer: {toks[1]!r}", lineno) from None
            if k < 1:
                raise ParseError(f"fold must be positive, got {k}", lineno)
            continue
        if k is None:
            raise ParseError("missing 'k <int>' header", lineno)
        if len(toks) < 3 or toks[2] != ":":
            raise ParseError("expected '<edge-index> <vertex-id> : <images...>'", lineno)
        try:
            ei = int(toks[0]) - 1
            images = [int(a) for a in toks[3:]]
        except ValueError:
            raise ParseError("edge index and images must be integers", lineno) from None
        v = toks[1]
        if not (0 <= ei < H.num_edges) or v not in H.edges[ei]:
            raise ParseError(f"unknown incidence (edge {ei + 1}, vertex {v})", lineno)
        if len(images) != k:
            raise ParseError(f"expected {k} images, found {len(images)}", lineno)
        if sorted(images) != list(range(1, k + 1)):
            raise ParseError(f"images {images} are not a bijection on [{k}]", lineno)
        if (ei, v) in where:
            raise ParseError(f"incidence already assigned on line {where[(ei, v)]}", lineno)
        where[(ei, v)] = lineno
        assignment[(ei, v)] = Permutation.from_images(images)
    if k is None:
        raise ParseError("missing 'k <int>' header")
    return VoltageAssignment(k, H, assignment)


def serialize_voltage(phi: VoltageAssignment) -> str:
    lines = [f"k {phi.k}"]
    for (ei, v), g in phi.assignment.items():
        lines.append(f"{ei + 1} {v} : " + " ".join(map(str, g.images1())))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntegerMatrix:
    return IntegerMatrix.parse(text)


def serialize_matrix(M: IntegerMatrix) -> str:
    lines = [f"{M.nrows} {M.ncols}"] + [" ".join(map(str, row)) for row in M]
    return "\n".join(lines) + "\n"
