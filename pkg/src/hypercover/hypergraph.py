"""Uniform hypergraphs, their incidence structure and covering projections."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .matrix import IntegerMatrix


@dataclass(frozen=True)
class Hypergraph:
    """A simple m-uniform hypergraph with string vertex ids.

    Edges are stored as tuples sorted by vertex declaration order, so input
    order inside an edge does not matter. Vertices and edges keep their
    declaration order, which fixes the row/column order of every matrix.
    """

    m: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, ...], ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)
    _stars: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, m: int, vertices: Iterable, edges: Iterable[Iterable]):
        m = int(m)
        if m < 2:
            raise ValueError(f"uniformity must be at least 2, got {m}")
        verts = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise ValueError("duplicate vertex id")
        normalized = []
        seen = set()
        for pos, edge in enumerate(edges):
            ids = [str(v) for v in edge]
            if len(set(ids)) != len(ids):
                raise ValueError(f"edge {pos + 1} repeats a vertex: {ids}")
            if len(ids) != m:
                raise ValueError(f"edge {pos + 1} has {len(ids)} vertices, expected {m}")
            unknown = [v for v in ids if v not in index]
            if unknown:
                raise ValueError(f"edge {pos + 1} uses undeclared vertices {unknown}")
            key = frozenset(ids)
            if key in seen:
                raise ValueError(f"edge {pos + 1} duplicates an earlier edge")
            seen.add(key)
            normalized.append(tuple(sorted(ids, key=index.__getitem__)))
        stars = [[] for _ in verts]
        for ei, edge in enumerate(normalized):
            for v in edge:
                stars[index[v]].append(ei)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_stars", tuple(tuple(s) for s in stars))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def index(self, v: str) -> int:
        return self._index[v]

    def __contains__(self, v) -> bool:
        return v in self._index

    def star(self, v: str) -> tuple[int, ...]:
        """Indices of the edges containing v (the edge star E(v))."""
        return self._stars[self._index[v]]

    def degree(self, v: str) -> int:
        return len(self.star(v))

    def degrees(self) -> list[int]:
        return [len(s) for s in self._stars]

    def edge_index(self, vertex_set: Iterable[str]) -> int | None:
        key = frozenset(vertex_set)
        for ei, edge in enumerate(self.edges):
            if frozenset(edge) == key:
                return ei
        return None

    def without_edge(self, ei: int) -> Hypergraph:
        return Hypergraph(self.m, self.vertices, self.edges[:ei] + self.edges[ei + 1:])


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite incidence graph B_H.

    Nodes are vertex ids (str) on the left and edge indices (int) on the
    right, so a walk is just a sequence mixing the two.
    """

    left: tuple[str, ...]
    right: tuple[int, ...]
    incidences: frozenset[tuple[int, str]]
    hypergraph: Hypergraph = field(repr=False, compare=False)

    def neighbors(self, node) -> tuple:
        H = self.hypergraph
        if isinstance(node, str):
            return H.star(node)
        return H.edges[node]

    def nodes(self) -> list:
        return list(self.left) + list(self.right)

    def has_node(self, node) -> bool:
        if isinstance(node, str):
            return node in self.hypergraph
        return isinstance(node, int) and 0 <= node < len(self.right)

    def is_adjacent(self, a, b) -> bool:
        if isinstance(a, str) and isinstance(b, int):
            return (b, a) in self.incidences
        if isinstance(a, int) and isinstance(b, str):
            return (a, b) in self.incidences
        return False

    def components(self) -> list[list]:
        seen = set()
        comps = []
        for start in self.nodes():
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def incidence_graph(H: Hypergraph) -> IncidenceGraph:
    incs = frozenset((ei, v) for ei, edge in enumerate(H.edges) for v in edge)
    return IncidenceGraph(H.vertices, tuple(range(H.num_edges)), incs, H)


def incidence_matrix(H: Hypergraph) -> IntegerMatrix:
    """|E| x |V| 0/1 matrix with a 1 at (e, v) iff v is in e."""
    rows = []
    for edge in H.edges:
        row = [0] * H.n
        for v in edge:
            row[H.index(v)] = 1
        rows.append(row)
    return IntegerMatrix(rows, H.n)


def is_connected(H: Hypergraph) -> tuple[bool, list[set[str]]]:
    """Connectivity via the incidence graph; also returns the vertex components."""
    comps = [
        {x for x in comp if isinstance(x, str)}
        for comp in incidence_graph(H).components()
    ]
    # components made of edges only cannot occur: every edge has m >= 2 vertices
    comps = [c for c in comps if c]
    return len(comps) == 1, comps


@dataclass(frozen=True)
class ProjectionCheck:
    ok: bool
    fold: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_covering_projection(
    Hbar: Hypergraph, H: Hypergraph, f: Mapping[str, str]
) -> ProjectionCheck:
    """Check that the vertex map f: V(Hbar) -> V(H) is a covering projection.

    f must send edges to edges, be onto vertices and edges, and restrict to a
    bijection from each edge star E(v) onto E(f(v)). When H is connected and
    the check passes, the constant fiber size is reported as ``fold``.
    """
    if set(f) != set(Hbar.vertices):
        missing = sorted(set(Hbar.vertices) - set(f))
        extra = sorted(set(f) - set(Hbar.vertices))
        raise ValueError(f"vertex map domain mismatch: missing {missing}, extra {extra}")
    bad = sorted({w for w in f.values() if w not in H})
    if bad:
        raise ValueError(f"vertex map targets unknown vertices {bad}")

    edge_image = []
    for ebar in Hbar.edges:
        image = {f[v] for v in ebar}
        ei = H.edge_index(image) if len(image) == H.m else None
        if ei is None:
            return ProjectionCheck(False, reason=f"edge {set(ebar)} does not map onto an edge")
        edge_image.append(ei)

    if set(f.values()) != set(H.vertices):
        return ProjectionCheck(False, reason="not surjective on vertices")
    if set(edge_image) != set(range(H.num_edges)):
        return ProjectionCheck(False, reason="not surjective on edges")

    for vbar in Hbar.vertices:
        images = [edge_image[ei] for ei in Hbar.star(vbar)]
        if len(set(images)) != len(images) or set(images) != set(H.star(f[vbar])):
            return ProjectionCheck(
                False, reason=f"edge star of {vbar} is not mapped bijectively"
            )

    fibers = {}
    for w in f.values():
        fibers[w] = fibers.get(w, 0) + 1
    sizes = set(fibers.values())
    fold = sizes.pop() if len(sizes) == 1 else None
    return ProjectionCheck(True, fold=fold)


def disjoint_union(parts: Sequence[Hypergraph]) -> Hypergraph:
    """Disjoint union with vertex ids prefixed by the part number."""
    m = parts[0].m
    verts, edges = [], []
    for p, G in enumerate(parts):
        verts += [f"{p}:{v}" for v in G.vertices]
        edges += [[f"{p}:{v}" for v in e] for e in G.edges]
    return Hypergraph(m, verts, edges)


def induced_subhypergraph(H: Hypergraph, keep: Iterable[str]) -> Hypergraph:
    """Sub-hypergraph on the kept vertices with the edges lying inside them."""
    keep = set(keep)
    verts = [v for v in H.vertices if v in keep]
    edges = [e for e in H.edges if keep.issuperset(e)]
    return Hypergraph(H.m, verts, edges)
