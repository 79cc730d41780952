"""Permutation voltage assignments on incidence graphs and their derived covers.

Orientation: the stored permutation for incidence (e, v) is phi(v, e), the
voltage on the arc vertex -> edge. The reverse arc carries the inverse.
An arc (x, y) of the derived incidence graph joins (x, i) to (y, j) exactly
when i = phi(x, y)(j), so the derived edge (e, j) is
{(u, phi(u, e)(j)) : u in e}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import PreconditionError
from .hypergraph import Hypergraph, IncidenceGraph, induced_subhypergraph, is_connected
from .permutation import Permutation, orbits, product


@dataclass(frozen=True)
class VoltageAssignment:
    """phi(v, e) for every incidence of ``base``; unlisted incidences are identity."""

    k: int
    base: Hypergraph = field(repr=False)
    assignment: Mapping[tuple[int, str], Permutation] = field(default_factory=dict)

    def __post_init__(self):
        H = self.base
        clean = {}
        for (ei, v), g in self.assignment.items():
            if not (0 <= ei < H.num_edges) or v not in H.edges[ei]:
                raise ValueError(f"({ei + 1}, {v}) is not an incidence of the base hypergraph")
            if g.k != self.k:
                raise ValueError(f"voltage at ({ei + 1}, {v}) has degree {g.k}, expected {self.k}")
            if not g.is_identity():
                clean[(ei, v)] = g
        object.__setattr__(self, "assignment", dict(sorted(clean.items(), key=self._order)))

    def _order(self, item):
        (ei, v), _ = item
        return ei, self.base.index(v)

    @classmethod
    def identity(cls, H: Hypergraph, k: int) -> VoltageAssignment:
        return cls(k, H, {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, VoltageAssignment):
            return NotImplemented
        return self.k == other.k and self.base == other.base and self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash((self.k, self.base, tuple(self.assignment.items())))

    def vertex_to_edge(self, v: str, ei: int) -> Permutation:
        """phi(v, e)."""
        return self.assignment.get((ei, v)) or Permutation.identity(self.k)

    def edge_to_vertex(self, ei: int, v: str) -> Permutation:
        """phi(e, v) = phi(v, e)^-1."""
        return self.vertex_to_edge(v, ei).inverse()

    def arc(self, x, y) -> Permutation:
        """Voltage on the arc x -> y of the incidence graph (str = vertex, int = edge)."""
        if isinstance(x, str):
            return self.vertex_to_edge(x, y)
        return self.edge_to_vertex(x, y)

    def incidences(self):
        """All incidences (edge index, vertex) in declaration order."""
        return [(ei, v) for ei, edge in enumerate(self.base.edges) for v in edge]

    def with_updates(self, updates: Mapping[tuple[int, str], Permutation]) -> VoltageAssignment:
        new = dict(self.assignment)
        new.update(updates)
        return VoltageAssignment(self.k, self.base, new)


def cover_vertex_id(v: str, layer: int) -> str:
    """Id of the covering vertex (v, layer); ``layer`` is 0-based."""
    return f"{v}@{layer + 1}"


@dataclass(frozen=True)
class DerivedCover:
    hypergraph: Hypergraph
    edge_labels: tuple[tuple[int, int], ...]  # (base edge index, layer), 0-based
    projection: Mapping[str, str]
    k: int
    base: Hypergraph = field(repr=False)

    def layer_of(self, vid: str) -> int:
        return int(vid.rsplit("@", 1)[1]) - 1


def derive(H: Hypergraph, phi: VoltageAssignment) -> DerivedCover:
    """The k-fold cover H_B^phi on V(H) x [k]."""
    if phi.base != H:
        raise ValueError("voltage assignment is defined on a different hypergraph")
    k = phi.k
    verts = [cover_vertex_id(v, i) for v in H.vertices for i in range(k)]
    edges, labels = [], []
    for ei, edge in enumerate(H.edges):
        perms = [(u, phi.vertex_to_edge(u, ei)) for u in edge]
        for j in range(k):
            edges.append([cover_vertex_id(u, g(j)) for u, g in perms])
            labels.append((ei, j))
    proj = {cover_vertex_id(v, i): v for v in H.vertices for i in range(k)}
    return DerivedCover(Hypergraph(H.m, verts, edges), tuple(labels), proj, k, H)


def _check_walk(B: IncidenceGraph, W: Sequence) -> None:
    if not W:
        raise ValueError("empty walk")
    for x in W:
        if not B.has_node(x):
            raise ValueError(f"{x!r} is not a node of the incidence graph")
    for a, b in zip(W, W[1:]):
        if not B.is_adjacent(a, b):
            raise ValueError(f"{a!r} -> {b!r} is not an arc of the incidence graph")


def walk_voltage(B: IncidenceGraph, phi: VoltageAssignment, W: Sequence) -> Permutation:
    """phi(W) = phi(w0, w1) phi(w1, w2) ... for a walk given as a node sequence."""
    _check_walk(B, W)
    return product((phi.arc(a, b) for a, b in zip(W, W[1:])), phi.k)


def switch(phi: VoltageAssignment, u, alpha: Permutation) -> VoltageAssignment:
    """alpha-switching at node u of B_H: phi(u, y) -> alpha phi(u, y) for arcs leaving u."""
    H = phi.base
    if alpha.k != phi.k:
        raise ValueError(f"switching element has degree {alpha.k}, expected {phi.k}")
    if isinstance(u, str):
        if u not in H:
            raise ValueError(f"{u!r} is not a vertex of the incidence graph")
        updates = {(ei, u): alpha * phi.vertex_to_edge(u, ei) for ei in H.star(u)}
    elif isinstance(u, int) and 0 <= u < H.num_edges:
        # phi(u, v) -> alpha phi(u, v), hence phi(v, u) -> phi(v, u) alpha^-1
        inv = alpha.inverse()
        updates = {(u, v): phi.vertex_to_edge(v, u) * inv for v in H.edges[u]}
    else:
        raise ValueError(f"{u!r} is not a node of the incidence graph")
    return phi.with_updates(updates)


def switching_relabel(cover: DerivedCover, u, alpha: Permutation) -> dict[str, str]:
    """Vertex bijection cover(phi) -> cover(switch(phi, u, alpha)): (u, i) -> (u, alpha(i)).

    Switching at an edge node only relabels derived edges, so the vertex map
    is then the identity.
    """
    out = {}
    for vid, v in cover.projection.items():
        i = cover.layer_of(vid)
        out[vid] = cover_vertex_id(v, alpha(i)) if isinstance(u, str) and v == u else vid
    return out


@dataclass(frozen=True)
class SpanningTree:
    root: str
    arcs: tuple[tuple, ...]  # (parent, child) in BFS discovery order

    def incidences(self) -> frozenset[tuple[int, str]]:
        return frozenset((a, b) if isinstance(a, int) else (b, a) for a, b in self.arcs)


def bfs_tree(B: IncidenceGraph) -> SpanningTree:
    H = B.hypergraph
    if H.n == 0:
        raise PreconditionError("incidence graph is empty")
    if not B.is_connected():
        raise PreconditionError("incidence graph must be connected")
    root = H.vertices[0]
    seen = {root}
    arcs = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in B.neighbors(x):
            if y not in seen:
                seen.add(y)
                arcs.append((x, y))
                queue.append(y)
    return SpanningTree(root, tuple(arcs))


def _potentials(phi: VoltageAssignment, tree: SpanningTree) -> dict:
    pot = {tree.root: Permutation.identity(phi.k)}
    for a, b in tree.arcs:
        pot[b] = pot[a] * phi.arc(a, b)
    return pot


def tree_gauge(B: IncidenceGraph, phi: VoltageAssignment) -> tuple[VoltageAssignment, SpanningTree]:
    """Switch phi so that every arc of a BFS spanning tree carries the identity.

    Applying switching alpha_x at every node x gives
    phi'(x, y) = alpha_x phi(x, y) alpha_y^-1; choosing alpha along the tree
    (alpha_root = 1, alpha_child = alpha_parent phi(parent, child)) kills the
    tree voltages.
    """
    tree = bfs_tree(B)
    pot = _potentials(phi, tree)
    gauged = {
        (ei, v): pot[v] * phi.vertex_to_edge(v, ei) * pot[ei].inverse()
        for ei, v in phi.incidences()
    }
    return VoltageAssignment(phi.k, phi.base, gauged), tree


def non_tree_voltages(B: IncidenceGraph, phi: VoltageAssignment) -> dict[tuple[int, str], Permutation]:
    """Gauged voltages phi'(v, e) on the arcs outside the BFS tree."""
    gauged, tree = tree_gauge(B, phi)
    in_tree = tree.incidences()
    return {inc: gauged.vertex_to_edge(inc[1], inc[0]) for inc in phi.incidences() if inc not in in_tree}


def is_balanced(B: IncidenceGraph, phi: VoltageAssignment) -> bool:
    return all(g.is_identity() for g in non_tree_voltages(B, phi).values())


def connected_direct(cover: DerivedCover) -> bool:
    return is_connected(cover.hypergraph)[0]


def connected_by_orbit(B: IncidenceGraph, phi: VoltageAssignment) -> bool:
    """Cover is connected iff the non-tree voltages (tree gauge) act transitively on [k]."""
    gens = non_tree_voltages(B, phi).values()
    return len(orbits(gens, phi.k)) == 1


def connected_two_fold(B: IncidenceGraph, phi: VoltageAssignment) -> bool:
    """k = 2: connected iff some cycle carries an odd number of (12) arcs."""
    if phi.k != 2:
        raise PreconditionError(f"two-fold criterion needs k = 2, got k = {phi.k}")
    tree = bfs_tree(B)
    parity = {tree.root: 0}
    for a, b in tree.arcs:
        parity[b] = parity[a] ^ (not phi.arc(a, b).is_identity())
    in_tree = tree.incidences()
    for ei, v in phi.incidences():
        if (ei, v) in in_tree:
            continue
        odd = parity[v] ^ parity[ei] ^ (not phi.vertex_to_edge(v, ei).is_identity())
        if odd:
            return True
    return False


def cover_components(cover: DerivedCover) -> list[Hypergraph]:
    """Connected components of the derived hypergraph as sub-hypergraphs."""
    _, comps = is_connected(cover.hypergraph)
    return [induced_subhypergraph(cover.hypergraph, c) for c in comps]
