"""Seeded random hypergraphs and voltage assignments for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .hypergraph import Hypergraph
from .permutation import Permutation
from .voltage import VoltageAssignment, connected_direct, derive


def random_connected_hypergraph(rng: random.Random, n: int, m: int, extra_edges: int = 0) -> Hypergraph:
    """Connected m-uniform hypergraph on vertices 1..n.

    Edges are grown from a random first edge, each new edge touching the
    covered part and at least one new vertex; then ``extra_edges`` random
    distinct edges are added where possible.
    """
    if n < m:
        raise ValueError(f"need n >= m, got n={n}, m={m}")
    verts = [str(i) for i in range(1, n + 1)]
    pool = verts[:]
    rng.shuffle(pool)
    covered = pool[:m]
    edges = [frozenset(covered)]
    rest = pool[m:]
    while rest:
        new = rng.randint(1, min(m - 1, len(rest)))
        fresh, rest = rest[:new], rest[new:]
        old = rng.sample(covered, m - new)
        edges.append(frozenset(fresh + old))
        covered += fresh
    room = comb(n, m) - len(edges)
    for _ in range(min(extra_edges, room)):
        while True:
            e = frozenset(rng.sample(verts, m))
            if e not in edges:
                edges.append(e)
                break
    return Hypergraph(m, verts, [sorted(e, key=int) for e in edges])


def random_permutation(rng: random.Random, k: int) -> Permutation:
    img = list(range(k))
    rng.shuffle(img)
    return Permutation(tuple(img))


def random_voltage(rng: random.Random, H: Hypergraph, k: int, p_nontrivial: float = 0.5) -> VoltageAssignment:
    assignment = {}
    for ei, edge in enumerate(H.edges):
        for v in edge:
            if rng.random() < p_nontrivial:
                assignment[(ei, v)] = random_permutation(rng, k)
    return VoltageAssignment(k, H, assignment)


@dataclass(frozen=True)
class Instance:
    seed: int
    H: Hypergraph
    phi: VoltageAssignment

    @property
    def m(self) -> int:
        return self.H.m

    @property
    def k(self) -> int:
        return self.phi.k


def random_instance(
    seed: int,
    m_choices=(3, 4, 5),
    k_choices=(2, 3),
    max_n: int = 7,
    connected_cover: bool = True,
    max_tries: int = 1000,
) -> Instance:
    """Random (H, phi) with n <= max_n; resampled until the cover is connected if asked."""
    rng = random.Random(seed)
    m = rng.choice(list(m_choices))
    k = rng.choice(list(k_choices))
    for _ in range(max_tries):
        n = rng.randint(m, max(m, max_n))
        H = random_connected_hypergraph(rng, n, m, extra_edges=rng.randint(0, 3))
        phi = random_voltage(rng, H, k, p_nontrivial=rng.choice((0.3, 0.5, 0.8)))
        if not connected_cover or connected_direct(derive(H, phi)):
            return Instance(seed, H, phi)
    raise RuntimeError(f"no instance with connected cover after {max_tries} tries (seed {seed})")


def random_instances(count: int, base_seed: int = 0, **kwargs) -> list[Instance]:
    return [random_instance(base_seed + i, **kwargs) for i in range(count)]
