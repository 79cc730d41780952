"""Permutations of [k] and orbit computations for the groups they generate.

Internally points are 0-based; ``from_images``/``images1`` use the 1-based
convention of the text formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    image: tuple[int, ...]  # image[j] = g(j), 0-based

    def __post_init__(self):
        img = tuple(int(a) for a in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a bijection on [{len(img)}]: {[a + 1 for a in img]}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(k)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from the 1-based image sequence (g(1), ..., g(k))."""
        return cls(tuple(int(a) - 1 for a in images))

    @classmethod
    def from_cycles(cls, k: int, *cycles: Sequence[int]) -> Permutation:
        """Build from 1-based cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
        img = list(range(k))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def k(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition g * h = g o h (apply h first)."""
        return compose(self, other)

    def inverse(self) -> Permutation:
        return invert(self)

    def is_identity(self) -> bool:
        return all(a == j for j, a in enumerate(self.image))

    def sign(self) -> int:
        return sign(self)

    def images1(self) -> list[int]:
        return [a + 1 for a in self.image]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen, out = set(), []
        for start in range(self.k):
            if start in seen:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.image[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "id"


def _check_degree(g: Permutation, h: Permutation) -> None:
    if g.k != h.k:
        raise ValueError(f"degree mismatch: {g.k} vs {h.k}")


def compose(g: Permutation, h: Permutation) -> Permutation:
    _check_degree(g, h)
    return Permutation(tuple(g.image[h.image[j]] for j in range(g.k)))


def invert(g: Permutation) -> Permutation:
    inv = [0] * g.k
    for j, a in enumerate(g.image):
        inv[a] = j
    return Permutation(tuple(inv))


def sign(g: Permutation) -> int:
    # parity = sum over cycles of (length - 1)
    return -1 if sum(len(c) - 1 for c in g.cycles()) % 2 else 1


def product(perms: Iterable[Permutation], k: int) -> Permutation:
    """Left-to-right product g_1 * g_2 * ... (so g_last acts first)."""
    out = Permutation.identity(k)
    for g in perms:
        out = out * g
    return out


def orbits(generators: Iterable[Permutation], k: int) -> list[list[int]]:
    """Orbits of <generators> on [k] (0-based), by breadth-first closure."""
    gens = list(generators)
    seen = [False] * k
    out = []
    for start in range(k):
        if seen[start]:
            continue
        seen[start] = True
        orbit, frontier = [start], [start]
        while frontier:
            nxt = []
            for j in frontier:
                for g in gens:
                    a = g.image[j]
                    if not seen[a]:
                        seen[a] = True
                        orbit.append(a)
                        nxt.append(a)
            frontier = nxt
        out.append(sorted(orbit))
    return out
