"""Stabilizing index, cyclic index, signed hypergraphs and the twisted incidence matrix.

Both indices are read off the incidence matrix over Z_m:

* s(H) = m^(n-1-r) * prod(d_i) where d_1..d_r are its invariant divisors;
* c(H) = the largest l | m such that Z(H) x = (m/l) 1 is solvable over Z_m.

For a cover with gcd(m, k) = 1 the incidence matrix of H_B^phi splits,
after the change of basis T = [1 | e_1 - e_2 | ... | e_1 - e_k] on every
vertex/edge block, into Z(H) plus the twisted matrix sum_g Z_g (x) rho_2(g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Mapping

from .errors import PreconditionError
from .hypergraph import Hypergraph, incidence_matrix, is_connected
from .matrix import IntegerMatrix
from .permutation import Permutation
from .voltage import VoltageAssignment, connected_direct, derive
from .zmod import ZmDivisors, solve_linear_zm, zm_invariant_divisors


@dataclass(frozen=True)
class SignedHypergraph:
    base: Hypergraph
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if len(signs) != self.base.num_edges:
            raise ValueError(f"{len(signs)} signs for {self.base.num_edges} edges")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def unsigned(cls, H: Hypergraph) -> SignedHypergraph:
        return cls(H, (1,) * H.num_edges)


@dataclass(frozen=True)
class ColoringCertificate:
    ell: int
    colors: Mapping[str, int]


@dataclass(frozen=True)
class InvariantReport:
    s: int
    c: int
    divisors: ZmDivisors
    certificate: ColoringCertificate | None = None

    @property
    def r(self) -> int:
        return self.divisors.rank


def _require_connected(H: Hypergraph, what: str) -> None:
    if not is_connected(H)[0]:
        raise PreconditionError(f"{what} requires a connected hypergraph")


def divisors_of(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def stabilizing_index(H: Hypergraph) -> InvariantReport:
    """s(H) from the invariant divisors of Z(H) over Z_m (c is filled in too)."""
    _require_connected(H, "stabilizing index")
    zd = zm_invariant_divisors(incidence_matrix(H), H.m)
    s = H.m ** (H.n - 1 - zd.rank) * prod(zd.divisors)
    c, cert = cyclic_index(H)
    return InvariantReport(s, c, zd, cert)


def cyclic_index(H: Hypergraph) -> tuple[int, ColoringCertificate]:
    """Largest l | m admitting an (m, l)-coloring, with the coloring as certificate."""
    _require_connected(H, "cyclic index")
    m = H.m
    Z = incidence_matrix(H)
    for ell in sorted(divisors_of(m), reverse=True):
        x = solve_linear_zm(Z, [m // ell] * H.num_edges, m)
        if x is not None:
            return ell, ColoringCertificate(ell, dict(zip(H.vertices, x)))
    raise AssertionError("l = 1 is always solvable")  # pragma: no cover


def verify_coloring(H: Hypergraph, cert: ColoringCertificate) -> bool:
    m, ell = H.m, cert.ell
    if ell < 1 or m % ell:
        raise PreconditionError(f"l = {ell} does not divide m = {m}")
    return all(sum(cert.colors[v] for v in edge) % m == (m // ell) % m for edge in H.edges)


def signed_hypergraph(H: Hypergraph, phi: VoltageAssignment) -> SignedHypergraph:
    """sgn e = product over v in e of sgn phi(v, e)."""
    signs = [prod(phi.vertex_to_edge(v, ei).sign() for v in edge) for ei, edge in enumerate(H.edges)]
    return SignedHypergraph(H, tuple(signs))


def signed_incidence_matrix(H: Hypergraph, phi: VoltageAssignment) -> IntegerMatrix:
    if phi.k != 2:
        raise PreconditionError(f"signed incidence matrix needs k = 2, got k = {phi.k}")
    rows = []
    for ei, edge in enumerate(H.edges):
        row = [0] * H.n
        for v in edge:
            row[H.index(v)] = phi.edge_to_vertex(ei, v).sign()
        rows.append(row)
    return IntegerMatrix(rows, H.n)


def permutation_matrix(g: Permutation) -> IntegerMatrix:
    """P_g with p_ij = 1 iff i = g(j)."""
    return IntegerMatrix([[int(i == g(j)) for j in range(g.k)] for i in range(g.k)], g.k)


def rho2_matrix(g: Permutation) -> IntegerMatrix:
    """Action of g on the basis b_j = x_1 - x_j (j = 2..k), with b_1 := 0.

    g b_j = b_{g(j)} - b_{g(1)}, so column j has +1 in row g(j) and -1 in
    row g(1), dropping whichever of those is b_1.
    """
    k = g.k
    M = [[0] * (k - 1) for _ in range(k - 1)]
    for j in range(1, k):
        if g(j) != 0:
            M[g(j) - 1][j - 1] += 1
        if g(0) != 0:
            M[g(0) - 1][j - 1] -= 1
    return IntegerMatrix(M, k - 1)


def transition_matrix(k: int) -> IntegerMatrix:
    """T = [all-ones | e_1 - e_2 | ... | e_1 - e_k]; det T = +-k."""
    rows = []
    for i in range(k):
        row = [1] + [0] * (k - 1)
        for j in range(1, k):
            row[j] = 1 if i == 0 else -int(i == j)
        rows.append(row)
    return IntegerMatrix(rows, k)


def _fraction_inverse(A: IntegerMatrix) -> list[list[Fraction]]:
    n = A.nrows
    aug = [[Fraction(a) for a in A.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def inverse_mod(A: IntegerMatrix, m: int) -> IntegerMatrix:
    """Inverse over Z_m of an integer matrix whose determinant is a unit mod m."""
    inv = _fraction_inverse(A)
    den = 1
    for row in inv:
        for a in row:
            den = den * a.denominator // gcd(den, a.denominator)
    if gcd(den, m) != 1:
        raise PreconditionError(f"matrix is not invertible over Z_{m}")
    dinv = pow(den, -1, m)
    return IntegerMatrix(
        [[(a.numerator * (den // a.denominator) * dinv) % m for a in row] for row in inv], A.ncols
    )


def voltage_layer_matrices(H: Hypergraph, phi: VoltageAssignment) -> dict[Permutation, IntegerMatrix]:
    """Z_g: 0/1 matrix marking incidences with phi(e, v) = g, for each g that occurs."""
    cells: dict[Permutation, list[tuple[int, int]]] = {}
    for ei, edge in enumerate(H.edges):
        for v in edge:
            cells.setdefault(phi.edge_to_vertex(ei, v), []).append((ei, H.index(v)))
    out = {}
    for g in sorted(cells):
        rows = [[0] * H.n for _ in range(H.num_edges)]
        for i, j in cells[g]:
            rows[i][j] = 1
        out[g] = IntegerMatrix(rows, H.n)
    return out


def twisted_incidence(H: Hypergraph, phi: VoltageAssignment) -> IntegerMatrix:
    """Z(H, phi) = sum_g Z_g (x) rho_2(g), of size |E|(k-1) x n(k-1)."""
    d = phi.k - 1
    out = IntegerMatrix.zeros(H.num_edges * d, H.n * d)
    for g, Zg in voltage_layer_matrices(H, phi).items():
        out = out + Zg.kron(rho2_matrix(g))
    return out


def cover_incidence_matrix(H: Hypergraph, phi: VoltageAssignment) -> IntegerMatrix:
    """Z(H_B^phi) with rows (e, 1..k) grouped by edge and columns (v, 1..k) grouped by vertex.

    Built from the derived cover itself, not from the Kronecker formula.
    """
    cover = derive(H, phi)
    return incidence_matrix(cover.hypergraph)


def _block_orders(count: int, k: int) -> tuple[list[int], list[int]]:
    first = [b * k for b in range(count)]
    rest = [b * k + i for b in range(count) for i in range(1, k)]
    return first, rest


def verify_block_decomposition(H: Hypergraph, phi: VoltageAssignment) -> bool:
    """Check (I (x) T^-1) Z(H_B^phi) (I (x) T) = Z(H) (+) Z(H, phi) over Z_m.

    Also checks Z(H_B^phi) = sum_g Z_g (x) P_g exactly and
    T^-1 P_g T = 1 (+) rho_2(g) for every voltage that occurs.
    """
    m, k = H.m, phi.k
    if gcd(m, k) != 1:
        raise PreconditionError(f"gcd(m,k) != 1 (m={m}, k={k})")
    Zc = cover_incidence_matrix(H, phi)
    layers = voltage_layer_matrices(H, phi)

    kron_sum = IntegerMatrix.zeros(H.num_edges * k, H.n * k)
    for g, Zg in layers.items():
        kron_sum = kron_sum + Zg.kron(permutation_matrix(g))
    if kron_sum != Zc:
        return False

    T = transition_matrix(k)
    Tinv = inverse_mod(T, m)
    for g in layers:
        lhs = (Tinv @ permutation_matrix(g) @ T).mod(m)
        rhs = IntegerMatrix.identity(1).direct_sum(rho2_matrix(g)).mod(m)
        if lhs != rhs:
            return False

    conj = (IntegerMatrix.identity(H.num_edges).kron(Tinv) @ Zc @ IntegerMatrix.identity(H.n).kron(T)).mod(m)
    r1, r2 = _block_orders(H.num_edges, k)
    c1, c2 = _block_orders(H.n, k)
    blocked = conj.take(r1 + r2, c1 + c2)
    expected = incidence_matrix(H).direct_sum(twisted_incidence(H, phi)).mod(m)
    return blocked == expected


def covering_stabilizing_index(H: Hypergraph, phi: VoltageAssignment) -> int:
    """s(H_B^phi) = s(H) * m^(n(k-1) - r') * prod(d'_i) from the twisted incidence matrix."""
    m, k = H.m, phi.k
    if gcd(m, k) != 1:
        raise PreconditionError(f"gcd(m,k) != 1 (m={m}, k={k})")
    if not connected_direct(derive(H, phi)):
        raise PreconditionError("covering hypergraph is not connected")
    base = stabilizing_index(H).s
    zd = zm_invariant_divisors(twisted_incidence(H, phi), m)
    return base * m ** (H.n * (k - 1) - zd.rank) * prod(zd.divisors)
