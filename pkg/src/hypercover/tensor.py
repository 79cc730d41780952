"""Adjacency tensors of (signed) uniform hypergraphs, applied through the edge list.

The entry of A for an edge e is sgn(e)/(m-1)!, and each edge appears in
(m-1)! index orderings per vertex, so

    (A x^{m-1})_v = sum_{e containing v} sgn(e) * prod_{u in e, u != v} x_u.

The tensor is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, PreconditionError
from .hypergraph import Hypergraph, is_connected
from .invariants import SignedHypergraph, signed_hypergraph
from .voltage import VoltageAssignment, derive

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000
LIFT_TOL = 1e-10


class AdjacencyTensorView:
    """Implicit adjacency tensor of a Hypergraph or SignedHypergraph."""

    def __init__(self, G: Hypergraph | SignedHypergraph):
        if isinstance(G, SignedHypergraph):
            H, signs = G.base, G.signs
        else:
            H, signs = G, (1,) * G.num_edges
        self.hypergraph = H
        self.signs = np.array(signs, dtype=float)
        self.edge_index = np.array(
            [[H.index(v) for v in e] for e in H.edges], dtype=np.intp
        ).reshape(H.num_edges, H.m)

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def m(self) -> int:
        return self.hypergraph.m

    def apply(self, x) -> np.ndarray:
        return tensor_apply(self, x)


def _as_view(T) -> AdjacencyTensorView:
    return T if isinstance(T, AdjacencyTensorView) else AdjacencyTensorView(T)


def tensor_apply(T, x) -> np.ndarray:
    """A x^{m-1} for the implicit tensor T; complex input gives complex output."""
    T = _as_view(T)
    x = np.asarray(x)
    if x.shape != (T.n,):
        raise ValueError(f"vector of shape {x.shape} for {T.n} vertices")
    dtype = np.result_type(x.dtype, float)
    out = np.zeros(T.n, dtype=dtype)
    if len(T.edge_index) == 0:
        return out
    vals = x[T.edge_index].astype(dtype)  # |E| x m
    ones = np.ones((len(vals), 1), dtype=dtype)
    # product of the other m-1 entries, via prefix and suffix products (no division)
    prefix = np.cumprod(np.hstack([ones, vals[:, :-1]]), axis=1)
    suffix = np.cumprod(np.hstack([ones, vals[:, :0:-1]]), axis=1)[:, ::-1]
    others = prefix * suffix * T.signs[:, None]
    np.add.at(out, T.edge_index.ravel(), others.ravel())
    return out


def _unit_max_norm(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    scale = np.max(np.abs(x)) if x.size else 0.0
    if scale == 0:
        raise ValueError("zero vector")
    return x / scale


def eigen_residual(T, lam, x) -> float:
    """max_v |(A x^{m-1})_v - lam x_v^{m-1}| with x first scaled to unit max-norm."""
    T = _as_view(T)
    x = _unit_max_norm(x)
    if x.shape != (T.n,):
        raise ValueError(f"vector of shape {x.shape} for {T.n} vertices")
    return float(np.max(np.abs(tensor_apply(T, x) - lam * x ** (T.m - 1))))


@dataclass
class PowerIterationResult:
    rho: float
    lower: float
    upper: float
    iterations: int
    vector: np.ndarray
    trace: list[tuple[float, float]] = field(default_factory=list, repr=False)

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def power_iteration(
    H: Hypergraph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, keep_trace: bool = False
) -> PowerIterationResult:
    """Perron root of A(H) with Collatz-Wielandt bounds.

    Iterates x <- normalize(((A + I) x^{m-1})^{[1/(m-1)]}) from the all-ones
    vector. The unit shift makes the iteration primitive, so it also
    converges when the hypergraph has cyclic index > 1; the bounds
    min/max_v (A x^{m-1})_v / x_v^{m-1} are those of A itself.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_connected(H)[0]:
        raise PreconditionError("spectral radius iteration requires a connected hypergraph")
    T = AdjacencyTensorView(H)
    p = H.m - 1
    x = np.ones(H.n)
    trace = []
    lo = hi = float("nan")
    for it in range(1, max_iter + 1):
        y = tensor_apply(T, x)
        ratio = y / x**p
        lo, hi = float(ratio.min()), float(ratio.max())
        if keep_trace:
            trace.append((lo, hi))
        if hi - lo < tol:
            return PowerIterationResult((lo + hi) / 2, lo, hi, it, x, trace)
        x = (y + x**p) ** (1.0 / p)
        x /= x.max()
    raise ConvergenceError(
        f"no convergence in {max_iter} iterations (gap {hi - lo:.3e})", gap=hi - lo, iterations=max_iter
    )


def spectral_radius(H: Hypergraph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    return power_iteration(H, tol, max_iter).rho


def lift_tau(x, k: int) -> np.ndarray:
    """Constant on layers: tau(x)(v, i) = x(v), in cover order (v, 1..k)."""
    return np.repeat(np.asarray(x), k)


def signed_lift(x) -> np.ndarray:
    """y(v, 1) = x(v), y(v, 2) = -x(v)."""
    x = np.asarray(x)
    return np.stack([x, -x], axis=1).ravel()


@dataclass(frozen=True)
class LiftDefects:
    unsigned: float
    signed: float | None  # only for k = 2 with m even

    def max(self) -> float:
        return max(self.unsigned, self.signed or 0.0)


def lift_defects(H: Hypergraph, phi: VoltageAssignment, x) -> LiftDefects:
    """Defects of the lift identities for one vector x (scaled to unit max-norm)."""
    x = np.asarray(x, dtype=complex)
    if np.any(x):
        x = _unit_max_norm(x)
    cover = derive(H, phi)
    A_cov = AdjacencyTensorView(cover.hypergraph)
    k = phi.k
    d1 = float(np.max(np.abs(tensor_apply(A_cov, lift_tau(x, k)) - lift_tau(tensor_apply(H, x), k)), initial=0.0))
    d2 = None
    if k == 2 and H.m % 2 == 0:
        gamma = AdjacencyTensorView(signed_hypergraph(H, phi))
        d2 = float(np.max(np.abs(tensor_apply(A_cov, signed_lift(x)) - signed_lift(tensor_apply(gamma, x))), initial=0.0))
    return LiftDefects(d1, d2)


def verify_lift_identities(H: Hypergraph, phi: VoltageAssignment, x, tol: float = LIFT_TOL) -> bool:
    """A(cover) tau(x)^{m-1} = tau(A(H) x^{m-1}) for any x; plus the signed-lift
    identity against Gamma(H, phi) when k = 2 and m is even."""
    return lift_defects(H, phi, x).max() <= tol
