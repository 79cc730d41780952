"""Command-line interface.

Exit codes: 0 success, 1 precondition violation, 2 parse error,
3 non-convergence.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from math import gcd
from pathlib import Path

import numpy as np

from . import __version__
from .errors import BudgetExceeded, ConvergenceError, ParseError, PreconditionError
from .formats import parse_hypergraph, parse_matrix, parse_voltage, serialize_hypergraph
from .hypergraph import incidence_graph, incidence_matrix, is_connected
from .invariants import (
    covering_stabilizing_index,
    signed_hypergraph,
    stabilizing_index,
    twisted_incidence,
)
from .tensor import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    LIFT_TOL,
    AdjacencyTensorView,
    eigen_residual,
    lift_defects,
    lift_tau,
    power_iteration,
)
from .voltage import (
    connected_by_orbit,
    connected_direct,
    connected_two_fold,
    cover_components,
    derive,
    is_balanced,
    non_tree_voltages,
)
from .zmod import DEFAULT_BUDGET, enumerate_kernel_zm, integer_snf, kernel_count_zm, zm_invariant_divisors

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE, EXIT_CONVERGENCE = 0, 1, 2, 3


def fmt_float(x: float) -> float:
    """Round to 12 significant digits."""
    return float(f"{x:.12g}")


class Inputs:
    """Reads input files once and records their digests."""

    def __init__(self):
        self.digests = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[Path(path).name] = hashlib.sha256(data).hexdigest()
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError(f"{path} is not UTF-8 text") from None

    def hypergraph(self, path):
        return parse_hypergraph(self.read(path))

    def cover_input(self, args):
        H = self.hypergraph(args.hypergraph)
        return H, parse_voltage(self.read(args.voltage), H)


def cmd_info(args, inp):
    H = inp.hypergraph(args.hypergraph)
    conn, comps = is_connected(H)
    return {
        "n": H.n,
        "m": H.m,
        "edges": H.num_edges,
        "connected": conn,
        "components": len(comps),
        "degrees": dict(zip(H.vertices, H.degrees())),
    }


def cmd_invariants(args, inp):
    H = inp.hypergraph(args.hypergraph)
    rep = stabilizing_index(H)
    Z = incidence_matrix(H)
    try:
        ps0 = len(enumerate_kernel_zm(Z, H.m, fix_first_zero=True, budget=args.budget))
    except BudgetExceeded:
        ps0 = None
    return {
        "s": rep.s,
        "c": rep.c,
        "divisors": list(rep.divisors.divisors),
        "r": rep.r,
        "coloring": {"ell": rep.certificate.ell, "colors": rep.certificate.colors},
        "ps0_brute_force": ps0,
    }


def cmd_cover(args, inp):
    H, phi = inp.cover_input(args)
    cov = derive(H, phi)
    return {
        "k": phi.k,
        "n": cov.hypergraph.n,
        "edges": cov.hypergraph.num_edges,
        "document": serialize_hypergraph(cov.hypergraph),
        "projection": dict(cov.projection),
        "edge_labels": [f"{ei + 1}@{j + 1}" for ei, j in cov.edge_labels],
    }


def cmd_connected(args, inp):
    H, phi = inp.cover_input(args)
    B = incidence_graph(H)
    if not B.is_connected():
        raise PreconditionError("base hypergraph H must be connected")
    direct = connected_direct(derive(H, phi))
    orbit = connected_by_orbit(B, phi)
    two = connected_two_fold(B, phi) if phi.k == 2 else None
    values = [direct, orbit] + ([two] if two is not None else [])
    return {
        "k": phi.k,
        "direct": direct,
        "orbit": orbit,
        "two_fold": two,
        "agree": len(set(values)) == 1,
    }


def cmd_balance(args, inp):
    H, phi = inp.cover_input(args)
    B = incidence_graph(H)
    if not B.is_connected():
        raise PreconditionError("base hypergraph H must be connected")
    witnesses = {
        f"{ei + 1} {v}": str(g) for (ei, v), g in non_tree_voltages(B, phi).items() if not g.is_identity()
    }
    return {
        "balanced": is_balanced(B, phi),
        "cover_components": len(cover_components(derive(H, phi))),
        "k": phi.k,
        "unbalanced_witnesses": witnesses,
    }


def cmd_signed(args, inp):
    H, phi = inp.cover_input(args)
    gamma = signed_hypergraph(H, phi)
    zd = zm_invariant_divisors(twisted_incidence(H, phi), H.m)
    return {
        "signs": ["+" if s > 0 else "-" for s in gamma.signs],
        "document": serialize_hypergraph(gamma),
        "twisted_divisors": list(zd.divisors),
        "twisted_rank": zd.rank,
    }


def cmd_cover_invariants(args, inp):
    H, phi = inp.cover_input(args)
    cov = derive(H, phi)
    if not connected_direct(cov):
        raise PreconditionError("covering hypergraph H_B^phi must be connected")
    direct = stabilizing_index(cov.hypergraph)
    g = gcd(H.m, phi.k)
    if g != 1:
        formula = "not applicable (m even)" if phi.k == 2 else f"not applicable (gcd(m,k) = {g})"
        match = None
    else:
        formula = covering_stabilizing_index(H, phi)
        match = formula == direct.s
    base = stabilizing_index(H)
    return {
        "base_s": base.s,
        "base_c": base.c,
        "formula": formula,
        "direct": direct.s,
        "direct_c": direct.c,
        "cover_divisors": list(direct.divisors.divisors),
        "match": match,
    }


def cmd_rho(args, inp):
    H = inp.hypergraph(args.hypergraph)
    if args.voltage:
        H = derive(H, parse_voltage(inp.read(args.voltage), H)).hypergraph
    res = power_iteration(H, tol=args.tol, max_iter=args.max_iter)
    return {
        "rho": fmt_float(res.rho),
        "lower": fmt_float(res.lower),
        "upper": fmt_float(res.upper),
        "gap": fmt_float(res.gap),
        "iterations": res.iterations,
    }


def cmd_verify_lift(args, inp):
    H, phi = inp.cover_input(args)
    rng = np.random.default_rng(args.seed)
    worst_u, worst_s = 0.0, None
    for _ in range(args.trials):
        x = rng.standard_normal(H.n) + 1j * rng.standard_normal(H.n)
        d = lift_defects(H, phi, x)
        worst_u = max(worst_u, d.unsigned)
        if d.signed is not None:
            worst_s = max(worst_s or 0.0, d.signed)
    out = {
        "trials": args.trials,
        "max_defect": fmt_float(worst_u),
        "max_signed_defect": None if worst_s is None else fmt_float(worst_s),
        "passed": max(worst_u, worst_s or 0.0) <= LIFT_TOL,
    }
    if is_connected(H)[0]:
        res = power_iteration(H, tol=args.tol, max_iter=args.max_iter)
        cov = derive(H, phi)
        out["perron_lift_residual"] = fmt_float(
            eigen_residual(AdjacencyTensorView(cov.hypergraph), res.rho, lift_tau(res.vector, phi.k))
        )
    return out


def cmd_snf(args, inp):
    M = parse_matrix(inp.read(args.matrix))
    out = {"rows": M.nrows, "cols": M.ncols, "invariant_factors": list(integer_snf(M).invariant_factors)}
    if args.mod is not None:
        if args.mod < 2:
            raise PreconditionError("modulus must be at least 2")
        zd = zm_invariant_divisors(M, args.mod)
        out.update(
            modulus=args.mod,
            divisors=list(zd.divisors),
            rank=zd.rank,
            kernel_size=kernel_count_zm(M, args.mod),
        )
    return out


COMMANDS = {
    "info": (cmd_info, "size and connectivity of a hypergraph", ["hypergraph"]),
    "invariants": (cmd_invariants, "stabilizing index, cyclic index and coloring certificate", ["hypergraph"]),
    "cover": (cmd_cover, "derived covering hypergraph and its projection", ["hypergraph", "voltage"]),
    "connected": (cmd_connected, "connectedness of the cover by every applicable criterion", ["hypergraph", "voltage"]),
    "balance": (cmd_balance, "balance of the voltage assignment", ["hypergraph", "voltage"]),
    "signed": (cmd_signed, "signed hypergraph and twisted incidence divisors", ["hypergraph", "voltage"]),
    "cover-invariants": (cmd_cover_invariants, "stabilizing index of the cover, by formula and directly", ["hypergraph", "voltage"]),
    "rho": (cmd_rho, "spectral radius by power iteration (of the cover if a voltage file is given)", ["hypergraph", "voltage?"]),
    "verify-lift": (cmd_verify_lift, "check the eigenvector lift identities on random vectors", ["hypergraph", "voltage"]),
    "snf": (cmd_snf, "Smith normal form of an integer matrix file", ["matrix"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force candidate budget")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="hypercover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for pos in positionals:
            if pos.endswith("?"):
                p.add_argument(pos[:-1], nargs="?")
            else:
                p.add_argument(pos)
        if name == "verify-lift":
            p.add_argument("--trials", type=int, default=100)
        if name == "snf":
            p.add_argument("--mod", type=int)
    return parser


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, val in report["results"].items():
        if key == "document":
            continue
        if isinstance(val, dict):
            lines.append(f"{key}:")
            for a, b in val.items():
                if isinstance(b, dict):
                    b = " ".join(f"{u}={w}" for u, w in b.items())
                lines.append(f"  {a}: {b}")
        elif isinstance(val, list):
            lines.append(f"{key}: " + " ".join(map(str, val)))
        else:
            lines.append(f"{key}: {val}")
    doc = report["results"].get("document")
    if doc is not None:
        if report["command"] == "cover":
            # comment lines keep the output a valid document
            proj = report["results"]["projection"]
            return doc + "".join(f"# {a} -> {b}\n" for a, b in proj.items())
        lines.append("document:")
        lines += ["  " + ln for ln in doc.splitlines()]
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered output)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    inp = Inputs()
    report = {"command": args.command, "seed": args.seed}
    code = EXIT_OK
    try:
        report["results"] = func(args, inp)
    except ParseError as exc:
        code, report["error"] = EXIT_PARSE, str(exc)
    except (PreconditionError, BudgetExceeded) as exc:
        code, report["error"] = EXIT_PRECONDITION, str(exc)
    except ConvergenceError as exc:
        code, report["error"] = EXIT_CONVERGENCE, str(exc)
        report["results"] = {"iterations": exc.iterations, "gap": fmt_float(exc.gap)}
    report["inputs"] = dict(sorted(inp.digests.items()))
    report["exit_code"] = code
    if args.json:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif code == EXIT_OK:
        text = _render_text(report)
    else:
        text = ""
    if code != EXIT_OK:
        print(f"error: {report['error']}", file=sys.stderr)
    if args.out:
        Path(args.out).write_text(text)
        text = ""
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
