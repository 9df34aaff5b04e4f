"""Command-line front end.

Every verb prints one report on standard output (JSON unless ``--format
csv``). Exit codes: 0 success, 1 ``check`` found a violation, 2 input
error, 3 numerical overflow guard.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checks import run_checks
from .corpus import CORPUS_SEED
from .detect import detect_cycle_structure
from .dynamics import evolve, rescaled_limit
from .errors import AdjflowError, OverflowGuardError
from .extensions import (
    compare_multiplicities,
    generalized_adjacency,
    generalized_line_graph,
    p_apply,
    p_energy,
)
from .graph import Graph, adjacency_matrix, from_edge_list, line_graph, read_vertex_map
from .lattice import LatticeSpec, truncation_compare, zn_kernel
from .spectral import expm_sym, operator_norm, sym_eigen
from .weighted import line_weighted_adjacency, max_weighted_degree, weighted_line_system

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_OVERFLOW = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- serialisation ------------------------------------------------------------


def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_str(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, str):
        return _str(obj)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _str(s: str) -> str:
    import json

    return json.dumps(s, ensure_ascii=False)


def _matrix(entries, labels) -> dict:
    return {"labels": list(labels), "rows": np.asarray(entries, dtype=float).tolist()}


def _csv_matrix(entries, labels) -> str:
    lines = ["," + ",".join(labels)]
    for lab, row in zip(labels, np.asarray(entries, dtype=float)):
        lines.append(lab + "," + ",".join(_num(x) for x in row))
    return "\n".join(lines) + "\n"


# -- input --------------------------------------------------------------------


class _Inputs:
    """Reads input files and accumulates their digest."""

    def __init__(self):
        self._hash = hashlib.sha256()

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
        self._hash.update(len(data).to_bytes(8, "big"))
        self._hash.update(data)
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise InputError(f"{path} is not UTF-8 text") from None

    def graph(self, path: str) -> Graph:
        return from_edge_list(self.read(path))

    def note(self, text: str):
        self._hash.update(text.encode())

    @property
    def digest(self) -> str:
        return self._hash.hexdigest()


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected integer coordinates like 0,1, got {text!r}") from None


def _need_t(args) -> float:
    if args.t is None:
        raise InputError("--t is required for this command")
    return args.t


# -- verbs ----------------------------------------------------------------------


def _linegraph(args, io):
    M = line_graph(io.graph(args.graph))
    if args.format == "csv":
        return "u,v\n" + "".join(f"{u},{v}\n" for u, v in M.line.edges)
    return {
        "vertices": list(M.line.vertices),
        "edges": [list(e) for e in M.line.edges],
        "vertex_of_edge": [[a, b, v] for (a, b), v in M.vertex_of_edge.items()],
    }


def _spectrum(args, io):
    G = io.graph(args.graph)
    A = adjacency_matrix(G)
    D = sym_eigen(A)
    if args.format == "csv":
        return "index,eigenvalue\n" + "".join(f"{k},{_num(x)}\n" for k, x in enumerate(D.eigenvalues))
    out = {"eigenvalues": D.eigenvalues.tolist(), "labels": list(G.vertices), "eigenvectors": D.vectors.T.tolist()}
    if args.p is not None:
        out["operator_norm"] = {"p": args.p, "value": operator_norm(A, args.p)}
    return out


def _evolve(args, io):
    G = io.graph(args.graph)
    t = _need_t(args)
    if args.u0 is not None:
        u = evolve(G, _floats(args.u0), t)
        if args.format == "csv":
            return "vertex,value\n" + "".join(f"{v},{_num(x)}\n" for v, x in zip(G.vertices, u))
        return {"t": t, "labels": list(G.vertices), "vector": u.tolist()}
    E = expm_sym(adjacency_matrix(G), t)
    if args.format == "csv":
        return _csv_matrix(E.entries, G.vertices)
    return {"t": t, "matrix": _matrix(E.entries, G.vertices)}


def _limit(args, io):
    G = io.graph(args.graph)
    rep = rescaled_limit(G, args.direction, t=args.t)
    if args.format == "csv":
        return _csv_matrix(rep.limit.entries, G.vertices)
    return {
        "direction": rep.direction,
        "t": rep.t,
        "rescale_rate": rep.rescale_rate,
        "gap": rep.gap,
        "limit_rank": rep.limit_rank,
        "residual": rep.residual,
        "envelope": rep.envelope,
        "envelope_checked": rep.envelope_checked,
        "within_envelope": rep.within_envelope,
        "limit": _matrix(rep.limit.entries, G.vertices),
    }


def _detect(args, io):
    rep = detect_cycle_structure(io.graph(args.graph))
    if args.format == "csv":
        return _csv_matrix(rep.projector.entries, rep.projector.labels)
    d = rep.to_dict()
    d["projector"] = _matrix(rep.projector.entries, rep.projector.labels)
    del d["labels"]
    return d


def _zkernel(args, io):
    if len(args.points) != 2:
        raise InputError("zkernel takes exactly two points V W")
    v, w = (_point(p) for p in args.points)
    dim = args.dim if args.dim is not None else len(v)
    return {"v": list(v), "w": list(w), "t": _need_t(args), "dim": dim, "kernel": zn_kernel(v, w, args.t, dim)}


def _truncate(args, io):
    dim = args.dim or 1
    radius = args.radius or 10
    pairs = []
    for item in args.points:
        if ":" not in item:
            raise InputError(f"pairs are written V:W, got {item!r}")
        v, w = item.split(":", 1)
        pairs.append((_point(v), _point(w)))
    if not pairs:
        pairs = [((0,) * dim, (0,) * dim)]
    rep = truncation_compare(LatticeSpec(dim, radius), pairs, _need_t(args))
    if args.format == "csv":
        return rep.to_csv()
    return {
        "dim": dim,
        "radius": radius,
        "radii_checked": list(rep.radii),
        "monotone": rep.monotone,
        "max_gap": rep.max_gap,
        "rows": [
            {"v": list(r.v), "w": list(r.w), "t": r.t, "closed_form": r.closed_form, "section": r.section, "abs_gap": r.abs_gap}
            for r in rep.rows
        ],
    }


def _weighted(args, io):
    H = io.graph(args.graph)
    if args.weights is None:
        A = adjacency_matrix(H)
        if args.format == "csv":
            return _csv_matrix(A.entries, H.vertices)
        return {
            "mode": "edge_weights",
            "max_weighted_degree": max_weighted_degree(H),
            "norms": {p: operator_norm(A, p) for p in ("1", "2", "inf")},
            "matrix": _matrix(A.entries, H.vertices),
        }
    c = read_vertex_map(io.read(args.weights))
    S = weighted_line_system(H, c)
    A = line_weighted_adjacency(S)
    if args.format == "csv":
        return _csv_matrix(A.entries, A.labels)
    D = sym_eigen(A)
    return {
        "mode": "line_vertex_weights",
        "c_min": S.c_min,
        "c_max": S.c_max,
        "gamma": [S.gamma[v] for v in A.labels],
        "degC": [S.degC[v] for v in A.labels],
        "sup_degC": S.sup_degC(),
        "spectrum_range": [D.lambda_min, D.lambda_max],
        "matrix": _matrix(A.entries, A.labels),
    }


def _pflow(args, io):
    M = line_graph(io.graph(args.graph))
    try:
        p = float(args.p) if args.p is not None else 3.0
    except ValueError:
        raise InputError(f"pflow needs a real exponent p > 1, got {args.p!r}") from None
    u = np.ones(M.line.n) if args.u0 is None else np.array(_floats(args.u0))
    out = p_apply(M, p, u)
    if args.format == "csv":
        return "vertex,u,A_p_u\n" + "".join(f"{v},{_num(a)},{_num(b)}\n" for v, a, b in zip(M.line.vertices, u, out))
    return {"p": p, "labels": list(M.line.vertices), "u": u.tolist(), "A_p_u": out.tolist(), "energy": p_energy(M, p, u)}


def _genline(args, io):
    H = io.graph(args.graph)
    petals = {}
    if args.petals is not None:
        petals = read_vertex_map(io.read(args.petals), value_type=int)
    S = generalized_line_graph(H, petals)
    A = generalized_adjacency(S)
    if args.format == "csv":
        return _csv_matrix(A.entries, A.labels)
    cmp = compare_multiplicities(S) if H.is_connected() else None
    out = {
        "vertices": list(S.G.vertices),
        "edges": [list(e) for e in S.G.edges],
        "petals": {v: n for v, n in S.petals.items() if n},
        "adjacency": _matrix(A.entries, A.labels),
    }
    if cmp is not None:
        out["multiplicity"] = {
            "petal_formula": cmp.petal_formula,
            "bipartite_corrected": cmp.bipartite_corrected,
            "spectral": cmp.spectral,
            "matching": cmp.matching,
        }
    return out


def _check(args, io):
    seed = CORPUS_SEED
    if args.seed is not None:
        try:
            seed = int(args.seed, 16)
        except ValueError:
            raise InputError(f"--seed takes a hexadecimal integer, got {args.seed!r}") from None
    results = run_checks(seed=seed)
    args._violation = not all(r.passed for r in results)
    if args.format == "csv":
        return "module,name,passed,cases,worst\n" + "".join(
            f"{r.module},{r.name},{str(r.passed).lower()},{r.cases},{_num(r.worst)}\n" for r in results
        )
    return {"seed": hex(seed), "passed": not args._violation, "checks": [r.to_dict() for r in results]}


VERBS = {
    "linegraph": (_linegraph, True, "line graph of a pre-line graph"),
    "spectrum": (_spectrum, True, "eigenvalues and eigenvectors of A"),
    "evolve": (_evolve, True, "exp(tA) u0, or exp(tA) itself without --u0"),
    "limit": (_limit, True, "rescaled long-time limit of the forward or backward flow"),
    "detect": (_detect, True, "cycle structure from the -2 eigenspace of the line graph"),
    "zkernel": (_zkernel, False, "heat kernel of Z^n between two points"),
    "truncate": (_truncate, False, "finite sections against the Z^n kernel"),
    "weighted": (_weighted, True, "weighted adjacency operators"),
    "pflow": (_pflow, True, "quasilinear operator A_p on the line graph"),
    "genline": (_genline, True, "generalised line graph with petals"),
    "check": (_check, False, "run the invariant suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adjflow", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (_, takes_graph, help_text) in VERBS.items():
        p = sub.add_parser(verb, help=help_text, description=help_text)
        if takes_graph:
            p.add_argument("graph", help="edge-list file")
        if verb in ("zkernel", "truncate"):
            p.add_argument("points", nargs="*", help="points as 0,1 (zkernel: V W; truncate: V:W pairs)")
        p.add_argument("--t", type=float, help="time (signed for evolve)")
        p.add_argument("--u0", help="comma-separated initial vector")
        p.add_argument("--direction", choices=("forward", "backward"), default="forward")
        p.add_argument("--p", help="norm index 1|2|inf (spectrum) or exponent p > 1 (pflow)")
        p.add_argument("--radius", type=int, help="truncation radius of the lattice section")
        p.add_argument("--dim", type=int, help="lattice dimension")
        p.add_argument("--weights", help="vertex-weight file '<v> <c>'")
        p.add_argument("--petals", help="petal file '<v> <n>'")
        p.add_argument("--seed", help="hexadecimal corpus seed for check")
        p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _options_text(args) -> str:
    keys = ("points", "t", "u0", "direction", "p", "radius", "dim", "seed", "format")
    return "\n".join(f"{k}={getattr(args, k, None)!r}" for k in keys)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = VERBS[args.verb][0]
    io = _Inputs()
    args._violation = False
    try:
        if args.verb == "spectrum" and args.p is not None:
            operator_norm(np.zeros((1, 1)), args.p)
        result = handler(args, io)
    except OverflowGuardError as exc:
        print(f"adjflow {args.verb}: overflow guard: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (InputError, AdjflowError, ValueError) as exc:
        print(f"adjflow {args.verb}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    io.note(_options_text(args))
    if isinstance(result, str):
        sys.stdout.write(f"# adjflow {__version__} {args.verb} sha256={io.digest}\n")
        sys.stdout.write(result)
    else:
        report = {"tool": "adjflow", "version": __version__, "command": args.verb, "input_sha256": io.digest}
        report.update(result)
        sys.stdout.write(dumps(report) + "\n")
    return EXIT_VIOLATION if args._violation else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
