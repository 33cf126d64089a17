"""Command line front end: ``digmorse <command> DIGRAPH [MORSE] [options]``.

Exit status is 0 on success or a passed verification, 1 on a failed
verification (the report carries the witness) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path as FsPath
from typing import Any, Sequence

from . import io
from .chains import default_max_dim, homology
from .collapse import full_collapse, trace_retraction, verify_theorem_2, zero_degree_check
from .digraph import Digraph
from .errors import DigraphError, DocumentError, MatchingError, MorseError, PreconditionError, ResourceLimitError
from .generate import KINDS, MAX_VERTICES, gen_instance
from .morse import MorseFunction, build_matching, check_acyclic, critical_paths, generate_morse, validate_morse
from .morse_complex import build_morse_complex, verify_theorem_1

INPUT_ERRORS = (DocumentError, DigraphError, MorseError, PreconditionError, ResourceLimitError, MatchingError)


class Run:
    """Collects the report for one invocation."""

    def __init__(self, argv: Sequence[str]):
        self.report: dict[str, Any] = {"command": list(argv), "inputs": {}}
        self.status = 0

    def load_digraph(self, path: str, max_vertices: int) -> Digraph:
        doc, digest = io.read_json(path)
        self.report["inputs"][path] = digest
        G = io.parse_digraph(doc)
        if G.num_vertices > max_vertices:
            raise PreconditionError(
                f"{G.num_vertices} vertices exceeds the cap of {max_vertices} (see --max-vertices)"
            )
        return G

    def load_morse(self, args, G: Digraph) -> MorseFunction:
        if args.morse is None:
            f = generate_morse(G, args.seed, args.strategy, args.check_length)
            self.report["morse_function"] = {"generated": f.strategy, "seed": args.seed, "values": io.serialize_morse(G, f)}
            return f
        doc, digest = io.read_json(args.morse)
        self.report["inputs"][args.morse] = digest
        return io.parse_morse(doc, G)


def _render(G: Digraph, p) -> str:
    return " ".join(G.label(v) for v in p)


def _chain(G: Digraph, terms) -> dict[str, str]:
    return {_render(G, p): io.format_rational(c) for p, c in terms.items()}


def _max_dim(args, G: Digraph, extra: int = 0) -> int:
    cap = default_max_dim(G)
    n = cap - extra if args.max_dim is None else args.max_dim
    if n < 0:
        raise PreconditionError("--max-dim must be non-negative")
    if n + extra > cap and not args.allow_large:
        raise PreconditionError(f"--max-dim {n} exceeds the cap |V|+1 = {cap} (see --allow-large)")
    return n


def _homology_dict(h) -> dict[str, Any]:
    out = {"betti": list(h.betti), "omega_dims": list(h.omega_dims), "ring": h.ring}
    if h.ring == "integer":
        out["torsion"] = [list(t) for t in h.torsion]
    return out


def _validation_dict(G: Digraph, rep) -> dict[str, Any]:
    out: dict[str, Any] = {"valid": rep.valid, "checked_length": rep.checked_length, "paths_checked": rep.paths_checked}
    if not rep.valid:
        out["kind"] = rep.kind
        out["witness"] = _render(G, rep.witness)
        if rep.witness_pair:
            out["witness_pair"] = [_render(G, p) for p in rep.witness_pair]
    return out


def _require_morse(run: Run, G: Digraph, f: MorseFunction, L) -> MorseFunction | None:
    rep = validate_morse(G, f, L)
    if not rep.valid:
        run.report["validation"] = _validation_dict(G, rep)
        run.report["verdict"] = "fail"
        run.status = 1
        return None
    return MorseFunction(f.values, rep, f.strategy)


# ---------------------------------------------------------------------------
# commands


def cmd_paths(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    n_max = _max_dim(args, G)
    run.report["paths"] = {str(n): [_render(G, p) for p in G.allowed_paths(n)] for n in range(n_max + 1)}


def cmd_homology(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    run.report["homology"] = _homology_dict(homology(G, _max_dim(args, G), args.ring))


def cmd_validate(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = run.load_morse(args, G)
    rep = validate_morse(G, f, args.check_length)
    run.report["validation"] = _validation_dict(G, rep)
    run.report["verdict"] = rep.verdict
    run.status = 0 if rep.valid else 1


def cmd_critical(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    n_max = _max_dim(args, G)
    crit = {str(n): [_render(G, p) for p in critical_paths(G, f, n)] for n in range(n_max + 1)}
    run.report["critical"] = crit
    run.report["critical_counts"] = [len(v) for v in crit.values()]


def cmd_matching(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    M = build_matching(G, f, _max_dim(args, G))
    acyc = check_acyclic(M)
    run.report["matching"] = [
        {"lower": _render(G, pr.lower), "upper": _render(G, pr.upper), "incidence": pr.coefficient} for pr in M
    ]
    run.report["matching_size"] = len(M)
    run.report["acyclic"] = acyc.acyclic
    if not acyc.acyclic:
        run.report["cycle"] = [_render(G, p) for p in acyc.cycle]
        run.report["verdict"] = "fail"
        run.status = 1


def cmd_morse_complex(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    n_max = _max_dim(args, G, extra=1)
    mc = build_morse_complex(G, f, n_max)
    run.report["critical"] = {str(n): [_render(G, p) for p in c] for n, c in enumerate(mc.critical)}
    run.report["morse_boundary"] = {
        _render(G, b): _chain(G, mc.morse_boundary(b)) for c in mc.critical[1:] for b in c
    }
    run.report["squares_to_zero"] = mc.squares_to_zero()
    run.report["homology"] = _homology_dict(mc.homology(n_max, args.ring))


def cmd_collapse(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    if not zero_degree_check(G, f):
        raise PreconditionError("some zero vertex does not have in- and out-degree 1")
    trace = full_collapse(G, f)
    run.report["steps"] = [list(s) for s in trace.steps]
    run.report["retraction"] = trace_retraction(trace).mapping
    run.report["collapsed"] = io.serialize_digraph(trace.final)
    run.report["collapsed_morse"] = io.serialize_morse(trace.final, trace.final_function)


def _theorem(run: Run, rep, G: Digraph):
    run.report["checks"] = [{"name": c.name, "passed": c.passed} for c in rep.checks]
    failed = rep.failures()
    if failed:
        run.report["failures"] = [{"name": c.name, "detail": repr(c.detail)} for c in failed]
    run.report["verdict"] = "pass" if rep.passed else "fail"
    run.status = 0 if rep.passed else 1


def cmd_verify_thm1(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    n_max = _max_dim(args, G, extra=1)
    rep = verify_theorem_1(G, f, n_max, args.ring)
    run.report["direct"] = _homology_dict(rep.data["direct"])
    run.report["morse"] = _homology_dict(rep.data["morse"])
    run.report["ledger"] = rep.data["ledger"]
    _theorem(run, rep, G)


def cmd_verify_thm2(run: Run, args):
    G = run.load_digraph(args.digraph, args.max_vertices)
    f = _require_morse(run, G, run.load_morse(args, G), args.check_length)
    if f is None:
        return
    rep = verify_theorem_2(G, f, _max_dim(args, G), args.ring)
    trace = rep.data["trace"]
    run.report["steps"] = [list(s) for s in trace.steps]
    run.report["before"] = _homology_dict(rep.data["before"])
    run.report["after"] = _homology_dict(rep.data["after"])
    inc = rep.data["inclusion_check"]
    run.report["matching_sizes"] = inc.sizes
    _theorem(run, rep, G)


def cmd_gen(run: Run, args):
    G = gen_instance(args.kind, args.n, args.seed, args.p, args.max_vertices)
    run.report["digraph"] = io.serialize_digraph(G)
    if args.strategy != "none":
        f = generate_morse(G, args.seed, args.strategy, args.check_length)
        run.report["morse"] = io.serialize_morse(G, f)
        run.report["morse_strategy"] = f.strategy
    if args.write:
        base = args.write
        FsPath(f"{base}.digraph.json").write_text(io.dumps(run.report["digraph"]))
        if "morse" in run.report:
            FsPath(f"{base}.morse.json").write_text(io.dumps(run.report["morse"]))


COMMANDS = {
    "paths": (cmd_paths, False, "list allowed elementary paths"),
    "homology": (cmd_homology, False, "path homology Betti numbers"),
    "validate-morse": (cmd_validate, True, "check the discrete Morse conditions"),
    "critical": (cmd_critical, True, "critical paths per dimension"),
    "matching": (cmd_matching, True, "gradient matching and its acyclicity"),
    "morse-complex": (cmd_morse_complex, True, "critical cells, Morse boundary and Morse homology"),
    "collapse": (cmd_collapse, True, "full M-collapse trace"),
    "verify-thm1": (cmd_verify_thm1, True, "compare path homology with Morse homology"),
    "verify-thm2": (cmd_verify_thm2, True, "check homology invariance under collapse"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=None, help="top homology degree (default |V|+1)")
    common.add_argument("--ring", choices=("rational", "integer"), default="rational")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--check-length", type=int, default=None, help="Morse validation length (default |V|+2)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--max-vertices", type=int, default=MAX_VERTICES)
    common.add_argument("--allow-large", action="store_true", help="lift the max-dim cap")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="digmorse", description="Discrete Morse theory on digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, takes_morse, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("digraph", help="digraph JSON document")
        if takes_morse:
            p.add_argument("morse", nargs="?", help="Morse JSON document (generated if omitted)")
            p.add_argument(
                "--strategy",
                choices=("trivial", "single-zero", "multi-zero"),
                default="trivial",
                help="generation strategy when no Morse document is given",
            )
    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--n", type=int, default=None, help="number of vertices")
    g.add_argument("--p", type=float, default=0.4, help="edge probability")
    g.add_argument(
        "--strategy", choices=("none", "trivial", "single-zero", "multi-zero"), default="trivial"
    )
    g.add_argument("--write", metavar="PREFIX", help="also write PREFIX.digraph.json / PREFIX.morse.json")
    return parser


def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(_scalar(x) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and all(_scalar(x) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}- {_flat(v)}")
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _scalar(x: Any) -> bool:
    return isinstance(x, (int, str, bool, float)) or x is None


def _flat(v: Any) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={x}" for k, x in v.items()) or "{}"
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")

    run = Run(argv)
    start = time.perf_counter()
    try:
        if args.command == "gen":
            cmd_gen(run, args)
        else:
            COMMANDS[args.command][0](run, args)
    except INPUT_ERRORS as exc:
        print(f"digmorse: error: {exc}", file=sys.stderr)
        return 2
    run.report.setdefault("verdict", "ok")
    if args.timing:
        run.report["wall_time"] = round(time.perf_counter() - start, 6)
    if args.output == "json":
        sys.stdout.write(json.dumps(run.report, indent=2, default=str) + "\n")
    else:
        sys.stdout.write(render_text(run.report) + "\n")
    return run.status


if __name__ == "__main__":
    sys.exit(main())
