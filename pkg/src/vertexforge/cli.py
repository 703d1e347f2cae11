"""Command-line interface: ``vertexforge <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .amplitudes import (
    c_tilde_framed, f_graph_general, framing_factor, g_three, is_rational_q, partition_function,
)
from .exact import render
from .fixtures import run_fixture_suite
from .ftcy import EffectiveClass, FtcyGraph, GraphSyntaxError, GraphValidationError, effective_classes, load_graph
from .hurwitz import hurwitz_number, phi_q, phi_series
from .partitions import EMPTY, Partition, PartitionTriple, triples_up_to
from .vertex import w_three, w_tilde


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _triple(text: str) -> PartitionTriple:
    try:
        return PartitionTriple.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints(count: int):
    def parse(text: str) -> tuple[int, ...]:
        try:
            values = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers") from None
        if len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers")
        return values
    return parse


def _weights(text: str) -> tuple[Fraction, Fraction]:
    try:
        a, b = (Fraction(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two rationals 'a,b'") from None
    return a, b


def _assignments(text: str) -> list[tuple[str, str]]:
    """Split ``k=v,k=v`` where a value may itself contain commas (``u=2,1,w=1``)."""
    out: list[tuple[str, list[str]]] = []
    if not text.strip():
        return []
    for tok in text.split(","):
        if "=" in tok:
            key, val = tok.split("=", 1)
            out.append((key.strip(), [val.strip()]))
        elif out:
            out[-1][1].append(tok.strip())
        else:
            raise UsageError(f"malformed assignment list {text!r}")
    return [(k, ",".join(v)) for k, v in out]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vertexforge", description="Exact topological-vertex computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vertex", help="W and W-tilde for one triple")
    p.add_argument("--mu", type=_partition, default=EMPTY)
    p.add_argument("--nu", type=_partition, default=EMPTY)
    p.add_argument("--rho", type=_partition, default=EMPTY)
    p.add_argument("--frame", type=_ints(3), default=None, help="n1,n2,n3 (use --frame=-1,0,1 for negatives)")

    p = sub.add_parser("check", help="sweep W-tilde = W over all triples up to a size")
    p.add_argument("--max", type=int, required=True, dest="max_size")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("hurwitz", help="double Hurwitz numbers and generating functions")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--chi", type=int)
    mode.add_argument("--phi-q", type=int, dest="phi_q")
    mode.add_argument("--series", type=int)
    p.add_argument("--plus", type=_partition, required=True)
    p.add_argument("--minus", type=_partition, required=True)

    p = sub.add_parser("glue", help="amplitude of one effective class of a graph")
    p.add_argument("graph")
    p.add_argument("--degrees", default="")
    p.add_argument("--boundary", default="")

    p = sub.add_parser("zfun", help="truncated partition function of a graph")
    p.add_argument("graph")
    p.add_argument("--caps", required=True, help="e=k,... or a single integer for every edge")

    p = sub.add_parser("hodge", help="three-partition Hodge generating function")
    p.add_argument("--mu", type=_triple, required=True)
    p.add_argument("--w", type=_weights, required=True)

    p = sub.add_parser("fixtures", help="check a fixture file")
    p.add_argument("path")
    return parser


def _cmd_vertex(args, out) -> int:
    t = PartitionTriple(args.mu, args.nu, args.rho)
    w, wt = w_three(t), w_tilde(t)
    if args.frame is not None:
        factor = framing_factor(t, args.frame)
        w, wt = factor * w, c_tilde_framed(t, args.frame)
    out.write(f"W      = {render(w)}\n")
    out.write(f"Wtilde = {render(wt)}\n")
    out.write("EQUAL\n" if w == wt else "DIFFERENT\n")
    return 0


def _sweep_one(t: PartitionTriple) -> tuple[bool, str]:
    w, wt = w_three(t), w_tilde(t)
    if w == wt:
        return True, ""
    return False, f"MISMATCH {t}: W = {render(w)}; Wtilde = {render(wt)}"


def _cmd_check(args, out) -> int:
    if args.max_size < 0 or args.jobs < 1:
        raise UsageError("--max must be nonnegative and --jobs positive")
    triples = [] if args.max_size == 0 else list(triples_up_to(args.max_size, include_empty=True))
    if args.jobs > 1 and triples:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, triples, chunksize=max(1, len(triples) // (8 * args.jobs))))
    else:
        results = [_sweep_one(t) for t in triples]
    bad = 0
    for ok, detail in results:
        if not ok:
            bad += 1
            out.write(detail + "\n")
    out.write(f"checked {len(triples)} triples, {bad} mismatches\n")
    return 3 if bad else 0


def _cmd_hurwitz(args, out) -> int:
    if args.chi is not None:
        out.write(f"{hurwitz_number(args.chi, args.plus, args.minus)}\n")
    elif args.phi_q is not None:
        out.write(render(phi_q(args.plus, args.minus, args.phi_q)) + "\n")
    else:
        series = phi_series(args.plus, args.minus, args.series)
        for k, c in enumerate(series.coefficients):
            out.write(f"lambda^{k}: {c}\n")
    return 0


def _load(path: str) -> FtcyGraph:
    try:
        return load_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _class_from_args(g: FtcyGraph, degrees: str, boundary: str) -> EffectiveClass:
    deg = {eid: 0 for eid in g.edges}
    for k, v in _assignments(degrees):
        if k not in deg:
            raise UsageError(f"unknown edge {k!r}")
        try:
            deg[k] = int(v)
        except ValueError:
            raise UsageError(f"bad degree {v!r} for edge {k!r}") from None
    given = {}
    for k, v in _assignments(boundary):
        if k not in g.univalent:
            raise UsageError(f"{k!r} is not a univalent vertex")
        given[k] = Partition.parse(v)
    for v in g.bivalent:
        a, b = (oe[0] for oe in g.incoming(v))
        if deg[a] != deg[b]:
            raise UsageError(f"edges {a!r} and {b!r} at bivalent vertex {v!r} need equal degrees")
    bound = []
    for u in g.univalent:
        d = deg[g.incoming(u)[0][0]]
        mu = given.get(u, EMPTY if d == 0 else None)
        if mu is None or mu.size != d:
            raise UsageError(f"vertex {u!r} needs a partition of {d}")
        bound.append((u, mu))
    return EffectiveClass(tuple(deg.items()), tuple(bound))


def _cmd_glue(args, out) -> int:
    g = _load(args.graph)
    c = _class_from_args(g, args.degrees, args.boundary)
    value = f_graph_general(g, c)
    out.write(render(value) + "\n")
    out.write(f"# rational coefficients: {'yes' if is_rational_q(value) else 'no'}\n")
    return 0


def _cmd_zfun(args, out) -> int:
    g = _load(args.graph)
    text = args.caps.strip()
    if text.lstrip("-").isdigit():
        caps: dict[str, int] | int = int(text)
    else:
        caps = {eid: 0 for eid in g.edges}
        for k, v in _assignments(text):
            if k not in caps:
                raise UsageError(f"unknown edge {k!r}")
            caps[k] = int(v)
    if g.is_regular():
        table = partition_function(g, caps)
    else:
        from .amplitudes import AmplitudeTable
        table = AmplitudeTable((c, f_graph_general(g, c)) for c in effective_classes(g, caps))
    for line in table.render_lines():
        out.write(line + "\n")
    return 0


def _cmd_hodge(args, out) -> int:
    out.write(render(g_three(args.mu, args.w)) + "\n")
    return 0


def _cmd_fixtures(args, out) -> int:
    try:
        results = run_fixture_suite(args.path)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    for r in results:
        out.write(str(r) + "\n")
    passed = sum(r.ok for r in results)
    out.write(f"{passed}/{len(results)} fixtures passed\n")
    return 0 if passed == len(results) else 1


_COMMANDS = {
    "vertex": _cmd_vertex,
    "check": _cmd_check,
    "hurwitz": _cmd_hurwitz,
    "glue": _cmd_glue,
    "zfun": _cmd_zfun,
    "hodge": _cmd_hodge,
    "fixtures": _cmd_fixtures,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"vertexforge {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (GraphSyntaxError, GraphValidationError) as exc:
        print(f"vertexforge {args.command}: invalid graph: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"vertexforge {args.command}: error: {exc}", file=sys.stderr)
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
