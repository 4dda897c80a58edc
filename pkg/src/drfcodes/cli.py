"""Command-line interface.

Exit status: 0 success, 1 validation error, 2 I/O error, 3 data-integrity
error.  Errors print one line, ``error: <Kind>: <detail>``, on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bounds import bounds_report
from .codes import C1, C2, C2GEN, describe
from .config import DEFAULT_FIELD, CodeConfig
from .errors import ConfigError, DRFError
from .oracle import best_repair, pareto_front
from .repair import ACCESS, BANDWIDTH, make_plan, measure
from .shards import write_atomic
from .storage import decode_dir, encode_file, read_symbol, repair_dir, verify_dir


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(args):
    return CodeConfig.load(args.code).build()


# -- subcommands --------------------------------------------------------------

def cmd_code_new(args) -> int:
    if args.family == C2GEN:
        if None in (args.l1, args.l2, args.l3) or args.m is not None:
            raise ConfigError("c2gen needs --l1, --l2, --l3 (and no --m)")
        cfg = CodeConfig(C2GEN, args.field, None, (args.l1, args.l2, args.l3), args.lambdas)
    else:
        if args.m is None:
            raise ConfigError(f"{args.family} needs --m")
        cfg = CodeConfig(args.family, args.field, args.m, None, args.lambdas)
    code = cfg.build()
    text = cfg.to_text()
    if args.output:
        write_atomic(Path(args.output), text.encode())
        print(f"wrote {args.output}: family={code.family} n={code.n} k={code.k} field={code.field.ident}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_code_show(args) -> int:
    code = _load(args)
    print(describe(code))
    strategies = (BANDWIDTH,) if code.family == C1 else (BANDWIDTH, ACCESS)
    for strat in strategies:
        print(f"repair strategy {strat}:")
        for i in range(code.n):
            rep = measure(make_plan(code, i, strat))
            print(f"  node {i:<3d} gamma={rep.downloaded:<4d} Gamma={rep.accessed}")
    return 0


def cmd_encode(args) -> int:
    code = _load(args)
    data = Path(args.input).read_bytes()
    paths = encode_file(code, data, args.out)
    print(f"encoded {len(data)} bytes into {len(paths)} shards in {args.out}")
    return 0


def cmd_decode(args) -> int:
    code = _load(args)
    data = decode_dir(code, args.source)
    write_atomic(Path(args.output), data)
    print(f"decoded {len(data)} bytes to {args.output}")
    return 0


def cmd_repair(args) -> int:
    code = _load(args)
    st = repair_dir(code, args.source, args.lost, args.strategy, args.output)
    print(f"node={st.node}")
    print(f"stripes={st.stripes}")
    print(f"gamma={st.per_stripe_downloaded}")
    print(f"Gamma={st.per_stripe_accessed}")
    print(f"downloaded_symbols={st.downloaded_symbols}")
    print(f"accessed_symbols={st.accessed_symbols}")
    print(f"downloaded_bytes={st.downloaded_bytes}")
    print(f"wrote={st.path}")
    return 0


def cmd_read(args) -> int:
    code = _load(args)
    res = read_symbol(code, args.source, args.node, args.row, args.stripe)
    print(f"value={res.value}")
    print(f"accessed_symbols={res.accessed}")
    return 0


def cmd_verify(args) -> int:
    code = _load(args)
    present, stripes = verify_dir(code, args.source)
    print(f"ok shards={present}/{code.n} stripes={stripes}")
    return 0


def cmd_bounds(args) -> int:
    rep = bounds_report(args.n, allow_empty=args.allow_empty_parts)
    print(rep.render_lines() if args.lines else rep.render_table())
    return 0


def cmd_compare(args) -> int:
    from . import compare

    rows = compare.family_rows(args.nmax, measure=args.measure)
    recs = compare.table_records(rows, references=not args.no_reference)
    sys.stdout.write(compare.render(recs, args.format))
    if args.plot:
        from .plotting import plot_comparison

        plot_comparison(compare.plot_series(rows, args.nmax), args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    code = _load(args)
    nodes = [args.node] if args.node is not None else range(code.n)
    strategies = (BANDWIDTH,) if code.family == C1 else (BANDWIDTH, ACCESS)
    tags = {BANDWIDTH: "bw", ACCESS: "access"}
    print("node  type  " + "  ".join(f"plan_{tags[s]}(g,G)" for s in strategies)
          + "  min_gamma  min_Gamma  rowspaces  admissible  joint_optimum")
    for i in nodes:
        res = best_repair(code, i)
        plans = []
        for s in strategies:
            rep = measure(make_plan(code, i, s))
            plans.append(f"({rep.downloaded},{rep.accessed})".ljust(len(f"plan_{tags[s]}(g,G)")))
        print(f"{i:<4d}  {code.node_type(i)!s:<4}  " + "  ".join(plans)
              + f"  {res.min_downloaded:<9d}  {res.min_accessed:<9d}  {res.enumerated:<9d}  {res.admissible:<10d}"
              + "  " + " ".join(f"({g},{a})" for g, a in pareto_front(code, i)))
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drfcodes", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    code = sub.add_parser("code", help="create or inspect code configurations")
    csub = code.add_subparsers(dest="code_command", required=True)
    new = csub.add_parser("new", help="build and validate a code, write its config")
    new.add_argument("--family", required=True, choices=(C1, C2, C2GEN))
    new.add_argument("--m", type=int)
    new.add_argument("--l1", type=int)
    new.add_argument("--l2", type=int)
    new.add_argument("--l3", type=int)
    new.add_argument("--field", default=DEFAULT_FIELD, help="gf2^E or prime:P (default %(default)s)")
    new.add_argument("--lambdas", type=_int_list)
    new.add_argument("-o", "--output")
    new.set_defaults(func=cmd_code_new)
    show = csub.add_parser("show", help="print blocks and per-node repair cost")
    show.add_argument("--code", required=True)
    show.set_defaults(func=cmd_code_show)

    enc = sub.add_parser("encode", help="stripe a file into n shards")
    enc.add_argument("--code", required=True)
    enc.add_argument("--in", dest="input", required=True)
    enc.add_argument("--out", required=True)
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decode", help="rebuild a file from at least n-2 shards")
    dec.add_argument("--code", required=True)
    dec.add_argument("--from", dest="source", required=True)
    dec.add_argument("--out", dest="output", required=True)
    dec.set_defaults(func=cmd_decode)

    rep = sub.add_parser("repair", help="rebuild one lost shard from the other n-1")
    rep.add_argument("--code", required=True)
    rep.add_argument("--from", dest="source", required=True)
    rep.add_argument("--lost", type=int, required=True)
    rep.add_argument("--strategy", choices=("bw", "bandwidth", "access"), default="bw")
    rep.add_argument("--out", dest="output", help="default: overwrite the shard in --from")
    rep.set_defaults(func=cmd_repair)

    rd = sub.add_parser("read", help="degraded read of one symbol")
    rd.add_argument("--code", required=True)
    rd.add_argument("--from", dest="source", required=True)
    rd.add_argument("--node", type=int, required=True)
    rd.add_argument("--row", type=int, choices=(0, 1), required=True)
    rd.add_argument("--stripe", type=int, default=0)
    rd.set_defaults(func=cmd_read)

    ver = sub.add_parser("verify", help="parity-check every stripe")
    ver.add_argument("--code", required=True)
    ver.add_argument("--from", dest="source", required=True)
    ver.set_defaults(func=cmd_verify)

    bnd = sub.add_parser("bounds", help="lower bounds and closed forms at length n")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--allow-empty-parts", action="store_true",
                     help="let the composition scans use parts of size 0")
    bnd.add_argument("--lines", action="store_true", help="name=num/den lines instead of a table")
    bnd.set_defaults(func=cmd_bounds)

    cmp_ = sub.add_parser("compare", help="parameter table for n <= nmax")
    cmp_.add_argument("--nmax", type=int, required=True)
    cmp_.add_argument("--format", choices=("table", "csv", "tsv"), default="table")
    cmp_.add_argument("--plot", help="also render a figure to this path (png/pdf/svg)")
    cmp_.add_argument("--measure", action="store_true",
                      help="build each code and check measured averages against the closed form")
    cmp_.add_argument("--no-reference", action="store_true", help="omit the quoted reference rows")
    cmp_.set_defaults(func=cmd_compare)

    orc = sub.add_parser("oracle", help="exhaustive repair search (q <= 16)")
    orc.add_argument("--code", required=True)
    orc.add_argument("--node", type=int)
    orc.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DRFError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (IndexError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
