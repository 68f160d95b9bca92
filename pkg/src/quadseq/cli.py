"""Command-line surface: verify, decode, encode, search, construct, catalog.

Exit codes: 0 = success / verified / nonempty result, 1 = verified-false or
empty result, 2 = usage or input error (including "could not check" outcomes
such as an exhausted node budget or an Unknown catalog status).  Identical
invocations produce byte-identical stdout; timings and progress go to stderr.
"""

import argparse
import json
import sys

from . import catalog, codec, construct
from .search import (
    BudgetExhausted,
    SearchSpec,
    enumerate_cases,
    load_checkpoint,
    search as run_search,
)
from .seqcore import (
    KIND_BASE,
    KIND_NEAR_NORMAL,
    KIND_NORMAL,
    KIND_T,
    ALL_KINDS,
    QuadseqError,
    SeqQuadruple,
    parse_quad,
    verify_quadruple,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def _load_quad(args) -> SeqQuadruple:
    if getattr(args, "record", None):
        return codec.parse_record(args.record)
    if getattr(args, "quad", None):
        if not getattr(args, "kind", None):
            raise QuadseqError("--quad needs --kind")
        return parse_quad(args.quad, args.kind)
    raise QuadseqError("need --record or --quad")


def _cmd_verify(args) -> int:
    if args.input:
        try:
            records = catalog.archive_load(args.input)
        except QuadseqError as exc:
            if args.format == "json":
                print(json.dumps({"pass": False, "failure": str(exc)}))
            else:
                print(f"fail: {exc}")
            return EXIT_FALSE
        if args.format == "json":
            print(json.dumps({"pass": True, "records": len(records)}))
        else:
            print(f"pass ({len(records)} records)")
        return EXIT_OK
    quad = _load_quad(args)
    if args.kind and quad.kind != args.kind:
        quad = SeqQuadruple(quad.a, quad.b, quad.c, quad.d, args.kind)
    report = verify_quadruple(quad)
    if args.format == "json":
        print(json.dumps({"pass": report.passed, "failure": report.failure,
                          "kind": quad.kind, "shape": list(quad.shape),
                          "sums": list(quad.sums().as_tuple())}))
    else:
        print("pass" if report.passed else f"fail: {report.failure}")
    return EXIT_OK if report.passed else EXIT_FALSE


def _cmd_decode(args) -> int:
    if args.record:
        quad = codec.parse_record(args.record)
    else:
        if args.ab is None or args.cd is None or args.order is None:
            raise QuadseqError("need --record or all of --order/--ab/--cd")
        a, b = codec.decode_pair(args.ab, codec.PAIR_AB, args.order)
        c, d = codec.decode_pair(args.cd, codec.PAIR_CD, args.order)
        quad = SeqQuadruple(a, b, c, d, KIND_NEAR_NORMAL)
    if args.format == "json":
        print(json.dumps({"kind": quad.kind, "plaintext": quad.plaintext(),
                          "sums": list(quad.sums().as_tuple())}))
    else:
        print(quad.plaintext())
    return EXIT_OK


def _cmd_encode(args) -> int:
    quad = parse_quad(args.quad, args.kind)
    ab, cd = codec.encode_quadruple(quad)
    print(f"{quad.kind} {quad.n} {ab} {cd}")
    return EXIT_OK


def _cmd_search(args) -> int:
    cases = None
    if args.cases:
        cases = tuple(int(v) for v in args.cases.split(","))
    spec = SearchSpec(
        kind=args.kind,
        order=args.order,
        mode=args.mode,
        cases=cases,
        node_limit=args.limit,
        representatives=args.representatives,
        allow_large=args.allow_large,
        use_sum_prune=not args.no_sum_prune,
        use_lag_prune=not args.no_lag_prune,
    )
    resume = load_checkpoint(args.resume) if args.resume else None
    try:
        result = run_search(
            spec,
            workers=args.workers,
            resume=resume,
            checkpoint_path=args.checkpoint,
        )
    except BudgetExhausted as exc:
        if args.checkpoint:
            print(f"budget exhausted at {exc.checkpoint.nodes} nodes; "
                  f"checkpoint written to {args.checkpoint}", file=sys.stderr)
        else:
            print("budget exhausted and no --checkpoint given", file=sys.stderr)
        return EXIT_ERROR
    stats = result.stats
    print(f"nodes {stats.nodes} prunes {stats.prunes} elapsed {stats.elapsed:.2f}s",
          file=sys.stderr)
    if args.format == "json":
        print(json.dumps({
            "kind": spec.kind, "order": spec.order, "mode": spec.mode,
            "count": result.count,
            "solutions": [q.plaintext() for q in result.solutions],
            "nodes": stats.nodes, "prunes": stats.prunes,
        }))
    elif spec.mode == "count":
        print(result.count)
    else:
        for quad in result.solutions:
            print(codec.format_record(quad))
    return EXIT_OK if result.count else EXIT_FALSE


def _cmd_construct(args) -> int:
    if args.what == "golay":
        pairs = construct.golay_search(args.length, allow_large=args.allow_large)
        for pair in pairs:
            print(f"{''.join('+' if v > 0 else '-' for v in pair.a)};"
                  f"{''.join('+' if v > 0 else '-' for v in pair.b)}")
        return EXIT_OK if pairs else EXIT_FALSE
    if args.what == "ns":
        seeds = construct.load_golay_seeds(args.seeds) if args.seeds else None
        quad = construct.golay_to_ns(construct.golay_pair(args.length, seeds))
        print(codec.format_record(quad))
        return EXIT_OK

    quad = _load_quad(args)
    tseq = construct.bs_to_ts(quad)
    if args.what == "ts":
        print(codec.format_record(tseq))
        return EXIT_OK
    design = construct.ts_to_od(tseq)
    if args.what == "od":
        text = construct.matrix_to_text(design)
        _write_out(args.out, text)
        print(f"SSᵀ = ({'+'.join(f'{s}·x{k+1}²' for k, s in enumerate(design.signature))})·I: pass")
        return EXIT_OK
    values = tuple(int(v) for v in args.values.split(","))
    h, report = construct.od_substitute(design, values, require_hadamard=True)
    _write_out(args.out, construct.pm_matrix_to_text(h))
    print(f"HHᵀ = {design.order}·I: {'pass' if report.passed else 'fail'}")
    return EXIT_OK if report.passed else EXIT_FALSE


def _write_out(path, text) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_catalog(args) -> int:
    if args.what == "records":
        records = catalog.witness_records()
        if args.out:
            catalog.archive_save(records, args.out)
        else:
            for rec in records:
                print(f"{rec.quad.kind} {rec.quad.n} {rec.ab_code} {rec.cd_code}")
        return EXIT_OK
    if args.what == "status":
        known = catalog.status(args.kind, args.order)
        if args.format == "json":
            print(json.dumps({"kind": known.kind, "order": known.order,
                              "status": known.status, "provenance": known.provenance}))
        else:
            print(f"{known.status} ({known.provenance})")
        return {catalog.NON_EMPTY: EXIT_OK, catalog.EMPTY: EXIT_FALSE}.get(
            known.status, EXIT_ERROR
        )
    if args.what == "yang":
        if args.n is None and args.max is None:
            raise QuadseqError("yang needs --n or --max")
        if args.max is not None:
            rows = [(n, catalog.is_yang_number(n)) for n in range(1, args.max + 1, 2)]
            for n, value in rows:
                print(f"{n} {'yes' if value else 'unknown' if value is None else 'no'}")
            return EXIT_OK
        value = catalog.is_yang_number(args.n)
        print("yes" if value else "unknown" if value is None else "no")
        return EXIT_OK if value else EXIT_ERROR if value is None else EXIT_FALSE
    if args.what == "cases":
        for case in enumerate_cases(args.kind, args.order):
            note = f"  # {case.note}" if case.note else ""
            reps = " ".join(str(r) for r in case.sums_reps) or "(empty)"
            print(f"case {case.case_id}: {reps}{note}")
        return EXIT_OK
    raise QuadseqError(f"unknown catalog action {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadseq",
        description="Complementary sequence quadruple workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a quadruple or an archive file")
    p.add_argument("--record", help="record line, e.g. 'nn 36 <ab> <cd>'")
    p.add_argument("--quad", help="plaintext quadruple 'A;B;C;D'")
    p.add_argument("--kind", choices=ALL_KINDS, help="kind for --quad (overrides --record)")
    p.add_argument("--input", help="archive file: verify every record")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("decode", help="decode digit codes to plaintext")
    p.add_argument("--record", help="encoded record line")
    p.add_argument("--order", type=int)
    p.add_argument("--ab", help="long-pair digit code")
    p.add_argument("--cd", help="short-pair digit code")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("encode", help="encode a plaintext quadruple as digit codes")
    p.add_argument("--quad", required=True)
    p.add_argument("--kind", choices=ALL_KINDS, default=KIND_NEAR_NORMAL)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("search", help="exhaustive search for ns/nn quadruples")
    p.add_argument("--kind", choices=(KIND_NORMAL, KIND_NEAR_NORMAL), required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mode", choices=("all", "first", "count"), default="all")
    p.add_argument("--cases", help="comma-separated case ids, e.g. 3,7")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int, help="node budget")
    p.add_argument("--checkpoint", help="checkpoint file to write")
    p.add_argument("--resume", help="checkpoint file to resume from")
    p.add_argument("--representatives", action="store_true",
                   help="fix the boundary to '0'-form (class representatives only)")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--no-sum-prune", action="store_true")
    p.add_argument("--no-lag-prune", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("construct", help="build T-sequences, designs, Hadamard matrices, pairs")
    p.add_argument("what", choices=("ts", "od", "hadamard", "golay", "ns"))
    p.add_argument("--from-record", dest="record", help="input quadruple record")
    p.add_argument("--quad", help="input quadruple plaintext")
    p.add_argument("--kind", choices=ALL_KINDS, help="kind for --quad")
    p.add_argument("--out", help="output file (stdout otherwise)")
    p.add_argument("--values", default="1,1,1,1", help="substitution values for hadamard")
    p.add_argument("--length", type=int, help="pair length for golay/ns")
    p.add_argument("--seeds", help="seed pair file for ns")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("catalog", help="embedded records, statuses, case tables")
    p.add_argument("what", choices=("records", "status", "yang", "cases"))
    p.add_argument("--kind", choices=(KIND_BASE, KIND_NORMAL, KIND_NEAR_NORMAL),
                   default=KIND_NEAR_NORMAL)
    p.add_argument("--order", type=int, default=0)
    p.add_argument("--n", type=int, help="single odd integer for yang")
    p.add_argument("--max", type=int, help="list yang status for odd n up to this bound")
    p.add_argument("--out", help="archive file for records")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; preserve the code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except QuadseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
