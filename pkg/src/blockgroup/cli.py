"""Command-line entry point.

Exit codes: 0 the property holds (or the construction succeeded), 1 it
fails and a witness is printed, 2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import constructions as cons
from .design import (
    Design,
    DesignFormatError,
    NotBIBDError,
    format_design,
    incidence_matrix,
    parse_design,
    verify_bibd,
)
from .enumeration import enumerate_delta_closed, write_results
from .gf2 import gf2_rank
from .group import (
    delta_closure_check,
    good_block_classes,
    hamada_bound_check,
    kimberley_group,
    lemma2_predicate,
    sdp_check,
    shape_exponent,
)
from .isomorphism import are_isomorphic

CONSTRUCTIONS = {
    "pg": lambda n: cons.pg_hyperplanes(n),
    "pg-complement": lambda n: cons.pg_complement(n),
    "sylvester-2design": lambda n: cons.hadamard_to_2design(cons.sylvester_hadamard(n)),
    "hadamard-3design": lambda n: cons.hadamard_to_3design(cons.sylvester_hadamard(n)),
    "sdp-biplane": lambda n: cons.sdp_biplane(),
}


class UsageError(Exception):
    pass


def _load(path: str) -> Design:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_design(text)
    except DesignFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, headline: str, report: dict) -> None:
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
        return
    print(headline)
    for key, value in report.items():
        print(f"{key}: {json.dumps(value)}")


def _params_dict(d: Design) -> dict:
    try:
        p = verify_bibd(d)
    except NotBIBDError as exc:
        return {"bibd": False, "reason": exc.reason, "witness": list(exc.witness or ()), "message": str(exc)}
    return {"bibd": True, "v": p.v, "b": p.b, "k": p.k, "lambda": p.lam, "r": p.r, "symmetric": p.symmetric}


def cmd_construct(args) -> int:
    if args.kind != "sdp-biplane" and args.n is None:
        raise UsageError(f"construct {args.kind} needs --n")
    try:
        d = CONSTRUCTIONS[args.kind](args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = format_design(d)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, f"wrote {args.kind} (v={d.v}, b={d.b}) to {args.output}",
              {"kind": args.kind, "n": args.n, "v": d.v, "b": d.b, "output": args.output})
    elif args.format == "json":
        print(json.dumps({"kind": args.kind, "n": args.n, "v": d.v, "b": d.b, "blocks": d.block_sets()}))
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    report = _params_dict(_load(args.file))
    if report["bibd"]:
        head = "BIBD v={v} b={b} k={k} lambda={lambda} r={r}".format(**report)
    else:
        head = f"not a BIBD: {report['message']}"
    _emit(args, head, report)
    return 0 if report["bibd"] else 1


def cmd_group_check(args) -> int:
    d = _load(args.file)
    rep = delta_closure_check(d)
    report = rep.as_dict()
    try:
        lem = lemma2_predicate(d)
        report["lemma2"] = lem.as_dict()
    except NotBIBDError:
        report["lemma2"] = None
    if rep.closed:
        head = f"closed, order {rep.group_order}, n={rep.dimension_n}"
    else:
        i, j = rep.witness
        head = f"not closed, witness blocks {i} {j}"
    _emit(args, head, report)
    return 0 if rep.closed else 1


def cmd_rank(args) -> int:
    d = _load(args.file)
    rank = gf2_rank(incidence_matrix(d))
    report: dict = {"rank": rank, "hamada": None}
    try:
        params = verify_bibd(d)
    except NotBIBDError:
        params = None
    if params is not None and shape_exponent(params) is not None:
        report["hamada"] = hamada_bound_check(d).as_dict()
    head = f"rank {rank}"
    if report["hamada"]:
        h = report["hamada"]
        verdict = "equality" if h["equality"] else ("bound holds" if h["bound_holds"] else "BOUND FAILS")
        head += f"; n={h['n']}, {verdict}"
    _emit(args, head, report)
    return 1 if report["hamada"] and not report["hamada"]["bound_holds"] else 0


def cmd_iso(args) -> int:
    d1, d2 = _load(args.file1), _load(args.file2)
    try:
        cert = are_isomorphic(d1, d2)
    except NotBIBDError as exc:
        raise UsageError(f"isomorphism needs valid BIBDs: {exc}") from None
    report: dict = {"isomorphic": cert is not None}
    if args.emit_certificate:
        report["certificate"] = list(cert.mapping) if cert is not None else None
    head = "isomorphic" if cert is not None else "not isomorphic"
    if args.format == "text" and args.emit_certificate and cert is not None:
        print(head)
        print(str(cert))
        return 0
    _emit(args, head, report)
    return 0 if cert is not None else 1


def cmd_sdp(args) -> int:
    rep = sdp_check(_load(args.file))
    head = "SDP holds" if rep.is_sdp else "SDP fails, witness blocks {} {} {}".format(*rep.witness)
    _emit(args, head, rep.as_dict())
    return 0 if rep.is_sdp else 1


def cmd_good_blocks(args) -> int:
    d = _load(args.file)
    try:
        rep = good_block_classes(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = rep.as_dict()
    report["group"] = kimberley_group(rep).as_dict() if rep.classes and rep.group_table_ok else None
    good = sum(rep.good_flags)
    head = f"{good} good blocks, {len(rep.classes)} classes"
    if report["group"]:
        head += f", group of order {report['group']['order']}"
    _emit(args, head, report)
    return 0 if report["group"] and report["group"]["valid"] else 1


def cmd_enumerate(args) -> int:
    def beat(nodes: int, leaves: int) -> None:
        print(f"... {nodes} nodes, {leaves} closed sets", file=sys.stderr, flush=True)

    try:
        res = enumerate_delta_closed(
            args.v,
            allow_long=args.allow_long,
            workers=args.workers,
            heartbeat=beat if args.allow_long else None,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = res.summary()
    if args.out_dir:
        report["files"] = write_results(res, args.out_dir)
    unique = res.class_count == 1 and res.pg_certificates[0] is not None
    classes = f"{res.class_count} isomorphism class" + ("" if res.class_count == 1 else "es")
    head = classes + (f"; isomorphic to PG-complement({res.n})" if unique else "")
    _emit(args, head, report)
    return 0 if unique else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="blockgroup", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named design")
    p.add_argument("kind", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    for name, func, helptext in (
        ("verify", cmd_verify, "check the 2-design axioms"),
        ("group-check", cmd_group_check, "is blocks ∪ {∅} closed under symmetric difference"),
        ("rank", cmd_rank, "2-rank of the incidence matrix"),
        ("sdp-check", cmd_sdp, "symmetric difference property"),
        ("good-blocks", cmd_good_blocks, "good blocks of a Hadamard 3-design"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--emit-certificate", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", parents=[common], help="classify all Δ-closed designs on v points")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--out-dir")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
