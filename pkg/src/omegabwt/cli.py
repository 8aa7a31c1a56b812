"""Command-line front end: ``omegabwt build|invert|check|stats``."""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import _backend
from .io import (FastaError, InversionError, invert_ebwt, read_ebwt, read_fasta,
                 run_length_encode, write_fasta, write_outputs)
from .oracle import oracle_ebwt
from .pfp.merge import pfp_ebwt
from .pfp.parse import PfpError, write_parse
from .sais import ebwt
from .strings import EbwtResult, SeqCollection, smallest_period


class CliError(Exception):
    pass


def _summary(pairs) -> None:
    for k, v in pairs:
        if isinstance(v, float):
            v = f"{v:.4f}"
        print(f"{k}={v}")


def _load(args) -> SeqCollection:
    return read_fasta(args.input, uppercase=not args.no_uppercase,
                      degenerate_to_n=not args.keep_degenerate, max_n_frac=args.max_n_frac)


def _triggers(spec: str | None):
    if spec is None:
        return None
    return {t for t in spec.split(",") if t}


def _pfp_possible(coll: SeqCollection, w: int) -> bool:
    return all(smallest_period(s) >= w for s in coll.seqs)


def build_ebwt(coll: SeqCollection, mode: str, w: int, p: int, triggers=None,
               samples: bool = False, threads: int = 1, keep: dict | None = None,
               backend: str | None = None) -> tuple[EbwtResult, str]:
    """Run the requested path; ``auto`` falls back to direct when PFP cannot apply."""
    if mode == "direct":
        return ebwt(coll, samples=samples, backend=backend), "direct"
    if mode == "auto" and not _pfp_possible(coll, w):
        return ebwt(coll, samples=samples, backend=backend), "direct"
    try:
        res = pfp_ebwt(coll, w=w, p=p, triggers=triggers, samples=samples,
                       threads=threads, backend=backend, keep=keep)
    except PfpError:
        if mode == "pfp":
            raise
        return ebwt(coll, samples=samples, backend=backend), "direct"
    return res, "pfp"


def cmd_build(args) -> int:
    if args.w < 2:
        raise CliError("-w must be at least 2")
    if args.p < 1:
        raise CliError("-p must be at least 1")
    coll = _load(args)
    base = args.output or str(Path(args.input).with_suffix(""))
    keep = {}
    t0 = time.perf_counter()
    res, used = build_ebwt(coll, args.mode, args.w, args.p, _triggers(args.triggers),
                           args.samples, args.threads, keep, args.backend)
    elapsed = time.perf_counter() - t0
    write_outputs(res, base, rle=args.rle, samples=args.samples)
    rle = run_length_encode(res.bwt)
    pairs = [("mode", used), ("backend", _backend.get(args.backend).NAME),
             ("N", coll.N), ("m", coll.m), ("r", rle.r), ("n_over_r", rle.ratio)]
    parsed = keep.get("parse")
    if parsed is not None:
        pairs += [("dict_phrases", len(parsed.dict)),
                  ("dict_bytes", sum(len(d) for d in parsed.dict)),
                  ("parse_length", sum(len(q) for q in parsed.parses))]
        if args.keep_parse:
            write_parse(parsed, base)
    pairs += [("time_s", elapsed), ("output", base)]
    _summary(pairs)
    return 0


def cmd_invert(args) -> int:
    coll = invert_ebwt(read_ebwt(args.base))
    if args.output:
        write_fasta(coll, args.output)
    else:
        for name, seq in coll.docs:
            sys.stdout.write(f">{name}\n{seq.decode('latin-1')}\n")
    return 0


def _diff_positions(a: bytes, b: bytes, limit: int = 10) -> list[int]:
    out = [i + 1 for i, (x, y) in enumerate(zip(a, b)) if x != y][:limit]
    if len(a) != len(b) and len(out) < limit:
        out.append(min(len(a), len(b)) + 1)
    return out


def cmd_check(args) -> int:
    coll = _load(args)
    if coll.N > args.limit:
        raise CliError(f"input has {coll.N} symbols, above the oracle limit {args.limit}")
    want = oracle_ebwt(coll)
    runs = {"direct": ebwt(coll, backend=args.backend)}
    if _pfp_possible(coll, args.w):
        runs["pfp"] = pfp_ebwt(coll, w=args.w, p=args.p, triggers=_triggers(args.triggers),
                               backend=args.backend)
    ok = True
    for name, got in runs.items():
        same = got.bwt == want.bwt and got.index_set == want.index_set
        ok &= same
        line = f"{name}={'pass' if same else 'fail'}"
        if not same:
            line += f" diff_positions={','.join(map(str, _diff_positions(got.bwt, want.bwt)))}"
            if got.index_set != want.index_set:
                line += " index_set_differs=1"
        print(line)
    if "pfp" not in runs:
        print("pfp=skipped")
    print(f"result={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def cmd_stats(args) -> int:
    src = args.input
    if os.path.exists(src + ".ebwt"):
        bwt = read_ebwt(src).bwt
    elif src.endswith(".ebwt"):
        bwt = Path(src).read_bytes()
    else:
        coll = _load(args)
        bwt = build_ebwt(coll, "auto", args.w, args.p)[0].bwt
    if not bwt:
        raise CliError("empty eBWT")
    rle = run_length_encode(bwt)
    _summary([("sigma", len(set(bwt))), ("n", rle.n), ("r", rle.r), ("n_over_r", rle.ratio)])
    return 0


def _fasta_opts(sp):
    sp.add_argument("--max-n-frac", type=float, default=None,
                    help="drop records whose N fraction exceeds this (e.g. 0.95)")
    sp.add_argument("--no-uppercase", action="store_true", help="keep lowercase bytes")
    sp.add_argument("--keep-degenerate", action="store_true",
                    help="do not map IUPAC degenerate codes to N")


def _pfp_opts(sp):
    sp.add_argument("-w", type=int, default=10, help="trigger window length")
    sp.add_argument("-p", type=int, default=100, help="hash modulus for triggers")
    sp.add_argument("--triggers", help="comma-separated explicit trigger strings (testing)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="omegabwt", description=__doc__)
    ap.add_argument("--backend", choices=_backend.available(), default=None,
                    help="kernel backend (default: compiled if built)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="compute the eBWT of a FASTA collection")
    b.add_argument("input")
    b.add_argument("-o", "--output", help="output base path (default: input without suffix)")
    _pfp_opts(b)
    b.add_argument("--mode", choices=("pfp", "direct", "auto"), default="auto")
    b.add_argument("--samples", action="store_true", help="write .ssa/.esa run samples")
    b.add_argument("--rle", action="store_true", help="write the .rle file")
    b.add_argument("--keep-parse", action="store_true", help="dump .dict/.parse/.starts")
    b.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    _fasta_opts(b)
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("invert", help="rebuild documents from <base>.ebwt and <base>.I")
    i.add_argument("base")
    i.add_argument("-o", "--output", help="FASTA output (default: stdout)")
    i.set_defaults(func=cmd_invert)

    c = sub.add_parser("check", help="compare both paths against the brute-force oracle")
    c.add_argument("input")
    c.add_argument("--limit", type=int, default=10000, help="largest N accepted")
    _pfp_opts(c)
    _fasta_opts(c)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("stats", help="sigma, n, r and n/r of an eBWT or FASTA file")
    s.add_argument("input", help="<base> with <base>.ebwt, a .ebwt file, or FASTA")
    _pfp_opts(s)
    _fasta_opts(s)
    s.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FastaError, InversionError, PfpError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
