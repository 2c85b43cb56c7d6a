# lrc/cli.py

from __future__ import annotations
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from lrc import analysis, codec, sim
from lrc.code_params import (
    FamilyParams,
    design_code,
    family_rate_limit,
    family_table,
    good_split_check,
    spec_from_json,
    spec_to_json,
)
from lrc.config import DEFAULTS
from lrc.errors import FormatError, InvalidInput, LrcError, NotGood
from lrc.number_field import field_from_json, field_to_json, nf_new
from lrc.prime_tools import (
    certificate_to_json,
    construct_field,
    next_split_primes,
    split_prime_to_json,
)

logger = logging.getLogger(__name__)


# ─── helpers ───────────────────────────────────────────────────────────

def _read_json(path: str) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"[{path}] {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"[{path}] invalid JSON: {exc}") from exc


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InvalidInput(f"[{path}] {exc.strerror}") from exc


def _write(path: Optional[str], payload: Any) -> None:
    if isinstance(payload, (dict, list)):
        payload = json.dumps(payload, indent=2) + "\n"
    if path is None or path == "-":
        if isinstance(payload, bytes):
            sys.stdout.buffer.write(payload)
        else:
            sys.stdout.write(payload)
        return
    target = Path(path)
    if isinstance(payload, bytes):
        target.write_bytes(payload)
    else:
        target.write_text(payload)


def _emit(args: argparse.Namespace, obj: Any, table: Optional[pd.DataFrame] = None) -> None:
    if args.json or table is None:
        print(json.dumps(obj, indent=2))
    else:
        print(table.to_string(index=False))


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"[{text}] expected comma-separated integers") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"[{text}] expected a rational such as 1/2") from exc


def _nodes(text: str) -> List[Tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            g, k = item.split(":")
            out.append((int(g), int(k)))
        except ValueError as exc:
            raise InvalidInput(f"[{item}] expected group:slot") from exc
    return out


def _load_field(args: argparse.Namespace):
    if args.min_poly:
        return nf_new(_int_list(args.min_poly), allow_uncertified=args.allow_uncertified)
    if not args.field:
        raise InvalidInput("[field] pass --field FILE or --min-poly b0,b1,...")
    return field_from_json(_read_json(args.field), allow_uncertified=args.allow_uncertified)


def _load_spec(args: argparse.Namespace):
    return spec_from_json(_read_json(args.spec), allow_uncertified=args.allow_uncertified)


# ─── subcommands ───────────────────────────────────────────────────────

def cmd_design(args: argparse.Namespace) -> int:
    field = _load_field(args)
    if args.primes.startswith("auto:"):
        count = (_int_list(args.primes.split(":", 1)[1]) or [0])[0]
        primes = next_split_primes(field, count, 2, ceiling=args.ceiling)
    else:
        primes = _int_list(args.primes)
    good, margin = good_split_check(field, args.r, args.s, args.M, primes)
    if not good:
        print(f"not a good split code: margin {margin} (~{float(margin):.6g}) <= 1", file=sys.stderr)
        return NotGood.exit_code
    spec = design_code(field, args.r, args.s, args.M, primes)
    _write(args.out, spec_to_json(spec))
    print(f"good split code: n={spec.n} m={spec.m} dist_lb={spec.dist_lb} "
          f"size=M^{spec.size_exponent} margin~{float(margin):.6g}", file=sys.stderr)
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    field = _load_field(args)
    fp = FamilyParams(field=field, r=field.degree - 1, s=args.s,
                      c=_fraction(args.c), k=_fraction(args.k))
    rows = family_table(fp, _int_list(args.ells))
    limit = family_rate_limit(fp)
    for row in rows:
        row["rate_minus_limit"] = row["rate"] - float(limit)
    _emit(args, {"limit": str(limit), "rows": rows}, pd.DataFrame(rows))
    return 0


def cmd_construct_field(args: argparse.Namespace) -> int:
    cert = construct_field(args.degree, _int_list(args.primes))
    field = nf_new(cert.min_poly_coeffs())
    _write(args.out, {"field": field_to_json(field), "certificate": certificate_to_json(cert)})
    return 0


def cmd_find_primes(args: argparse.Namespace) -> int:
    field = _load_field(args)
    found = next_split_primes(field, args.count, args.start, ceiling=args.ceiling)
    rows = [split_prime_to_json(sp) for sp in found]
    _emit(args, rows, pd.DataFrame(rows))
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    cws = codec.encode_bytes(spec, _read_bytes(args.input))
    if args.erase:
        nodes = _nodes(args.erase)
        cws = [cw.erase_many(nodes) for cw in cws]
    _write(args.out, codec.codewords_to_bytes(cws))
    logger.info(f"[encode] {len(cws)} stripes written")
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    cws = codec.codewords_from_bytes(_read_bytes(args.input))
    _write(args.out, codec.decode_bytes(spec, cws))
    return 0


def cmd_repair(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    cws = codec.codewords_from_bytes(_read_bytes(args.input))
    if not 0 <= args.stripe < len(cws):
        raise InvalidInput(f"[stripe={args.stripe}] file holds {len(cws)} codewords")
    symbol = codec.local_recover(spec, cws[args.stripe], args.group, args.slot)
    _emit(args, {"group": args.group, "slot": args.slot, "symbol": symbol},
          pd.DataFrame([{"group": args.group, "slot": args.slot, "symbol": symbol}]))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    cws = codec.codewords_from_bytes(_read_bytes(args.input))
    rows = [{"stripe": i, "valid": codec.verify(spec, cw)} for i, cw in enumerate(cws)]
    _emit(args, rows, pd.DataFrame(rows))
    return 0 if all(row["valid"] for row in rows) else 1


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    report = analysis.analyze(spec, force=args.force, threads=args.threads, progress=args.progress)
    report["injective"] = report["distinct"] == spec.size
    if args.locality:
        report["locality"] = analysis.locality_exhaustive(
            spec, force=args.force, threads=args.threads, progress=args.progress)
    _emit(args, report, analysis.report_table(report))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.scenario:
        sc = sim.scenario_from_json(_read_json(args.scenario), Path(args.scenario).parent)
    elif args.spec:
        sc = sim.random_scenario(_load_spec(args), args.stripes, args.failures, args.seed)
    else:
        raise InvalidInput("[simulate] pass --scenario FILE or --spec FILE for a random timeline")
    report = sim.run_scenario(sc, threads=args.threads)
    payload = sim.report_to_json(report)
    if args.out:
        _write(args.out, payload)
    summary = {k: v for k, v in payload.items() if k != "log"}
    if args.json:
        print(json.dumps(summary if args.out else payload, indent=2))
    else:
        print(sim.log_table(report).to_string(index=False))
        print(pd.DataFrame([summary]).to_string(index=False))
    return 0


# ─── parser ────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=DEFAULTS["default_threads"])
    common.add_argument("--seed", type=int, default=DEFAULTS["default_seed"])
    common.add_argument("--progress", action="store_true", help="show progress bars")
    common.add_argument("--allow-uncertified", action="store_true",
                        help="accept fields without a mod-p irreducibility certificate")

    field_src = argparse.ArgumentParser(add_help=False)
    field_src.add_argument("--field", help="field JSON file")
    field_src.add_argument("--min-poly", help="b0,b1,...,b_{d-1} of the monic minimal polynomial")
    field_src.add_argument("--ceiling", type=int, default=DEFAULTS["split_search_ceiling"])

    parser = argparse.ArgumentParser(prog="lrc", description="Number-field locally recoverable codes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", parents=[common, field_src], help="design a good split code")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--primes", required=True, help="auto:L or p1,p2,...")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_design)

    p = sub.add_parser("family", parents=[common, field_src], help="members of the almost good family")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--c", required=True, help="rational in (0,1), e.g. 1/2")
    p.add_argument("--k", required=True, help="positive rational with k^(r+1) C_alpha < 1")
    p.add_argument("--ells", default="8,16,32,64")
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser("construct-field", parents=[common], help="field with prescribed split primes")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--primes", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_construct_field)

    p = sub.add_parser("find-primes", parents=[common, field_src], help="list totally split primes")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--start", type=int, default=2)
    p.set_defaults(handler=cmd_find_primes)

    for name, handler, helptext in (("encode", cmd_encode, "encode a file into codewords"),
                                    ("decode", cmd_decode, "decode codewords back into a file"),
                                    ("verify", cmd_verify, "check stored codewords")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--spec", required=True)
        p.add_argument("--in", dest="input", required=True)
        if name != "verify":
            p.add_argument("--out")
        if name == "encode":
            p.add_argument("--erase", help="group:slot,... to erase in every stripe")
        p.set_defaults(handler=handler)

    p = sub.add_parser("repair", parents=[common], help="local repair of one symbol")
    p.add_argument("--spec", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--group", type=int, required=True)
    p.add_argument("--slot", type=int, required=True)
    p.add_argument("--stripe", type=int, default=0)
    p.set_defaults(handler=cmd_repair)

    p = sub.add_parser("analyze", parents=[common], help="exhaustive distance report")
    p.add_argument("--spec", required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--locality", action="store_true", help="also run the locality exhaustion")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("simulate", parents=[common], help="replay a failure scenario")
    p.add_argument("--scenario")
    p.add_argument("--spec", help="generate a random scenario for this spec")
    p.add_argument("--stripes", type=int, default=4)
    p.add_argument("--failures", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns 0 ok, 1 domain failure, 2 usage error, 3 internal error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.handler(args)
    except LrcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
