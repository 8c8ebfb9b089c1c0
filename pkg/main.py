"""
rsl-stems - command line front end

Hex seed codec, stems with finite demerit factors, limiting values,
exhaustive scans, orbits, and the all-ones / (1,-1,-1,1) family.

Usage:
    python main.py decode 149B --len 14
    python main.py limits --seed 0033C5A566 --len 40
    python main.py limits --seed 0033C66A5A --seed2 0F03369955 --len 40
    python main.py scan adf --len 8 --format pretty
    python main.py scan psc --len 6 --workers 4 --checkpoint runs/psc6.ckpt --resume
    python main.py elaine --k 2

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd
from dotenv import load_dotenv
from pydantic import BaseModel

from app.asymptotics import elaine_closed_form, elaine_pair, finite_cdf_closed_form, limiting_adf, limiting_cdf
from app.correlation import adf, cdf, format_decimal, format_fraction, format_surd
from app.exceptions import BadSign, RslError
from app.polyring import LittlewoodSeq, alternate, mul, norm2_sq, norm4_4
from app.recursion import StemSpec, parse_signs, sign_products, stem
from app.symmetry import group_relations_check, orbit, orbit_pair
from evaluation.scan_report import Objective, ScanReport, to_csv, to_pretty
from evaluation.scan_runner import PARTITION_BITS, ScanRunner, verify_pair, verify_seed
from parsing.hex_codec import encode_bits, encode_hex, parse_seed

load_dotenv()
logger = logging.getLogger(__name__)

# Constants
LOG_LEVEL = os.getenv("RSL_LOG_LEVEL", "INFO")
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
FORMATS = ("json", "csv", "pretty")


# Response models
class CodecResponse(BaseModel):
    hex: str
    length: int
    coefficients: List[int]


class StemMember(BaseModel):
    n: int
    length: int
    hex: str
    coefficients: List[int]
    adf: str
    adf_decimal: str
    cdf: Optional[str] = None
    cdf_decimal: Optional[str] = None


class LimitsResponse(BaseModel):
    length: int
    seed_f: str
    seed_g: Optional[str] = None
    adf_f: str
    adf_f_decimal: str
    adf_g: Optional[str] = None
    cdf: Optional[str] = None
    psc: Optional[str] = None
    psc_decimal: Optional[str] = None
    pursley_sarwate_bound: Optional[bool] = None


class OrbitResponse(BaseModel):
    length: int
    canonical: str
    size: int
    members: List[str]


class ElaineResponse(BaseModel):
    k: int
    length: int
    seed_f: str
    seed_g: str
    norm4_4_f: str
    norm4_4_g: str
    alt_norm_f: str
    alt_norm_g: str
    limiting_adf_f: str
    limiting_adf_g: str
    limiting_cdf: str
    limiting_cdf_decimal: str
    matches_closed_form: bool


class RelationsResponse(BaseModel):
    length: int
    relations: List[str]
    seeds_checked: int
    pairs_checked: int
    pairs_exhaustive: bool


# --- rendering ------------------------------------------------------------

def _render_rows(title: str, rows: List[Dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2)
    if fmt == "csv":
        flat = [{k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()} for row in rows]
        return pd.DataFrame(flat).to_csv(index=False).rstrip("\n")
    lines = ["=" * 80, title, "=" * 80]
    for row in rows:
        for key, value in row.items():
            if value is None:
                continue
            if isinstance(value, list):
                value = " ".join(map(str, value))
            lines.append(f"{key + ':':<24}{value}")
        lines.append("")
    return "\n".join(lines).rstrip("\n")


def render(title: str, models: List[BaseModel], fmt: str) -> str:
    """Render pydantic responses in the requested format."""
    return _render_rows(title, [m.model_dump() for m in models], fmt)


def render_report(report: ScanReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return to_csv([report]).rstrip("\n")
    return to_pretty(report)


# --- commands -------------------------------------------------------------

def _codec_response(seq: LittlewoodSeq) -> CodecResponse:
    return CodecResponse(hex=encode_hex(seq).text, length=seq.length, coefficients=list(seq.coefficients()))


def cmd_decode(args) -> str:
    return render("DECODE", [_codec_response(parse_seed(args.hex, args.len))], args.format)


def cmd_encode(args) -> str:
    try:
        coeffs = [int(c) for c in args.coeffs.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--coeffs must be a list of +1/-1 values, got {args.coeffs!r}")
    return render("ENCODE", [_codec_response(LittlewoodSeq.from_coefficients(coeffs))], args.format)


def cmd_stem(args) -> str:
    """Stem members of one seed, or of two seeds with their CDFs."""
    signs = args.signs if args.signs is not None else (1,) * args.depth
    f0 = parse_seed(args.seed, args.len).to_poly()
    members_f = stem(StemSpec(f0, signs), args.depth)

    members_g, products = None, None
    if args.seed2 is not None:
        signs2 = args.signs2 if args.signs2 is not None else signs
        g0 = parse_seed(args.seed2, args.len).to_poly()
        members_g = stem(StemSpec(g0, signs2), args.depth)
        products = sign_products(signs[:args.depth], signs2[:args.depth])

    rows = []
    for n, f in enumerate(members_f):
        seq = LittlewoodSeq.from_poly(f)
        value = adf(f)
        row = StemMember(
            n=n, length=seq.length, hex=encode_hex(seq).text, coefficients=list(seq.coefficients()),
            adf=format_fraction(value), adf_decimal=format_decimal(value),
        )
        if members_g is not None:
            cross = cdf(f, members_g[n])
            closed = finite_cdf_closed_form(members_f[0], members_g[0], n, products)
            if cross != closed:
                logger.warning(f"n={n}: direct CDF {cross} differs from closed form {closed}")
            row.cdf, row.cdf_decimal = format_fraction(cross), format_decimal(cross)
        rows.append(row)
    return render(f"STEM - seed {args.seed}, length {args.len}", rows, args.format)


def cmd_limits(args) -> str:
    if args.seed2 is None:
        limits = verify_seed(args.seed, args.len)
        response = LimitsResponse(
            length=args.len, seed_f=args.seed,
            adf_f=format_fraction(limits.adf_f), adf_f_decimal=format_decimal(limits.adf_f),
        )
    else:
        limits = verify_pair(args.seed, args.seed2, args.len)
        value = limits.psc
        response = LimitsResponse(
            length=args.len, seed_f=args.seed, seed_g=args.seed2,
            adf_f=format_fraction(limits.adf_f), adf_f_decimal=format_decimal(limits.adf_f),
            adf_g=format_fraction(limits.adf_g),
            cdf=format_fraction(limits.cdf),
            psc=format_surd(value.cdf, value.radicand),
            psc_decimal=format_decimal(value.psc_float),
            pursley_sarwate_bound=value.meets_bound(),
        )
    return render(f"LIMITS - length {args.len}", [response], args.format)


def cmd_scan(args) -> str:
    """Run one scan objective and render its report."""
    runner = ScanRunner(
        args.objective, args.len, workers=args.workers,
        checkpoint_path=args.checkpoint, partition_bits=args.partition_bits,
    )
    report = runner.run(resume=args.resume)
    return render_report(report, args.format)


def cmd_orbit(args) -> str:
    f = parse_seed(args.seed, args.len)
    if args.seed2 is None:
        record = orbit(f)
        canonical = encode_hex(record.canonical).text
        members = [encode_hex(m).text for m in record.members]
    else:
        record = orbit_pair((f, parse_seed(args.seed2, args.len)))
        cf, cg = record.canonical
        canonical = f"{encode_bits(cf.bits, args.len)},{encode_bits(cg.bits, args.len)}"
        members = [f"{encode_bits(a.bits, args.len)},{encode_bits(b.bits, args.len)}" for a, b in record.members]
    response = OrbitResponse(length=args.len, canonical=canonical, size=record.size, members=members)
    return render(f"ORBIT - length {args.len}", [response], args.format)


def cmd_elaine(args) -> str:
    f0, g0 = elaine_pair(args.k)
    closed = elaine_closed_form(args.k)
    computed = {
        "norm4_4_f": Fraction(norm4_4(f0)),
        "norm4_4_g": Fraction(norm4_4(g0)),
        "alt_norm_f": Fraction(norm2_sq(mul(f0, alternate(f0)))),
        "alt_norm_g": Fraction(norm2_sq(mul(g0, alternate(g0)))),
        "limiting_adf": limiting_adf(f0),
        "limiting_cdf": limiting_cdf(f0, g0),
    }
    matches = all(computed[key] == closed[key] for key in closed)
    if not matches:
        logger.warning(f"k={args.k}: computed values {computed} differ from closed form {closed}")
    length = len(f0)
    response = ElaineResponse(
        k=args.k, length=length,
        seed_f=encode_hex(LittlewoodSeq.from_poly(f0)).text,
        seed_g=encode_hex(LittlewoodSeq.from_poly(g0)).text,
        norm4_4_f=format_fraction(computed["norm4_4_f"]),
        norm4_4_g=format_fraction(computed["norm4_4_g"]),
        alt_norm_f=format_fraction(computed["alt_norm_f"]),
        alt_norm_g=format_fraction(computed["alt_norm_g"]),
        limiting_adf_f=format_fraction(computed["limiting_adf"]),
        limiting_adf_g=format_fraction(limiting_adf(g0)),
        limiting_cdf=format_fraction(computed["limiting_cdf"]),
        limiting_cdf_decimal=format_decimal(computed["limiting_cdf"]),
        matches_closed_form=matches,
    )
    return render(f"ELAINE PAIR - k = {args.k}", [response], args.format)


def cmd_relations(args) -> str:
    report = group_relations_check(args.len, pairs=not args.no_pairs, seed=args.sample_seed)
    response = RelationsResponse(
        length=report.length, relations=list(report.relations), seeds_checked=report.seeds_checked,
        pairs_checked=report.pairs_checked, pairs_exhaustive=report.pairs_exhaustive,
    )
    return render(f"GROUP RELATIONS - length {args.len}", [response], args.format)


# --- argument parsing -----------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _signs(text: str) -> Tuple[int, ...]:
    try:
        return parse_signs(text)
    except BadSign:
        raise argparse.ArgumentTypeError(f"expected a string of '+' and '-' signs, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default="json", help='Output format')
    common.add_argument('--verbose', action='store_true', help='Debug logging')

    parser = argparse.ArgumentParser(
        prog="rsl-stems",
        description='Rudin-Shapiro-like polynomial stems: demerit factors, limits and exhaustive seed scans',
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser('decode', parents=[common], help='Hex seed to coefficients')
    p.add_argument('hex', help='Hexadecimal seed code')
    p.add_argument('--len', type=_positive_int, required=True, help='Sequence length')
    p.set_defaults(handler=cmd_decode)

    p = sub.add_parser('encode', parents=[common], help='Coefficients to hex seed')
    p.add_argument('--coeffs', required=True, help='Comma or space separated +1/-1 coefficients')
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser('stem', parents=[common], help='Stem members with finite ADF (and CDF)')
    p.add_argument('--seed', required=True, help='Hex seed f0')
    p.add_argument('--seed2', help='Hex seed g0 for a second stem')
    p.add_argument('--len', type=_positive_int, required=True, help='Seed length')
    p.add_argument('--depth', type=_nonnegative_int, default=3, help='Number of recursion steps')
    p.add_argument('--signs', type=_signs, help="Signs for f, e.g. '+--+'; default all '+'")
    p.add_argument('--signs2', type=_signs, help='Signs for g; default same as --signs')
    p.set_defaults(handler=cmd_stem)

    p = sub.add_parser('limits', parents=[common], help='Limiting ADF / CDF / PSC of a seed or seed pair')
    p.add_argument('--seed', required=True, help='Hex seed f0')
    p.add_argument('--seed2', help='Hex seed g0')
    p.add_argument('--len', type=_positive_int, required=True, help='Seed length')
    p.set_defaults(handler=cmd_limits)

    p = sub.add_parser('scan', parents=[common], help='Exhaustive minimum search')
    p.add_argument('objective', choices=[o.value for o in Objective], help='Scan objective')
    p.add_argument('--len', type=_positive_int, required=True, help='Seed length')
    p.add_argument('--workers', type=_positive_int, default=None, help='Worker processes (default RSL_WORKERS or CPU count)')
    p.add_argument('--checkpoint', help='Checkpoint file')
    p.add_argument('--resume', action='store_true', help='Continue from --checkpoint')
    p.add_argument('--partition-bits', type=_nonnegative_int, default=PARTITION_BITS, help='Seed-space prefix width')
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser('orbit', parents=[common], help='Orbit of a seed or seed pair')
    p.add_argument('--seed', required=True, help='Hex seed f')
    p.add_argument('--seed2', help='Hex seed g')
    p.add_argument('--len', type=_positive_int, required=True, help='Seed length')
    p.set_defaults(handler=cmd_orbit)

    p = sub.add_parser('elaine', parents=[common], help='All-ones / (1,-1,-1,1) seed pair of length 4k')
    p.add_argument('--k', type=_positive_int, required=True, help='Block count k')
    p.set_defaults(handler=cmd_elaine)

    p = sub.add_parser('relations', parents=[common], help='Check symmetry group relations')
    p.add_argument('--len', type=_positive_int, required=True, help='Sequence length')
    p.add_argument('--no-pairs', action='store_true', help='Skip the pair group')
    p.add_argument('--sample-seed', type=int, default=0, help='RNG seed for sampled checks')
    p.set_defaults(handler=cmd_relations)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "scan" and args.resume and not args.checkpoint:
        parser.error("--resume needs --checkpoint")
    if args.command == "stem" and args.signs2 is not None and args.seed2 is None:
        parser.error("--signs2 needs --seed2")
    if args.command == "stem":
        for flag, signs in (('--signs', args.signs), ('--signs2', args.signs2)):
            if signs is not None and len(signs) < args.depth:
                parser.error(f"{flag} has {len(signs)} signs, --depth {args.depth} needs {args.depth}")

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        output = args.handler(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except (RslError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"[ERROR] {e}", file=sys.stderr)
        return 1

    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
