"""Command-line interface: expand series, scan for congruences, run the
identity suites, verify cusp leading-term identities, and report criterion
applicability.

Exit codes: 0 success, 2 usage/grammar error, 3 unknown catalog name,
4 insufficient budget, 5 identity-suite failure, 6 cusp-identity failure.
Stdout carries only the declared output format; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from fractions import Fraction
from math import gcd

from .arith import ExactScalar
from .generators import (
    EtaQuotientSpec,
    UnknownSeries,
    build_series,
    catalog_entry,
)
from .qseries import INTEGER, RATIONAL, QSeries, integer_mod
from .scanner import (
    Applicability,
    InsufficientPrecision,
    ScanReport,
    scan,
    sturm_bound,
    theorem_applies,
)
from .transform import (
    DEFAULT_SEED,
    Progression,
    cusp_half_leading,
    cusp_one_leading,
    identity_suites,
    is_good,
)

CACHE_ENV = "QSIFT_CACHE_DIR"

_GRAMMAR = re.compile(r"^\d+\^-?\d+(,\d+\^-?\d+)*$")


class GrammarError(ValueError):
    pass


def parse_series_spec(text: str) -> EtaQuotientSpec | str:
    """A series specifier is a catalog name or an inline eta-quotient in the
    grammar ``delta^exponent[,delta^exponent...]``, e.g. ``1^-4,2^5,4^-2``."""
    if _GRAMMAR.match(text):
        factors = []
        for item in text.split(","):
            delta, _, exp = item.partition("^")
            factors.append((int(delta), int(exp)))
        try:
            return EtaQuotientSpec(tuple(factors))
        except ValueError as exc:
            raise GrammarError(str(exc)) from exc
    if any(ch in text for ch in "^,"):
        raise GrammarError(f"malformed eta-quotient spec {text!r}")
    catalog_entry(text)  # raises UnknownSeries
    return text


# ----------------------------------------------------------------- caching


def _cache_path(cache_dir: str, key: dict) -> str:
    digest = hashlib.sha256(
        json.dumps(key, sort_keys=True).encode()
    ).hexdigest()[:24]
    return os.path.join(cache_dir, f"qsift-{digest}.json")


def _series_key(spec_text: str, limit: int, modulus: int | None) -> dict:
    ring = "Q" if spec_text.startswith("theta_") else (
        "Z" if modulus is None else f"Z/{modulus}"
    )
    return {"series": spec_text, "ring": ring, "limit": limit}


def _load_cached(cache_dir: str, key: dict) -> QSeries | None:
    path = _cache_path(cache_dir, key)
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("key") != key:
            return None
        return _series_from_payload(payload)
    except (OSError, ValueError, KeyError):
        return None


def _store_cached(cache_dir: str, key: dict, series: QSeries) -> None:
    try:
        os.makedirs(cache_dir, exist_ok=True)
        payload = _series_payload(series, key["series"], key.get("modulus"))
        payload["key"] = key
        with open(_cache_path(cache_dir, key), "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
    except OSError as exc:
        print(f"cache write failed: {exc}", file=sys.stderr)


def _series_payload(series: QSeries, name: str, modulus: int | None) -> dict:
    if series.ring.kind == "rat":
        coeffs = [str(c) for c in series.coeffs]
    else:
        coeffs = list(series.coeffs)
    return {
        "series": name,
        "offset": str(series.offset),
        "ring": str(series.ring),
        "modulus": series.ring.modulus,
        "coefficients": coeffs,
    }


def _series_from_payload(payload: dict) -> QSeries:
    ring_text = payload["ring"]
    if ring_text == "Z":
        ring = INTEGER
    elif ring_text == "Q":
        ring = RATIONAL
    else:
        ring = integer_mod(int(ring_text.split("/")[1]))
    offset = Fraction(payload["offset"])
    if ring.kind == "rat":
        coeffs = tuple(Fraction(c) for c in payload["coefficients"])
    else:
        coeffs = tuple(int(c) for c in payload["coefficients"])
    return QSeries(offset, coeffs, ring)


def _get_series(
    spec: EtaQuotientSpec | str,
    spec_text: str,
    limit: int,
    modulus: int | None,
    cache_dir: str | None,
) -> QSeries:
    key = _series_key(spec_text, limit, modulus)
    key["modulus"] = modulus
    if cache_dir:
        cached = _load_cached(cache_dir, key)
        if cached is not None:
            return cached
    series = build_series(spec, limit, modulus)
    if cache_dir:
        _store_cached(cache_dir, key, series)
    return series


# ---------------------------------------------------------------- commands


def _cmd_expand(args) -> int:
    try:
        spec = parse_series_spec(args.spec)
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownSeries:
        print(f"error: unknown series {args.spec!r}", file=sys.stderr)
        return 3
    try:
        series = _get_series(spec, args.spec, args.limit, args.mod, args.cache_dir)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(_series_payload(series, args.spec, args.mod), indent=2))
    else:
        print("n,exponent,coefficient")
        for n, c in enumerate(series.coeffs):
            print(f"{n},{series.offset + n},{c}")
    return 0


def _cmd_scan(args) -> int:
    try:
        spec = parse_series_spec(args.spec)
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownSeries:
        print(f"error: unknown series {args.spec!r}", file=sys.stderr)
        return 3
    single = None
    if args.progression:
        try:
            m_text, _, t_text = args.progression.partition(":")
            single = Progression(int(m_text), int(t_text))
        except ValueError:
            print(
                f"error: --progression wants m:t, got {args.progression!r}",
                file=sys.stderr,
            )
            return 2
    if single is None and args.m_max is None:
        print("error: need --m-max or --progression", file=sys.stderr)
        return 2
    m_max = single.m if single else args.m_max
    if args.budget < m_max:
        print(
            f"error: budget {args.budget} cannot cover m_max {m_max}",
            file=sys.stderr,
        )
        return 4
    try:
        series = _get_series(spec, args.spec, args.budget, args.mod, args.cache_dir)
        report = scan(series, args.mod, m_max, series_name=args.spec)
    except (InsufficientPrecision, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    if single:
        verdicts = tuple(
            v for v in report.verdicts if v.m == single.m and v.t == single.t
        )
        report = ScanReport(
            report.series_name, report.modulus, single.m, report.coeff_budget, verdicts
        )
    print(report.to_json() if args.format == "json" else report.to_csv(), end="")
    if args.format == "json":
        print()
    return 0


def _cmd_identities(args) -> int:
    results = identity_suites(
        seed=args.seed, trials=args.trials, negative_control=args.negative_control
    )
    failed = False
    for result in results:
        status = "pass" if result.passed else "FAIL"
        print(f"{result.name}: {result.trials - result.failures}/{result.trials} {status}")
        if not result.passed:
            failed = True
            print(
                f"  first failing instance: {result.first_failure}", file=sys.stderr
            )
    return 5 if failed else 0


def _good_ts_mod(Q: int, kind: str) -> list[int]:
    if Q == 1:
        return [0]
    return [t for t in range(Q) if is_good(Progression(Q, t), kind)]


def _cmd_cusp_check(args, parser) -> int:
    Q = args.Q
    if args.kind == "f":
        if Q < 1 or gcd(Q, 6) != 1:
            parser.error(f"--Q must be coprime to 6 for kind f (got {Q})")
        ts = [args.t] if args.t is not None else _good_ts_mod(Q, "f")
        expected = ExactScalar(Fraction(1, Q) ** (12 * Q))
        leading = cusp_half_leading
    else:
        if Q < 1 or Q % 3 == 0:
            parser.error(f"--Q must be coprime to 3 for kind omega (got {Q})")
        ts = [args.t] if args.t is not None else _good_ts_mod(Q, "omega")
        sign = Fraction(1, 2) if Q % 2 else Fraction(0)
        expected = ExactScalar(Fraction(1, 2 * Q) ** (12 * Q), 1, sign)
        leading = cusp_one_leading
    bad = 0
    for t in ts:
        value = leading(Q, t) ** (24 * Q)
        ok = value == expected
        print(f"kind={args.kind} Q={Q} t={t} {'ok' if ok else 'MISMATCH'}")
        if not ok:
            bad += 1
            print(f"  got {value}, expected {expected}", file=sys.stderr)
    return 6 if bad else 0


def _cmd_info(args) -> int:
    try:
        spec = parse_series_spec(args.spec)
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownSeries:
        print(f"error: unknown series {args.spec!r}", file=sys.stderr)
        return 3
    if isinstance(spec, str):
        entry = catalog_entry(spec)
        if not isinstance(entry.spec, EtaQuotientSpec):
            print(
                f"error: {spec!r} is not an eta-quotient; no applicability report",
                file=sys.stderr,
            )
            return 2
        eq = entry.spec
    else:
        eq = spec
    report: Applicability = theorem_applies(eq, args.ell, args.m)
    from .transform import BDivisibleBySix, q_divisor

    try:
        qdiv = q_divisor(args.m, eq.B)
    except BDivisibleBySix:
        qdiv = None
    info = {
        "series": args.spec,
        "factors": [list(f) for f in eq.factors],
        "B": eq.B,
        "weight": str(Fraction(eq.weight_twice, 2)),
        "level": eq.level,
        "pole_at_infinity": eq.B < 0,
        "q_divisor": qdiv,
        "sturm_budget_hint": sturm_bound(abs(eq.weight_twice), eq.level),
        "ell": args.ell,
        "m": args.m,
        "applies": report.applies,
        "reasons": list(report.reasons),
    }
    print(json.dumps(info, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsift",
        description="exact q-series expansion and congruence scanning",
    )
    parser.add_argument(
        "--cache-dir",
        default=os.environ.get(CACHE_ENV),
        help=f"coefficient cache directory (default: ${CACHE_ENV})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print series coefficients")
    p_expand.add_argument("spec", help="catalog name or eta-quotient grammar")
    p_expand.add_argument("--limit", type=int, default=10)
    p_expand.add_argument("--mod", type=int, default=None)
    p_expand.add_argument("--format", choices=("json", "csv"), default="json")

    p_scan = sub.add_parser("scan", help="scan progressions for congruences")
    p_scan.add_argument("spec")
    p_scan.add_argument("--mod", type=int, required=True)
    p_scan.add_argument("--m-max", type=int, default=None)
    p_scan.add_argument("--budget", type=int, default=20000)
    p_scan.add_argument("--format", choices=("json", "csv"), default="json")
    p_scan.add_argument(
        "--progression",
        default=None,
        metavar="m:t",
        help="report a single progression instead of all m <= m_max",
    )

    p_ident = sub.add_parser("identities", help="run the exact identity suites")
    p_ident.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_ident.add_argument("--trials", type=int, default=100)
    p_ident.add_argument(
        "--negative-control",
        action="store_true",
        help="run the deliberately corrupted suite (expected to fail)",
    )

    p_cusp = sub.add_parser("cusp-check", help="verify cusp leading-term identities")
    p_cusp.add_argument("kind", choices=("f", "omega"))
    p_cusp.add_argument("--Q", type=int, required=True)
    p_cusp.add_argument("--t", type=int, default=None)

    p_info = sub.add_parser("info", help="eta-quotient data and applicability")
    p_info.add_argument("spec")
    p_info.add_argument("--ell", type=int, required=True, choices=(2, 3))
    p_info.add_argument("--m", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "expand":
        return _cmd_expand(args)
    if args.command == "scan":
        return _cmd_scan(args)
    if args.command == "identities":
        return _cmd_identities(args)
    if args.command == "cusp-check":
        return _cmd_cusp_check(args, parser)
    if args.command == "info":
        return _cmd_info(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
