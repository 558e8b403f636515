"""Operator front door: run the pipeline offline, manage fixtures, launch
the service.

Exit codes: 0 success, 1 usage error, 2 data error (bad input, unknown
ids, failed identification), 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import date
from pathlib import Path
from typing import Optional

from devrisk import demo as demo_mod
from devrisk.errors import DataError, IdentificationFailed
from devrisk.identify.pipeline import identify_device
from devrisk.identify.skew import load_profiles, load_trace
from devrisk.identify.webmatch import fetch_live_corpus, load_corpus, load_signatures
from devrisk.model import Color, canonical_json
from devrisk.score import ScoringConfig
from devrisk.service.config import ServiceConfig
from devrisk.service.engine import STATUS_OK, Engine
from devrisk.service.store import Store

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

_ANSI = {Color.GREEN.value: "\x1b[32m", Color.YELLOW.value: "\x1b[33m", Color.RED.value: "\x1b[31m"}
_RESET = "\x1b[0m"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def colorize(color_word: str, use_ansi: bool) -> str:
    word = color_word.upper()
    if use_ansi and color_word in _ANSI:
        return f"{_ANSI[color_word]}{word}{_RESET}"
    return word


def _scoring_from_args(args) -> ScoringConfig:
    base = ScoringConfig()
    return ScoringConfig(
        severity_low_max=args.severity_low_max if args.severity_low_max is not None else base.severity_low_max,
        severity_medium_max=args.severity_medium_max if args.severity_medium_max is not None else base.severity_medium_max,
        patch_fast_max_days=args.patch_fast_max if args.patch_fast_max is not None else base.patch_fast_max_days,
        patch_medium_max_days=args.patch_medium_max if args.patch_medium_max is not None else base.patch_medium_max_days,
        trend_window_years=args.trend_window_years if args.trend_window_years is not None else base.trend_window_years,
    )


def _engine(args) -> Engine:
    data_dir = Path(args.data_dir)
    store = Store(data_dir / "store.json")
    return Engine(store, data_dir=data_dir, scoring=_scoring_from_args(args))


def build_parser() -> _Parser:
    parser = _Parser(prog="devrisk", description=__doc__)
    parser.add_argument(
        "--data-dir", default="./data",
        help="directory for the store and relative fixture paths (default ./data)",
    )
    parser.add_argument("--severity-low-max", type=float, default=None)
    parser.add_argument("--severity-medium-max", type=float, default=None)
    parser.add_argument("--patch-fast-max", type=float, default=None)
    parser.add_argument("--patch-medium-max", type=float, default=None)
    parser.add_argument("--trend-window-years", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load reference data into the store")
    p_ingest.add_argument(
        "kind", choices=["feed", "manifests", "signatures", "profiles", "catalog"]
    )
    p_ingest.add_argument("path")

    p_identify = sub.add_parser("identify", help="identify a device from fixtures")
    p_identify.add_argument("--corpus", help="web corpus JSON file")
    p_identify.add_argument("--trace", help="timestamp trace (JSON or CSV)")
    p_identify.add_argument("--fetch", metavar="HOST", help="fetch a live corpus (demo only)")
    p_identify.add_argument("--signatures", help="signature file (default: ingested)")
    p_identify.add_argument("--profiles", help="profile file (default: ingested)")

    p_assess = sub.add_parser("assess", help="assess a registered device")
    p_assess.add_argument("--device", required=True)
    p_assess.add_argument("--as-of", required=True, help="ISO date (YYYY-MM-DD)")
    p_assess.add_argument("--format", choices=["json", "table"], default="table")

    p_view = sub.add_parser("view", help="print a device's view payload")
    p_view.add_argument("--device", required=True)
    p_view.add_argument("--version", choices=["guided", "rich"], required=True)

    p_compare = sub.add_parser("compare", help="compare catalog models in a category")
    p_compare.add_argument("--category", required=True)
    p_compare.add_argument("--as-of", default=None)
    p_compare.add_argument("--format", choices=["json", "table"], default="table")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", default=None, help="JSON or TOML config file")

    p_demo = sub.add_parser("demo", help="run the six-device study scenario")
    p_demo.add_argument("--as-of", default=None, help="override the fixture date")
    p_demo.add_argument("--format", choices=["json", "table"], default="table")

    return parser


def cmd_ingest(args) -> int:
    engine = _engine(args)
    count = engine.ingest(args.kind, args.path)
    print(f"ingested {count} {args.kind} entries")
    return EXIT_OK


def cmd_identify(args) -> int:
    engine = _engine(args)
    signatures = (
        load_signatures(args.signatures) if args.signatures else engine.signatures()
    )
    profiles = load_profiles(args.profiles) if args.profiles else engine.profiles()
    corpus = trace = None
    if args.fetch:
        corpus = fetch_live_corpus(args.fetch)
    elif args.corpus:
        corpus = load_corpus(args.corpus)
    if args.trace:
        trace = load_trace(args.trace)
    if corpus is None and trace is None:
        raise _UsageError("identify needs --corpus, --trace or --fetch")

    def latest(vendor: str, model: str) -> Optional[str]:
        try:
            return engine.manifests().latest(vendor, model).identity.firmware_version
        except DataError:
            return None

    result = identify_device(
        corpus, trace, signatures, profiles, resolve_latest_version=latest
    )
    sys.stdout.write(canonical_json(result.to_dict()))
    return EXIT_OK


def cmd_assess(args) -> int:
    engine = _engine(args)
    as_of = date.fromisoformat(args.as_of)
    record = engine.run_assessment(args.device, as_of)
    if record["status"] != STATUS_OK:
        print(f"identification failed: {record.get('reason')}", file=sys.stderr)
        return EXIT_DATA
    if args.format == "json":
        sys.stdout.write(canonical_json(record["assessment"]))
        return EXIT_OK
    _print_assessment_table(engine, record["assessment"])
    return EXIT_OK


def _print_assessment_table(engine: Engine, a: dict) -> None:
    use_ansi = sys.stdout.isatty()
    from devrisk.model import RiskLevel, risk_color

    color = risk_color(RiskLevel(a["current_risk"])).value
    ident = a["identity"]
    print(f"device       {a['device_id']}")
    print(f"identity     {ident['vendor']} {ident['model']} (firmware {ident['firmware_version']})")
    print(f"current risk {a['current_risk']} [{colorize(color, use_ansi)}]")
    basis = a["current_risk_basis"]
    print(f"basis        {'highest unpatched CVSS ' + str(basis) if basis is not None else 'no unpatched CVEs'}")
    print(f"vuln trend   {a['vuln_trend']}")
    mean = a["patch_trend_mean_days"]
    print(f"patch trend  {a['patch_trend']}" + (f" (mean {mean:.1f} days)" if mean is not None else " (never patched)"))
    print(f"future risk  {a['future_risk']}")
    if a["exceptional_risks"]:
        print(f"exceptional  {len(a['exceptional_risks'])} finding(s)")
    if a["cve_table"]:
        print("cve table:")
        for v in a["cve_table"]:
            patched = f" patched_in={v['patched_in']}" if v.get("patched_in") else ""
            print(f"  {v['cve_id']}  cvss={v['cvss_score']:>4}  {v['severity']:6s}  published={v['published']}{patched}")


def cmd_view(args) -> int:
    engine = _engine(args)
    payload = engine.get_view(args.device, args.version)
    sys.stdout.write(canonical_json(payload))
    return EXIT_OK


def cmd_compare(args) -> int:
    engine = _engine(args)
    as_of = date.fromisoformat(args.as_of) if args.as_of else date.today()
    cards = engine.compare_category(args.category, as_of)
    if args.format == "json":
        sys.stdout.write(canonical_json({"category": args.category.lower(), "cards": cards}))
        return EXIT_OK
    use_ansi = sys.stdout.isatty()
    for c in cards:
        print(
            f"{colorize(c['color'], use_ansi):18s} {c['vendor']} {c['model']} "
            f"(fw {c['firmware_version']}) current={c['current_risk']} future={c['future_risk']}"
        )
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from devrisk.service.app import create_app

    config = ServiceConfig.load(args.config)
    store = Store(config.resolved_store_path())
    engine = Engine(
        store,
        data_dir=config.data_dir,
        scoring=config.scoring,
        identify_config=config.identify,
    )
    app = create_app(engine)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return EXIT_OK


def cmd_demo(args) -> int:
    engine = _engine(args)
    as_of = date.fromisoformat(args.as_of) if args.as_of else None
    results = demo_mod.run_demo(engine, as_of=as_of)
    if args.format == "json":
        sys.stdout.write(canonical_json(results))
        return EXIT_OK
    use_ansi = sys.stdout.isatty()
    from devrisk.model import RiskLevel, risk_color

    for r in results:
        dev = r["device"]
        rec = r["record"]
        if rec["status"] != STATUS_OK:
            print(f"{dev['device_type']:26s} [{dev['category']}] UNIDENTIFIED: {rec.get('reason')}")
            continue
        a = rec["assessment"]
        color = risk_color(RiskLevel(a["current_risk"])).value
        print(
            f"{dev['device_type']:26s} [{dev['category']:8s}] "
            f"{a['identity']['vendor']} {a['identity']['model']} fw {a['identity']['firmware_version']}: "
            f"risk {a['current_risk']} [{colorize(color, use_ansi)}], future {a['future_risk']}"
        )
    return EXIT_OK


_COMMANDS = {
    "ingest": cmd_ingest,
    "identify": cmd_identify,
    "assess": cmd_assess,
    "view": cmd_view,
    "compare": cmd_compare,
    "serve": cmd_serve,
    "demo": cmd_demo,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, IdentificationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
