"""Command-line entry point wiring files to the library operations.

Exit codes: 0 success, 1 validation failure (invalid network, bad inputs,
impossible evidence), 2 I/O or format error.  All diagnostics go to stderr
with file context; outputs are byte-deterministic given the same inputs and
seed.  Set ``DRIFTNET_LOG`` to a level name to enable logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import bundled, jsonio, xmlbif
from .errors import DriftnetError, FormatError, ImpossibleEvidenceError, InputError
from .learning import (
    DEFAULT_SEED,
    compile_target_cpt,
    generate_synthetic_events,
    ingest_events,
    learn_naive_bayes,
)
from .maturity import build_network
from .network import validate_network
from .simulation import maturity_sweep, rank_actions, what_if

log = logging.getLogger("driftnet")


def _setup_logging() -> None:
    level = os.environ.get("DRIFTNET_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO))


def _load_bundle(path: str | None):
    if path is None:
        return bundled.default_bundle()
    return jsonio.load_bundle(path)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _dump_json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_validate(args) -> int:
    net = jsonio.load_network(args.network)
    report = validate_network(net)
    if report.ok:
        print(f"{args.network}: valid network "
              f"({len(net.variables)} variables, {len(net.cpts)} CPTs)")
        return 0
    for violation in report:
        print(f"{args.network}: {violation}", file=sys.stderr)
    return 1


def cmd_learn(args) -> int:
    _, _, drifts = _load_bundle(args.framework)
    catalogue = [d.id for d in drifts]
    result = ingest_events(args.events, catalogue)
    if result.rejects:
        print(result.rejects_report(), file=sys.stderr)
    model = learn_naive_bayes(result.records, catalogue, alpha=args.alpha, granularity=args.granularity)
    jsonio.save_model(model, args.out)
    print(
        f"learned {model.granularity}-level model from {len(result.records)} records "
        f"({len(result.rejects)} rejected) -> {args.out}"
    )
    return 0


def cmd_build(args) -> int:
    framework, weights, drifts = _load_bundle(args.framework)
    model = jsonio.load_model(args.model)
    target = compile_target_cpt(model, [d.id for d in drifts])
    net = build_network(framework, list(drifts), weights, target)
    jsonio.save_network(net, args.out)
    print(f"built network with {len(net.variables)} variables -> {args.out}")
    return 0


def cmd_infer(args) -> int:
    net = jsonio.load_network(args.network)
    assessment = jsonio.load_assessment(args.assessment)
    framework = _load_bundle(args.framework)[0] if args.framework else None
    result = what_if(net, assessment, framework)
    _write_text(args.out, _dump_json_text(result.as_dict()))
    return 0


def cmd_sweep(args) -> int:
    net = jsonio.load_network(args.network)
    table = maturity_sweep(net, mode=args.sweep)
    print(table.render())
    if args.out:
        _write_text(args.out, table.to_csv())
    return 0


def cmd_rank(args) -> int:
    net = jsonio.load_network(args.network)
    assessment = jsonio.load_assessment(args.assessment)
    framework = _load_bundle(args.framework)[0] if args.framework else None
    ranked = rank_actions(net, assessment, framework)
    doc = {"actions": [{"question": q, "delta": d} for q, d in ranked]}
    _write_text(args.out, _dump_json_text(doc))
    return 0


def cmd_gen(args) -> int:
    text = generate_synthetic_events(
        args.seed,
        n_projects=args.n_projects,
        n_events=args.n_events,
        labels=bundled.drift_labels(),
    )
    _write_text(args.out, text)
    if args.out:
        print(f"wrote {args.n_events} synthetic events -> {args.out}")
    return 0


def cmd_export_xmlbif(args) -> int:
    net = jsonio.load_network(args.network)
    _write_text(args.out, xmlbif.export_xmlbif(net))
    if args.out:
        print(f"exported network -> {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    net = jsonio.load_network(args.network)
    framework, weights, drifts = _load_bundle(args.framework)
    provenance = {
        "network_sha256": _sha256(args.network),
        "framework_sha256": _sha256(args.framework) if args.framework else None,
        "alpha": None,
        "granularity": None,
    }
    if args.model:
        model = jsonio.load_model(args.model)
        provenance.update(
            model_sha256=_sha256(args.model), alpha=model.alpha, granularity=model.granularity
        )
    serve(
        net,
        framework,
        drifts=drifts,
        port=args.port,
        host=args.host,
        provenance=provenance,
        cors_origins=tuple(args.cors_origin),
    )
    return 0


def _sha256(path: str) -> str:
    import hashlib

    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftnet",
        description="Maturity-to-overcost Bayesian network toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a network file for violations")
    p.add_argument("--network", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("learn", help="learn the overcost model from an event CSV")
    p.add_argument("--events", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--framework", help="framework bundle JSON (default: bundled)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--granularity", choices=("event", "project"), default="event")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("build", help="assemble the full network from a learned model")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--framework", help="framework bundle JSON (default: bundled)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("infer", help="what-if query for one assessment")
    p.add_argument("--network", required=True)
    p.add_argument("--assessment", required=True)
    p.add_argument("--framework", help="validate answers against this framework")
    p.add_argument("--out")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("sweep", help="overcost distribution per maturity level")
    p.add_argument("--network", required=True)
    p.add_argument("--sweep", choices=("cumulative", "exclusive"), default="cumulative")
    p.add_argument("--out", help="write CSV here as well")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rank", help="rank next maturity actions by risk decrease")
    p.add_argument("--network", required=True)
    p.add_argument("--assessment", required=True)
    p.add_argument("--framework", help="validate answers against this framework")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("gen", help="generate a synthetic event database")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n-events", type=int, default=459)
    p.add_argument("--n-projects", type=int, default=15)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-xmlbif", help="export a network to XMLBIF 0.3")
    p.add_argument("--network", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_xmlbif)

    p = sub.add_parser("serve", help="start the HTTP what-if service")
    p.add_argument("--network", required=True)
    p.add_argument("--framework", help="framework bundle JSON (default: bundled)")
    p.add_argument("--model", help="learned model JSON, for provenance only")
    p.add_argument("--port", type=int, default=8348)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", action="append", default=["*"])
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ImpossibleEvidenceError, DriftnetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
