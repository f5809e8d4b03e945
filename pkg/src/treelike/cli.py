"""Command-line entry point: ``treelike <command> [options]``.

Every RunConfig field has a matching ``--field-name`` flag. A config file
of ``key = value`` lines sets the same fields; flags given on the command
line win over the file. Exit codes: 0 all checks pass, 1 some check
failed, 2 bad command line or configuration.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any, Sequence

from treelike.suites import RUNNERS, RunConfig, run

COMMANDS = (*RUNNERS, "all")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


class ConfigError(ValueError):
    pass


def _parse_value(name: str, text: str) -> Any:
    """Parse a field value from text; tuple fields use ',' within and ';' between groups."""
    default = _FIELDS[name].default
    text = text.strip()
    try:
        if isinstance(default, bool):
            return text.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(text)
        if isinstance(default, tuple):
            if default and isinstance(default[0], tuple):
                return tuple(tuple(int(t) for t in grp.split(",") if t.strip()) for grp in text.split(";") if grp.strip())
            return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {text!r}") from exc
    raise ConfigError(f"unsupported field {name}")  # pragma: no cover


def read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, value)
    return values


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treelike", description="Run the verification suites.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--config", metavar="FILE", help="key = value file with RunConfig fields")
    ap.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    cfg = ap.add_argument_group("run configuration")
    for name in _FIELDS:
        cfg.add_argument("--" + name.replace("_", "-"), dest=name, metavar="V", default=None)
    short = ap.add_argument_group("shorthands")
    short.add_argument("--k", type=int, help="dt-graphs: clique size minus one")
    short.add_argument("--l", type=int, help="dt-graphs: cliques per vertex")
    short.add_argument("--n", type=int, default=None, help="dt-graphs: reconstruction distance n")
    short.add_argument("--radius", type=int, help="dt-graphs: BFS radius (same as --dt-radius)")
    short.add_argument("--distance-set", action="append", metavar="D,..",
                       help="dt-graphs: a distance set for the Claim; repeatable")
    short.add_argument("--p", action="append", type=int, metavar="P", help="a prime; repeatable")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    for name in _FIELDS:
        text = getattr(args, name)
        if text is not None:
            values[name] = _parse_value(name, text)
    if args.k is not None or args.l is not None:
        k = args.k if args.k is not None else 2
        l = args.l if args.l is not None else 3
        values["dt_pairs"] = ((k, l),)
        values["dt_claim_kl"] = (k, l)
        values["dt_recon"] = ((k, l, args.n if args.n is not None else 1),)
    elif args.n is not None:
        values["dt_recon"] = tuple((k, l, args.n) for k, l, _ in RunConfig().dt_recon)
    if args.radius is not None:
        values["dt_radius"] = args.radius
    if args.distance_set:
        values["dt_claim_sets"] = tuple(_parse_value("ef_ranks", d) for d in args.distance_set)
    if args.p:
        values["primes"] = tuple(args.p)
    try:
        return RunConfig(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def format_text(report: dict) -> str:
    lines = [f"treelike {report['command']}  (schema {report['schema_version']}, seed {report['config']['seed']})"]
    for suite in report["suites"]:
        lines.append(f"{'PASS' if suite['ok'] else 'FAIL'}  {suite['suite']}  (seed {suite['seed']})")
        for c in suite["checks"]:
            tag = "ok " if c["ok"] else "BAD"
            note = "  [negative control]" if c["expect"] == "detect" else ""
            lines.append(f"  {tag} {c['name']}{note}")
            if not c["ok"]:
                extra = {k: v for k, v in c.items() if k not in ("name", "expect", "ok")}
                lines.append("      " + json.dumps(extra, sort_keys=True)[:2000])
    lines.append("OVERALL: " + ("PASS" if report["ok"] else "FAIL"))
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return format_text(report)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        ap.print_usage(sys.stderr)
        print(f"treelike: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run(args.command, cfg)
    out = render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
