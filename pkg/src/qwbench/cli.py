"""
Command-line entry point.

    qwbench --config configs/a2.yaml --command all --format json --out report.json

The config is a YAML mapping validated against schema/config.json; errors
are reported with the line and column of the offending node.  JSON output
is deterministic for a fixed config (sorted keys, no timing), so two runs
can be compared byte for byte.  Exit status: 0 when no check failed, 1 when
some check failed, 2 on a config error.
"""

from __future__ import annotations

import argparse
import copy
import json
import sys
import time
from importlib import resources

import jsonschema
import yaml

from .checks import COMMANDS, FAIL, ConfigError, run

DEFAULTS = {
    "w0": None,
    "k": None,
    "degree_bound": 12,
    "seed": 0,
    "command": "all",
    "specialization": [1, 2],
    "samples": {"associativity": 200, "hopf": 50, "poisson": 20, "ideal": 5, "injectivity": 100},
    "wq": {"max_degree": 2, "box": 2, "convention": "auto"},
}


def load_schema(name):
    schema = json.loads(resources.files("qwbench").joinpath("schema", name).read_text())
    if name == "report.json":
        schema["properties"]["effective_config"] = load_schema("config.json")
    return schema


def _node_at(node, path):
    """Follow a jsonschema error path through the composed YAML tree."""
    for key in path:
        if isinstance(node, yaml.MappingNode):
            match = [v for k, v in node.value if k.value == key]
            if not match:
                break
            node = match[0]
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
        else:
            break
    return node


def _where(source, node):
    m = node.start_mark
    return f"{source}:{m.line + 1}:{m.column + 1}"


def parse_config(text, source="<config>"):
    """Parse and validate a config; return (as_written, effective)."""
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
        raise ConfigError(f"{where}: YAML parse error: {getattr(exc, 'problem', exc)}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{source}:1:1: config must be a mapping")
    validator = jsonschema.Draft202012Validator(load_schema("config.json"))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        lines = []
        for e in errors:
            path = "/".join(map(str, e.absolute_path)) or "(root)"
            lines.append(f"{_where(source, _node_at(root, e.absolute_path))}: {path}: {e.message}")
        raise ConfigError("\n".join(lines))
    rank = data["rank"]
    for key in ("s", "w0"):
        for i, x in enumerate(data.get(key) or []):
            if x > rank:
                node = _node_at(root, [key, i])
                raise ConfigError(f"{_where(source, node)}: {key}/{i}: simple index {x} exceeds rank {rank}")
    eff = copy.deepcopy(DEFAULTS)
    for key, val in data.items():
        if isinstance(val, dict):
            eff[key].update(val)
        else:
            eff[key] = val
    return data, eff


def build_report(command, text, source="<config>", seed=None, timings=None):
    as_written, eff = parse_config(text, source)
    if seed is not None:
        eff["seed"] = seed
    command = command or eff["command"]
    eff["command"] = command
    try:
        rep = run(command, eff, timings)
    except ConfigError as exc:
        # only k is checked late, since its length depends on the realization
        raise ConfigError(f"{_where(source, _node_at(yaml.compose(text), ['k']))}: k: {exc}") from None
    rep["config"] = as_written
    rep["effective_config"] = eff
    return rep


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report, timings=None):
    out = [f"command: {report['command']}"]
    for r in report["checks"]:
        out.append(f"  [{r['status'].upper():>12}] {r['name']}")
    s = report["summary"]
    out.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive")
    for name, secs in (timings or {}).items():
        out.append(f"time {name}: {secs:.3f} s")
    return "\n".join(out) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(prog="qwbench", description=__doc__.strip().splitlines()[0])
    ap.add_argument("--config", required=True, metavar="PATH")
    ap.add_argument("--command", choices=[*COMMANDS, "all"])
    ap.add_argument("--out", metavar="PATH")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--seed", type=int)
    args = ap.parse_args(argv)

    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"{args.config}: {exc.strerror}", file=sys.stderr)
        return 2
    timings = {}
    t0 = time.perf_counter()
    try:
        report = build_report(args.command, text, args.config, args.seed, timings)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return 2
    timings["total"] = time.perf_counter() - t0

    body = to_json(report) if args.format == "json" else to_text(report, timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 1 if report["summary"][FAIL] else 0


if __name__ == "__main__":
    sys.exit(main())
