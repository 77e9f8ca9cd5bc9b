"""Command-line front end.

Exit codes: 0 yes/pass, 1 no/fail, 2 unknown, 3 input error, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from .conditions import CHECKERS, Condition, run_checks
from .config import Caps
from .decision import Answer, decide_finite_index_raag, decide_raag_system, kernel_search_report
from .errors import InputError, VisualRaagError
from .families import FAMILY_NAMES, FamilySpec, make_family
from .graphs import ThetaGraph, format_theta, parse_theta
from .words import commuting_graph

SCHEMA = 1
EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4
COMMANDS = ("check", "decide", "index", "commuting-graph", "kernel-search", "reflections", "families", "omega-export")
CAP_FLAGS = ("cycle_max_len", "cycle_max_count", "kernel_depth", "cell_cap", "kernel_budget")


class UsageError(InputError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path | None = None
    caps: Caps = field(default_factory=Caps)
    output: Path | None = None
    format: str = "json"
    conditions: tuple[str, ...] | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--caps", help="comma-separated key=value cap overrides")
    for name in CAP_FLAGS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=int)

    parser = _Parser(prog="visual-raag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for cmd in COMMANDS:
        if cmd == "families":
            p = sub.add_parser(cmd, parents=[common], help="emit a built-in family as a theta file")
            p.add_argument("action", choices=("emit",))
            p.add_argument("name", choices=FAMILY_NAMES)
            p.add_argument("params", nargs="*", help="integer parameters as key=value")
            continue
        p = sub.add_parser(cmd, parents=[common])
        p.add_argument("--input", type=Path, required=True)
        if cmd == "check":
            p.add_argument("--conditions", help="comma-separated subset, e.g. R1,R4")
        if cmd in ("kernel-search", "reflections"):
            p.add_argument("--depth", dest="kernel_depth_override", type=int)
    return parser


def parse_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    caps = Caps.from_env().override(ns.caps)
    updates = {name: getattr(ns, name) for name in CAP_FLAGS if getattr(ns, name) is not None}
    if getattr(ns, "kernel_depth_override", None) is not None:
        updates["kernel_depth"] = ns.kernel_depth_override
    caps = replace(caps, **updates)

    conditions = None
    if getattr(ns, "conditions", None):
        names = [c.strip() for c in ns.conditions.split(",") if c.strip()]
        known = {c.value for c in CHECKERS}
        for c in names:
            if c not in known:
                raise UsageError(f"unknown condition {c!r}")
        conditions = tuple(names)

    params = {}
    for item in getattr(ns, "params", None) or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"family parameter must be key=value, got {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise UsageError(f"family parameter {key} must be an integer") from None

    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        caps=caps,
        output=ns.output,
        format=ns.format,
        conditions=conditions,
        family=getattr(ns, "name", None),
        params=params,
    )


# --- commands ---------------------------------------------------------------


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _theta(cfg: RunConfig) -> ThetaGraph:
    return parse_theta(_read(cfg.input))


def _cmd_check(cfg: RunConfig):
    theta = _theta(cfg)
    reports = run_checks(theta, cfg.conditions, cfg.caps)
    rows = []
    for cond, rep in reports.items():
        if rep is None:
            rows.append({"name": cond.value, "passed": None, "witness": None, "truncated": False, "skipped": "R1"})
        else:
            rows.append(rep.to_json())
    failed = any(r["passed"] is False for r in rows)
    truncated = any(r["truncated"] for r in rows)
    code = EXIT_NO if failed else EXIT_CAP if truncated else EXIT_YES
    return code, {"conditions": rows}


def _verdict_code(verdict) -> int:
    if verdict.answer is Answer.YES:
        return EXIT_YES
    if verdict.answer is Answer.NO:
        return EXIT_NO
    truncated = any(r.truncated for r in verdict.basis)
    return EXIT_CAP if truncated else EXIT_UNKNOWN


def _cmd_decide(cfg: RunConfig):
    verdict = decide_raag_system(_theta(cfg), cfg.caps)
    return _verdict_code(verdict), verdict.to_json()


def _cmd_index(cfg: RunConfig):
    verdict = decide_finite_index_raag(_theta(cfg), cfg.caps)
    code = _verdict_code(verdict)
    rep = verdict.index_report
    if code == EXIT_YES and rep is not None and not rep["omega_saturated"]:
        code = EXIT_CAP
    return code, verdict.to_json()


def _delta_json(graph) -> dict:
    return {"vertices": list(graph.vertices), "edges": [list(e) for e in graph.sorted_edges()]}


def _cmd_commuting_graph(cfg: RunConfig):
    cg = commuting_graph(_theta(cfg))
    out = _delta_json(cg.graph)
    out["generators"] = {name: str(w) for name, w in cg.generators}
    return EXIT_YES, out


def _cmd_kernel_search(cfg: RunConfig):
    theta = _theta(cfg)
    cg = commuting_graph(theta)
    res = kernel_search_report(cg.graph, cg.assignment, theta.gamma, True, cfg.caps.kernel_depth, cfg.caps.kernel_budget)
    out = {
        "witness": None if res.witness is None else str(res.witness),
        "depth": res.depth,
        "truncated": res.truncated,
        "explored": res.explored,
    }
    code = EXIT_NO if res.witness is not None else EXIT_CAP if res.truncated else EXIT_YES
    return code, out


def _cmd_reflections(cfg: RunConfig):
    from .reflections import parse_reflections, reflection_raag_presentation

    refl = parse_reflections(_read(cfg.input))
    pres = reflection_raag_presentation(refl, cfg.caps.kernel_depth, cfg.caps.kernel_budget)
    out = {
        "input": [str(r) for r in refl.members],
        "trimmed": [str(r) for r in pres.trimmed.members],
        "provenance": [[list(x) for x in e] for e in pres.trimmed.provenance],
        "log": list(pres.trimmed.log),
        "delta": _delta_json(pres.delta.graph),
        "verified_to_depth": pres.verified_to_depth,
        "truncated": pres.truncated,
    }
    return (EXIT_CAP if pres.truncated else EXIT_YES), out


def _cmd_families(cfg: RunConfig):
    theta = make_family(FamilySpec(cfg.family, cfg.params))
    return EXIT_YES, format_theta(theta)


def _cmd_omega_export(cfg: RunConfig):
    from .completion import build_completion

    result = build_completion(_theta(cfg), cfg.caps.cell_cap)
    return (EXIT_YES if result.saturated else EXIT_CAP), result.complex.export_text()


_HANDLERS = {
    "check": _cmd_check,
    "decide": _cmd_decide,
    "index": _cmd_index,
    "commuting-graph": _cmd_commuting_graph,
    "kernel-search": _cmd_kernel_search,
    "reflections": _cmd_reflections,
    "families": _cmd_families,
    "omega-export": _cmd_omega_export,
}


# --- rendering ----------------------------------------------------------------


def _render_text(data, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def render(cfg: RunConfig, payload) -> str:
    if isinstance(payload, str):  # file formats are emitted verbatim
        return payload
    doc = {"schema": SCHEMA, "command": cfg.command, **payload}
    if cfg.format == "text":
        return "\n".join(_render_text(doc)) + "\n"
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(cfg: RunConfig) -> int:
    try:
        code, payload = _HANDLERS[cfg.command](cfg)
    except VisualRaagError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(cfg, payload)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text)
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except VisualRaagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
