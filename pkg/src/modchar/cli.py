"""Command-line front end.

    modchar simple-char --type A1 -p 3 --weight 3
    modchar decomp-row --type A1 -p 2 --weight 4 --format json
    modchar verify --type A1 -p 2 --bound 32
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from .charring import dim, weight_map_to_json
from .errors import ConsistencyError, ModcharError, RootSystemError, TiltingDataError, UnsupportedWeightError
from .pipeline import PipelineContext, choose_r, gamma1_set
from .rootsystem import RootSystem, build_root_system
from .tilting import (
    a1_tilting_provider,
    composite_provider,
    file_provider_load,
    lowest_alcove_provider,
    tilting_file_json,
)
from .verify import LEVELS, run_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MISSING_TILTING = 3
EXIT_BAD_INPUT = 4


@dataclass
class RunConfig:
    type_label: str
    rank: int | None
    p: int
    r: int | None = None
    tilting_files: list[str] = field(default_factory=list)
    builtin_a1: bool = False
    builtin_lowest_alcove: bool = False
    check_providers: bool = False
    weights: list[tuple[int, ...]] = field(default_factory=list)
    gamma1: bool = False
    bound: int | None = None
    lowest_alcove: bool = False
    output_format: str = "text"
    output: str | None = None
    cache_dir: str | None = None
    verify: str = "off"
    compare_r: int | None = None
    no_shortcut: bool = False

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            type_label=args.type,
            rank=args.rank,
            p=args.p,
            r=args.r,
            tilting_files=args.tilting or [],
            builtin_a1=args.builtin_a1,
            builtin_lowest_alcove=args.builtin_lowest_alcove,
            check_providers=args.check_providers,
            weights=args.weight or [],
            gamma1=args.gamma1,
            bound=args.bound,
            lowest_alcove=args.lowest_alcove_targets,
            output_format=args.format,
            output=args.output,
            cache_dir=args.cache,
            verify=args.verify,
            compare_r=args.compare_r,
            no_shortcut=args.no_shortcut,
        )


def _parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}; expected e.g. 1,0,2")


def fmt_weight(w) -> str:
    return "[" + ",".join(str(x) for x in w) + "]"


def build_provider(cfg: RunConfig, rs: RootSystem):
    providers = [file_provider_load(path) for path in cfg.tilting_files]
    for prov in providers:
        if prov.rs != rs or prov.p != cfg.p:
            raise TiltingDataError(
                f"{prov.path}: data is for {prov.rs.type_label}, p={prov.p}; "
                f"run is {rs.type_label}, p={cfg.p}"
            )
    a1 = cfg.builtin_a1
    alcove = cfg.builtin_lowest_alcove
    if not providers and not a1 and not alcove:
        a1 = rs.type_label == "A1"
        alcove = True
    if a1:
        if rs.type_label != "A1":
            raise RootSystemError("--builtin-a1 only applies to type A1")
        providers.append(a1_tilting_provider(cfg.p))
    if alcove:
        providers.append(lowest_alcove_provider(rs, cfg.p))
    return composite_provider(*providers, check=cfg.check_providers, rs=rs, p=cfg.p)


def resolve_targets(cfg: RunConfig, rs: RootSystem) -> list[tuple[int, ...]]:
    targets = [rs.check_weight(w) for w in cfg.weights]
    for w in targets:
        if not rs.is_dominant(w):
            raise RootSystemError(f"target {fmt_weight(w)} is not dominant")
    if cfg.gamma1:
        targets.extend(gamma1_set(rs, cfg.p))
    if cfg.bound is not None:
        targets.extend(_weights_up_to(rs, cfg.bound))
    if cfg.lowest_alcove:
        candidates = _weights_up_to(rs, cfg.p * len(rs.factors))
        targets.extend(w for w in candidates if rs.in_lowest_alcove(w, cfg.p))
    seen = set()
    out = []
    for w in targets:
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def _weights_up_to(rs: RootSystem, bound: int):
    """Dominant weights with ``<lam, alpha_0^vee> <= bound``, lowest first."""
    out = []

    def extend(prefix, used, i):
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        x = 0
        while used + rs.alpha0_coroot[i] * x <= bound:
            extend(prefix + [x], used + rs.alpha0_coroot[i] * x, i + 1)
            x += 1

    extend([], 0, 0)
    return sorted(out, key=rs.weight_key, reverse=True)


def _context(cfg: RunConfig, rs, provider, r=None):
    return PipelineContext(
        rs,
        cfg.p,
        provider,
        r=r if r is not None else choose_r(rs, cfg.p, (), cfg.r).r,
        cache_dir=cfg.cache_dir,
        lowest_alcove_shortcut=not cfg.no_shortcut,
    )


def _meta(cfg, ctx, targets, command):
    advice = choose_r(ctx.rs, ctx.p, targets, cfg.r)
    return {
        "command": command,
        "type": ctx.rs.type_label,
        "rank": ctx.rs.rank,
        "p": ctx.p,
        "r": ctx.r,
        "providers": [p.identity for p in ctx.provider.providers],
        "r_advice": {"restricted_r": advice.restricted_r, "gamma1_r": advice.gamma1_r},
        "cache": {"file": str(ctx.cache_file) if ctx.cache_file else None,
                  "loaded": ctx.stats["loaded"], "hits": ctx.stats["hits"]},
    }


def _chi_string(form) -> str:
    parts = []
    for w, c in form.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = f"chi{fmt_weight(w)}" if mag == 1 else f"{mag}*chi{fmt_weight(w)}"
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def _emit(cfg: RunConfig, payload: dict, text: str, out):
    if cfg.output_format == "json":
        body = json.dumps(payload, indent=2) + "\n"
    else:
        body = text
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(body)
    else:
        out.write(body)


def cmd_simple_char(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    results = []
    lines = []
    for lam in targets:
        ch = ctx.simple_character(lam)
        form = ctx.nabla_form(lam)
        results.append({
            "weight": list(lam),
            "dim": dim(ch),
            "character": ch.to_json(),
            "nabla_form": weight_map_to_json(ctx.rs, form),
        })
        weights = " ".join(f"{fmt_weight(w)}:{m}" for w, m in ch.items())
        lines.append(f"L({fmt_weight(lam)})  dim={dim(ch)}")
        lines.append(f"  dominant weights: {weights}")
        lines.append(f"  nabla form: {_chi_string(form)}")
    return {"results": results, "text": lines}


def _table(rs, targets, rows, label) -> list[str]:
    columns = rs.sort_weights({mu for row in rows for mu in row})
    head = [label] + [fmt_weight(c) for c in columns]
    body = [[fmt_weight(t)] + [str(row.get(c, 0)) if row.get(c, 0) else "." for c in columns]
            for t, row in zip(targets, rows)]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    return ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [head] + body]


def cmd_decomp_row(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    rows = [ctx.decomp_row(lam) for lam in targets]
    results = [{"weight": list(lam), "row": weight_map_to_json(ctx.rs, row)}
               for lam, row in zip(targets, rows)]
    return {"results": results, "text": _table(ctx.rs, targets, rows, "nabla\\L")}


def cmd_pr_coeffs(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    rows = [ctx.pr_coeffs(lam) for lam in targets]
    results = [{"weight": list(lam), "coeffs": weight_map_to_json(ctx.rs, row)}
               for lam, row in zip(targets, rows)]
    return {"results": results, "text": _table(ctx.rs, targets, rows, "nabla\\basis")}


def cmd_verify(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    level = cfg.verify if cfg.verify != "off" else "oracle"
    compare = _context(cfg, ctx.rs, ctx.provider, r=cfg.compare_r) if cfg.compare_r else None
    report = run_checks(ctx, targets, level, compare)
    lines = [f"verify level={level} targets={len(targets)}"]
    for name, n in report.passed.items():
        lines.append(f"  pass  {name}: {n}")
    for name, n in report.skipped.items():
        lines.append(f"  skip  {name}: {n} (tilting data unavailable)")
    if report.failure:
        lines.append(f"FAIL {report.failure}")
    else:
        lines.append("PASS")
    return {
        "results": {
            "ok": report.ok,
            "passed": report.passed,
            "skipped": report.skipped,
            "failure": None if report.ok else {
                "check": report.failure.check,
                "weight": list(report.failure.weight),
                "message": report.failure.message,
            },
        },
        "text": lines,
        "ok": report.ok,
    }


def cmd_needed(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    needed = ctx.tilting_weights_needed(targets)
    results = [{"weight": list(w), "available": ctx.provider.supports(w)} for w in needed]
    lines = [f"{fmt_weight(w)}  {'ok' if ctx.provider.supports(w) else 'MISSING'}" for w in needed]
    return {"results": results, "text": lines}


def cmd_export_tilting(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    weights = set(targets) | set(ctx.tilting_weights_needed(targets))
    entries = {w: ctx.provider.tilting_nabla_mults(w) for w in weights}
    data = tilting_file_json(ctx.rs, ctx.p, entries)
    return {"results": data, "text": [json.dumps(data, indent=2)], "raw": data}


def cmd_gamma1(cfg: RunConfig, ctx: PipelineContext, targets, out) -> dict:
    ws = ctx.gamma1_set()
    advice = choose_r(ctx.rs, ctx.p, ws, cfg.r)
    lines = [f"Gamma_1 for {ctx.rs.type_label}, p={ctx.p}: {len(ws)} weights "
             f"(bound (p-1)(h-1) = {(ctx.p - 1) * (ctx.rs.coxeter_number - 1)})",
             f"least r with (p-1)(h-1) < p^r: {advice.gamma1_r}"]
    lines += [f"  {fmt_weight(w)}" for w in ws]
    return {"results": {"weights": [list(w) for w in ws], "gamma1_r": advice.gamma1_r}, "text": lines}


COMMANDS = {
    "simple-char": (cmd_simple_char, "characters of simple modules L(mu)"),
    "decomp-row": (cmd_decomp_row, "composition multiplicities [nabla(lam):L(mu)]"),
    "pr-coeffs": (cmd_pr_coeffs, "coefficients of nabla(lam) in the (p,r)-basis"),
    "verify": (cmd_verify, "run invariant checks (and the SL2 oracle for A1)"),
    "needed": (cmd_needed, "list the tilting modules a computation would query"),
    "export-tilting": (cmd_export_tilting, "write provider data in the tilting file format"),
    "gamma1": (cmd_gamma1, "list the weight set Gamma_1 and the collapsing r"),
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="Dynkin type, e.g. A1, G2 or A1xB2")
    common.add_argument("--rank", type=int, help="rank, when --type is a bare letter")
    common.add_argument("-p", type=int, required=True, help="characteristic")
    common.add_argument("-r", type=int, help="Frobenius exponent of the (p,r)-basis (default 1)")
    common.add_argument("--tilting", action="append", metavar="FILE", help="tilting data file (repeatable)")
    common.add_argument("--builtin-a1", action="store_true", help="rank-one tilting characters")
    common.add_argument("--builtin-lowest-alcove", action="store_true",
                        help="T(lam) = nabla(lam) in the lowest alcove")
    common.add_argument("--check-providers", action="store_true",
                        help="fail if two providers disagree on a tilting module")
    common.add_argument("--weight", action="append", type=_parse_weight, metavar="a,b,...",
                        help="target weight (repeatable)")
    common.add_argument("--gamma1", action="store_true", help="add every weight of Gamma_1 to the targets")
    common.add_argument("--bound", type=int, help="add every dominant lam with <lam,alpha_0^vee> <= BOUND")
    common.add_argument("--lowest-alcove-targets", action="store_true",
                        help="add every dominant lam with <lam+rho,alpha_0^vee> <= p")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--cache", metavar="DIR", help="persistent cache directory")
    common.add_argument("--verify", choices=LEVELS, default="off", help="checks to run on the results")
    common.add_argument("--compare-r", type=int, help="verify: also compare rows against this r")
    common.add_argument("--no-shortcut", action="store_true",
                        help="do not treat lowest-alcove costandard modules as simple up front")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="modchar",
        description="Simple characters of reductive groups in characteristic p from tilting characters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    cfg = RunConfig.from_args(args)
    handler = COMMANDS[args.command][0]
    try:
        rs = build_root_system(cfg.type_label, cfg.rank)
        provider = build_provider(cfg, rs)
        targets = resolve_targets(cfg, rs)
        if not targets and args.command not in ("gamma1",):
            targets = gamma1_set(rs, cfg.p)
        ctx = _context(cfg, rs, provider)
    except (TiltingDataError, RootSystemError, ModcharError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT

    try:
        result = handler(cfg, ctx, targets, out)
        status = EXIT_OK if result.get("ok", True) else EXIT_FAILED
        if cfg.verify != "off" and args.command not in ("verify", "gamma1", "needed", "export-tilting"):
            report = run_checks(ctx, targets, cfg.verify)
            if not report.ok:
                result["text"].append(f"FAIL {report.failure}")
                result["verify_failure"] = str(report.failure)
                status = EXIT_FAILED
            else:
                result["text"].append(f"verify ({cfg.verify}): PASS")
    except UnsupportedWeightError as exc:
        missing = ctx.missing_tilting_weights(targets)
        err.write(f"error: {exc}\n")
        err.write("tilting data needed but not available for these highest weights:\n")
        for w in missing or [exc.weight]:
            err.write(f"  {fmt_weight(w)}\n")
        return EXIT_MISSING_TILTING
    except ConsistencyError as exc:
        weight = f" at {fmt_weight(exc.weight)}" if exc.weight is not None else ""
        err.write(f"error: inconsistent input{weight}: {exc}\n")
        return EXIT_FAILED
    except (TiltingDataError, ModcharError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT

    ctx.save_cache()
    if args.command == "export-tilting":
        payload = result["raw"]
    else:
        payload = {"meta": _meta(cfg, ctx, targets, args.command), "results": result["results"]}
        if "verify_failure" in result:
            payload["verify_failure"] = result["verify_failure"]
    header = (f"# {args.command} {ctx.rs.type_label} p={ctx.p} r={ctx.r} "
              f"providers={payload['meta']['providers'] if 'meta' in payload else ''}\n")
    text = "\n".join(result["text"]) + "\n"
    if args.command != "export-tilting":
        text = header + text
    _emit(cfg, payload, text, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
