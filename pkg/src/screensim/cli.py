"""Command-line entry point and the CSV/config-file interchange formats.

Exit codes: 0 success, 1 configuration error, 2 runtime error.

The config file is flat JSON whose keys mirror the long flag names
(without dashes); flags override file values, which override defaults.
One CSV row is emitted per sweep cell, and the parameter columns show
the cell's effective values, so a row is self-describing without the
config file at hand.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .core import ProblemParams
from .fatigue import FatigueModel
from .harness import AggregateResult, SweepConfig, figure_suite, run_sweep
from .sampling import IsoSpec, ScoreDistribution

__all__ = [
    "CSV_COLUMNS",
    "config_from_dict",
    "config_to_dict",
    "csv_rows",
    "write_csv",
    "main",
]

CSV_COLUMNS = (
    "config_id", "sweep_param", "sweep_value", "n", "k", "q", "psi",
    "rho_or_NA", "dist_mu", "dist_sigma", "pr", "fatigue_kind",
    "compared_problem", "compared_screener", "runs_total", "runs_feasible",
    "mean_rtb", "sd_rtb", "mean_jds", "sd_jds", "mean_frac_protected",
    "mean_evaluated_count", "master_seed",
)

_PROBLEM_NAMES = {"best": "best_k", "good": "good_k"}
_SCREENER_NAMES = {"algo": "algorithmic", "human": "human_like"}
_PROBLEM_FLAGS = {v: k for k, v in _PROBLEM_NAMES.items()}
_SCREENER_FLAGS = {v: k for k, v in _SCREENER_NAMES.items()}
_FATIGUE_FACTORIES = {
    "none": FatigueModel.none,
    "eps1": FatigueModel.eps1,
    "eps2": FatigueModel.eps2,
}
_CONFIG_KEYS = (
    "id", "n", "k", "q", "psi", "iso", "rho", "dist", "pr", "fatigue",
    "problem", "screener", "runs", "seed", "sweep",
)


class _ConfigError(ValueError):
    pass


def _parse_dist(text: str) -> ScoreDistribution:
    parts = text.split(",")
    if len(parts) != 2:
        raise _ConfigError(f"dist must be MU,SIGMA, got {text!r}")
    try:
        return ScoreDistribution(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise _ConfigError(f"bad dist {text!r}: {exc}") from exc


def _parse_sweep(text: str) -> tuple[str, tuple[float, ...]]:
    param, sep, rest = text.partition("=")
    if not sep or not rest:
        raise _ConfigError(f"sweep must be PARAM=V1,V2,..., got {text!r}")
    try:
        values = tuple(float(v) for v in rest.split(","))
    except ValueError as exc:
        raise _ConfigError(f"bad sweep values in {text!r}: {exc}") from exc
    return param, values


def config_to_dict(config: SweepConfig) -> dict:
    """The config in file form; parsing it back reproduces the config."""
    doc: dict = {
        "id": config.config_id,
        "n": config.n,
        "k": config.k,
        "q": config.params.q,
        "psi": config.params.psi,
        "iso": config.iso.kind,
    }
    if config.iso.kind == "correlated":
        doc["rho"] = config.iso.rho
    doc.update(
        dist=f"{config.dist.mu!r},{config.dist.sigma!r}",
        pr=config.pr,
        fatigue=config.fatigue.kind,
        problem=_PROBLEM_FLAGS[config.compared[0]],
        screener=_SCREENER_FLAGS[config.compared[1]],
        runs=config.runs,
        seed=config.master_seed,
    )
    if config.sweep is not None:
        param, values = config.sweep
        doc["sweep"] = f"{param}=" + ",".join(repr(v) for v in values)
    return doc


def _merged_value(key: str, flags: dict, file_doc: dict, default):
    if flags.get(key) is not None:
        return flags[key]
    if key in file_doc:
        return file_doc[key]
    return default


def config_from_dict(doc: dict, flags: dict | None = None) -> tuple[SweepConfig, list[str]]:
    """Build a config from file values overlaid with flag values.

    Returns the config plus any warnings about accepted-but-ignored
    parameters. Raises _ConfigError on anything malformed.
    """
    flags = flags or {}
    unknown = set(doc) - set(_CONFIG_KEYS)
    if unknown:
        raise _ConfigError(f"unknown config keys: {sorted(unknown)}")

    def pick(key, default):
        return _merged_value(key, flags, doc, default)

    try:
        n = int(pick("n", 120))
        k = int(pick("k", 6))
        q = float(pick("q", 0.5))
        psi = float(pick("psi", 0.0))
        pr = float(pick("pr", 0.2))
        runs = int(pick("runs", 10_000))
        seed = int(pick("seed", 0))
    except (TypeError, ValueError) as exc:
        raise _ConfigError(f"bad numeric value: {exc}") from exc

    dist_raw = pick("dist", "0.5,0.02")
    dist = dist_raw if isinstance(dist_raw, ScoreDistribution) else _parse_dist(str(dist_raw))

    sweep_raw = pick("sweep", None)
    sweep = None
    if sweep_raw is not None:
        sweep = sweep_raw if isinstance(sweep_raw, tuple) else _parse_sweep(str(sweep_raw))

    rho_raw = pick("rho", None)
    rho = float(rho_raw) if rho_raw is not None else None
    iso_kind = pick("iso", None)
    if iso_kind is not None and iso_kind not in ("independent", "correlated"):
        raise _ConfigError(f"iso must be independent or correlated, got {iso_kind!r}")
    if rho is not None:
        if iso_kind == "independent":
            raise _ConfigError("rho is set but the ISO is independent")
        iso = IsoSpec("correlated", rho)
    elif sweep is not None and sweep[0] == "rho":
        if iso_kind == "independent":
            raise _ConfigError("rho sweep conflicts with an independent ISO")
        iso = IsoSpec("correlated", sweep[1][0])  # placeholder; cells override
    elif iso_kind == "correlated":
        raise _ConfigError("correlated ISO requires rho")
    else:
        iso = IsoSpec("independent")

    fatigue_kind = str(pick("fatigue", "none"))
    if fatigue_kind not in _FATIGUE_FACTORIES:
        raise _ConfigError(f"fatigue must be one of {sorted(_FATIGUE_FACTORIES)}")
    problem_flag = str(pick("problem", "best"))
    if problem_flag not in _PROBLEM_NAMES:
        raise _ConfigError("problem must be best or good")
    screener_flag = str(pick("screener", "algo"))
    if screener_flag not in _SCREENER_NAMES:
        raise _ConfigError("screener must be algo or human")

    warnings = []
    problem = _PROBLEM_NAMES[problem_flag]
    if problem == "best_k" and (psi != 0.0 or (sweep is not None and sweep[0] == "psi")):
        warnings.append("psi has no effect on the best-k problem; ignoring it")

    try:
        config = SweepConfig(
            config_id=str(pick("id", "adhoc")),
            n=n,
            k=k,
            pr=pr,
            dist=dist,
            iso=iso,
            params=ProblemParams(k, q, psi),
            fatigue=_FATIGUE_FACTORIES[fatigue_kind](),
            compared=(problem, _SCREENER_NAMES[screener_flag]),
            runs=runs,
            master_seed=seed,
            sweep=sweep,
        )
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    return config, warnings


def _fmt_real(value) -> str:
    return "NA" if value is None else f"{value:.6f}"


def csv_rows(result: AggregateResult) -> list[list[str]]:
    """Data rows (no header), one per sweep cell, column order fixed."""
    config = result.config
    sweep_param = config.sweep[0] if config.sweep is not None else "none"
    rows = []
    for cell in result.cells:
        effective = (
            config if cell.sweep_value is None else config.with_value(cell.sweep_value)
        )
        rho = effective.iso.rho if effective.iso.kind == "correlated" else None
        rows.append([
            config.config_id,
            sweep_param,
            _fmt_real(cell.sweep_value),
            str(config.n),
            str(config.k),
            _fmt_real(effective.params.q),
            _fmt_real(effective.params.psi),
            _fmt_real(rho),
            _fmt_real(config.dist.mu),
            _fmt_real(config.dist.sigma),
            _fmt_real(config.pr),
            config.fatigue.kind,
            config.compared[0],
            config.compared[1],
            str(cell.runs_total),
            str(cell.runs_feasible),
            _fmt_real(cell.mean_rtb),
            _fmt_real(cell.sd_rtb),
            _fmt_real(cell.mean_jds),
            _fmt_real(cell.sd_jds),
            _fmt_real(cell.mean_frac_protected),
            _fmt_real(cell.mean_evaluated_count),
            str(config.master_seed),
        ])
    return rows


def write_csv(result: AggregateResult, path: str) -> None:
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(row) for row in csv_rows(result)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


class _Parser(argparse.ArgumentParser):
    # config mistakes must exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat JSON config file")
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--q", type=float)
    parser.add_argument("--psi", type=float)
    parser.add_argument("--rho", type=float)
    parser.add_argument("--dist", metavar="MU,SIGMA")
    parser.add_argument("--pr", type=float)
    parser.add_argument("--fatigue", choices=sorted(_FATIGUE_FACTORIES))
    parser.add_argument("--problem", choices=sorted(_PROBLEM_NAMES))
    parser.add_argument("--screener", choices=sorted(_SCREENER_NAMES))
    parser.add_argument("--runs", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--sweep", metavar="PARAM=V1,V2,...")
    parser.add_argument("--id", help="config id recorded in the output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="screensim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one sweep and write a CSV")
    _add_config_flags(run_p)
    run_p.add_argument("--out", metavar="PATH", required=True)
    run_p.add_argument("--threads", type=int, default=1,
                       help="worker processes; 0 = all cores; never changes results")

    suite_p = sub.add_parser("suite", help="run the bundled figure configs")
    suite_p.add_argument("--out", metavar="DIR", required=True)
    suite_p.add_argument("--runs", type=int)
    suite_p.add_argument("--seed", type=int)
    suite_p.add_argument("--threads", type=int, default=1)

    val_p = sub.add_parser("validate", help="check a config and print its normal form")
    _add_config_flags(val_p)
    return parser


def _flag_dict(args: argparse.Namespace) -> dict:
    keys = ("n", "k", "q", "psi", "rho", "dist", "pr", "fatigue",
            "problem", "screener", "runs", "seed", "sweep", "id")
    return {key: getattr(args, key, None) for key in keys}


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise _ConfigError("config file must hold a JSON object")
    return doc


def _assemble(args: argparse.Namespace) -> SweepConfig:
    file_doc = _load_config_file(args.config) if args.config else {}
    config, warnings = config_from_dict(file_doc, _flag_dict(args))
    for note in warnings:
        print(f"warning: {note}", file=sys.stderr)
    return config


def _cmd_run(args: argparse.Namespace) -> int:
    config = _assemble(args)
    result = run_sweep(config, threads=args.threads)
    write_csv(result, args.out)
    return 0


def _cmd_suite(args: argparse.Namespace) -> int:
    os.makedirs(args.out, exist_ok=True)
    for config in figure_suite():
        if args.runs is not None:
            config = replace(config, runs=args.runs)
        if args.seed is not None:
            config = replace(config, master_seed=args.seed)
        result = run_sweep(config, threads=args.threads)
        write_csv(result, os.path.join(args.out, f"{config.config_id}.csv"))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    config = _assemble(args)
    print(json.dumps(config_to_dict(config), indent=2))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    handlers = {"run": _cmd_run, "suite": _cmd_suite, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except _ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - runtime failures map to exit 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
