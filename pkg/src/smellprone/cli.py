"""Command-line entry point.

Exit status is 0 on success, 1 for invalid arguments or configuration and
2 when a pipeline stage fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import read_dataset
from .detection import ThresholdConfig, detect_smells
from .errors import ConfigError, SmellProneError, StageError
from .intensity import release_intensities, write_intensity_csv
from .metrics import compute_release_metrics, load_metrics_table, parse_release, write_metrics_table
from .ml.evaluation import EvaluationResult, cross_validate
from .ml.overlap import overlap_analysis
from .ml.ranking import gain_ratio_rank
from .pipeline import Experiment, ExperimentConfig, configure, run_experiment
from .report import emit_report

OK, INVALID, FAILED = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser, config_required: bool = False) -> None:
    p.add_argument("--config", type=Path, required=config_required, help="experiment config (JSON)")
    p.add_argument("--out", type=Path, help="output directory or file")
    p.add_argument("--seed", type=int, help="base seed (overrides the config)")
    p.add_argument("--resume", action="store_true", help="reuse artifacts of completed stages")
    p.add_argument("--threads", type=int, default=1, help="worker threads for cross-validation")
    p.add_argument("--thresholds", type=Path, help="JSON threshold overrides")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smellprone", description="Smell-aware change-proneness experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="parse a release and write its metric table")
    _common(p)
    p.add_argument("--source", type=Path, required=True, help="source tree of the release")
    p.add_argument("--release", required=True, help="release tag")

    p = sub.add_parser("detect", help="detect smells and intensity from a metric table")
    _common(p)
    p.add_argument("--metrics", type=Path, required=True, help="metric table CSV")

    for name, text in (("mine", "run extraction through history mining"),
                       ("assemble", "run extraction through dataset assembly")):
        _common(sub.add_parser(name, help=text), config_required=True)

    p = sub.add_parser("evaluate", help="cross-validate a dataset CSV")
    _common(p)
    p.add_argument("--dataset", type=Path, required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)

    p = sub.add_parser("rank", help="gain-ratio ranking of a dataset CSV")
    _common(p)
    p.add_argument("--dataset", type=Path, required=True)
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--resamples", type=int, default=20)

    p = sub.add_parser("overlap", help="true-positive overlap of two evaluations")
    _common(p)
    p.add_argument("evaluations", type=Path, nargs=2, metavar="EVALUATION_JSON")

    _common(sub.add_parser("report", help="summarize an artifacts directory (--out)"))
    _common(sub.add_parser("run", help="full pipeline and report"), config_required=True)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def _check(args) -> None:
    problems = []
    if args.threads < 1:
        problems.append("--threads: must be >= 1")
    if args.seed is not None and args.seed < 0:
        problems.append("--seed: must be >= 0")
    for name in ("k", "repeats", "bins", "resamples"):
        value = getattr(args, name, None)
        low = {"k": 2, "repeats": 1, "bins": 1, "resamples": 0}[name]
        if value is not None and value < low:
            problems.append(f"--{name}: must be >= {low}")
    if getattr(args, "lam", 0) < 0:
        problems.append("--lambda: must be >= 0")
    if problems:
        raise ConfigError(problems)


def _config(args) -> ExperimentConfig:
    return configure(ExperimentConfig.load(args.config), args.out, args.seed, args.thresholds)


def dispatch(args) -> int:
    _check(args)
    cmd = args.command
    if cmd == "run":
        summary = run_experiment(_config(args), resume=args.resume, threads=args.threads)
        for note in summary.skipped:
            print(f"skipped {note}", file=sys.stderr)
        print(f"{len(summary.evaluations)} evaluations written to {summary.out}")
    elif cmd in ("mine", "assemble"):
        exp = Experiment(_config(args), args.resume, args.threads)
        if cmd == "mine":
            exp.prepare()
            print(f"history features written to {exp.out / 'history.csv'}")
        else:
            for path in exp.assemble():
                print(path)
    elif cmd == "extract":
        with Experiment.stage_for("extract", args.release):
            model = parse_release(args.source, args.release)
            for dg in model.diagnostics:
                print(f"warning: {dg.file}: {dg.message}", file=sys.stderr)
            vectors = compute_release_metrics(model)
        out = args.out or Path(f"{args.release}-metrics.csv")
        write_metrics_table(vectors, out)
        print(out)
    elif cmd == "detect":
        with Experiment.stage_for("detect", str(args.metrics)):
            thresholds = ThresholdConfig.load(args.thresholds)
            tables = load_metrics_table(args.metrics)
            rows = []
            for release in sorted(tables):
                vectors = tables[release]
                smells = detect_smells(vectors, thresholds)
                values = release_intensities(vectors, smells, t=thresholds)
                rows += [(release, values[c]) for c in sorted(values)]
        out = args.out or args.metrics.with_name("intensity.csv")
        write_intensity_csv(out, rows)
        print(out)
    elif cmd == "evaluate":
        with Experiment.stage_for("cross_validate", str(args.dataset)):
            ds = read_dataset(args.dataset)
            seed = args.seed if args.seed is not None else 0
            result = cross_validate(ds, args.k, args.repeats, args.lam, seed, threads=args.threads)
        _emit(result.to_json(), args.out)
    elif cmd == "rank":
        with Experiment.stage_for("rank", str(args.dataset)):
            ds = read_dataset(args.dataset)
            ranks = gain_ratio_rank(ds, args.bins, args.resamples, args.seed or 0)
        _emit(ranks.to_csv(), args.out)
    elif cmd == "overlap":
        with Experiment.stage_for("overlap", " vs ".join(map(str, args.evaluations))):
            ra, rb = (EvaluationResult.from_dict(json.loads(p.read_text(encoding="utf-8")))
                      for p in args.evaluations)
            universe = ra.smelly_change_prone() | rb.smelly_change_prone()
            both, only_a, only_b = overlap_analysis(ra.true_positives() & universe,
                                                    rb.true_positives() & universe, universe)
        _emit(f"model_pair,both,only_a,only_b\n{ra.spec} vs {rb.spec},{both!r},{only_a!r},{only_b!r}\n",
              args.out)
    elif cmd == "report":
        target = args.out or (_config(args).out if args.config else None)
        if target is None:
            raise ConfigError(["--out: report needs the artifacts directory"])
        with Experiment.stage_for("report", str(target)):
            print(emit_report(target))
    return OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return INVALID
    try:
        return dispatch(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return INVALID
    except StageError as exc:
        print(f"stage {exc.stage} failed for {exc.key}: {exc.cause}", file=sys.stderr)
        return FAILED
    except SmellProneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
