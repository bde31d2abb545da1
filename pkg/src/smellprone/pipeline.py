"""End-to-end experiment runs driven by a JSON configuration.

Layout of an output directory::

    config.json                  resolved configuration
    releases/<tag>/metrics.csv   per-entity metric vectors
    releases/<tag>/snapshot.json packages, LOC and token bags per class
    releases/<tag>/smells.csv    detected smell instances
    releases/<tag>/intensity.csv class intensity
    history.csv                  history features and labels, all releases
    models/<tag>/<spec>/{dataset.csv,evaluation.json,ranks.csv}
    models/<tag>/overlap.csv     pairwise overlap of true positives
    summary.md, plots/*.csv      written by the report stage
"""

from __future__ import annotations

import contextlib
import csv
import io
import json
import os
from collections import Counter
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations
from pathlib import Path
from typing import Iterator

from .dataset import ModelSpec, assemble_dataset, clean_dataset, read_dataset, write_dataset
from .detection import ThresholdConfig, detect_smells
from .errors import ConfigError, ContractViolation, SmellProneError, StageError
from .history.antipattern import LONGEST, RECENT
from .history.features import (
    ReleaseSnapshot,
    mine_history_features,
    read_history_features,
    write_history_features,
)
from .history.ingest import (
    ClassPathMapper,
    _assemble,
    git_log_records,
    history_from_log,
    parse_log_records,
    read_log_export,
)
from .intensity import IntensityConfig, read_intensity_csv, release_intensities, write_intensity_csv
from .metrics import compute_release_metrics, load_metrics_table, parse_release, write_metrics_table
from .metrics.model import CLASS
from .ml.evaluation import EvaluationResult, cross_validate
from .ml.overlap import overlap_analysis
from .ml.ranking import gain_ratio_rank
from .ml.vif import vif_filter

STAGES = ("extract", "detect", "intensity", "mine", "assemble", "clean", "vif",
          "cross_validate", "rank", "overlap")


@dataclass(frozen=True)
class Release:
    tag: str
    source: Path


@dataclass(frozen=True)
class CVConfig:
    k: int = 10
    repeats: int = 100
    base_seed: int = 0
    lam: float = 1.0


@dataclass(frozen=True)
class ExperimentConfig:
    project: str
    releases: tuple[Release, ...]
    history: Path
    specs: tuple[ModelSpec, ...]
    cv: CVConfig = CVConfig()
    out: Path = Path("out")
    thresholds: Path | None = None
    intensity: IntensityConfig = IntensityConfig()
    arl_mode: str = LONGEST
    rank_bins: int = 10
    rank_resamples: int = 20

    @classmethod
    def from_dict(cls, data, base_dir: Path | str = ".") -> "ExperimentConfig":
        """Validate a parsed JSON config; every violated field is reported at once."""
        base = Path(base_dir)
        problems: list[str] = []
        if not isinstance(data, dict):
            raise ConfigError(["config: must be a JSON object"])

        def path_of(value, name):
            if not isinstance(value, str) or not value:
                problems.append(f"{name}: must be a non-empty path string")
                return None
            p = Path(value)
            return p if p.is_absolute() else base / p

        project = data.get("project")
        if not isinstance(project, str) or not project:
            problems.append("project: must be a non-empty string")
        releases = []
        raw = data.get("releases")
        if not isinstance(raw, list) or not raw:
            problems.append("releases: must list at least one release")
            raw = []
        tags = set()
        for i, rel in enumerate(raw):
            if not isinstance(rel, dict):
                problems.append(f"releases[{i}]: must be an object with tag and source")
                continue
            tag = rel.get("tag")
            if not isinstance(tag, str) or not tag:
                problems.append(f"releases[{i}].tag: must be a non-empty string")
            elif tag in tags:
                problems.append(f"releases[{i}].tag: duplicate tag {tag!r}")
            else:
                tags.add(tag)
            src = path_of(rel.get("source"), f"releases[{i}].source")
            if isinstance(tag, str) and src is not None:
                releases.append(Release(tag, src))
        history = path_of(data.get("history"), "history")
        specs = []
        raw_specs = data.get("specs")
        if not isinstance(raw_specs, list) or not raw_specs:
            problems.append("specs: must list at least one model spec")
            raw_specs = []
        for i, s in enumerate(raw_specs):
            try:
                spec = ModelSpec.parse(s) if isinstance(s, str) else None
            except ContractViolation as exc:
                problems.append(f"specs[{i}]: {exc}")
                continue
            if spec is None:
                problems.append(f"specs[{i}]: must be a string like 'SM+intensity'")
            elif spec in specs:
                problems.append(f"specs[{i}]: duplicate spec {spec.label}")
            else:
                specs.append(spec)
        cv_raw = data.get("cv", {})
        cv = CVConfig()
        if not isinstance(cv_raw, dict):
            problems.append("cv: must be an object")
            cv_raw = {}
        checks = {"k": (int, 2), "repeats": (int, 1), "base_seed": (int, 0), "lambda": ((int, float), 0)}
        cv_vals = {}
        for key, (typ, low) in checks.items():
            if key not in cv_raw:
                continue
            v = cv_raw[key]
            if isinstance(v, bool) or not isinstance(v, typ) or v < low:
                problems.append(f"cv.{key}: must be a number >= {low}" if key == "lambda"
                                else f"cv.{key}: must be an integer >= {low}")
            else:
                cv_vals[key] = v
        if cv_vals:
            cv = CVConfig(cv_vals.get("k", cv.k), cv_vals.get("repeats", cv.repeats),
                          cv_vals.get("base_seed", cv.base_seed), float(cv_vals.get("lambda", cv.lam)))
        out = path_of(data["out"], "out") if "out" in data else base / "out"
        thresholds = path_of(data["thresholds"], "thresholds") if data.get("thresholds") is not None else None
        intensity = IntensityConfig()
        if "intensity" in data:
            try:
                intensity = IntensityConfig(**data["intensity"])
            except (TypeError, ContractViolation) as exc:
                problems.append(f"intensity: {exc}")
        arl_mode = data.get("arl_mode", LONGEST)
        if arl_mode not in (LONGEST, RECENT):
            problems.append(f"arl_mode: must be {LONGEST!r} or {RECENT!r}")
        rank = data.get("rank", {})
        bins = rank.get("bins", 10) if isinstance(rank, dict) else None
        resamples = rank.get("resamples", 20) if isinstance(rank, dict) else None
        if not isinstance(bins, int) or isinstance(bins, bool) or bins < 1:
            problems.append("rank.bins: must be an integer >= 1")
        if not isinstance(resamples, int) or isinstance(resamples, bool) or resamples < 0:
            problems.append("rank.resamples: must be an integer >= 0")
        if problems:
            raise ConfigError(problems)
        return cls(project, tuple(releases), history, tuple(specs), cv, out, thresholds,
                   intensity, arl_mode, bins, resamples)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError([f"config: file not found: {path}"]) from None
        except json.JSONDecodeError as exc:
            raise ConfigError([f"config: invalid JSON ({exc.msg} at line {exc.lineno})"]) from None
        return cls.from_dict(data, path.parent)

    def to_dict(self, relative_to: Path | None = None) -> dict:
        def show(p: Path) -> str:
            if relative_to is None:
                return p.as_posix()
            return Path(os.path.relpath(p, relative_to)).as_posix()

        return {
            "project": self.project,
            "releases": [{"tag": r.tag, "source": show(r.source)} for r in self.releases],
            "history": show(self.history),
            "specs": [s.label for s in self.specs],
            "cv": {"k": self.cv.k, "repeats": self.cv.repeats, "base_seed": self.cv.base_seed,
                   "lambda": self.cv.lam},
            "thresholds": show(self.thresholds) if self.thresholds else None,
            "intensity": asdict(self.intensity),
            "arl_mode": self.arl_mode,
            "rank": {"bins": self.rank_bins, "resamples": self.rank_resamples},
        }


def _write_text(path: Path, text: str) -> None:
    """Write via a temporary file so an interrupted stage never leaves a complete-looking artifact."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


@contextlib.contextmanager
def _atomic(path: Path) -> Iterator[Path]:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    yield tmp
    os.replace(tmp, path)


def _safe(label: str) -> str:
    return label.replace("+", "_")


@dataclass
class RunSummary:
    out: Path
    evaluations: list[Path] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)


class Experiment:
    """One run of the pipeline; each stage caches its artifacts under ``config.out``."""

    def __init__(self, config: ExperimentConfig, resume: bool = False, threads: int = 1):
        self.config = config
        self.out = Path(config.out)
        self.resume = resume
        self.threads = max(1, threads)
        self._models = {}
        self._logs = None

    @staticmethod
    @contextlib.contextmanager
    def stage_for(name: str, key: str) -> Iterator[None]:
        """Re-raise failures inside the block as StageError(name, key)."""
        try:
            yield
        except (StageError, ConfigError):
            raise
        except (SmellProneError, OSError, ValueError) as exc:
            raise StageError(name, key, exc) from exc

    def stage(self, name: str, key: str):
        return self.stage_for(name, key)

    def _cached(self, *paths: Path) -> bool:
        return self.resume and all(p.exists() for p in paths)

    def release_dir(self, tag: str) -> Path:
        return self.out / "releases" / tag

    # extraction ---------------------------------------------------------

    def extract(self, rel: Release):
        d = self.release_dir(rel.tag)
        metrics_path, snap_path = d / "metrics.csv", d / "snapshot.json"
        with self.stage("extract", rel.tag):
            if self._cached(metrics_path, snap_path):
                vectors = load_metrics_table(metrics_path).get(rel.tag, [])
                snap = json.loads(snap_path.read_text(encoding="utf-8"))
                return vectors, snap
            model = parse_release(rel.source, rel.tag)
            vectors = compute_release_metrics(model)
            snap = {
                "release": rel.tag,
                "packages": {c.qualified_name: list(c.package_path) for c in model.classes},
                "loc": {c.qualified_name: c.loc for c in model.classes},
                "token_bags": {c.qualified_name: dict(sorted(c.token_bag.items()))
                               for c in model.classes},
                "diagnostics": [f"{dg.file}: {dg.message}" for dg in model.diagnostics],
            }
            d.mkdir(parents=True, exist_ok=True)
            with _atomic(metrics_path) as tmp:
                write_metrics_table(vectors, tmp)
            _write_text(snap_path, json.dumps(snap, indent=1, sort_keys=True) + "\n")
            return vectors, snap

    def detect(self, rel: Release, vectors, thresholds: ThresholdConfig):
        path = self.release_dir(rel.tag) / "smells.csv"
        with self.stage("detect", rel.tag):
            smells = detect_smells(vectors, thresholds)
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["release", "kind", "entity", "owner", "predicates"])
            for s in smells:
                preds = ";".join(f"{p.metric}{p.op}{p.threshold!r}={p.actual!r}"
                                 for p in s.satisfied_predicates)
                w.writerow([rel.tag, s.kind, s.entity, s.owner, preds])
            _write_text(path, buf.getvalue())
            return smells

    def intensity(self, rel: Release, vectors, smells, thresholds: ThresholdConfig):
        path = self.release_dir(rel.tag) / "intensity.csv"
        with self.stage("intensity", rel.tag):
            if self._cached(path):
                return {cls: ci for (_, cls), ci in read_intensity_csv(path).items()}
            values = release_intensities(vectors, smells, config=self.config.intensity, t=thresholds)
            with _atomic(path) as tmp:
                write_intensity_csv(tmp, [(rel.tag, values[k]) for k in sorted(values)])
            return values

    # history --------------------------------------------------------------

    def _windows(self):
        tags = [r.tag for r in self.config.releases]
        bounds = [(None, tags[0])] + list(zip(tags, tags[1:])) + [(tags[-1], None)]
        return bounds

    def _histories(self, known: set[str]):
        src = Path(self.config.history)
        mapper = ClassPathMapper(known)
        histories = []
        if src.is_dir():
            for window in self._windows():
                log = parse_log_records(git_log_records(src, window), str(src))
                histories.append(_assemble(log.entries, log.final_path, mapper, window))
        else:
            log = read_log_export(src)
            for window in self._windows():
                histories.append(history_from_log(log, window, mapper))
        # a trailing window without commits cannot label the last release
        if not histories[-1].commits:
            histories.pop()
        return histories

    def mine(self, snapshots: list[ReleaseSnapshot]):
        path = self.out / "history.csv"
        with self.stage("mine", self.config.project):
            if self._cached(path):
                return read_history_features(path)
            known = set().union(*(s.classes for s in snapshots))
            histories = self._histories(known)
            rows = mine_history_features(snapshots, histories, arl_mode=self.config.arl_mode)
            with _atomic(path) as tmp:
                write_history_features(tmp, rows)
            return rows

    # modelling ----------------------------------------------------------

    def model_dir(self, tag: str, spec: ModelSpec) -> Path:
        return self.out / "models" / tag / _safe(spec.label)

    def build_dataset(self, tag: str, spec: ModelSpec, metrics, intensities, history_rows):
        """Assemble, clean and VIF-filter one dataset, writing dataset.csv."""
        key = f"{tag}/{spec.label}"
        path = self.model_dir(tag, spec) / "dataset.csv"
        if self._cached(path):
            with self.stage("assemble", key):
                return read_dataset(path)
        with self.stage("assemble", key):
            labels = {(tag, r["class"]): r["label"] for r in history_rows}
            hist = {(tag, r["class"]): r for r in history_rows}
            ds = assemble_dataset(spec, {(tag, c): v for c, v in metrics.items()},
                                  {(tag, c): v for c, v in intensities.items()}, hist, labels)
        with self.stage("clean", key):
            ds = clean_dataset(ds)
        with self.stage("vif", key):
            if len(ds.features) >= 2 and len(ds.rows) >= len(ds.features) + 1:
                ds, _ = vif_filter(ds)
            with _atomic(path) as tmp:
                write_dataset(ds, tmp)
        return ds

    def evaluate_release(self, tag: str, spec: ModelSpec, metrics, intensities, history_rows):
        key = f"{tag}/{spec.label}"
        d = self.model_dir(tag, spec)
        eval_path, ranks_path = d / "evaluation.json", d / "ranks.csv"
        ds = self.build_dataset(tag, spec, metrics, intensities, history_rows)
        cv = self.config.cv
        if self._cached(eval_path):
            result = EvaluationResult.from_dict(json.loads(eval_path.read_text(encoding="utf-8")))
        else:
            with self.stage("cross_validate", key):
                result = cross_validate(ds, cv.k, cv.repeats, cv.lam, cv.base_seed,
                                        threads=self.threads)
            _write_text(eval_path, result.to_json())
        if not self._cached(ranks_path):
            with self.stage("rank", key):
                ranks = gain_ratio_rank(ds, self.config.rank_bins, self.config.rank_resamples,
                                        cv.base_seed)
                _write_text(ranks_path, ranks.to_csv())
        return result

    def overlap(self, tag: str, results: dict[str, EvaluationResult]):
        path = self.out / "models" / tag / "overlap.csv"
        with self.stage("overlap", tag):
            lines = ["model_pair,both,only_a,only_b"]
            for a, b in combinations(sorted(results), 2):
                ra, rb = results[a], results[b]
                universe = ra.smelly_change_prone() | rb.smelly_change_prone()
                both, only_a, only_b = overlap_analysis(ra.true_positives() & universe,
                                                        rb.true_positives() & universe, universe)
                lines.append(f"{a} vs {b},{both!r},{only_a!r},{only_b!r}")
            _write_text(path, "\n".join(lines) + "\n")

    def prepare(self):
        """Extraction through mining; returns per-release inputs and history rows by release."""
        cfg = self.config
        self.out.mkdir(parents=True, exist_ok=True)
        _write_text(self.out / "config.json",
                    json.dumps(cfg.to_dict(self.out), indent=2, sort_keys=True) + "\n")
        with self.stage("detect", "thresholds"):
            thresholds = ThresholdConfig.load(cfg.thresholds)
        snapshots, per_release = [], {}
        for rel in cfg.releases:
            vectors, snap = self.extract(rel)
            d = self.release_dir(rel.tag)
            if self._cached(d / "smells.csv", d / "intensity.csv"):
                intens = self.intensity(rel, vectors, None, thresholds)
            else:
                smells = self.detect(rel, vectors, thresholds)
                intens = self.intensity(rel, vectors, smells, thresholds)
            smell_counts = {c: len(ci.kinds) for c, ci in intens.items() if ci.kinds}
            snapshots.append(ReleaseSnapshot(
                rel.tag, {c: tuple(p) for c, p in snap["packages"].items()},
                {c: Counter(b) for c, b in snap["token_bags"].items()},
                dict(snap["loc"]), smell_counts))
            class_vectors = {v.qualified_name: v for v in vectors if v.kind == CLASS}
            per_release[rel.tag] = (class_vectors, intens)
        by_release: dict[str, list] = {}
        for row in self.mine(snapshots):
            by_release.setdefault(row["release"], []).append(row)
        return per_release, by_release

    def assemble(self) -> list[Path]:
        """Stages up to VIF filtering; returns the dataset paths written."""
        per_release, by_release = self.prepare()
        paths = []
        for rel in self.config.releases:
            rows = by_release.get(rel.tag)
            if not rows:
                continue
            metrics, intens = per_release[rel.tag]
            for spec in self.config.specs:
                self.build_dataset(rel.tag, spec, metrics, intens, rows)
                paths.append(self.model_dir(rel.tag, spec) / "dataset.csv")
        return paths

    def run(self) -> RunSummary:
        per_release, by_release = self.prepare()
        summary = RunSummary(self.out)
        for rel in self.config.releases:
            rows = by_release.get(rel.tag)
            if not rows:
                summary.skipped.append(f"{rel.tag}: no following history window to label it")
                continue
            metrics, intens = per_release[rel.tag]
            results = {}
            for spec in self.config.specs:
                results[spec.label] = self.evaluate_release(rel.tag, spec, metrics, intens, rows)
                summary.evaluations.append(self.model_dir(rel.tag, spec) / "evaluation.json")
            self.overlap(rel.tag, results)
        return summary


def configure(config: ExperimentConfig, out=None, seed=None, thresholds=None) -> ExperimentConfig:
    """Apply command-line overrides to a loaded config."""
    if out is not None:
        config = replace(config, out=Path(out))
    if seed is not None:
        config = replace(config, cv=replace(config.cv, base_seed=seed))
    if thresholds is not None:
        config = replace(config, thresholds=Path(thresholds))
    return config


def run_experiment(config: ExperimentConfig, resume: bool = False, threads: int = 1,
                   out: Path | str | None = None, seed: int | None = None,
                   thresholds: Path | str | None = None) -> RunSummary:
    """Run every stage and the report; raises StageError naming the failed stage."""
    from .report import emit_report

    config = configure(config, out, seed, thresholds)
    summary = Experiment(config, resume, threads).run()
    with Experiment.stage_for("report", str(config.out)):
        emit_report(config.out)
    return summary
