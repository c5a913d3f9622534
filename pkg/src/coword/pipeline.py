"""End-to-end runs: corpus -> words -> matrices -> graph -> layout -> files."""

from __future__ import annotations

import contextlib
import warnings
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from coword import __version__
from coword.corpus_io import GRANULARITIES, load_corpus, read_units
from coword.errors import CowordError, CowordWarning
from coword.export_io import (
    FORMAT_VERSION,
    RunReport,
    SvgOptions,
    read_report,
    write_freqlist,
    write_loadings_csv,
    write_matrix_csv,
    write_pajek,
    write_report,
    write_svg,
)
from coword.factors import FactorModel, correlation_matrix, drop_constant_columns, factor_analysis
from coword.layout import LayoutConfig, kk_layout
from coword.lexicon import StopWordList, build_vocabulary, select_words
from coword.semgraph import THRESHOLDS, build_graph, components, prune_isolated, resolve_threshold
from coword.vsm import MEASURES, MODES, build_occurrence_matrix, cooccurrence, similarity


class PipelineError(CowordError):
    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@contextlib.contextmanager
def _stage(name):
    try:
        yield
    except PipelineError:
        raise
    except (CowordError, ValueError, OSError) as exc:
        raise PipelineError(name, exc) from exc


def fixture_manifest(name="manifest.tsv") -> Path:
    """Path of a manifest in the bundled two-topic fixture corpus."""
    return Path(str(resources.files("coword").joinpath("data/fixture", name)))


@dataclass(frozen=True)
class PipelineConfig:
    manifest: str | Path | None = None
    unit: str = "paragraph"
    mode: str = "elaborate"
    min_freq: int = 2
    max_words: int = 100
    threshold: float | None = None
    measure: str = "cosine"
    matrix: str = "counts"
    edge_length: str = "unit"
    seed: int = 0
    stopwords: str | Path | None = None
    out: str | Path = "coword-out"
    factors: str = "kaiser"
    size_by_units: bool = False
    tolerance: float | None = None
    max_iterations: int | None = None

    def __post_init__(self):
        checks = [
            (self.unit in GRANULARITIES, f"unit must be one of {GRANULARITIES}"),
            (self.mode in THRESHOLDS, f"mode must be one of {tuple(THRESHOLDS)}"),
            (self.measure in MEASURES, f"measure must be one of {MEASURES}"),
            (self.matrix in MODES, f"matrix must be one of {MODES}"),
            (self.edge_length in ("unit", "inverse_weight", "inverse-weight"),
             "edge_length must be 'unit' or 'inverse-weight'"),
            (int(self.min_freq) >= 1, "min_freq must be >= 1"),
            (int(self.max_words) >= 1, "max_words must be >= 1"),
            (self.factors == "kaiser" or str(self.factors).isdigit(), "factors must be 'kaiser' or an integer"),
        ]
        if self.threshold is not None and self.measure == "cosine":
            checks.append((0.0 <= float(self.threshold) <= 1.0, "cosine threshold must lie in [0, 1]"))
        for ok, message in checks:
            if not ok:
                raise ValueError(message)

    @property
    def resolved_threshold(self) -> float:
        return resolve_threshold(self.mode, self.threshold)

    def layout_config(self) -> LayoutConfig:
        return LayoutConfig(
            edge_length_mode=self.edge_length.replace("-", "_"),
            tolerance=self.tolerance,
            max_outer_iterations=self.max_iterations,
            seed=int(self.seed),
        )

    def echo(self, manifest, stoplist) -> dict:
        return {
            "manifest": str(manifest),
            "unit": self.unit,
            "mode": self.mode,
            "min_freq": int(self.min_freq),
            "max_words": int(self.max_words),
            "threshold": self.resolved_threshold,
            "threshold_source": "default" if self.threshold is None else "override",
            "measure": self.measure,
            "matrix": self.matrix,
            "edge_length": self.edge_length.replace("_", "-"),
            "seed": int(self.seed),
            "stopwords": stoplist.origin,
            "stopwords_path": None if self.stopwords is None else str(self.stopwords),
            "stopword_count": len(stoplist),
            "factors": str(self.factors),
            "size_by_units": bool(self.size_by_units),
            "layout_tolerance": "1e-5*L" if self.tolerance is None else float(self.tolerance),
            "layout_max_iterations": "100*|V|" if self.max_iterations is None else int(self.max_iterations),
        }


@dataclass
class PipelineResult:
    report: RunReport
    files: list
    artifacts: dict = field(default_factory=dict, repr=False)


def run_pipeline(config: PipelineConfig, workers: int = 1) -> PipelineResult:
    """Run every stage and write all artifacts into ``config.out``.

    ``workers`` only affects speed: outputs are identical for any value.
    Raises PipelineError naming the failing stage.
    """
    manifest = config.manifest if config.manifest is not None else fixture_manifest()
    out = Path(config.out)
    with _stage("export_io"):
        out.mkdir(parents=True, exist_ok=True)

    with _stage("corpus_io"):
        docs = load_corpus(manifest)
        units, empty = read_units(docs, config.unit, workers)
        if not units:
            raise CowordError("no textual units in the corpus")

    with _stage("lexicon"):
        stoplist = StopWordList.bundled() if config.stopwords is None else StopWordList.from_file(config.stopwords)
        vocab = build_vocabulary(units, stoplist, workers)
        selection = select_words(vocab, int(config.min_freq), int(config.max_words))
        if not len(selection):
            raise CowordError(f"no word occurs at least {config.min_freq} times")

    with _stage("vsm"):
        occ = build_occurrence_matrix(units, selection, config.matrix)
        cooc = cooccurrence(occ)
        sim = similarity(occ, config.measure)

    threshold = config.resolved_threshold
    with _stage("semgraph"):
        full = build_graph(sim, occ.cols, threshold)
        graph = prune_isolated(full)
        comps = components(graph)

    with _stage("factors"):
        model = _factor_model(occ, config.factors)

    report = RunReport(config=config.echo(manifest, stoplist))
    report.corpus = {
        "documents": len(docs),
        "empty_documents": list(empty),
        "units": len(units),
        "tokens": vocab.n_tokens,
        "vocabulary_size": len(vocab),
        "selected_words": len(selection),
        "matrix_columns": len(occ.cols),
        "effective_min_freq": selection.min_freq,
        "lowest_selected_freq": selection.floor_freq,
        "selection_truncated": selection.truncated,
    }
    report.graph = {
        "threshold": threshold,
        "measure": sim.measure,
        "nodes": graph.n_nodes,
        "edges": graph.n_edges,
        "components": len(comps),
        "component_sizes": [len(c) for c in comps],
        "density": graph.density(),
        "pruned_count": len(graph.pruned),
        "pruned_words": list(graph.pruned),
    }
    report.factors = {
        "retention": model.retention,
        "retained": model.k,
        "eigenvalues": [float(v) for v in model.eigenvalues],
        "variance_explained": [float(v) for v in model.variance_explained[:model.k]],
        "dropped_constant": list(model.dropped),
    }

    files = []
    with _stage("export_io"):
        labels = occ.labels
        files.append(write_freqlist(vocab, out / "freq.tsv"))
        files.append(write_matrix_csv(occ.dense(), occ.rows, labels, out / "occurrence.csv"))
        files.append(write_matrix_csv(cooc, labels, labels, out / "cooc.csv"))
        files.append(write_matrix_csv(sim.values, labels, labels, out / f"{sim.measure}.csv"))
        files.append(write_loadings_csv(model, out / "loadings.csv"))

    if not graph.nodes:
        raise PipelineError("semgraph", f"no edges at threshold {threshold}; nothing to map")

    with _stage("layout"):
        embedding = kk_layout(graph, config.layout_config(), workers)
    report.layout = {
        "energy": embedding.energy,
        "iterations": embedding.iterations,
        "converged": embedding.converged,
        "components": [
            {"size": len(c.word_ids), "energy": c.energy, "iterations": c.iterations,
             "converged": c.converged, "edge_unit": c.edge_unit}
            for c in embedding.components
        ],
    }
    if not embedding.converged:
        warnings.warn("layout stopped at the iteration limit before converging", CowordWarning, stacklevel=2)

    with _stage("export_io"):
        files.append(write_pajek(graph, embedding, out / "map.net"))
        files.append(write_svg(graph, embedding, out / "map.svg", SvgOptions(size_by_units=config.size_by_units)))
        report.outputs = sorted(p.name for p in files) + ["report.json"]
        files.append(write_report(report, out / "report.json"))

    artifacts = {
        "documents": docs, "units": units, "vocabulary": vocab, "selection": selection,
        "occurrence": occ, "cooccurrence": cooc, "similarity": sim, "graph_unpruned": full,
        "graph": graph, "components": comps, "embedding": embedding, "factors": model,
    }
    return PipelineResult(report, files, artifacts)


def _factor_model(occ, retention):
    keep, dropped = drop_constant_columns(occ)
    labels = [occ.labels[j] for j in keep]
    if len(keep) < 2:
        empty = np.zeros(0)
        return FactorModel(empty, np.zeros((0, 0)), 0, empty, "skipped", tuple(labels), tuple(dropped))
    corr = correlation_matrix(occ.cells[:, keep])
    model = factor_analysis(corr, "kaiser" if retention == "kaiser" else int(retention), labels)
    return replace(model, dropped=tuple(dropped))


COMPARED = [
    ("corpus", "units"),
    ("corpus", "selected_words"),
    ("graph", "nodes"),
    ("graph", "edges"),
    ("graph", "components"),
    ("graph", "density"),
]


def compare_stats(report_a, report_b) -> dict:
    """Per-field ``(a, b, b - a)``; a missing field gives ``None`` for its delta."""
    a, b = (read_report(r) if isinstance(r, (str, Path)) else _as_dict(r) for r in (report_a, report_b))
    va, vb = a.get("format_version"), b.get("format_version")
    if va != vb or a.get("tool_version") != b.get("tool_version"):
        warnings.warn(
            f"comparing reports from different versions ({a.get('tool_version')}/{va} vs "
            f"{b.get('tool_version')}/{vb}); diff is best effort",
            CowordWarning,
            stacklevel=2,
        )
    rows = {}
    for section, key in COMPARED:
        x = a.get(section, {}).get(key)
        y = b.get(section, {}).get(key)
        delta = y - x if isinstance(x, (int, float)) and isinstance(y, (int, float)) else None
        rows[f"{section}.{key}"] = (x, y, delta)
    return rows


def compare_runs(report_a, report_b) -> str:
    """Tabulate graph statistics of two runs (e.g. two year slices) and their deltas."""

    def show(v):
        if v is None:
            return "n/a"
        return f"{v:.6f}" if isinstance(v, float) else str(v)

    rows = compare_stats(report_a, report_b)
    lines = [f"{'field':<22}{'a':>12}{'b':>12}{'delta':>12}"]
    for name, (x, y, d) in rows.items():
        if isinstance(d, float) or isinstance(x, float) or isinstance(y, float):
            d = None if d is None else float(d)
        lines.append(f"{name:<22}{show(x):>12}{show(y):>12}{show(d):>12}")
    return "\n".join(lines) + "\n"


def _as_dict(report):
    return report.to_dict() if hasattr(report, "to_dict") else dict(report)


__all__ = [
    "FORMAT_VERSION",
    "PipelineConfig",
    "PipelineError",
    "PipelineResult",
    "compare_runs",
    "compare_stats",
    "fixture_manifest",
    "run_pipeline",
    "__version__",
]
