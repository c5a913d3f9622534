import json
import shutil

import pytest

from coword.cli import main, parse_args, read_config_file
from coword.errors import CowordWarning
from coword.pipeline import PipelineConfig, PipelineError, compare_runs, compare_stats, fixture_manifest, run_pipeline

OUTPUTS = {"map.net", "map.svg", "cosine.csv", "cooc.csv", "freq.tsv", "loadings.csv", "report.json", "occurrence.csv"}


def test_fixture_run_writes_everything(tmp_path):
    result = run_pipeline(PipelineConfig(out=tmp_path))
    assert {p.name for p in tmp_path.iterdir()} == OUTPUTS
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["config"]["threshold"] == 0.1
    assert report["config"]["threshold_source"] == "default"
    assert report["outputs"] == sorted(OUTPUTS)
    assert result.report.graph["nodes"] == report["graph"]["nodes"]


def test_restricted_default_and_override(tmp_path):
    a = run_pipeline(PipelineConfig(mode="restricted", out=tmp_path / "a"))
    assert a.report.config["threshold"] == 0.5
    b = run_pipeline(PipelineConfig(mode="restricted", threshold=0.3, out=tmp_path / "b"))
    assert b.report.config["threshold"] == 0.3
    assert b.report.config["threshold_source"] == "override"


def test_every_option_echoed(tmp_path):
    result = run_pipeline(PipelineConfig(out=tmp_path))
    echoed = set(result.report.config)
    for name in PipelineConfig.__dataclass_fields__:
        if name in ("out",):
            continue
        assert name in echoed or f"layout_{name}" in echoed, name


def test_pearson_binary_sentence_run(tmp_path):
    cfg = PipelineConfig(measure="pearson", matrix="binary", unit="sentence", threshold=0.2,
                         edge_length="inverse-weight", out=tmp_path)
    result = run_pipeline(cfg)
    assert (tmp_path / "pearson.csv").exists()
    assert result.report.graph["measure"] == "pearson"


def test_stage_named_in_errors(tmp_path):
    with pytest.raises(PipelineError) as info:
        run_pipeline(PipelineConfig(manifest=tmp_path / "none.tsv", out=tmp_path / "o"))
    assert info.value.stage == "corpus_io"


def test_threshold_too_high_is_reported(tmp_path):
    with pytest.warns(CowordWarning):
        with pytest.raises(PipelineError, match="semgraph"):
            run_pipeline(PipelineConfig(threshold=1.0, out=tmp_path))
    assert (tmp_path / "cosine.csv").exists()


def test_invalid_config():
    with pytest.raises(ValueError):
        PipelineConfig(mode="loose")
    with pytest.raises(ValueError):
        PipelineConfig(threshold=2.0)
    with pytest.raises(ValueError):
        PipelineConfig(min_freq=0)


def test_compare_identical_and_missing(tmp_path):
    run_pipeline(PipelineConfig(out=tmp_path))
    path = tmp_path / "report.json"
    stats = compare_stats(path, path)
    assert all(delta == 0 for _, _, delta in stats.values())
    old = json.loads(path.read_text())
    del old["graph"]["density"]
    old_path = tmp_path / "old.json"
    old_path.write_text(json.dumps(old))
    table = compare_runs(old_path, path)
    density_row = next(line for line in table.splitlines() if line.startswith("graph.density"))
    assert density_row.split()[1] == "n/a" and density_row.split()[-1] == "n/a"


def test_compare_year_slices(tmp_path):
    early = run_pipeline(PipelineConfig(manifest=fixture_manifest("early.tsv"), mode="restricted", out=tmp_path / "e"))
    full = run_pipeline(PipelineConfig(mode="restricted", out=tmp_path / "f"))
    stats = compare_stats(early.report, full.report)
    assert stats["graph.components"][2] > 0
    assert stats["graph.density"][2] < 0


def test_compare_version_mismatch_warns(tmp_path):
    run_pipeline(PipelineConfig(out=tmp_path))
    data = json.loads((tmp_path / "report.json").read_text())
    data["format_version"] = 0
    with pytest.warns(CowordWarning, match="different versions"):
        compare_stats(data, tmp_path / "report.json")


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nmode = restricted\nmin-freq=3\nsize_by_units=true\n")
    assert read_config_file(cfg) == {"mode": "restricted", "min_freq": "3", "size_by_units": "true"}
    args = parse_args(["--config", str(cfg), "--min-freq", "4"])
    assert args.mode == "restricted"
    assert args.min_freq == 4
    assert args.size_by_units is True


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour=red\n")
    with pytest.raises(SystemExit):
        parse_args(["--config", str(cfg)])


def test_cli_run_and_compare(tmp_path, capsys):
    assert main(["--mode", "restricted", "--out", str(tmp_path / "r")]) == 0
    assert "component(s)" in capsys.readouterr().out
    rep = str(tmp_path / "r" / "report.json")
    assert main(["--compare", rep, rep]) == 0
    assert "graph.edges" in capsys.readouterr().out


def test_cli_error_exit(tmp_path, capsys):
    assert main(["--manifest", str(tmp_path / "nope.tsv"), "--out", str(tmp_path / "o")]) == 1
    assert "corpus_io" in capsys.readouterr().err


def test_cli_user_stopwords(tmp_path):
    stop = tmp_path / "stop.txt"
    stop.write_text("the\nof\nand\n")
    assert main(["--stopwords", str(stop), "--out", str(tmp_path / "o"), "--max-words", "30"]) == 0
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["config"]["stopwords"] == "user-file"
    assert report["corpus"]["selected_words"] <= 30


def test_fixture_copy_runs_from_elsewhere(tmp_path):
    src = fixture_manifest().parent
    shutil.copytree(src, tmp_path / "fx")
    result = run_pipeline(PipelineConfig(manifest=tmp_path / "fx" / "manifest.tsv", out=tmp_path / "o"))
    assert result.report.corpus["documents"] == 12
