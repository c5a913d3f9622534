"""Compare maps of two slices of the corpus, the way one would compare two years."""

import tempfile
from pathlib import Path

from coword.pipeline import PipelineConfig, compare_runs, fixture_manifest, run_pipeline

out = Path(tempfile.mkdtemp(prefix="coword-slices-"))

# early.tsv holds only the first three documents of one topic
early = run_pipeline(PipelineConfig(manifest=fixture_manifest("early.tsv"), mode="restricted", out=out / "early"))
later = run_pipeline(PipelineConfig(manifest=fixture_manifest(), mode="restricted", out=out / "all"))

for name, r in (("early", early), ("all", later)):
    g = r.report.graph
    print(f"{name:>6}: {g['nodes']} words, {g['edges']} links, groups of size {g['component_sizes']}")

print()
print(compare_runs(out / "early" / "report.json", out / "all" / "report.json"))
print("files written under", out)
