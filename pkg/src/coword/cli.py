"""Command line entry point.

    coword --manifest corpus.tsv --unit paragraph --mode elaborate --out maps/
    coword --compare maps1996/report.json maps2003/report.json

Options may also come from a flat ``key=value`` file given with
``--config``; flags on the command line take precedence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from coword import __version__
from coword.errors import CowordError
from coword.pipeline import PipelineConfig, compare_runs, run_pipeline


def read_config_file(path) -> dict:
    """Parse ``key=value`` lines; keys use flag spelling with or without dashes."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coword",
        description="Build cosine-normalized co-word maps from a set of documents.",
    )
    p.add_argument("--config", help="flat key=value file with defaults for the flags below")
    p.add_argument("--manifest", help="tab-separated path/media/label list (default: bundled fixture)")
    p.add_argument("--unit", choices=["document", "paragraph", "sentence", "title"], default="paragraph")
    p.add_argument("--mode", choices=["restricted", "elaborate"], default="elaborate",
                   help="sets the default threshold: restricted 0.5, elaborate 0.1")
    p.add_argument("--min-freq", type=int, default=2)
    p.add_argument("--max-words", type=int, default=100)
    p.add_argument("--threshold", type=float, default=None, help="overrides the mode's threshold")
    p.add_argument("--measure", choices=["cosine", "pearson"], default="cosine")
    p.add_argument("--matrix", choices=["counts", "binary"], default="counts")
    p.add_argument("--edge-length", choices=["unit", "inverse-weight"], default="unit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stopwords", default=None, help="stop-word file replacing the bundled USPTO list")
    p.add_argument("--out", default="coword-out")
    p.add_argument("--factors", default="kaiser", help="'kaiser' or a fixed number of factors")
    p.add_argument("--size-by-units", action="store_true", help="scale node radius by sqrt(unit count)")
    p.add_argument("--tolerance", type=float, default=None, help="layout gradient tolerance (default 1e-5*L)")
    p.add_argument("--max-iterations", type=int, default=None, help="layout outer iterations (default 100*|V|)")
    p.add_argument("--workers", type=int, default=1, help="threads; results do not depend on it")
    p.add_argument("--compare", nargs=2, metavar=("REPORT_A", "REPORT_B"),
                   help="print graph-statistic deltas between two report.json files and exit")
    p.add_argument("--version", action="version", version=f"coword {__version__}")
    return p


def parse_args(argv=None):
    parser = build_parser()
    pre, _ = parser.parse_known_args(argv)
    if pre.config:
        defaults = read_config_file(pre.config)
        known = {a.dest for a in parser._actions}
        unknown = sorted(set(defaults) - known)
        if unknown:
            parser.error(f"unknown keys in {pre.config}: {', '.join(unknown)}")
        if "size_by_units" in defaults:
            defaults["size_by_units"] = defaults["size_by_units"].lower() in ("1", "true", "yes", "on")
        parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        if args.compare:
            sys.stdout.write(compare_runs(*args.compare))
            return 0
        config = PipelineConfig(
            manifest=args.manifest,
            unit=args.unit,
            mode=args.mode,
            min_freq=args.min_freq,
            max_words=args.max_words,
            threshold=args.threshold,
            measure=args.measure,
            matrix=args.matrix,
            edge_length=args.edge_length,
            seed=args.seed,
            stopwords=args.stopwords,
            out=args.out,
            factors=args.factors,
            size_by_units=args.size_by_units,
            tolerance=args.tolerance,
            max_iterations=args.max_iterations,
        )
        result = run_pipeline(config, workers=args.workers)
    except (CowordError, ValueError) as exc:
        print(f"coword: error: {exc}", file=sys.stderr)
        return 1
    g = result.report.graph
    print(
        f"{g['nodes']} words, {g['edges']} edges, {g['components']} component(s) "
        f"at {g['measure']} >= {g['threshold']}; wrote {len(result.files)} files to {config.out}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
