"""Run the whole pipeline and look at what it writes.

Equivalent to `conceptminer pipeline --config demos/demo.conf` from the
repository root, but with the output routed to a scratch directory.
Running it twice produces byte-identical artifacts.
"""

import tempfile
from pathlib import Path

from conceptminer.pipeline import RunConfig, run_pipeline

data = Path(__file__).parent / "data"
out = Path(tempfile.mkdtemp(prefix="conceptminer-demo-")) / "run"

config = RunConfig(
    target_manifest=data / "target.tsv",
    contrast_manifest=data / "contrast.tsv",
    triples_path=data / "triples.tsv",
    stoplist_path=data / "stoplist.txt",
    output_dir=out,
)
result = run_pipeline(config)
print(f"run {result.run_id} written to {result.output_dir}\n")

# The output directory is self-describing: keyness report, one graph
# and one clustering per word category, default ego networks for the
# top-ranked words, and a metadata record tying it all together.
for path in sorted(out.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(out)}")

print("\nto browse the run interactively:")
print(f"  conceptminer serve --run-dir {out}")
