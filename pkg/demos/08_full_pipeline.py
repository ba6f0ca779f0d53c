"""Run every pipeline stage on the bundled fixture corpus with stubs.

Equivalent CLI:
    healthfc all --corpus <fixture> --out out/ --seed 13

Stages write self-describing JSON-lines artifacts; report.json merges
the metric bundles and is byte-identical across reruns.
"""

import json
import tempfile
from pathlib import Path

from healthfc.corpus import _data_path
from healthfc.pipeline import PipelineConfig, run

with tempfile.TemporaryDirectory() as tmp:
    config = PipelineConfig(
        corpus=str(_data_path("fixture_corpus_raw.jsonl")),
        out_dir=tmp,
        seed=13,
        annotations=str(_data_path("sample_annotations.csv")),
    )
    results = run(config)

    print("stages:", ", ".join(results))
    print("\nartifacts:")
    for path in sorted(Path(tmp).iterdir()):
        print(f"  {path.name:28} {path.stat().st_size:7,} bytes")

    report = json.loads((Path(tmp) / "report.json").read_text())

print("\ncuration:", report["curation"]["kept"], "kept of", report["curation"]["input_records"])
print("drop reasons:", {k: v for k, v in report["curation"]["dropped"].items() if v})
print(
    "lexicon audit: article terms "
    f"{report['curation']['lexicon_audit']['article_terms_mean']:.2f} "
    f"+/- {report['curation']['lexicon_audit']['article_terms_std']:.2f}"
)
print("classification accuracy (test split):", report["classification"]["metrics"]["accuracy"])
rouge = report["explanations"]["rouge"]
for method in sorted(rouge):
    r = rouge[method]
    print(f"rouge {method:6} R1={r['rouge1_f']:.3f} R2={r['rouge2_f']:.3f} RL={r['rougeL_f']:.3f}")
coherence = report["coherence"]["coherence"]
for method in sorted(coherence):
    c = coherence[method]
    print(
        f"coherence {method:6} sgc={c['sgc_pct']:5.1f}% wgc={c['wgc_pct']:5.1f}% "
        f"lc={c['lc_pct']:5.1f}%"
    )
