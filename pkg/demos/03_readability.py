"""Score texts for reading ease and familiar-word difficulty.

Reading ease falls as words get longer and sentences get denser; the
difficulty score rises with the share of unfamiliar words.
"""

from healthfc import corpus_readability, dale_chall, flesch_kincaid_reading_ease
from healthfc.corpus import _data_path, read_corpus
from healthfc.pipeline import PipelineConfig, stage_curate
import tempfile

SAMPLES = [
    "The cat sat.",
    "The nurse gave the child a flu shot at the clinic.",
    "Epidemiological surveillance demonstrated considerable heterogeneity in immunization uptake.",
]

print(f"{'text':78}  ease   difficulty")
for text in SAMPLES:
    fk = flesch_kincaid_reading_ease(text)
    dc = dale_chall(text)
    print(f"{text[:76]:78} {fk:6.1f} {dc:8.2f}")

# Corpus-level summary over the curated bundled fixture claims.
with tempfile.TemporaryDirectory() as tmp:
    config = PipelineConfig(corpus=str(_data_path("fixture_corpus_raw.jsonl")), out_dir=tmp)
    stage_curate(config)
    claims = [r.claim_text for r in read_corpus(f"{tmp}/corpus_curated.jsonl")]

report = corpus_readability(claims)
print(
    f"\nfixture corpus ({report.n_texts} claims): "
    f"ease {report.fk_mean:.1f} +/- {report.fk_std:.1f}, "
    f"difficulty {report.dc_mean:.2f} +/- {report.dc_std:.2f}"
)
