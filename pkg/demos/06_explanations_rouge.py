"""Generate lead-3 and greedy-oracle explanations and score them.

The oracle greedily picks article sentences that maximize unigram plus
bigram F1 against the gold explanation, so it bounds what extraction
can achieve; lead-3 is the no-model baseline.
"""

import tempfile

from healthfc import Explanation, lead3, oracle_extractive, rouge_n, score_corpus, segment_sentences
from healthfc.corpus import _data_path, read_corpus
from healthfc.pipeline import PipelineConfig, stage_curate

print("pairwise overlap scoring:")
print("  rouge_n('the cat', 'the cat sat', 1) ->", rouge_n("the cat", "the cat sat", 1))

with tempfile.TemporaryDirectory() as tmp:
    config = PipelineConfig(corpus=str(_data_path("fixture_corpus_raw.jsonl")), out_dir=tmp)
    stage_curate(config)
    records = list(read_corpus(f"{tmp}/corpus_curated.jsonl"))

golds, leads, oracles = [], [], []
for rec in records:
    article = segment_sentences(rec.article_text)
    gold = Explanation(
        claim_id=rec.claim_id,
        sentences=segment_sentences(rec.explanation_text),
        method="gold",
    )
    golds.append(gold)
    leads.append(lead3(article, claim_id=rec.claim_id))
    oracles.append(oracle_extractive(article, gold))

print(f"\nscored {len(records)} fixture records:")
for name, explanations in (("lead3", leads), ("oracle", oracles)):
    s = score_corpus(explanations, golds)
    print(f"  {name:6} R1={s.r1_f:.3f}  R2={s.r2_f:.3f}  RL={s.rl_f:.3f}")

rec = records[0]
print(f"\nexample ({rec.claim_id}): {rec.claim_text}")
print("  gold   :", " ".join(golds[0].sentences)[:110])
print("  lead3  :", " ".join(leads[0].sentences)[:110])
print("  oracle :", " ".join(oracles[0].sentences)[:110])
