"""Train the native baseline classifier and evaluate its predictions.

The baseline is softmax regression over hashed n-grams of the claim and
evidence; it stands in for a served fine-tuned model so the whole
pipeline runs without weights.
"""

import random

from healthfc import TrainConfig, evaluate, predict, predicted_label, train_baseline
from healthfc.corpus import VeracityLabel
from healthfc.veracity import FeatureConfig

rng = random.Random(4)

TOPIC_WORDS = {
    VeracityLabel.TRUE: ["confirmed", "official", "records", "verified", "data"],
    VeracityLabel.FALSE: ["hoax", "fabricated", "myth", "debunked", "viral"],
    VeracityLabel.MIXTURE: ["partly", "overstates", "context", "mixed", "half"],
    VeracityLabel.UNPROVEN: ["unverified", "pending", "unclear", "alleged", "rumor"],
}


def example(label):
    words = TOPIC_WORDS[label]
    claim = " ".join(rng.choices(words, k=5))
    evidence = [" ".join(rng.choices(words, k=6)) for _ in range(2)]
    return claim, evidence, label


train = [example(label) for label in TOPIC_WORDS for _ in range(15)]
test = [example(label) for label in TOPIC_WORDS for _ in range(5)]

model = train_baseline(train, TrainConfig(features=FeatureConfig(hash_dim=4096)))

preds = [predicted_label(predict(model, c, ev)) for c, ev, _ in test]
golds = [label for _, _, label in test]
metrics = evaluate(preds, golds)

print("per-class metrics on held-out synthetic claims:")
for label, m in metrics.per_class.items():
    print(
        f"  {label.value:9} precision={m.precision:.2f} recall={m.recall:.2f} "
        f"f1={m.f1:.2f} (n={m.support})"
    )
print(f"\nmacro F1 = {metrics.macro_f1:.3f}, accuracy = {metrics.accuracy:.3f}")

probs = predict(model, "officials confirmed the records", [])
print("\nprobability vector for a truthy claim:", [round(float(p), 3) for p in probs])
