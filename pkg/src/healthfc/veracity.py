"""4-way veracity prediction and its evaluation metrics.

Prediction runs through a pluggable classifier backend mapping (claim,
evidence sentences) to a probability vector over the four labels. The
native baseline is softmax regression over hashed n-gram features of the
claim and evidence joined by a boundary marker, trained by full-batch
gradient descent on L2-regularized cross-entropy; it exists so the whole
pipeline runs at desk scale with no model service. Fine-tuned
transformer classifiers plug in behind the same interface.
"""

import zlib
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

from ._text import tokenize
from .corpus import LABEL_ORDER, VeracityLabel

N_CLASSES = len(LABEL_ORDER)
_LABEL_INDEX = {label: i for i, label in enumerate(LABEL_ORDER)}

#: Synthetic token separating claim tokens from evidence tokens.
_BOUNDARY = "\x1dsep\x1d"


class ClassifierBackend(Protocol):
    """Maps (claim, evidence sentences) to a probability vector over the 4 labels."""

    def predict(self, claim: str, evidence: Sequence[str]) -> np.ndarray: ...


@dataclass
class FeatureConfig:
    ngram_orders: tuple[int, ...] = (1, 2)
    hash_dim: int = 2**16


@dataclass
class TrainConfig:
    features: FeatureConfig = field(default_factory=FeatureConfig)
    l2_lambda: float = 1e-4
    learning_rate: float = 1.0
    max_epochs: int = 200
    # Early stop when the relative loss change per epoch falls below this.
    tol: float = 1e-7
    seed: int = 0


def _feature_vector(claim: str, evidence: Sequence[str], config: FeatureConfig) -> np.ndarray:
    tokens = tokenize(claim) + [_BOUNDARY] + [t for s in evidence for t in tokenize(s)]
    x = np.zeros(config.hash_dim)
    for n in config.ngram_orders:
        for i in range(len(tokens) - n + 1):
            feat = " ".join(tokens[i : i + n])
            x[zlib.crc32(feat.encode("utf-8")) % config.hash_dim] += 1.0
    norm = np.linalg.norm(x)
    if norm > 0.0:
        x /= norm
    return x


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass
class BaselineModel:
    """Softmax-regression weights over hashed claim+evidence features."""

    weights: np.ndarray  # (N_CLASSES, hash_dim)
    bias: np.ndarray  # (N_CLASSES,)
    features: FeatureConfig
    l2_lambda: float

    def predict(self, claim: str, evidence: Sequence[str]) -> np.ndarray:
        x = _feature_vector(claim, evidence, self.features)
        return _softmax(self.weights @ x + self.bias)


def loss_and_gradient(
    weights: np.ndarray,
    bias: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    l2_lambda: float,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus 0.5 * lambda * ||W||^2, with its gradient.

    ``x`` is the (n, d) feature matrix, ``y`` the (n,) integer class
    vector. The loss is convex in (weights, bias); the analytic gradient
    here is checked against finite differences in the test suite.
    """
    n = x.shape[0]
    probs = _softmax(x @ weights.T + bias)
    eps = 1e-12
    ce = -np.log(probs[np.arange(n), y] + eps).mean()
    loss = ce + 0.5 * l2_lambda * float((weights**2).sum())
    delta = probs.copy()
    delta[np.arange(n), y] -= 1.0
    grad_w = delta.T @ x / n + l2_lambda * weights
    grad_b = delta.sum(axis=0) / n
    return float(loss), grad_w, grad_b


def train_baseline(
    train: Sequence[tuple[str, Sequence[str], VeracityLabel]],
    config: TrainConfig | None = None,
) -> BaselineModel:
    """Fit the baseline by full-batch gradient descent.

    Deterministic for a fixed config (weights start at zero; the problem
    is convex so the seed does not influence the optimum). Raises
    ``ValueError`` on an empty training set or one with a single label.
    """
    if config is None:
        config = TrainConfig()
    if not train:
        raise ValueError("empty training set")
    labels = {label for _, _, label in train}
    if len(labels) < 2:
        raise ValueError("training set needs at least 2 distinct labels")
    x = np.stack([_feature_vector(c, ev, config.features) for c, ev, _ in train])
    y = np.array([_LABEL_INDEX[label] for _, _, label in train])
    weights = np.zeros((N_CLASSES, config.features.hash_dim))
    bias = np.zeros(N_CLASSES)
    prev_loss = np.inf
    for _ in range(config.max_epochs):
        loss, grad_w, grad_b = loss_and_gradient(weights, bias, x, y, config.l2_lambda)
        weights -= config.learning_rate * grad_w
        bias -= config.learning_rate * grad_b
        if prev_loss - loss < config.tol * max(1.0, abs(prev_loss)) and np.isfinite(prev_loss):
            break
        prev_loss = loss
    return BaselineModel(
        weights=weights, bias=bias, features=config.features, l2_lambda=config.l2_lambda
    )


def predict(
    backend: ClassifierBackend, claim: str, evidence: Sequence[str] = ()
) -> np.ndarray:
    """Probability vector over LABEL_ORDER; evidence may be empty (degraded mode)."""
    probs = np.asarray(backend.predict(claim, evidence), dtype=float)
    if probs.shape != (N_CLASSES,):
        raise ValueError(f"backend returned shape {probs.shape}, expected ({N_CLASSES},)")
    if (probs < 0).any() or abs(float(probs.sum()) - 1.0) > 1e-6:
        raise ValueError("backend returned an invalid probability vector")
    return probs


def predicted_label(probs: np.ndarray) -> VeracityLabel:
    return LABEL_ORDER[int(np.argmax(probs))]


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class ClassificationMetrics:
    """Per-class and macro precision/recall/F1 plus accuracy.

    Zero-denominator convention: a class never predicted has precision
    0, a class absent from gold has recall 0, and F1 is 0 when P+R = 0.
    """

    per_class: dict[VeracityLabel, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "per_class": {
                label.value: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for label, m in self.per_class.items()
            },
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "accuracy": self.accuracy,
        }


def evaluate(
    preds: Sequence[VeracityLabel],
    golds: Sequence[VeracityLabel],
    only_observed: bool = False,
) -> ClassificationMetrics:
    """Confusion-matrix metrics for 4-way classification.

    Macro values average over all four label classes by default; classes
    absent from both preds and golds contribute zeros. Set
    ``only_observed`` to average over classes present in gold or preds
    instead (useful on small fixtures).
    """
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} preds vs {len(golds)} golds")
    if not golds:
        raise ValueError("nothing to evaluate")
    per_class: dict[VeracityLabel, ClassMetrics] = {}
    correct = sum(1 for p, g in zip(preds, golds) if p == g)
    for label in LABEL_ORDER:
        tp = sum(1 for p, g in zip(preds, golds) if p == label and g == label)
        fp = sum(1 for p, g in zip(preds, golds) if p == label and g != label)
        fn = sum(1 for p, g in zip(preds, golds) if p != label and g == label)
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        per_class[label] = ClassMetrics(
            precision=precision, recall=recall, f1=f1, support=tp + fn
        )
    if only_observed:
        active = [l for l in LABEL_ORDER if l in set(golds) | set(preds)]
    else:
        active = list(LABEL_ORDER)
    return ClassificationMetrics(
        per_class=per_class,
        macro_precision=sum(per_class[l].precision for l in active) / len(active),
        macro_recall=sum(per_class[l].recall for l in active) / len(active),
        macro_f1=sum(per_class[l].f1 for l in active) / len(active),
        accuracy=correct / len(golds),
    )
