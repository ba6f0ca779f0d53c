"""Batch pipeline: configuration, deterministic splits and stage wiring.

Stages run in a fixed order (curate, rank, predict, explain, cohere,
report), each reading its predecessor's JSON-lines artifact from the
output directory and writing its own. Reruns with the same config and
inputs produce byte-identical artifacts; wall-clock metadata goes to a
separate run_meta.json that is excluded from that guarantee.
"""

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import artifacts
from .artifacts import ArtifactError
from .corpus import (
    ClaimRecord,
    NEWS_SITES,
    RejectReason,
    VeracityLabel,
    assign_news_label,
    clean,
    load_label_map,
    normalize_label,
    raw_record_from_dict,
)
from .evidence import DEFAULT_TOP_K, HashedTfidfBackend, rank_evidence, segment_sentences
from .explain import Explanation, lead3, oracle_extractive, score_corpus
from .coherence import TokenOverlapNli, agreement_by_question, corpus_coherence, load_annotations
from .lexicon import build_lexicon, passes_health_filter, read_term_list
from .readability import corpus_readability, load_easy_words
from .veracity import TrainConfig, evaluate, predicted_label, train_baseline

STAGES = ("curate", "rank", "predict", "explain", "cohere", "report")

SPLIT_NAMES = ("train", "validation", "test")
DEFAULT_SPLIT_FRACTIONS = (0.8, 0.1, 0.1)


class ConfigError(Exception):
    """Invalid pipeline configuration (CLI exit code 2)."""


class StageError(Exception):
    """A stage could not run; carries a machine-readable reason."""

    def __init__(self, stage: str, reason: str, detail: str = ""):
        self.stage = stage
        self.reason = reason
        self.detail = detail
        super().__init__(f"{stage}: {reason}" + (f" ({detail})" if detail else ""))

    def to_dict(self) -> dict:
        return {"stage": self.stage, "reason": self.reason, "detail": self.detail}


@dataclass
class PipelineConfig:
    corpus: str = ""
    out_dir: str = "out"
    lexicon_lists: list[str] = field(default_factory=list)
    lexicon_supplements: str | None = None
    easy_words: str | None = None
    label_map: str | None = None
    annotations: str | None = None
    k: int = DEFAULT_TOP_K
    split_fractions: tuple[float, float, float] = DEFAULT_SPLIT_FRACTIONS
    stratify_by_label: bool = False
    backend: str = "stub"
    seed: int = 13

    def validate(self) -> None:
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if len(self.split_fractions) != len(SPLIT_NAMES):
            raise ConfigError("split_fractions needs exactly three values")
        if any(f <= 0 for f in self.split_fractions):
            raise ConfigError("split fractions must be positive")
        if abs(sum(self.split_fractions) - 1.0) > 1e-9:
            raise ConfigError(
                f"split fractions must sum to 1, got {sum(self.split_fractions)!r}"
            )

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "split_fractions" in raw:
            raw["split_fractions"] = tuple(raw["split_fractions"])
        config = cls(**raw)
        config.validate()
        return config

    def to_dict(self) -> dict:
        return {
            "corpus": self.corpus,
            "out_dir": self.out_dir,
            "lexicon_lists": list(self.lexicon_lists),
            "lexicon_supplements": self.lexicon_supplements,
            "easy_words": self.easy_words,
            "label_map": self.label_map,
            "annotations": self.annotations,
            "k": self.k,
            "split_fractions": list(self.split_fractions),
            "stratify_by_label": self.stratify_by_label,
            "backend": self.backend,
            "seed": self.seed,
        }


def _largest_remainder_counts(n: int, fractions: Sequence[float]) -> list[int]:
    exact = [n * f for f in fractions]
    counts = [math.floor(e) for e in exact]
    leftovers = n - sum(counts)
    order = sorted(range(len(fractions)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[:leftovers]:
        counts[i] += 1
    return counts


def split(
    records: Sequence[ClaimRecord],
    fractions: Sequence[float] = DEFAULT_SPLIT_FRACTIONS,
    seed: int = 13,
    stratify_by_label: bool = False,
) -> dict[str, str]:
    """Deterministic train/validation/test partition of a corpus.

    Records are sorted by claim_id, shuffled with the seeded generator
    and cut at the configured proportions using largest-remainder
    rounding. Raises ``ValueError`` when any split would be empty.
    """
    if not records:
        raise ValueError("cannot split an empty corpus")
    rng = random.Random(seed)
    assignment: dict[str, str] = {}

    def cut(ids: list[str]) -> None:
        rng.shuffle(ids)
        counts = _largest_remainder_counts(len(ids), fractions)
        start = 0
        for name, count in zip(SPLIT_NAMES, counts):
            for claim_id in ids[start : start + count]:
                assignment[claim_id] = name
            start += count

    if stratify_by_label:
        by_label: dict[VeracityLabel, list[str]] = {}
        for rec in sorted(records, key=lambda r: r.claim_id):
            by_label.setdefault(rec.label, []).append(rec.claim_id)
        for label in sorted(by_label, key=lambda l: l.value):
            cut(by_label[label])
    else:
        cut(sorted(rec.claim_id for rec in records))

    sizes = {name: 0 for name in SPLIT_NAMES}
    for name in assignment.values():
        sizes[name] += 1
    if any(v == 0 for v in sizes.values()):
        raise ValueError(f"a split would be empty: {sizes} (corpus too small)")
    return assignment


# ---------------------------------------------------------------------------
# Stage implementations. Artifact file names are part of the CLI contract.

CURATED = "corpus_curated.jsonl"
FILTER_AUDIT = "filter_audit.jsonl"
SPLITS = "splits.jsonl"
RANKINGS = "rankings.jsonl"
PREDICTIONS = "predictions.jsonl"
EXPLANATIONS = "explanations.jsonl"
CURATION_REPORT = "curation_report.json"
CLASSIFICATION_REPORT = "classification_report.json"
ROUGE_REPORT = "rouge_report.json"
COHERENCE_REPORT = "coherence_report.json"
REPORT = "report.json"


def _read_raw_records(path: Path):
    if not path.exists():
        raise StageError("curate", "MissingInput", f"raw corpus not found at {path}")
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield raw_record_from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, ValueError) as e:
                raise StageError("curate", "BadInput", f"line {i}: {e}") from e


def _build_configured_lexicon(config: PipelineConfig):
    lists = list(config.lexicon_lists)
    if not lists:
        from .corpus import _data_path

        lists = [str(_data_path("health_terms_base.txt"))]
    if config.lexicon_supplements:
        supplements = read_term_list(config.lexicon_supplements)
    else:
        from .corpus import _data_path

        supplements = read_term_list(_data_path("lexicon_supplement_terms.txt"))
    return build_lexicon(lists, supplements)


def stage_curate(config: PipelineConfig) -> dict:
    """Label standardization, health filtering, structural cleaning, splits."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    label_map = load_label_map(config.label_map) if config.label_map else load_label_map()
    lexicon = _build_configured_lexicon(config)

    kept: list[ClaimRecord] = []
    audits = []
    drops: dict[str, int] = {reason.value: 0 for reason in RejectReason}
    n_input = 0
    for raw in _read_raw_records(Path(config.corpus)):
        n_input += 1
        if raw.source_site in NEWS_SITES:
            labelled = assign_news_label(raw)
        else:
            labelled = normalize_label(raw.label, label_map)
            if labelled is None:
                labelled = RejectReason.UNMAPPABLE_LABEL
        if isinstance(labelled, RejectReason):
            drops[labelled.value] += 1
            continue
        cleaned = clean(raw, labelled)
        if isinstance(cleaned, RejectReason):
            drops[cleaned.value] += 1
            continue
        audit = passes_health_filter(cleaned, lexicon)
        audits.append(audit)
        if not audit.passed:
            drops[RejectReason.NOT_HEALTH_RELATED.value] += 1
            continue
        kept.append(cleaned)

    artifacts.write_artifact(out / CURATED, "corpus", (r.to_dict() for r in kept))
    artifacts.write_artifact(out / FILTER_AUDIT, "filter_audit", (a.to_dict() for a in audits))

    if not kept:
        raise StageError("curate", "EmptyCorpus", "no records survived curation")
    assignment = split(
        kept, config.split_fractions, seed=config.seed, stratify_by_label=config.stratify_by_label
    )
    artifacts.write_artifact(
        out / SPLITS,
        "splits",
        ({"claim_id": cid, "split": name} for cid, name in sorted(assignment.items())),
    )

    passed = [a for a in audits if a.passed]
    article_counts = np.array([a.article_count for a in passed], dtype=float)
    claim_counts = np.array([a.claim_count for a in passed], dtype=float)
    label_dist: dict[str, int] = {}
    for rec in kept:
        label_dist[rec.label.value] = label_dist.get(rec.label.value, 0) + 1
    report = {
        "input_records": n_input,
        "kept": len(kept),
        "dropped": drops,
        "label_distribution": dict(sorted(label_dist.items())),
        "lexicon_terms": len(lexicon),
        "lexicon_audit": {
            "article_terms_mean": float(article_counts.mean()),
            "article_terms_std": float(article_counts.std()),
            "claim_terms_mean": float(claim_counts.mean()),
            "claim_terms_std": float(claim_counts.std()),
        },
        "splits": {
            name: sum(1 for v in assignment.values() if v == name) for name in SPLIT_NAMES
        },
    }
    artifacts.write_report(out / CURATION_REPORT, report)
    return report


def _load_curated(out: Path, stage: str) -> list[ClaimRecord]:
    try:
        return [ClaimRecord.from_dict(d) for d in artifacts.read_artifact(out / CURATED, "corpus")]
    except ArtifactError as e:
        raise StageError(stage, "MissingInput", str(e)) from e


def _load_splits(out: Path, stage: str) -> dict[str, str]:
    try:
        return {
            d["claim_id"]: d["split"] for d in artifacts.read_artifact(out / SPLITS, "splits")
        }
    except ArtifactError as e:
        raise StageError(stage, "MissingInput", str(e)) from e


def _embedding_backend(config: PipelineConfig):
    if config.backend == "stub":
        return HashedTfidfBackend()
    from .service_client import HttpEmbeddingBackend, ServiceClient

    return HttpEmbeddingBackend(ServiceClient(config.backend))


def stage_rank(config: PipelineConfig) -> dict:
    """Segment articles and rank sentences against the claim."""
    out = Path(config.out_dir)
    records = _load_curated(out, "rank")
    backend = _embedding_backend(config)
    rows = []
    for rec in records:
        sentences = segment_sentences(rec.article_text)
        ranking = rank_evidence(
            rec.claim_text, sentences, backend, k=config.k, claim_id=rec.claim_id
        )
        row = ranking.to_dict()
        row["evidence"] = [sentences[i] for i, _ in ranking.k_selected]
        rows.append(row)
    artifacts.write_artifact(out / RANKINGS, "rankings", rows)
    return {"ranked": len(rows), "k": config.k}


def stage_predict(config: PipelineConfig) -> dict:
    """Train/apply the classifier on top-k evidence and report metrics."""
    out = Path(config.out_dir)
    records = _load_curated(out, "predict")
    splits_map = _load_splits(out, "predict")
    try:
        evidence_by_id = {
            d["claim_id"]: d["evidence"] for d in artifacts.read_artifact(out / RANKINGS, "rankings")
        }
    except ArtifactError as e:
        raise StageError("predict", "MissingInput", str(e)) from e

    def evidence_for(rec: ClaimRecord) -> list[str]:
        return evidence_by_id.get(rec.claim_id, [])

    test_records = [r for r in records if splits_map.get(r.claim_id) == "test"]
    if not test_records:
        raise StageError("predict", "EmptySplit", "no records assigned to the test split")

    if config.backend == "stub":
        train_records = [r for r in records if splits_map.get(r.claim_id) == "train"]
        train_set = [(r.claim_text, evidence_for(r), r.label) for r in train_records]
        try:
            model = train_baseline(train_set, TrainConfig(seed=config.seed))
        except ValueError as e:
            raise StageError("predict", "TrainingFailed", str(e)) from e
        backend = model
    else:
        from .service_client import HttpClassifierBackend, ServiceClient

        backend = HttpClassifierBackend(ServiceClient(config.backend))

    rows = []
    preds, golds = [], []
    for rec in test_records:
        probs = backend.predict(rec.claim_text, evidence_for(rec))
        probs = np.asarray(probs, dtype=float)
        label = predicted_label(probs)
        preds.append(label)
        golds.append(rec.label)
        rows.append(
            {
                "claim_id": rec.claim_id,
                "probs": [float(p) for p in probs],
                "label": label.value,
            }
        )
    artifacts.write_artifact(out / PREDICTIONS, "predictions", rows)
    metrics = evaluate(preds, golds)
    report = {"split": "test", "n": len(rows), "metrics": metrics.to_dict()}
    artifacts.write_report(out / CLASSIFICATION_REPORT, report)
    return report


def stage_explain(config: PipelineConfig) -> dict:
    """Generate gold/lead3/oracle (and served abstractive) explanations, score them."""
    out = Path(config.out_dir)
    records = _load_curated(out, "explain")
    summarizer = None
    if config.backend != "stub":
        from .service_client import HttpSummarizerBackend, ServiceClient

        summarizer = HttpSummarizerBackend(ServiceClient(config.backend))

    golds: list[Explanation] = []
    by_method: dict[str, list[Explanation]] = {"lead3": [], "oracle": []}
    skipped = 0
    for rec in records:
        article_sentences = segment_sentences(rec.article_text)
        gold_sentences = segment_sentences(rec.explanation_text)
        if not article_sentences or not gold_sentences:
            skipped += 1
            continue
        gold = Explanation(claim_id=rec.claim_id, sentences=gold_sentences, method="gold")
        golds.append(gold)
        by_method["lead3"].append(lead3(article_sentences, claim_id=rec.claim_id))
        by_method["oracle"].append(oracle_extractive(article_sentences, gold))
        if summarizer is not None:
            summary = summarizer.summarize(rec.claim_text, article_sentences)
            by_method.setdefault("abstractive", []).append(
                Explanation(claim_id=rec.claim_id, sentences=list(summary), method="abstractive")
            )

    if not golds:
        raise StageError("explain", "EmptyCorpus", "no explainable records")
    rows = [g.to_dict() for g in golds]
    for method in sorted(by_method):
        rows.extend(e.to_dict() for e in by_method[method])
    artifacts.write_artifact(out / EXPLANATIONS, "explanations", rows)

    rouge_by_method = {
        method: score_corpus(explanations, golds).to_dict()
        for method, explanations in sorted(by_method.items())
        if explanations
    }
    report = {"n_records": len(golds), "skipped": skipped, "rouge": rouge_by_method}
    artifacts.write_report(out / ROUGE_REPORT, report)
    return report


def stage_cohere(config: PipelineConfig) -> dict:
    """Coherence percentages per explanation source, plus rater agreement."""
    out = Path(config.out_dir)
    records = {r.claim_id: r for r in _load_curated(out, "cohere")}
    try:
        explanation_rows = list(artifacts.read_artifact(out / EXPLANATIONS, "explanations"))
    except ArtifactError as e:
        raise StageError("cohere", "MissingInput", str(e)) from e

    if config.backend == "stub":
        backend = TokenOverlapNli()
    else:
        from .service_client import HttpNliBackend, ServiceClient

        backend = HttpNliBackend(ServiceClient(config.backend))

    by_method: dict[str, list] = {}
    for row in explanation_rows:
        expl = Explanation.from_dict(row)
        rec = records.get(expl.claim_id)
        if rec is None:
            continue
        by_method.setdefault(expl.method, []).append(
            (rec.claim_text, rec.label, expl)
        )
    if not by_method:
        raise StageError("cohere", "EmptyCorpus", "no explanations matched curated records")

    coherence = {
        method: corpus_coherence(items, backend).to_dict()
        for method, items in sorted(by_method.items())
    }
    report: dict = {"backend": config.backend, "coherence": coherence}
    if config.annotations:
        try:
            annotations = load_annotations(config.annotations)
        except (OSError, ValueError) as e:
            raise StageError("cohere", "BadInput", f"annotations: {e}") from e
        report["human_agreement"] = agreement_by_question(annotations)
    artifacts.write_report(out / COHERENCE_REPORT, report)
    return report


def stage_report(config: PipelineConfig) -> dict:
    """Merge stage reports and corpus-level readability into one document."""
    out = Path(config.out_dir)
    records = _load_curated(out, "report")
    easy = load_easy_words(config.easy_words) if config.easy_words else load_easy_words()
    readability = corpus_readability([r.claim_text for r in records], easy)

    merged: dict = {
        "n_records": len(records),
        "readability": readability.to_dict(),
    }
    for name, key in (
        (CURATION_REPORT, "curation"),
        (CLASSIFICATION_REPORT, "classification"),
        (ROUGE_REPORT, "explanations"),
        (COHERENCE_REPORT, "coherence"),
    ):
        path = out / name
        if path.exists():
            doc = json.loads(path.read_text(encoding="utf-8"))
            doc.pop("schema_version", None)
            merged[key] = doc
    artifacts.write_report(out / REPORT, merged)
    return merged


_STAGE_FUNCS = {
    "curate": stage_curate,
    "rank": stage_rank,
    "predict": stage_predict,
    "explain": stage_explain,
    "cohere": stage_cohere,
    "report": stage_report,
}


def run(config: PipelineConfig, stages: Iterable[str] = STAGES) -> dict[str, dict]:
    """Run the requested stages in canonical order; returns per-stage summaries."""
    config.validate()
    requested = set(stages)
    unknown = requested - set(STAGES)
    if unknown:
        raise ConfigError(f"unknown stages: {sorted(unknown)}")
    results = {}
    for stage in STAGES:
        if stage in requested:
            try:
                results[stage] = _STAGE_FUNCS[stage](config)
            except (StageError, ConfigError):
                raise
            except Exception as e:  # backend and I/O failures become stage errors
                raise StageError(stage, type(e).__name__, str(e)) from e
    return results
