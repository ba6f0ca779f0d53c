"""Model registry: head construction from config and readiness state."""

import json
from dataclasses import dataclass, field
from pathlib import Path

from .heads import CueClassifier, HashEmbedder, LeadSummarizer, LexicalNli

#: Mapping from NLI-model class names to the canonical wire strings.
#: Configurable so differently-labelled checkpoints need no code change.
DEFAULT_NLI_LABEL_MAP = {
    "entailment": "entails",
    "contradiction": "contradicts",
    "neutral": "neutral",
}

CANONICAL_RELATIONS = ("entails", "contradicts", "neutral")


@dataclass
class ServiceConfig:
    embed_dim: int = 256
    nli_threshold: float = 0.5
    nli_label_map: dict = field(default_factory=lambda: dict(DEFAULT_NLI_LABEL_MAP))
    summary_sentences: int = 3
    # Which heads this process hosts; a subset is a valid deployment.
    heads: tuple[str, ...] = ("embed", "nli", "classify", "summarize")

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if "heads" in raw:
            raw["heads"] = tuple(raw["heads"])
        return cls(**raw)


class ModelRegistry:
    """Holds the loaded heads; endpoints return 503 until ``ready``."""

    def __init__(self, config: ServiceConfig | None = None, defer_load: bool = False):
        self.config = config or ServiceConfig()
        self.embedder = None
        self.nli = None
        self.classifier = None
        self.summarizer = None
        self.ready = False
        if not defer_load:
            self.load()

    def load(self) -> None:
        config = self.config
        if "embed" in config.heads:
            self.embedder = HashEmbedder(dim=config.embed_dim)
        if "nli" in config.heads:
            self.nli = LexicalNli(threshold=config.nli_threshold)
            unknown = set(config.nli_label_map.values()) - set(CANONICAL_RELATIONS)
            if unknown:
                raise ValueError(f"nli_label_map targets unknown relations: {sorted(unknown)}")
        if "classify" in config.heads:
            self.classifier = CueClassifier()
        if "summarize" in config.heads:
            self.summarizer = LeadSummarizer(n_sentences=config.summary_sentences)
        self.ready = True

    def model_info(self) -> dict:
        info = {}
        if self.embedder is not None:
            info["embed"] = {"id": self.embedder.checkpoint, "dim": self.embedder.dim}
        if self.nli is not None:
            info["nli"] = {
                "id": self.nli.checkpoint,
                "classes": list(self.nli.class_names),
                "label_map": dict(self.config.nli_label_map),
            }
        if self.classifier is not None:
            info["classify"] = {
                "id": self.classifier.checkpoint,
                "classes": list(self.classifier.class_names),
            }
        if self.summarizer is not None:
            info["summarize"] = {
                "id": self.summarizer.checkpoint,
                "sentences": self.summarizer.n_sentences,
            }
        return info
