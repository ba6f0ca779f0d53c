"""Claim records, veracity-label standardization and structural cleaning.

A raw scraped record becomes a :class:`ClaimRecord` by (1) standardizing
its free-form veracity label to the 4-way scheme (or, for news headline
claims, assigning ``true`` unless a wire-service prefix disqualifies it)
and (2) passing the structural cleaning rules on claim and explanation
text. Every rejection carries a :class:`RejectReason` so curation runs
can report per-rule drop counts.
"""

import csv
import json
from dataclasses import dataclass, field, fields
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator


class VeracityLabel(Enum):
    """4-way standardized fact-check verdict."""

    TRUE = "true"
    FALSE = "false"
    MIXTURE = "mixture"
    UNPROVEN = "unproven"

    def __str__(self) -> str:
        return self.value


#: Canonical label order used for probability vectors and confusion matrices.
LABEL_ORDER = (
    VeracityLabel.TRUE,
    VeracityLabel.FALSE,
    VeracityLabel.MIXTURE,
    VeracityLabel.UNPROVEN,
)


class SourceSite(Enum):
    """The eight origin websites records can come from."""

    SNOPES = "snopes"
    POLITIFACT = "politifact"
    TRUTHORFICTION = "truthorfiction"
    FACTCHECK = "factcheck"
    FULLFACT = "fullfact"
    HNR = "hnr"
    APNEWS = "apnews"
    REUTERS = "reuters"


#: News sites whose headline claims are taken as verified rather than label-mapped.
NEWS_SITES = frozenset({SourceSite.APNEWS, SourceSite.REUTERS})

#: Headline prefixes that disqualify a news claim (case-sensitive prefix match).
NEWS_REJECT_PREFIXES = ("AP EXCLUSIVE", "Correction", "AP Interview", "AP FACT CHECK")

MIN_CLAIM_CHARS = 25
MAX_CLAIM_CHARS = 400
MIN_EXPLANATION_CHARS = 25

#: Closing quote characters ignored when testing for a trailing question mark.
_CLOSING_QUOTES = "\"'”’»′″"


class RejectReason(Enum):
    """Closed enumeration of curation drop reasons, logged to the pipeline report."""

    TOO_SHORT_CLAIM = "too_short_claim"
    TOO_LONG_CLAIM = "too_long_claim"
    SHORT_EXPLANATION = "short_explanation"
    INTERROGATIVE = "interrogative"
    HEADLINE_PREFIX = "headline_prefix"
    UNMAPPABLE_LABEL = "unmappable_label"
    NOT_HEALTH_RELATED = "not_health_related"


@dataclass
class RawRecord:
    """Pre-normalization staging record: free-string label, no length guarantees."""

    claim_id: str
    claim_text: str
    article_text: str
    explanation_text: str
    label: str
    source_site: SourceSite
    date_published: str | None = None
    tags: list[str] = field(default_factory=list)
    fact_checkers: list[str] = field(default_factory=list)
    source_urls: list[str] = field(default_factory=list)


@dataclass
class ClaimRecord:
    """One curated claim with article text, explanation and a 4-way label."""

    claim_id: str
    claim_text: str
    article_text: str
    explanation_text: str
    label: VeracityLabel
    source_site: SourceSite
    date_published: str | None = None
    tags: list[str] = field(default_factory=list)
    fact_checkers: list[str] = field(default_factory=list)
    source_urls: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {
            "claim_id": self.claim_id,
            "claim_text": self.claim_text,
            "article_text": self.article_text,
            "explanation_text": self.explanation_text,
            "label": self.label.value,
            "source_site": self.source_site.value,
            "tags": list(self.tags),
            "fact_checkers": list(self.fact_checkers),
            "source_urls": list(self.source_urls),
        }
        if self.date_published is not None:
            d["date_published"] = self.date_published
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimRecord":
        return cls(
            claim_id=d["claim_id"],
            claim_text=d["claim_text"],
            article_text=d["article_text"],
            explanation_text=d["explanation_text"],
            label=VeracityLabel(d["label"]),
            source_site=SourceSite(d["source_site"]),
            date_published=d.get("date_published"),
            tags=list(d.get("tags", [])),
            fact_checkers=list(d.get("fact_checkers", [])),
            source_urls=list(d.get("source_urls", [])),
        )


def raw_record_from_dict(d: dict) -> RawRecord:
    kwargs = {}
    for f in fields(RawRecord):
        if f.name in d:
            kwargs[f.name] = d[f.name]
    kwargs["source_site"] = SourceSite(d["source_site"])
    return RawRecord(**kwargs)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("healthfc").joinpath("data", name)))


def load_label_map(path: str | Path | None = None) -> dict[str, VeracityLabel]:
    """Load the raw-label to standard-label table.

    The file is two-column TSV (raw_label, standard_label) with a header
    row. Keys are lowercased so lookups are case-insensitive.
    """
    path = _data_path("label_map.tsv") if path is None else Path(path)
    mapping: dict[str, VeracityLabel] = {}
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f, delimiter="\t")
        header = next(reader)
        if header != ["raw_label", "standard_label"]:
            raise ValueError(f"unexpected label-map header: {header!r}")
        for row in reader:
            if not row:
                continue
            raw, standard = row[0], row[1]
            mapping[raw.strip().lower()] = VeracityLabel(standard)
    return mapping


_DEFAULT_LABEL_MAP: dict[str, VeracityLabel] | None = None


def _default_label_map() -> dict[str, VeracityLabel]:
    global _DEFAULT_LABEL_MAP
    if _DEFAULT_LABEL_MAP is None:
        _DEFAULT_LABEL_MAP = load_label_map()
    return _DEFAULT_LABEL_MAP


def normalize_label(
    raw: str, label_map: dict[str, VeracityLabel] | None = None
) -> VeracityLabel | None:
    """Map a free-form veracity string to the 4-way scheme.

    Matching is exact after lowercasing and trimming surrounding
    whitespace; no fuzzy matching. Returns ``None`` for strings absent
    from the table (an expected outcome for unmappable labels, not an
    error).
    """
    if label_map is None:
        label_map = _default_label_map()
    return label_map.get(raw.strip().lower())


def assign_news_label(record: RawRecord) -> VeracityLabel | RejectReason:
    """Label a news headline claim.

    Headline claims from the wire services are assumed verified and
    labelled ``true``, except those starting with one of the
    disqualifying prefixes, which are rejected.
    """
    if record.source_site not in NEWS_SITES:
        raise ValueError(
            f"assign_news_label called on non-news record from {record.source_site.value}"
        )
    for prefix in NEWS_REJECT_PREFIXES:
        if record.claim_text.startswith(prefix):
            return RejectReason.HEADLINE_PREFIX
    return VeracityLabel.TRUE


def _ends_interrogative(text: str) -> bool:
    # Trailing whitespace and closing quotes are ignored: scraped text
    # frequently ends in `?"`.
    trimmed = text.rstrip().rstrip(_CLOSING_QUOTES).rstrip()
    return trimmed.endswith("?")


def clean(record: RawRecord, label: VeracityLabel) -> ClaimRecord | RejectReason:
    """Apply the structural cleaning rules to an already-labelled record.

    Lengths are counted in Unicode scalar values, inclusive bounds of
    [25, 400] for claims and a minimum of 25 for explanations. Claims or
    explanations ending in a question mark (after trailing whitespace
    and closing quotes) are rejected as interrogative.
    """
    claim_text = record.claim_text.strip()
    explanation_text = record.explanation_text.strip()
    if len(claim_text) < MIN_CLAIM_CHARS:
        return RejectReason.TOO_SHORT_CLAIM
    if len(claim_text) > MAX_CLAIM_CHARS:
        return RejectReason.TOO_LONG_CLAIM
    if len(explanation_text) < MIN_EXPLANATION_CHARS:
        return RejectReason.SHORT_EXPLANATION
    if _ends_interrogative(claim_text) or _ends_interrogative(explanation_text):
        return RejectReason.INTERROGATIVE
    return ClaimRecord(
        claim_id=record.claim_id,
        claim_text=claim_text,
        article_text=record.article_text,
        explanation_text=explanation_text,
        label=label,
        source_site=record.source_site,
        date_published=record.date_published,
        tags=list(record.tags),
        fact_checkers=list(record.fact_checkers),
        source_urls=list(record.source_urls),
    )


def write_corpus(records: Iterable[ClaimRecord], path: str | Path) -> int:
    """Write curated records as JSON-lines. Returns the record count."""
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")
            n += 1
    return n


def read_corpus(path: str | Path) -> Iterator[ClaimRecord]:
    """Read curated records from a JSON-lines file.

    Accepts both plain corpus files and pipeline stage artifacts, whose
    first line is a header carrying the artifact kind and schema version.
    """
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f):
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            if i == 0 and "artifact" in d and "claim_id" not in d:
                continue
            yield ClaimRecord.from_dict(d)
