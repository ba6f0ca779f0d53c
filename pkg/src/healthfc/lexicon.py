"""Public-health term lexicon and the health-topic inclusion filter.

A claim entry is considered health-related when its article text or its
claim text mentions more than three unique lexicon terms. Terms match as
contiguous, case-insensitive token subsequences on word boundaries, and
each lexicon entry counts at most once per field regardless of how often
it occurs.
"""

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

from ._text import tokenize
from .corpus import ClaimRecord

#: Minimum unique-term count is strict: a field qualifies with >= MIN_UNIQUE_TERMS + 1.
MIN_UNIQUE_TERMS = 3


def normalize_term(term: str) -> str:
    """Lowercase and collapse internal whitespace to single spaces."""
    return " ".join(term.lower().split())


@dataclass
class HealthLexicon:
    """Set of normalized health terms plus per-source counts.

    Treated as immutable after construction; the token index is built
    lazily and shared by all match calls.
    """

    terms: frozenset[str]
    source_counts: dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.terms)

    @cached_property
    def _first_token_index(self) -> dict[str, list[tuple[tuple[str, ...], str]]]:
        index: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for term in self.terms:
            toks = tuple(tokenize(term))
            if toks:
                index.setdefault(toks[0], []).append((toks, term))
        return index


@dataclass
class LexiconMatchResult:
    matched_terms: set[str]

    @property
    def count(self) -> int:
        return len(self.matched_terms)


@dataclass
class FilterAudit:
    """Per-record health-filter outcome, written to the filter audit log."""

    claim_id: str
    article_count: int
    claim_count: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "article_count": self.article_count,
            "claim_count": self.claim_count,
            "passed": self.passed,
        }


def read_term_list(path: str | Path) -> list[str]:
    """Read a UTF-8 term list, one term per line, '#' comment lines ignored."""
    terms = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                terms.append(line)
    return terms


def build_lexicon(
    term_lists: Iterable[str | Path] = (), supplements: Iterable[str] = ()
) -> HealthLexicon:
    """Union all term-list files and supplement strings into one lexicon.

    Terms are normalized (lowercased, single-spaced) so duplicates across
    sources collapse. Raises ``ValueError`` when the result is empty.
    """
    terms: set[str] = set()
    source_counts: dict[str, int] = {}
    for path in term_lists:
        contributed = {normalize_term(t) for t in read_term_list(path)}
        contributed.discard("")
        source_counts[Path(path).name] = len(contributed)
        terms |= contributed
    supplement_terms = {normalize_term(t) for t in supplements}
    supplement_terms.discard("")
    if supplement_terms:
        source_counts["supplements"] = len(supplement_terms)
        terms |= supplement_terms
    if not terms:
        raise ValueError("built lexicon is empty")
    return HealthLexicon(terms=frozenset(terms), source_counts=source_counts)


def match_terms(text: str, lex: HealthLexicon) -> LexiconMatchResult:
    """Find every lexicon entry occurring in ``text``.

    An entry matches when its token sequence appears contiguously in the
    tokenized text; "flu" does not match inside "influenza". Each entry
    is reported once regardless of occurrence count. Overlapping entries
    (for instance "heart" and "heart attack") are both reported.
    """
    index = lex._first_token_index
    tokens = tokenize(text)
    matched: set[str] = set()
    for i, tok in enumerate(tokens):
        for term_toks, term in index.get(tok, ()):
            if tuple(tokens[i : i + len(term_toks)]) == term_toks:
                matched.add(term)
    return LexiconMatchResult(matched_terms=matched)


def passes_health_filter(record: ClaimRecord, lex: HealthLexicon) -> FilterAudit:
    """Apply the unique-term inclusion rule to one record.

    The record passes when either its article text or its claim text
    contains strictly more than three unique lexicon terms. Both counts
    are returned for auditing.
    """
    article_count = match_terms(record.article_text, lex).count
    claim_count = match_terms(record.claim_text, lex).count
    passed = article_count > MIN_UNIQUE_TERMS or claim_count > MIN_UNIQUE_TERMS
    return FilterAudit(
        claim_id=record.claim_id,
        article_count=article_count,
        claim_count=claim_count,
        passed=passed,
    )
