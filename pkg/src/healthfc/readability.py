"""Reading-ease and familiar-word readability scores with corpus summaries.

Two scores are computed per text:

* reading ease = 206.835 - 1.015 * (words / sentences)
                         - 84.6 * (syllables / words)
  Higher is easier; the scale is unbounded on both ends.

* difficulty score = 0.1579 * pct_difficult + 0.0496 * (words / sentences),
  plus 3.6365 when pct_difficult > 5, where pct_difficult is the
  percentage of words not found in the bundled familiar-word list
  (regular s/es/ed/ing inflections of listed words count as familiar).

Syllables are counted heuristically (maximal vowel groups, one
subtracted for a terminal silent 'e' when possible, minimum one), so
absolute scores carry a small implementation-dependent tolerance.
"""

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .evidence import segment_sentences

_WORD_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*", re.UNICODE)
_VOWEL_GROUP = re.compile(r"[aeiouy]+")

#: pct_difficult threshold above which the constant adjustment applies.
_DIFFICULT_PCT_CUTOFF = 5.0
_ADJUSTMENT = 3.6365

_EASY_SUFFIXES = ("ing", "ed", "es", "s")


def words_of(text: str) -> list[str]:
    """Word tokens: alphanumeric runs, internal apostrophes kept."""
    return _WORD_RE.findall(text)


def count_syllables(word: str) -> int:
    """Heuristic syllable count, always >= 1 for a word with letters.

    Counts maximal vowel groups (a e i o u y) and subtracts one for a
    terminal silent 'e' unless that would reach zero.
    """
    letters = "".join(ch for ch in word.lower() if ch.isalpha())
    if not letters:
        return 1
    groups = len(_VOWEL_GROUP.findall(letters))
    if letters.endswith("e") and groups > 1:
        groups -= 1
    return max(groups, 1)


@dataclass
class TextStats:
    sentences: int
    words: int
    syllables: int
    difficult_words: int


def load_easy_words(path: str | Path | None = None) -> frozenset[str]:
    """Load the bundled familiar-word list (one lowercase word per line)."""
    if path is None:
        text = resources.files("healthfc").joinpath("data", "easy_words.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


_DEFAULT_EASY: frozenset[str] | None = None


def _default_easy_words() -> frozenset[str]:
    global _DEFAULT_EASY
    if _DEFAULT_EASY is None:
        _DEFAULT_EASY = load_easy_words()
    return _DEFAULT_EASY


def is_easy_word(word: str, easy_words: frozenset[str]) -> bool:
    w = word.lower()
    if w in easy_words:
        return True
    for suffix in _EASY_SUFFIXES:
        if w.endswith(suffix) and w[: -len(suffix)] in easy_words:
            return True
    return False


def text_stats(text: str, easy_words: frozenset[str] | None = None) -> TextStats:
    """Sentence/word/syllable/difficult-word counts for one text."""
    if easy_words is None:
        easy_words = _default_easy_words()
    sentences = segment_sentences(text)
    words = words_of(text)
    syllables = sum(count_syllables(w) for w in words)
    difficult = sum(1 for w in words if not is_easy_word(w, easy_words))
    return TextStats(
        sentences=len(sentences),
        words=len(words),
        syllables=syllables,
        difficult_words=difficult,
    )


def flesch_kincaid_reading_ease(text: str) -> float:
    """Reading-ease score; raises ``ValueError`` on zero sentences or words."""
    stats = text_stats(text, easy_words=frozenset())
    if stats.sentences == 0 or stats.words == 0:
        raise ValueError("reading ease needs at least one sentence and one word")
    return (
        206.835
        - 1.015 * (stats.words / stats.sentences)
        - 84.6 * (stats.syllables / stats.words)
    )


def dale_chall(text: str, easy_words: frozenset[str] | None = None) -> float:
    """Familiar-word difficulty score; raises ``ValueError`` on degenerate input."""
    if easy_words is None:
        easy_words = _default_easy_words()
    if not easy_words:
        raise ValueError("easy-word list must be nonempty")
    stats = text_stats(text, easy_words=easy_words)
    if stats.sentences == 0 or stats.words == 0:
        raise ValueError("readability needs at least one sentence and one word")
    pct_difficult = 100.0 * stats.difficult_words / stats.words
    score = 0.1579 * pct_difficult + 0.0496 * (stats.words / stats.sentences)
    if pct_difficult > _DIFFICULT_PCT_CUTOFF:
        score += _ADJUSTMENT
    return score


@dataclass
class ReadabilityReport:
    """Corpus-level mean and population std for both scores."""

    fk_mean: float
    fk_std: float
    dc_mean: float
    dc_std: float
    n_texts: int
    skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "fk_mean": self.fk_mean,
            "fk_std": self.fk_std,
            "dc_mean": self.dc_mean,
            "dc_std": self.dc_std,
            "n_texts": self.n_texts,
            "skipped": self.skipped,
        }


def corpus_readability(
    texts: Iterable[str] | Sequence[str], easy_words: frozenset[str] | None = None
) -> ReadabilityReport:
    """Score every text and aggregate to mean and population std.

    Texts with no sentences or no words are skipped and counted. Raises
    ``ValueError`` when nothing is scorable.
    """
    if easy_words is None:
        easy_words = _default_easy_words()
    fk_scores, dc_scores = [], []
    skipped = 0
    for text in texts:
        try:
            fk = flesch_kincaid_reading_ease(text)
            dc = dale_chall(text, easy_words)
        except ValueError:
            skipped += 1
            continue
        fk_scores.append(fk)
        dc_scores.append(dc)
    if not fk_scores:
        raise ValueError("no scorable texts in corpus")
    fk = np.asarray(fk_scores)
    dc = np.asarray(dc_scores)
    return ReadabilityReport(
        fk_mean=float(fk.mean()),
        fk_std=float(fk.std()),
        dc_mean=float(dc.mean()),
        dc_std=float(dc.std()),
        n_texts=len(fk_scores),
        skipped=skipped,
    )
