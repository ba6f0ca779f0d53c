"""Shared low-level text helpers."""

import re

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters.

    The same tokenization is used for lexicon matching, overlap metrics
    and feature hashing so that term membership means the same thing
    everywhere.
    """
    return _TOKEN_RE.findall(text.lower())


def ngrams(tokens: list[str], n: int) -> list[tuple[str, ...]]:
    """All contiguous n-grams of ``tokens``, in order."""
    if n < 1:
        raise ValueError("n-gram order must be >= 1")
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]
