"""Walk one raw record through label standardization and cleaning.

Shows the three curation gates separately: raw-label mapping (or the
news-headline rule), the structural cleaning rules, and what a rejection
looks like.
"""

from healthfc import (
    RawRecord,
    RejectReason,
    SourceSite,
    assign_news_label,
    clean,
    normalize_label,
)

# Raw scraped verdicts come in many shapes; the bundled table maps them
# onto the 4-way scheme.
for raw_label in ("pants-on-fire!", "half-true", "no evidence", "4 Star", "komodo dragon"):
    print(f"{raw_label!r:24} -> {normalize_label(raw_label)}")

# News headline claims are assumed verified, unless a wire-service
# prefix marks them as something other than a claim.
for headline in (
    "Families tell U.S. lawmakers of heparin deaths.",
    "AP EXCLUSIVE: New virus data reveals spread patterns.",
):
    record = RawRecord(
        claim_id="demo",
        claim_text=headline,
        article_text="",
        explanation_text="A long enough explanation for the demo record.",
        label="",
        source_site=SourceSite.APNEWS,
    )
    print(f"{headline[:46]:48} -> {assign_news_label(record)}")

# Structural cleaning enforces claim/explanation lengths and rejects
# interrogative text.
good = RawRecord(
    claim_id="demo-ok",
    claim_text="A declarative health claim that is long enough to keep.",
    article_text="Article body goes here.",
    explanation_text="An explanation that comfortably clears the length rule.",
    label="true",
    source_site=SourceSite.SNOPES,
)
result = clean(good, normalize_label(good.label))
print("\ncleaned record:", result.claim_id, "->", result.label.value)

question = RawRecord(
    claim_id="demo-question",
    claim_text="Is Peppa Pig linked to autism in young children?",
    article_text="",
    explanation_text="An explanation that comfortably clears the length rule.",
    label="false",
    source_site=SourceSite.SNOPES,
)
rejected = clean(question, normalize_label(question.label))
assert rejected is RejectReason.INTERROGATIVE
print("interrogative claim    ->", rejected.value)
