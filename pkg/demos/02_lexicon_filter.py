"""Build the health lexicon and apply the unique-term inclusion filter.

A record stays in the corpus when its article or claim mentions more
than three unique lexicon terms.
"""

from healthfc import build_lexicon, match_terms, passes_health_filter
from healthfc.corpus import ClaimRecord, SourceSite, VeracityLabel, _data_path
from healthfc.lexicon import read_term_list

lexicon = build_lexicon(
    term_lists=[_data_path("health_terms_base.txt")],
    supplements=read_term_list(_data_path("lexicon_supplement_terms.txt")),
)
print(f"lexicon: {len(lexicon)} terms from {lexicon.source_counts}")

text = "Public health officials fear the flu will strain every hospital this winter."
result = match_terms(text, lexicon)
print(f"\nmatched in sample text: {sorted(result.matched_terms)} (n={result.count})")

# Multi-word entries match as contiguous token runs; no substring hits.
print("inside-word check:", match_terms("influenza", build_lexicon([], ["flu"])).count, "matches")


def record(claim_id, claim, article):
    return ClaimRecord(
        claim_id=claim_id,
        claim_text=claim,
        article_text=article,
        explanation_text="placeholder explanation text",
        label=VeracityLabel.TRUE,
        source_site=SourceSite.REUTERS,
    )


health_article = (
    "The hospital reported a flu outbreak. A vaccine clinic opened and "
    "nurses treated patients in quarantine."
)
city_article = "The council debated a parking garage bond for three hours downtown."

for rec in (
    record("health", "Flu outbreak strains hospital capacity this winter season.", health_article),
    record("city", "Council approves the downtown parking garage bond deal.", city_article),
):
    audit = passes_health_filter(rec, lexicon)
    print(
        f"{rec.claim_id:8} article_terms={audit.article_count} "
        f"claim_terms={audit.claim_count} passed={audit.passed}"
    )
