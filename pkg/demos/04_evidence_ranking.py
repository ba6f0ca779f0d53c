"""Segment an article and rank its sentences against the claim.

The native backend embeds claim and sentences together (hashed TF-IDF)
and ranks by cosine similarity; the top k become the evidence.
"""

from healthfc import HashedTfidfBackend, rank_evidence, segment_sentences

CLAIM = "The flu vaccine reduces hospitalization among elderly patients."

ARTICLE = (
    "City officials met on Tuesday for their regular session. "
    "Most of the agenda covered road repairs and park permits. "
    "Near the end, the health commissioner presented new figures. "
    "The data showed the flu vaccine cut hospitalization sharply among elderly patients "
    "compared with unvaccinated peers. "
    "The flu vaccine remains free at county clinics through March. "
    "Dr. Alvarez of the U.S. surveillance network praised the outreach teams."
)

sentences = segment_sentences(ARTICLE)
print(f"{len(sentences)} sentences (note the 'Dr.' and 'U.S.' guards held):")
for i, s in enumerate(sentences):
    print(f"  [{i}] {s}")

ranking = rank_evidence(CLAIM, sentences, HashedTfidfBackend(), k=3, claim_id="demo")
print("\nranked by similarity to the claim:")
for index, score in ranking.ranked:
    marker = "*" if (index, score) in ranking.k_selected else " "
    print(f" {marker} score={score:6.3f}  [{index}] {sentences[index][:70]}")
print("\n* = selected evidence (top k=3)")
