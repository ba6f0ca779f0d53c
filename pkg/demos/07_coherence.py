"""Check the three coherence properties of an explanation.

Strong global coherence: every sentence entails the claim.
Weak global coherence: no sentence contradicts the claim.
Local coherence: no two sentences contradict each other.

For claims labelled false, an explanation-to-claim contradiction is the
expected direction and is reassigned to neutral before checking.
"""

from healthfc import (
    AnnotationItem,
    ConstantNli,
    NliRelation,
    TokenOverlapNli,
    evaluate_coherence,
    kappa_from_agreement,
    randolph_kappa,
)
from healthfc.coherence import agreement_by_question, load_annotations
from healthfc.corpus import VeracityLabel, _data_path
from healthfc.explain import Explanation

claim = "the flu vaccine is safe for children"
explanation = Explanation(
    claim_id="demo",
    sentences=[
        "trials show the flu vaccine is safe for children",
        "researchers followed thousands of children",
    ],
    method="gold",
)

verdict = evaluate_coherence(claim, VeracityLabel.TRUE, explanation, TokenOverlapNli())
print(f"lexical NLI stub  -> sgc={verdict.sgc} wgc={verdict.wgc} lc={verdict.lc}")

# Reassignment: a false claim contradicted by its explanation keeps weak
# global coherence, because that is what a refutation should do.
contradicting = ConstantNli(NliRelation.CONTRADICTS)
for label in (VeracityLabel.TRUE, VeracityLabel.FALSE):
    verdict = evaluate_coherence("some claim", label, explanation, contradicting)
    print(
        f"all-contradicts, label={label.value:5} -> wgc={verdict.wgc} "
        f"(reassigned indices: {verdict.reassigned_indices})"
    )

# Rater agreement for the human study export bundled with the package.
print("\nfree-marginal kappa from the bundled questionnaire sample:")
stats = agreement_by_question(load_annotations(_data_path("sample_annotations.csv")))
for question, s in stats.items():
    print(
        f"  {question:12} arity={s['arity']} kappa={s['kappa']:.2f} "
        f"overall agreement={s['overall_agreement']:.1%}"
    )

kappa, overall = randolph_kappa(
    [AnnotationItem("i1", 2, [0, 0, 1]), AnnotationItem("i2", 2, [0, 0, 0])]
)
print(f"\nhand fixture: overall={overall:.3f} kappa={kappa:.3f}")
print("formula check: kappa(P_o=0.62, k=2) =", kappa_from_agreement(0.62, 2))
