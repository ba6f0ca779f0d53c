"""Health fact-checking corpus curation and explanation-quality evaluation.

The package is organized by pipeline stage:

* :mod:`healthfc.corpus` - claim records, label standardization, cleaning
* :mod:`healthfc.lexicon` - health term lexicon and the inclusion filter
* :mod:`healthfc.readability` - reading-ease and familiar-word scores
* :mod:`healthfc.evidence` - sentence segmentation and evidence ranking
* :mod:`healthfc.veracity` - 4-way label prediction and its metrics
* :mod:`healthfc.explain` - explanation baselines and ROUGE scoring
* :mod:`healthfc.coherence` - coherence properties and rater agreement
* :mod:`healthfc.pipeline` - configuration, splits and stage wiring
"""

from .corpus import (
    ClaimRecord,
    LABEL_ORDER,
    RawRecord,
    RejectReason,
    SourceSite,
    VeracityLabel,
    assign_news_label,
    clean,
    load_label_map,
    normalize_label,
)
from .lexicon import HealthLexicon, build_lexicon, match_terms, passes_health_filter
from .readability import (
    ReadabilityReport,
    corpus_readability,
    dale_chall,
    flesch_kincaid_reading_ease,
)
from .evidence import (
    EvidenceRanking,
    HashedTfidfBackend,
    cosine,
    rank_evidence,
    segment_sentences,
)
from .veracity import (
    BaselineModel,
    ClassificationMetrics,
    TrainConfig,
    evaluate,
    predict,
    predicted_label,
    train_baseline,
)
from .explain import (
    Explanation,
    RougeScore,
    lead3,
    oracle_extractive,
    rouge_l,
    rouge_n,
    score_corpus,
)
from .coherence import (
    AnnotationItem,
    ConstantNli,
    CoherenceVerdict,
    NliRelation,
    RelationMatrix,
    TokenOverlapNli,
    apply_reassignment,
    build_relation_matrix,
    check_lc,
    check_sgc,
    check_wgc,
    corpus_coherence,
    evaluate_coherence,
    kappa_from_agreement,
    randolph_kappa,
)
from .pipeline import PipelineConfig, run, split

__version__ = "0.1.0"
