"""Citation sentiment and nature analysis for scientific publications.

The pipeline: clean and tokenize extracted text, find citation markers and
the bibliography, featurize each citing sentence, classify sentiment with
two linear classifiers fused by per-class priority, classify nature, and
aggregate everything into a per-document report.
"""

from .citations import (
    BibliographyEntry,
    CitationMarker,
    CitationSentence,
    MarkerStyle,
    extract_bibliography,
    find_citation_sentences,
    link_markers,
    locate_citation_tokens,
)
from .classifiers import (
    NATURE_LABELS,
    SENTIMENT_LABELS,
    LabeledExample,
    LinearModel,
    Task,
    TrainConfig,
    load_model,
    load_model_file,
    predict,
    save_model,
    save_model_file,
    train_paum,
    train_svm,
)
from .corpus import (
    AnnotatedCorpus,
    CorpusRecord,
    DatasetSplit,
    featurize_records,
    load_corpus,
    load_manifest,
    stratified_split,
    verify_manifest,
)
from .errors import (
    ClassShortageError,
    CorpusFormatError,
    DecodingError,
    InvalidPolicyError,
    InvalidTrainingSetError,
    ModelFormatError,
    SentiCiteError,
    TaskMismatchError,
    UnsupportedVersionError,
    ValidationError,
)
from .evaluation import (
    CrossValResult,
    EvalReport,
    comparison_table,
    counts_summary,
    cross_validate,
    evaluate,
    section_distribution,
)
from .experiments import feature_ablation, test_size_sweep, train_size_sweep
from .features import (
    COMBINATION,
    ONLY_POS,
    FeatureConfig,
    FeatureVector,
    preset,
    vectorize,
    vectorize_text,
)
from .fusion import FusionPolicy, build_policy, fuse, load_policy, policy_from_f1, save_policy
from .ingest import (
    CleanDocument,
    RawDocument,
    Section,
    Sentence,
    Token,
    TokenKind,
    clean_text,
    detect_sections,
    split_sentences,
    tokenize,
)
from .lexicon import LexicalResource, lexical_expand
from .postag import PosTag, TaggedToken, pos_tag
from .report import (
    AnalysisModels,
    DocumentAnalysis,
    analysis_to_dict,
    analysis_to_json,
    analyze_document,
    render_html,
)
from .stemming import stem

__version__ = "1.0.0"

__all__ = [
    "AnalysisModels",
    "AnnotatedCorpus",
    "BibliographyEntry",
    "COMBINATION",
    "CitationMarker",
    "CitationSentence",
    "ClassShortageError",
    "CleanDocument",
    "CorpusFormatError",
    "CorpusRecord",
    "CrossValResult",
    "DatasetSplit",
    "DecodingError",
    "DocumentAnalysis",
    "EvalReport",
    "FeatureConfig",
    "FeatureVector",
    "FusionPolicy",
    "InvalidPolicyError",
    "InvalidTrainingSetError",
    "LabeledExample",
    "LexicalResource",
    "LinearModel",
    "MarkerStyle",
    "ModelFormatError",
    "NATURE_LABELS",
    "ONLY_POS",
    "PosTag",
    "RawDocument",
    "SENTIMENT_LABELS",
    "Section",
    "SentiCiteError",
    "Sentence",
    "TaggedToken",
    "Task",
    "TaskMismatchError",
    "Token",
    "TokenKind",
    "TrainConfig",
    "UnsupportedVersionError",
    "ValidationError",
    "analysis_to_dict",
    "analysis_to_json",
    "analyze_document",
    "build_policy",
    "clean_text",
    "comparison_table",
    "counts_summary",
    "cross_validate",
    "detect_sections",
    "evaluate",
    "extract_bibliography",
    "feature_ablation",
    "featurize_records",
    "find_citation_sentences",
    "fuse",
    "lexical_expand",
    "link_markers",
    "load_corpus",
    "load_manifest",
    "load_model",
    "load_model_file",
    "load_policy",
    "locate_citation_tokens",
    "policy_from_f1",
    "pos_tag",
    "predict",
    "preset",
    "render_html",
    "save_model",
    "save_model_file",
    "save_policy",
    "section_distribution",
    "split_sentences",
    "stem",
    "stratified_split",
    "test_size_sweep",
    "tokenize",
    "train_paum",
    "train_size_sweep",
    "train_svm",
    "vectorize",
    "vectorize_text",
    "verify_manifest",
]
