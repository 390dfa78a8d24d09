"""Annotation toolkit for Arabic inquiry-answer dialogues.

Schema registry, corpus data model with segmentation and validation,
Buckwalter transliteration, corpus statistics and agreement, JSON corpus
serialization, transcript import, a CLI and an HTTP annotation service.
"""

from .io import (
    FORMAT_VERSION,
    InvalidCorpusError,
    ParseError,
    import_transcript,
    load_corpus_dir,
    parse,
    save_corpus_dir,
    schema_to_jsonable,
    serialize,
)
from .model import (
    UNANNOTATED,
    Corpus,
    Dialogue,
    Finding,
    Modality,
    Segment,
    Severity,
    SpeakerRole,
    Turn,
    ValidationReport,
    make_uid,
    normalize_text,
    parse_uid,
    segment_turn,
    validate,
    validate_turn,
)
from .schema import (
    AnnotationSchema,
    DialogueAct,
    Dimension,
    builtin_schema,
    normalize_act_name,
)
from .stats import (
    AgreementReport,
    CorpusStats,
    cohen_kappa,
    compute_stats,
    extract_unit_labels,
    word_count,
)
from .translit import TranslitResult, from_buckwalter, to_buckwalter

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "AnnotationSchema",
    "Corpus",
    "CorpusStats",
    "Dialogue",
    "DialogueAct",
    "Dimension",
    "FORMAT_VERSION",
    "Finding",
    "InvalidCorpusError",
    "Modality",
    "ParseError",
    "Segment",
    "Severity",
    "SpeakerRole",
    "TranslitResult",
    "Turn",
    "UNANNOTATED",
    "ValidationReport",
    "builtin_schema",
    "cohen_kappa",
    "compute_stats",
    "extract_unit_labels",
    "from_buckwalter",
    "import_transcript",
    "load_corpus_dir",
    "make_uid",
    "normalize_act_name",
    "normalize_text",
    "parse",
    "parse_uid",
    "save_corpus_dir",
    "schema_to_jsonable",
    "segment_turn",
    "serialize",
    "to_buckwalter",
    "validate",
    "validate_turn",
    "word_count",
    "__version__",
]
