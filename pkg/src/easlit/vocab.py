"""Core vocabulary shared by all services."""

EASLIT = "https://vocab.example.org/easlit#"

ITEM_TYPE = EASLIT + "Item"
OUTCOME_TYPE = EASLIT + "LearningOutcome"
STEM = EASLIT + "stem"
HAS_ANSWER = EASLIT + "hasAnswer"
ANSWER_TEXT = EASLIT + "answerText"
IS_CORRECT = EASLIT + "isCorrect"
ORDINAL = EASLIT + "ordinal"
POINTS = EASLIT + "points"
BLOOM_LEVEL = EASLIT + "bloomLevel"
LINKS_DOMAIN = EASLIT + "linksDomain"
ASSESSES_OUTCOME = EASLIT + "assessesOutcome"
LABEL = EASLIT + "label"
DESCRIPTION = EASLIT + "description"
VERSION = EASLIT + "version"
CREATED_AT = EASLIT + "createdAt"
NARROWER = EASLIT + "narrower"
ANNOTATED_BY = EASLIT + "annotatedBy"
IMPORTED_FROM = EASLIT + "importedFrom"

# revised Bloom taxonomy, in taxonomy order
BLOOM_ORDER = ["remember", "understand", "apply", "analyze", "evaluate", "create"]
BLOOM_IRIS = {level: EASLIT + "bloom-" + level for level in BLOOM_ORDER}
BLOOM_LEVEL_BY_IRI = {iri: level for level, iri in BLOOM_IRIS.items()}

# predicates owned by typed fields; anything else on an entity is extension data
CORE_PREDICATES = frozenset({
    STEM, HAS_ANSWER, ANSWER_TEXT, IS_CORRECT, ORDINAL, POINTS, BLOOM_LEVEL,
    LINKS_DOMAIN, ASSESSES_OUTCOME, LABEL, DESCRIPTION, VERSION, CREATED_AT,
})

DEFAULT_CONTEXT_TERMS = {
    "Item": ITEM_TYPE,
    "LearningOutcome": OUTCOME_TYPE,
    "stem": STEM,
    "hasAnswer": HAS_ANSWER,
    "answerText": ANSWER_TEXT,
    "isCorrect": IS_CORRECT,
    "ordinal": ORDINAL,
    "points": POINTS,
    "bloomLevel": BLOOM_LEVEL,
    "linksDomain": LINKS_DOMAIN,
    "assessesOutcome": ASSESSES_OUTCOME,
    "label": LABEL,
    "description": DESCRIPTION,
    "version": VERSION,
    "createdAt": CREATED_AT,
}
