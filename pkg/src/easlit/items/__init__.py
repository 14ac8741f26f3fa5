from .app import ItemServiceConfig, create_app
from .model import (
    DEFAULT_CONTEXT,
    Answer,
    EntityValidationError,
    Item,
    LearningOutcome,
    item_from_quads,
    item_to_quads,
    outcome_from_quads,
    outcome_to_quads,
)

__all__ = [
    "Answer", "DEFAULT_CONTEXT", "EntityValidationError", "Item",
    "ItemServiceConfig", "LearningOutcome", "create_app",
    "item_from_quads", "item_to_quads", "outcome_from_quads", "outcome_to_quads",
]
