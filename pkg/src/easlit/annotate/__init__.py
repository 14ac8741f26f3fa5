from .app import AnnotationServiceConfig, create_app
from .suggest import BloomSuggestion, load_lexicon, suggest_bloom

__all__ = ["AnnotationServiceConfig", "BloomSuggestion", "create_app",
           "load_lexicon", "suggest_bloom"]
