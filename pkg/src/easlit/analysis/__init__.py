from .app import AnalysisServiceConfig, create_app
from .core import (
    CycleError,
    DomainView,
    build_view,
    compute_distribution,
    display_label,
    links_dataset,
    view_dataset,
    visualization_graph,
)

__all__ = [
    "AnalysisServiceConfig", "CycleError", "DomainView", "build_view",
    "compute_distribution", "create_app", "display_label", "links_dataset",
    "view_dataset", "visualization_graph",
]
