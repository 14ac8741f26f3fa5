from .core import (
    EXIT_ERRORS,
    EXIT_GUARD,
    EXIT_OK,
    BatchError,
    InstanceReference,
    TransformOptions,
    fetch_csv,
    push_csv,
    render_report,
    transform_csv,
)

__all__ = [
    "BatchError", "EXIT_ERRORS", "EXIT_GUARD", "EXIT_OK", "InstanceReference",
    "TransformOptions", "fetch_csv", "push_csv", "render_report",
    "transform_csv",
]
