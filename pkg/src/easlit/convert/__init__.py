from .app import (
    ConvertServiceConfig,
    ImportReport,
    ItemServiceClient,
    create_app,
    item_payload_json,
    items_equal,
    items_in_dataset,
    row_from_item,
    row_matches_item,
    row_payload_json,
)
from .csvcodec import (
    COLUMNS,
    CsvFormatError,
    CsvRow,
    decode_csv,
    encode_csv,
    escape_value,
    join_multi,
    split_multi,
    unescape_value,
)

__all__ = [
    "COLUMNS", "ConvertServiceConfig", "CsvFormatError", "CsvRow",
    "ImportReport", "ItemServiceClient", "create_app", "decode_csv",
    "encode_csv", "escape_value", "item_payload_json", "items_equal",
    "items_in_dataset", "join_multi", "row_from_item", "row_matches_item",
    "row_payload_json", "split_multi", "unescape_value",
]
