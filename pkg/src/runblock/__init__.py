"""Segmentation and characterization of rectangular blocks in run-length
compressed binary document images, without decompression."""

from .core import (
    BACKGROUND,
    FOREGROUND,
    CompressedDoc,
    RunRow,
    canonicalize_row,
    decode_image,
    decode_row,
    encode_image,
    encode_row,
    is_canonical,
)
from .errors import ConsistencyError, FormatError, RunBlockError, ValidationError
from .extract import (
    BlockSpec,
    BoundaryRecord,
    ExtractionStats,
    build_position_table,
    extract_block,
    extract_block_detailed,
    locate_end,
    locate_start,
    trim_row,
)
from .features import (
    Characterization,
    FeatureContext,
    FeatureReport,
    ceq,
    characterize,
    density,
    foreground_pixels,
    foreground_total,
    seq,
    transition_columns,
    transitions_in_row,
)
from .formats import read_pbm, read_rle, write_pbm, write_rle
from .mh import mh_decode_image, mh_decode_row, mh_encode_image, mh_encode_row
from .oracle import (
    AccuracyResult,
    accuracy_compressed,
    accuracy_pixel,
    baseline_cell_ops,
    oracle_crop,
    pixel_features,
)

__version__ = "0.1.0"

__all__ = [
    "BACKGROUND",
    "FOREGROUND",
    "AccuracyResult",
    "BlockSpec",
    "BoundaryRecord",
    "Characterization",
    "CompressedDoc",
    "ConsistencyError",
    "ExtractionStats",
    "FeatureContext",
    "FeatureReport",
    "FormatError",
    "RunBlockError",
    "RunRow",
    "ValidationError",
    "accuracy_compressed",
    "accuracy_pixel",
    "baseline_cell_ops",
    "build_position_table",
    "canonicalize_row",
    "ceq",
    "characterize",
    "decode_image",
    "decode_row",
    "density",
    "encode_image",
    "encode_row",
    "extract_block",
    "extract_block_detailed",
    "foreground_pixels",
    "foreground_total",
    "is_canonical",
    "locate_end",
    "locate_start",
    "mh_decode_image",
    "mh_decode_row",
    "mh_encode_image",
    "mh_encode_row",
    "oracle_crop",
    "pixel_features",
    "read_pbm",
    "read_rle",
    "seq",
    "transition_columns",
    "transitions_in_row",
    "trim_row",
    "write_pbm",
    "write_rle",
]
