"""Information-content shaping of i.i.d. symbol strings.

The core object is an exact total order on fixed-length strings: information
content ascending, with ties broken by composition and position.  On top of
it sit exact rank/unrank, the order-preserving length-increasing bijection
that maps all a**n strings of length n onto the a**n lowest-content strings
of length n+k, exact and Monte Carlo mean-content analysis, and an adaptive
arithmetic codec for measuring the transform's effect on compressed sizes.
"""

from .analyzer import (
    AverageReport,
    SelectionBoundary,
    average_info_exact,
    complement_min_info,
    rank_info_series,
    shaped_average_info,
    shaped_average_info_exact,
    shaped_threshold,
)
from .bijection import (
    ShapingParameters,
    in_image,
    shape,
    string_rank,
    string_unrank,
    unshape,
)
from .codec import (
    ExperimentReport,
    decode,
    encode,
    encoded_bit_length,
    redundancy_bound_bits,
    shaping_experiment,
)
from .compositions import (
    DEFAULT_COMPOSITION_CAP,
    ClassOrder,
    class_order,
    class_weight,
    composition_count,
    composition_info_bits,
    enumerate_compositions,
    exact_compare,
    multinomial,
    order_product,
    sorted_compositions,
)
from .errors import (
    BlockLengthError,
    CorruptStreamError,
    DegenerateSampleError,
    InvalidSymbolError,
    NotInImageError,
    ResourceLimitError,
    ShapingError,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    estimate_average_info,
    estimate_shaped_average_info,
    estimate_table,
    info_from_counts,
    sample_compositions,
    sample_strings,
    shard_generator,
)
from .source import (
    SourceEnsemble,
    composition_of,
    empirical_information_content,
    information_content,
    literal_information_content,
    string_probability,
    validate_symbols,
)

__version__ = "0.1.0"

__all__ = [
    "AverageReport",
    "BlockLengthError",
    "ClassOrder",
    "CorruptStreamError",
    "DEFAULT_COMPOSITION_CAP",
    "DegenerateSampleError",
    "ExperimentReport",
    "InvalidSymbolError",
    "McConfig",
    "McEstimate",
    "NotInImageError",
    "ResourceLimitError",
    "SelectionBoundary",
    "ShapingError",
    "ShapingParameters",
    "SourceEnsemble",
    "average_info_exact",
    "class_order",
    "class_weight",
    "complement_min_info",
    "composition_count",
    "composition_info_bits",
    "composition_of",
    "decode",
    "empirical_information_content",
    "encode",
    "encoded_bit_length",
    "enumerate_compositions",
    "estimate_average_info",
    "estimate_shaped_average_info",
    "estimate_table",
    "exact_compare",
    "in_image",
    "info_from_counts",
    "information_content",
    "literal_information_content",
    "multinomial",
    "order_product",
    "rank_info_series",
    "redundancy_bound_bits",
    "sample_compositions",
    "sample_strings",
    "shard_generator",
    "shape",
    "shaped_average_info",
    "shaped_average_info_exact",
    "shaped_threshold",
    "shaping_experiment",
    "sorted_compositions",
    "string_probability",
    "string_rank",
    "string_unrank",
    "unshape",
    "validate_symbols",
]
