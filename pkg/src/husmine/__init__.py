"""High-utility sequential pattern mining over quantitative sequence databases.

Mines high-utility patterns (``husp``), frequent high-utility patterns
(``fhusp``), and closed frequent high-utility patterns (``chusp``) with a
projection-based pattern-growth search, plus a brute-force definitional
oracle for verification.  See the README for the CLI and file formats.
"""

from .core import (
    ItemId,
    Pattern,
    ProfitTable,
    QItem,
    QItemset,
    QSequence,
    QSequenceDatabase,
    ValidationError,
    enumerate_embeddings,
    matches,
    pattern_contains,
)
from .dataset_io import (
    STATS_HEADER,
    DatasetFormatError,
    GeneratorConfig,
    format_exact,
    generate_database,
    load_database,
    parse_database,
    parse_profits,
    write_database,
    write_patterns,
)
from .miner import (
    Counters,
    ExtensionRecord,
    MinedPattern,
    MinerState,
    MiningParams,
    canonical_order,
    check_closed,
    final_closed_filter,
    mine,
    resolve_min_sup,
)
from .oracle import OracleLimitError, OracleLimits, oracle_mine, oracle_support, oracle_umax
from .projection import (
    Chus,
    ProjectionContext,
    Ucs,
    UlsElement,
    build_initial_chus,
    i_extend,
    peu,
    s_extend,
    scan_extensions,
    umax_of,
)
from .utility import (
    UtilityMatrices,
    build_matrices,
    compute_swu_per_item,
    embedding_utility,
    item_utility,
    max_embedding_utility,
    sequence_utility,
    swu_of_pattern,
)

__version__ = "0.1.0"
