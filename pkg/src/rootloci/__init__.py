"""Exact equations and singularity combinatorics of coincident root loci."""

__version__ = "0.1.0"

from .errors import DomainError, ResourceLimitExceeded, RootlociError
from .partitions import (
    Partition,
    Splitting,
    StratumLabel,
    all_partitions,
    classify_stratum,
    coarsenings,
    is_even,
    make_partition,
    splittings,
)
from .polyring import (
    NOT_HOMOGENEOUS,
    ZERO,
    BlockOrder,
    GrevlexOrder,
    LexOrder,
    Monomial,
    MonomialOrder,
    Poly,
    Var,
    dehomogenize,
    normalize_and_homogenize,
    poly_from_obj,
    poly_to_obj,
)
from .expansion import (
    ChartIndex,
    MultiExponent,
    all_chart_indices,
    beta,
    multi_exponents,
    product_expansion_oracle,
    theta_chart,
    theta_polys,
)
