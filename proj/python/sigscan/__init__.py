"""Significance-based detection of parametric patterns in binary images.

Images are 2-d boolean arrays of shape (rows, cols); element [0, 0] is the
upper-left pixel, which the detection parameters address as (1, 1).
"""

from ._sigscan import (
    DomainError,
    FormatError,
    PreconditionError,
    crack,
    detect,
    gen_bernoulli,
    precision_recall,
    read_pnm,
    significance_exact,
    significance_hoeffding,
    summarize,
    write_pbm,
)

__all__ = [
    "DomainError",
    "FormatError",
    "PreconditionError",
    "crack",
    "detect",
    "gen_bernoulli",
    "precision_recall",
    "read_pnm",
    "significance_exact",
    "significance_hoeffding",
    "summarize",
    "write_pbm",
]
