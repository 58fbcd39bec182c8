"""Exact and Monte-Carlo tools for the Plancherel-Hurwitz measure on partitions."""

__version__ = "0.1.0"

from .partitions import (  # noqa: E402
    Partition,
    conjugate,
    content_sum,
    dim_syt,
    hook_lengths,
    log_dim_syt,
    partitions_of,
    rescaled_profile,
)
from .hurwitz import hurwitz_number, hurwitz_number_bruteforce, return_probability  # noqa: E402
