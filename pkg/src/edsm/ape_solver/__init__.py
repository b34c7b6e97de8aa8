from .dispatch import ape_dispatch, bands, thresholds
from .instance import ApeContext, ApeInstance, TextTools, from_bits, make_context
from .long_case import (
    InvariantError,
    RegionPartition,
    RestrictedInstance,
    ape_long,
    exception_set,
    make_restricted,
    region_partition,
    solve_restricted,
)
from .naive import ape_naive
from .short_case import ape_short
from .very_short import ContractError, ape_very_short

__all__ = [
    "ApeContext",
    "ApeInstance",
    "ContractError",
    "InvariantError",
    "RegionPartition",
    "RestrictedInstance",
    "TextTools",
    "ape_dispatch",
    "ape_long",
    "ape_naive",
    "ape_short",
    "ape_very_short",
    "bands",
    "exception_set",
    "from_bits",
    "make_context",
    "make_restricted",
    "region_partition",
    "solve_restricted",
    "thresholds",
]
