"""Stateless distributed IPv6 address allocation: Python surface.

Thin re-export of the compiled core. Address and identifier operations take
text forms (hexadecimal or dotted-decimal); the simulator runs over built
topology objects and returns plain dicts.
"""

from ._core import (
    ConfigError,
    InvalidIdentifier,
    MalformedAddress,
    NonQuiescent,
    Topology,
    TopologyUnsatisfiable,
    canonical_hex,
    execute_config,
    fill_position,
    from_edges,
    grid,
    is_assignable,
    next_address,
    parent_of,
    random_geometric,
    remaining_capacity,
    run,
    to_dotted,
    tree,
)

__all__ = [
    "ConfigError",
    "InvalidIdentifier",
    "MalformedAddress",
    "NonQuiescent",
    "Topology",
    "TopologyUnsatisfiable",
    "canonical_hex",
    "execute_config",
    "fill_position",
    "from_edges",
    "grid",
    "is_assignable",
    "next_address",
    "parent_of",
    "random_geometric",
    "remaining_capacity",
    "run",
    "to_dotted",
    "tree",
]

__version__ = "1.0.0"
