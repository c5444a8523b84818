"""Growth of sets and products of conjugates in small finite simple groups."""

from .groups import (
    CapacityError,
    ClassPartition,
    Family,
    GroupError,
    GroupInvariants,
    GroupSpec,
    IndexedGroup,
    build_group,
    conjugacy_classes,
    get_group,
    invariants,
    parse_spec,
    standard_generators,
)
from .setalg import (
    ElementSet,
    closure,
    conjugate,
    cube_is_full,
    inverse,
    is_full,
    power,
    product,
    translate,
)

__version__ = "0.1.0"
