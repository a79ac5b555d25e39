"""Combinatorics of cuts and resonances, and homotopy types of the strata they index."""

from .cuts import (
    Cut,
    Resonance,
    act,
    canonical_form,
    cut_from_weights,
    enumerate_resonances,
    from_symbolic,
    is_cut,
    resonance_equal,
    span_closure,
    to_symbolic,
)
from .errors import (
    IncompleteClosureError,
    InvalidCutError,
    InvariantViolation,
    NotClosedError,
    ParseError,
    ResonanceError,
    ResourceLimitError,
)
from .homotopy import HomotopyClass, betti, homotopy_type
from .partitions import NumberPartition, OrderedSetPartition, SetPartition, compose, restrict
from .relative import RelativeCut, closure_partition, direct_product, relative_equal, relative_from_gluing
from .sequential import classify

__version__ = "0.1.0"
