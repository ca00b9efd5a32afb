"""latticeforge: draft, lay out, reduce and compile cluster-state algorithms.

The package is organised in layers. `grid` drafts algorithms from gate
tiles, `lattice` expands a draft onto a qubit lattice as a graph state,
`graphs` implements the interactive reduction calculus, `tableau` is the
independent stabilizer oracle backing it, `qasm` compiles drafts to
OpenQASM 3.0, and `service`/`cli` expose the whole workflow over HTTP and
the command line.
"""

from .graphs import (
    GraphState,
    MeasurementBasis,
    MeasurementRecord,
    MinimizeResult,
    create_grid,
    cz_count,
    edit,
    graph_from_doc,
    graph_to_doc,
    lc_equivalent,
    local_complement,
    measure,
    minimize_cz,
)

__all__ = [
    "GraphState",
    "MeasurementBasis",
    "MeasurementRecord",
    "MinimizeResult",
    "create_grid",
    "cz_count",
    "edit",
    "graph_from_doc",
    "graph_to_doc",
    "lc_equivalent",
    "local_complement",
    "measure",
    "minimize_cz",
]

__version__ = "0.1.0"
