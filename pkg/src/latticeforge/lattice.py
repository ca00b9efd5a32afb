"""Expansion of a draft onto a qubit lattice.

open_algorithm places every tile's measurement pattern onto a cluster
grid sized from the draft's metrics; prepare measures the qubits no
pattern or wire needs out of the lattice (in the z basis) and fills the
gaps between patterns with x-measured wire qubits. What remains is the
graph state the interactive reduction workflow operates on.
"""

from __future__ import annotations

import dataclasses
from enum import Enum

from . import patterns
from .errors import DomainError, LayoutError
from .graphs import GraphState, MeasurementBasis, create_grid, measure
from .grid import (
    CHAIN_KINDS,
    CHAIN_SPAN,
    CNOT_SPAN,
    AlgorithmGrid,
    Metrics,
    SINGLE_CELL_KINDS,
    Tile,
    TileKind,
    errors_only,
    metrics,
    validate,
)

Cell = tuple[int, int]


class Role(str, Enum):
    PATTERN = "pattern"
    WIRE = "wire"
    INPUT = "input"
    READOUT = "readout"
    SUPERFLUOUS = "superfluous"
    UNASSIGNED = "unassigned"


class Highlight(str, Enum):
    RED = "red"
    BLUE = "blue"
    NONE = "none"


@dataclasses.dataclass(frozen=True)
class LatticeQubit:
    id: int
    row: int
    col: int
    role: Role = Role.UNASSIGNED
    label: str | None = None
    highlight: Highlight = Highlight.NONE
    bridge: bool = False


@dataclasses.dataclass(frozen=True)
class Lattice:
    """A laid-out draft: cell records plus the live graph state."""

    dims: tuple[int, int]
    qubits: dict[Cell, LatticeQubit]
    graph: GraphState
    summary: Metrics
    prepared: bool = False

    def qubit_at(self, row: int, col: int) -> LatticeQubit:
        try:
            return self.qubits[(row, col)]
        except KeyError:
            raise DomainError(f"no lattice cell at ({row}, {col})") from None

    def with_graph(self, graph: GraphState) -> "Lattice":
        return dataclasses.replace(self, graph=graph)


def _assign(records: dict[Cell, LatticeQubit], cell: Cell,
            label: str | None, highlight: Highlight,
            role: Role | None = None, bridge: bool = False):
    """Write a pattern assignment; non-None labels win on shared cells."""
    q = records[cell]
    new_label = label if label is not None else q.label
    new_highlight = highlight if label is not None else q.highlight
    new_role = role if role is not None else (
        q.role if q.role is not Role.UNASSIGNED else Role.PATTERN)
    records[cell] = dataclasses.replace(
        q, label=new_label, highlight=new_highlight, role=new_role,
        bridge=q.bridge or bridge)


def open_algorithm(grid: AlgorithmGrid) -> Lattice:
    """Expand a validated draft onto its minimal lattice.

    The draft must carry no error diagnostics. The resulting lattice is
    the full cluster grid: superfluous qubits are only identified and
    removed by prepare().
    """
    bad = errors_only(validate(grid))
    if bad:
        raise LayoutError(bad)
    summary = metrics(grid)
    if not grid.tiles:
        return Lattice((0, 0), {}, GraphState(), summary)

    rows, east = summary.min_lattice
    dims = (rows, east + 1)
    graph = create_grid(*dims)
    records: dict[Cell, LatticeQubit] = {}
    for r in range(dims[0]):
        for c in range(dims[1]):
            records[(r, c)] = LatticeQubit(id=r * dims[1] + c, row=r, col=c)

    ordered = sorted(grid.tiles, key=lambda t: (t.col, t.row))
    for tile in ordered:
        if tile.kind in CHAIN_KINDS:
            _place_chain(records, tile)
        elif tile.kind is TileKind.CNOT:
            _place_cnot(records, tile)
    for tile in ordered:
        if tile.kind in SINGLE_CELL_KINDS:
            _place_single(records, tile)

    return Lattice(dims, records, graph, summary)


def _tile_highlight(kind: TileKind) -> Highlight:
    if kind in patterns.BLUE_KINDS:
        return Highlight.BLUE
    if kind in patterns.RED_KINDS:
        return Highlight.RED
    return Highlight.NONE


def _place_chain(records, tile: Tile):
    colour = _tile_highlight(tile.kind)
    west = tile.col - CHAIN_SPAN + 1
    for offset, label in enumerate(patterns.CHAIN_LABELS[tile.kind]):
        _assign(records, (tile.row, west + offset), label, colour)


def _place_cnot(records, tile: Tile):
    colour = _tile_highlight(tile.kind)
    west = tile.col - CNOT_SPAN + 1
    for row in (tile.row, tile.row - 2):
        for offset, label in enumerate(patterns.CNOT_CHAIN_LABELS):
            _assign(records, (row, west + offset), label, colour)
    _assign(records, (tile.row - 1, tile.col - 3),
            patterns.CNOT_BRIDGE_LABEL, colour, bridge=True)


def _place_single(records, tile: Tile):
    cell = (tile.row, tile.col)
    if tile.kind is TileKind.WIRE:
        _assign(records, cell, patterns.WIRE_LABEL, Highlight.RED,
                role=Role.WIRE)
    elif tile.kind is TileKind.INPUT:
        # The input qubit holds the incoming state; if a pattern shares
        # the cell its measurement label stays in force.
        _assign(records, cell, None, Highlight.NONE, role=Role.INPUT)
    else:
        _assign(records, cell, patterns.READOUT, Highlight.NONE,
                role=Role.READOUT)


def prepare(lattice: Lattice) -> Lattice:
    """Reduce the full lattice to the qubits the algorithm needs.

    Gaps strictly inside a logical row's span become x-measured wire
    qubits, pattern outputs inside a span are likewise measured along x
    to teleport forward, and every remaining unassigned qubit is
    superfluous: measured in the z basis (ascending row, then column)
    and dropped from the graph. Idempotent.
    """
    if lattice.prepared:
        return lattice
    records = dict(lattice.qubits)

    spans: dict[int, tuple[int, int]] = {}
    for (r, c), q in records.items():
        if q.role is Role.UNASSIGNED or q.bridge:
            continue
        lo, hi = spans.get(r, (c, c))
        spans[r] = (min(lo, c), max(hi, c))

    for (r, c), q in sorted(records.items()):
        if r not in spans:
            continue
        lo, hi = spans[r]
        if not (lo < c < hi):
            continue
        if q.role is Role.UNASSIGNED:
            records[(r, c)] = dataclasses.replace(
                q, role=Role.WIRE, label=patterns.SX)
        elif q.label is None and q.role is Role.PATTERN:
            records[(r, c)] = dataclasses.replace(q, label=patterns.SX)

    graph = lattice.graph
    for cell in sorted(records):
        q = records[cell]
        if q.role is Role.UNASSIGNED:
            records[cell] = dataclasses.replace(
                q, role=Role.SUPERFLUOUS, label=patterns.SZ)
            graph, _ = measure(graph, q.id, MeasurementBasis("z"))

    return Lattice(lattice.dims, records, graph, lattice.summary,
                   prepared=True)


def to_graph_state(lattice: Lattice) -> GraphState:
    """The live graph of a prepared lattice."""
    if not lattice.prepared:
        raise DomainError("lattice has not been prepared")
    return lattice.graph


def lattice_to_doc(lattice: Lattice) -> dict:
    """JSON document: dims, present qubits sorted by id, sorted edges."""
    present = lattice.graph.vertices
    qubits = []
    for cell in sorted(lattice.qubits):
        q = lattice.qubits[cell]
        if q.id not in present:
            continue
        qubits.append({
            "id": q.id,
            "row": q.row,
            "col": q.col,
            "role": q.role.value,
            "label": q.label,
            "highlight": q.highlight.value,
        })
    qubits.sort(key=lambda e: e["id"])
    edges = sorted([list(e) for e in lattice.graph.edges])
    return {"dims": list(lattice.dims), "qubits": qubits, "edges": edges}
