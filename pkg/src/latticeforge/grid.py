"""Tile-based drafting surface for cluster-state algorithms.

An algorithm is drafted by anchoring gate tiles on a bounded grid. Every
tile owns a footprint of cells; horizontally adjacent tiles may share a
single column of cells where the output qubits of the western tile are
the input qubits of the eastern one. Everything else about a draft
(metrics, validation, serialisation, circuit ingestion) is derived from
those footprints.
"""

from __future__ import annotations

import dataclasses
import math
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import (
    BoundsError,
    CollisionError,
    DomainError,
    GeometryError,
    ParseError,
    RoutingError,
)
from .graphs import MAX_GRID_DIM

Cell = tuple[int, int]


class TileKind(str, Enum):
    HADAMARD = "hadamard"
    S = "s"
    T = "t"
    ROTX = "rotx"
    ROTY = "roty"
    ROTZ = "rotz"
    CNOT = "cnot"
    WIRE = "wire"
    INPUT = "input"
    READOUT = "readout"


CHAIN_KINDS = frozenset({
    TileKind.HADAMARD, TileKind.S, TileKind.T,
    TileKind.ROTX, TileKind.ROTY, TileKind.ROTZ,
})
ROTATION_KINDS = frozenset({TileKind.ROTX, TileKind.ROTY, TileKind.ROTZ})
SINGLE_CELL_KINDS = frozenset({TileKind.WIRE, TileKind.INPUT, TileKind.READOUT})

# Cells covered east-to-west by the two footprint shapes: a five-qubit
# chain for single-qubit gates, and the fifteen-qubit two-chain-plus-
# bridge shape for CNOT.
CHAIN_SPAN = 5
CNOT_SPAN = 7
THETA_LIMIT = 2 * math.pi


@dataclasses.dataclass(frozen=True)
class Tile:
    """A gate tile anchored at (row, col).

    The anchor is the eastern column of the footprint; for CNOT it is on
    the southern (target) row, with the control chain two rows north and
    the bridge qubit between them at col - 3. theta is only meaningful
    on rotation tiles and may stay None until compile time.
    """

    kind: TileKind
    row: int
    col: int
    theta: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, TileKind):
            object.__setattr__(self, "kind", TileKind(self.kind))
        if not (0 <= self.row < MAX_GRID_DIM and 0 <= self.col < MAX_GRID_DIM):
            raise BoundsError(
                f"anchor ({self.row}, {self.col}) outside "
                f"[0, {MAX_GRID_DIM}) x [0, {MAX_GRID_DIM})"
            )
        if self.theta is not None:
            if self.kind not in ROTATION_KINDS:
                raise DomainError(f"{self.kind.value} tiles carry no angle")
            if isinstance(self.theta, bool) or not isinstance(self.theta, (int, float)):
                raise DomainError(f"theta must be a number, got {self.theta!r}")
            if not math.isfinite(self.theta):
                raise DomainError(f"theta must be finite, got {self.theta!r}")
            object.__setattr__(self, "theta", float(self.theta))
        if self.kind in CHAIN_KINDS and self.col < CHAIN_SPAN - 1:
            raise BoundsError(
                f"{self.kind.value} at col {self.col} leaves no room for "
                f"its {CHAIN_SPAN}-qubit chain"
            )
        if self.kind is TileKind.CNOT:
            if self.col < CNOT_SPAN - 1:
                raise BoundsError(
                    f"cnot at col {self.col} leaves no room for its "
                    f"{CNOT_SPAN}-qubit chains"
                )
            if self.row < 2:
                raise GeometryError(
                    f"cnot at row {self.row} needs two rows above for the "
                    "control chain"
                )

    @property
    def identity(self) -> tuple[str, int, int]:
        return (self.kind.value, self.row, self.col)

    def footprint(self) -> frozenset[Cell]:
        if self.kind in SINGLE_CELL_KINDS:
            return frozenset({(self.row, self.col)})
        if self.kind in CHAIN_KINDS:
            return frozenset((self.row, c)
                             for c in range(self.col - CHAIN_SPAN + 1,
                                            self.col + 1))
        cells = set()
        for c in range(self.col - CNOT_SPAN + 1, self.col + 1):
            cells.add((self.row, c))
            cells.add((self.row - 2, c))
        cells.add((self.row - 1, self.col - 3))
        return frozenset(cells)

    def bridge_cells(self) -> frozenset[Cell]:
        if self.kind is TileKind.CNOT:
            return frozenset({(self.row - 1, self.col - 3)})
        return frozenset()

    def west_cells(self) -> frozenset[Cell]:
        if self.kind in SINGLE_CELL_KINDS:
            return frozenset({(self.row, self.col)})
        if self.kind in CHAIN_KINDS:
            return frozenset({(self.row, self.col - CHAIN_SPAN + 1)})
        w = self.col - CNOT_SPAN + 1
        return frozenset({(self.row, w), (self.row - 2, w)})

    def east_cells(self) -> frozenset[Cell]:
        if self.kind in SINGLE_CELL_KINDS:
            return frozenset({(self.row, self.col)})
        if self.kind in CHAIN_KINDS:
            return frozenset({(self.row, self.col)})
        return frozenset({(self.row, self.col), (self.row - 2, self.col)})


@dataclasses.dataclass(frozen=True)
class AlgorithmGrid:
    """An immutable draft: a named, canonically ordered set of tiles."""

    tiles: tuple[Tile, ...] = ()
    name: str = ""

    def __post_init__(self):
        ordered = tuple(sorted(self.tiles,
                               key=lambda t: (t.row, t.col, t.kind.value)))
        object.__setattr__(self, "tiles", ordered)


class Metrics(NamedTuple):
    """Draft-time resource summary.

    min_lattice is (rows required, eastmost occupied column index);
    qubit_count counts footprint cells plus the wire qubits implied by
    gaps on logical rows; t_count counts T tiles.
    """

    min_lattice: tuple[int, int]
    qubit_count: int
    t_count: int


@dataclasses.dataclass(frozen=True)
class Diagnostic:
    severity: str
    rule: str
    message: str
    cells: tuple[Cell, ...] = ()
    tiles: tuple[tuple[str, int, int], ...] = ()


def _legal_join(a: Tile, b: Tile, cell: Cell) -> bool:
    """A shared cell is legal iff it joins one tile's output column to
    the other's input column."""
    return ((cell in a.east_cells() and cell in b.west_cells())
            or (cell in a.west_cells() and cell in b.east_cells()))


def place_tile(grid: AlgorithmGrid, tile: Tile) -> AlgorithmGrid:
    """Add a tile, rejecting duplicates and illegal overlaps."""
    fp = tile.footprint()
    for existing in grid.tiles:
        if existing.identity == tile.identity:
            raise CollisionError(existing.identity, tile.identity,
                                 (tile.row, tile.col))
        for cell in sorted(existing.footprint() & fp):
            if not _legal_join(existing, tile, cell):
                raise CollisionError(existing.identity, tile.identity, cell)
    return AlgorithmGrid(grid.tiles + (tile,), grid.name)


def occupied_cells(grid: AlgorithmGrid) -> set[Cell]:
    cells: set[Cell] = set()
    for tile in grid.tiles:
        cells |= tile.footprint()
    return cells


def _flow_cells(grid: AlgorithmGrid) -> set[Cell]:
    """Footprint cells that carry information flow along their row
    (everything except CNOT bridge qubits)."""
    cells: set[Cell] = set()
    for tile in grid.tiles:
        cells |= tile.footprint() - tile.bridge_cells()
    return cells


def logical_rows(grid: AlgorithmGrid) -> list[int]:
    """Rows that carry information flow, in ascending order."""
    return sorted({r for r, _ in _flow_cells(grid)})


def row_spans(grid: AlgorithmGrid) -> dict[int, tuple[int, int]]:
    """Westmost and eastmost flow column per logical row."""
    spans: dict[int, tuple[int, int]] = {}
    for r, c in _flow_cells(grid):
        lo, hi = spans.get(r, (c, c))
        spans[r] = (min(lo, c), max(hi, c))
    return spans


def gap_cells(grid: AlgorithmGrid) -> set[Cell]:
    """Unoccupied cells strictly inside a logical row's flow span.

    These become implicit wire qubits: the draft is only coherent if
    information crosses them, so they are counted as lattice qubits and
    measured along x during preparation.
    """
    occupied = occupied_cells(grid)
    gaps: set[Cell] = set()
    for r, (lo, hi) in row_spans(grid).items():
        for c in range(lo + 1, hi):
            if (r, c) not in occupied:
                gaps.add((r, c))
    return gaps


def metrics(grid: AlgorithmGrid) -> Metrics:
    """Resource summary; the empty draft reports ((0, 0), 0, 0)."""
    cells = occupied_cells(grid)
    if not cells:
        return Metrics((0, 0), 0, 0)
    rows = max(r for r, _ in cells) + 1
    east = max(c for _, c in cells)
    qubits = len(cells) + len(gap_cells(grid))
    t_count = sum(1 for t in grid.tiles if t.kind is TileKind.T)
    return Metrics((rows, east), qubits, t_count)


def validate(grid: AlgorithmGrid) -> list[Diagnostic]:
    """Check grid-level invariants.

    Errors (duplicate tiles, illegal overlaps, one per offending cell)
    make the draft ineligible for layout; warnings (rotation angles
    outside (-2*pi, 2*pi]) do not.
    """
    out: list[Diagnostic] = []
    seen: dict[tuple[str, int, int], Tile] = {}
    for tile in grid.tiles:
        if tile.identity in seen:
            out.append(Diagnostic(
                severity="error", rule="duplicate-tile",
                message=f"tile {tile.identity} appears more than once",
                cells=((tile.row, tile.col),),
                tiles=(tile.identity,),
            ))
        else:
            seen[tile.identity] = tile

    tiles = grid.tiles
    for i, a in enumerate(tiles):
        fa = a.footprint()
        for b in tiles[i + 1:]:
            if a.identity == b.identity:
                continue
            for cell in sorted(fa & b.footprint()):
                if not _legal_join(a, b, cell):
                    out.append(Diagnostic(
                        severity="error", rule="collision",
                        message=(f"tiles {a.identity} and {b.identity} "
                                 f"collide at {cell}"),
                        cells=(cell,),
                        tiles=(a.identity, b.identity),
                    ))

    for tile in tiles:
        if tile.theta is not None and not (-THETA_LIMIT < tile.theta <= THETA_LIMIT):
            out.append(Diagnostic(
                severity="warning", rule="theta-normalisation",
                message=(f"theta {tile.theta} on {tile.identity} lies "
                         "outside (-2*pi, 2*pi] and will be normalised "
                         "at compile time"),
                cells=((tile.row, tile.col),),
                tiles=(tile.identity,),
            ))
    return out


def errors_only(diagnostics: Iterable[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == "error"]


# --------------------------------------------------------------------------
# Serialisation.

def save(grid: AlgorithmGrid) -> dict:
    """Document form: version, name and (row, col)-sorted tiles."""
    tiles = []
    for t in grid.tiles:
        entry: dict = {"kind": t.kind.value, "row": t.row, "col": t.col}
        if t.theta is not None:
            entry["theta"] = t.theta
        tiles.append(entry)
    return {"version": 1, "name": grid.name, "tiles": tiles}


def load(doc: object) -> AlgorithmGrid:
    """Parse the document form. Unknown fields and versions are rejected;
    tile-level violations surface as bounds/geometry errors."""
    if not isinstance(doc, dict) or set(doc) != {"version", "name", "tiles"}:
        raise ParseError(
            "algorithm document must have exactly 'version', 'name', 'tiles'"
        )
    if doc["version"] != 1:
        raise ParseError(f"unsupported document version {doc['version']!r}")
    if not isinstance(doc["name"], str):
        raise ParseError("'name' must be a string")
    if not isinstance(doc["tiles"], list):
        raise ParseError("'tiles' must be an array")
    tiles = []
    for entry in doc["tiles"]:
        if not isinstance(entry, dict):
            raise ParseError(f"malformed tile entry {entry!r}")
        extra = set(entry) - {"kind", "row", "col", "theta"}
        if extra:
            raise ParseError(f"unknown tile fields {sorted(extra)}")
        if not {"kind", "row", "col"} <= set(entry):
            raise ParseError(f"tile entry missing kind/row/col: {entry!r}")
        kind = entry["kind"]
        if not isinstance(kind, str):
            raise ParseError(f"tile kind must be a string, got {kind!r}")
        try:
            kind = TileKind(kind)
        except ValueError:
            raise ParseError(f"unknown tile kind {entry['kind']!r}") from None
        row, col = entry["row"], entry["col"]
        if not isinstance(row, int) or not isinstance(col, int) \
                or isinstance(row, bool) or isinstance(col, bool):
            raise ParseError(f"tile coordinates must be ints: {entry!r}")
        tiles.append(Tile(kind, row, col, entry.get("theta")))
    return AlgorithmGrid(tuple(tiles), doc["name"])


# --------------------------------------------------------------------------
# Circuit ingestion.

_SINGLE_GATE_KINDS = {
    "h": TileKind.HADAMARD,
    "s": TileKind.S,
    "t": TileKind.T,
    "rx": TileKind.ROTX,
    "ry": TileKind.ROTY,
    "rz": TileKind.ROTZ,
}


def ingest_circuit_json(doc: object) -> AlgorithmGrid:
    """Lay a gate-list circuit out as tiles.

    Circuit wire w runs on grid row 2*w, leaving a row between
    neighbouring wires for CNOT bridges. Gates append east of each
    wire's cursor; cx aligns both wires first and is only routable when
    control = target - 1 (the control chain sits two rows north of the
    anchor). A shared readout column is placed after the last gate.
    """
    if not isinstance(doc, dict) or set(doc) != {"qubits", "ops"}:
        raise ParseError("circuit document must have exactly 'qubits' and 'ops'")
    qubits = doc["qubits"]
    if not isinstance(qubits, int) or isinstance(qubits, bool) or qubits < 1:
        raise ParseError(f"'qubits' must be a positive int, got {qubits!r}")
    if 2 * (qubits - 1) >= MAX_GRID_DIM:
        raise BoundsError(f"{qubits} wires need more than {MAX_GRID_DIM} rows")
    if not isinstance(doc["ops"], list):
        raise ParseError("'ops' must be an array")

    grid = AlgorithmGrid()
    cursors = {}
    for w in range(qubits):
        grid = place_tile(grid, Tile(TileKind.INPUT, 2 * w, 0))
        cursors[w] = 0

    for op in doc["ops"]:
        if not isinstance(op, dict) or not {"gate", "targets"} <= set(op) \
                or set(op) - {"gate", "targets", "param"}:
            raise ParseError(f"malformed op entry {op!r}")
        gate, targets = op["gate"], op["targets"]
        if not isinstance(targets, list) \
                or not all(isinstance(t, int) and not isinstance(t, bool)
                           for t in targets):
            raise ParseError(f"op targets must be ints: {op!r}")
        if any(t < 0 or t >= qubits for t in targets):
            raise RoutingError(f"op targets {targets} outside wires 0..{qubits - 1}")
        if gate in _SINGLE_GATE_KINDS:
            if len(targets) != 1:
                raise ParseError(f"{gate} takes one target, got {targets}")
            kind = _SINGLE_GATE_KINDS[gate]
            theta = None
            if kind in ROTATION_KINDS:
                if "param" not in op:
                    raise ParseError(f"{gate} needs a 'param' angle")
                theta = op["param"]
            elif "param" in op:
                raise ParseError(f"{gate} takes no 'param'")
            w = targets[0]
            col = cursors[w] + CHAIN_SPAN - 1
            grid = place_tile(grid, Tile(kind, 2 * w, col, theta))
            cursors[w] = col
        elif gate == "cx":
            if "param" in op:
                raise ParseError("cx takes no 'param'")
            if len(targets) != 2 or targets[0] == targets[1]:
                raise ParseError(f"cx takes two distinct targets, got {targets}")
            control, target = targets
            if control != target - 1:
                raise RoutingError(
                    f"cx {control}->{target} is not routable: the control "
                    "chain must sit directly north of the target wire"
                )
            col = max(cursors[control], cursors[target]) + CNOT_SPAN - 1
            grid = place_tile(grid, Tile(TileKind.CNOT, 2 * target, col))
            cursors[control] = col
            cursors[target] = col
        else:
            raise ParseError(f"unknown gate {gate!r}")

    readout_col = max(max(cursors.values()), 1)
    for w in range(qubits):
        grid = place_tile(grid, Tile(TileKind.READOUT, 2 * w, readout_col))
    return grid
