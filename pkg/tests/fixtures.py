"""Shared reference drafts for the test-suite.

REFERENCE_PLACEMENTS is a five-wire algorithm spanning an 8-row lattice
out to column 53: a Hadamard column, entangling and rotation stages, and
a final Hadamard column. It exercises every tile kind except wire and
the single-cell IO tiles, contains two T tiles and five unbound
rotations, and its hand-derived resource numbers are frozen in
tests/test_grid.py.
"""

from __future__ import annotations

import math

from latticeforge.grid import AlgorithmGrid, Tile, TileKind, place_tile
from latticeforge.qasm import ThetaBinding

REFERENCE_PLACEMENTS: tuple[tuple[str, int, int], ...] = (
    ("hadamard", 0, 4),
    ("hadamard", 2, 4),
    ("hadamard", 4, 4),
    ("hadamard", 5, 4),
    ("hadamard", 7, 4),
    ("cnot", 2, 10),
    ("rotz", 2, 14),
    ("s", 0, 28),
    ("s", 2, 28),
    ("cnot", 4, 34),
    ("t", 4, 38),
    ("cnot", 4, 44),
    ("cnot", 7, 10),
    ("t", 7, 14),
    ("cnot", 7, 24),
    ("rotz", 0, 48),
    ("rotz", 2, 48),
    ("rotz", 4, 48),
    ("rotz", 5, 48),
    ("hadamard", 0, 53),
    ("hadamard", 2, 53),
    ("hadamard", 4, 53),
    ("hadamard", 5, 53),
    ("hadamard", 7, 53),
)


def reference_grid(name: str = "reference") -> AlgorithmGrid:
    grid = AlgorithmGrid(name=name)
    for kind, row, col in REFERENCE_PLACEMENTS:
        grid = place_tile(grid, Tile(TileKind(kind), row, col))
    return grid


# The five unbound rotations of the reference draft in (row, col) order.
REFERENCE_ROTATIONS: tuple[tuple[str, int, int], ...] = (
    ("rotz", 0, 48),
    ("rotz", 2, 14),
    ("rotz", 2, 48),
    ("rotz", 4, 48),
    ("rotz", 5, 48),
)


def random_circuit_doc(rng, max_wires: int = 5, max_ops: int = 12) -> dict:
    """A random gate-list circuit in the routable form ingest accepts."""
    wires = rng.randint(1, max_wires)
    ops = []
    for _ in range(rng.randint(0, max_ops)):
        roll = rng.random()
        if roll < 0.25 and wires >= 2:
            control = rng.randrange(wires - 1)
            ops.append({"gate": "cx", "targets": [control, control + 1]})
        elif roll < 0.55:
            gate = rng.choice(["rx", "ry", "rz"])
            ops.append({"gate": gate, "targets": [rng.randrange(wires)],
                        "param": rng.uniform(-6.5, 6.5)})
        else:
            gate = rng.choice(["h", "s", "t"])
            ops.append({"gate": gate, "targets": [rng.randrange(wires)]})
    return {"qubits": wires, "ops": ops}


REFERENCE_BINDINGS = [
    ThetaBinding(TileKind.ROTZ, 0, 48, math.pi / 2),
    ThetaBinding(TileKind.ROTZ, 2, 14, 0.25),
    ThetaBinding(TileKind.ROTZ, 2, 48, -math.pi),
    ThetaBinding(TileKind.ROTZ, 4, 48, 3 * math.pi / 4),
    ThetaBinding(TileKind.ROTZ, 5, 48, 2 * math.pi),
]

REFERENCE_PROGRAM = """OPENQASM 3.0;
include "stdgates.inc";
qubit[5] q;
bit[5] c;
h q[0];
h q[1];
h q[2];
h q[3];
h q[4];
cx q[0], q[1];
cx q[3], q[4];
rz(0.25) q[1];
t q[4];
cx q[3], q[4];
s q[0];
s q[1];
cx q[1], q[2];
t q[2];
cx q[1], q[2];
rz(pi/2) q[0];
rz(-pi) q[1];
rz(3*pi/4) q[2];
rz(2*pi) q[3];
h q[0];
h q[1];
h q[2];
h q[3];
h q[4];
c = measure q;
"""


def small_grid(name: str = "one-wire") -> AlgorithmGrid:
    """A single Hadamard chain: prepares to a five-vertex path."""
    return place_tile(AlgorithmGrid(name=name), Tile(TileKind.HADAMARD, 0, 4))
