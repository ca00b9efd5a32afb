"""Measurement-label sequences for the cluster-state gate patterns.

Each five-qubit chain pattern lists its member labels west to east; the
final None marks the output qubit, which is either consumed as the next
pattern's input or left as a dangling output. Labels are lattice-level
annotations: sx/sy/sz are Pauli basis measurements, while xi/eta/zeta
are the angle-dependent measurements of the general rotation pattern
and stay symbolic until compile time.
"""

from __future__ import annotations

from .grid import TileKind

SX = "sx"
SY = "sy"
SZ = "sz"
XI = "xi"
ETA = "eta"
ZETA = "zeta"
READOUT = "readout"

CHAIN_LABELS: dict[TileKind, tuple[str | None, ...]] = {
    TileKind.HADAMARD: (SX, SY, SY, SY, None),
    TileKind.S: (SX, SX, SY, SX, None),
    TileKind.T: (SX, XI, ETA, ZETA, None),
    TileKind.ROTX: (SX, XI, ETA, ZETA, None),
    TileKind.ROTY: (SX, XI, ETA, ZETA, None),
    TileKind.ROTZ: (SX, XI, ETA, ZETA, None),
}

# Both CNOT chains are measured sx except at the junction column that
# couples them through the bridge qubit, which is measured sy along with
# the bridge itself.
CNOT_CHAIN_LABELS: tuple[str | None, ...] = (SX, SX, SX, SY, SX, SX, None)
CNOT_BRIDGE_LABEL = SY

WIRE_LABEL = SX

# T patterns need magic-state distillation downstream, so they are
# flagged apart from the plainly Clifford patterns.
BLUE_KINDS = frozenset({TileKind.T})
RED_KINDS = frozenset({
    TileKind.HADAMARD, TileKind.S, TileKind.CNOT,
    TileKind.ROTX, TileKind.ROTY, TileKind.ROTZ,
})
