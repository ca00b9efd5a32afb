"""Stabilizer tableau over GF(2): the oracle behind the graph rules.

A state on n qubits is held as n commuting, independent generators. Each
generator is i^r * prod_j X_j^{x_j} Z_j^{z_j} with r in Z4, so a row is
one bit row in the x block, one in the z block and a phase exponent.
Projective Pauli measurements, trace-out and reduction to graph form (up
to single-qubit Cliffords) all run on this representation, giving an
implementation of measurement semantics that shares nothing with the
combinatorial graph rules it is used to check.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

import numpy as np

from .errors import BranchImpossibleError, ComparabilityError, DomainError
from .graphs import GraphState, lc_equivalent

# --------------------------------------------------------------------------
# Single-qubit Pauli and Clifford algebra.
#
# A Pauli is (x, z, r): the operator i^r X^x Z^z. A Clifford element is a
# pair of Paulis: the conjugation images of X and of Z.

Pauli = tuple[int, int, int]
Clifford = tuple[Pauli, Pauli]

_P_IDENT: Pauli = (0, 0, 0)


def _pmul(p: Pauli, q: Pauli) -> Pauli:
    # X^x1 Z^z1 X^x2 Z^z2 = (-1)^(z1 x2) X^(x1+x2) Z^(z1+z2)
    x1, z1, r1 = p
    x2, z2, r2 = q
    return (x1 ^ x2, z1 ^ z2, (r1 + r2 + 2 * (z1 & x2)) % 4)


def _papply(c: Clifford, p: Pauli) -> Pauli:
    """Conjugate the Pauli p by the Clifford c."""
    im_x, im_z = c
    x, z, r = p
    out = _pmul(im_x if x else _P_IDENT, im_z if z else _P_IDENT)
    return (out[0], out[1], (out[2] + r) % 4)


def _compose(first: Clifford, then: Clifford) -> Clifford:
    return (_papply(then, first[0]), _papply(then, first[1]))


IDENTITY: Clifford = ((1, 0, 0), (0, 1, 0))
HADAMARD: Clifford = ((0, 1, 0), (1, 0, 0))
PHASE: Clifford = ((1, 1, 1), (0, 1, 0))


def _build_table() -> tuple[Clifford, ...]:
    # Breadth-first closure of {H, S} starting at the identity, so the
    # canonical index of an element is its discovery position and the
    # identity is index 0.
    table = [IDENTITY]
    index = {IDENTITY: 0}
    cursor = 0
    while cursor < len(table):
        base = table[cursor]
        cursor += 1
        for gen in (HADAMARD, PHASE):
            cand = _compose(base, gen)
            if cand not in index:
                index[cand] = len(table)
                table.append(cand)
    return tuple(table)


CLIFFORD_TABLE: tuple[Clifford, ...] = _build_table()
CLIFFORD_INDEX: dict[Clifford, int] = {c: i for i, c in enumerate(CLIFFORD_TABLE)}


def clifford_inverse(c: Clifford) -> Clifford:
    for cand in CLIFFORD_TABLE:
        if _compose(c, cand) == IDENTITY:
            return cand
    raise DomainError(f"{c!r} is not in the single-qubit Clifford table")


@dataclasses.dataclass(frozen=True)
class LocalCliffordWitness:
    """Per-qubit Cliffords relating a tableau to its canonical graph state.

    ops maps each qubit label to an index into CLIFFORD_TABLE; applying
    the indexed Clifford on each qubit of the graph state reproduces the
    original state's stabilizer group.
    """

    ops: dict[int, int]

    def is_identity(self) -> bool:
        return all(i == 0 for i in self.ops.values())


class StabilizerTableau:
    """n commuting independent generators with Z4 phases."""

    __slots__ = ("x", "z", "phases", "labels")

    def __init__(self, x: np.ndarray, z: np.ndarray, phases: np.ndarray,
                 labels: Iterable[int]):
        x = np.array(x, dtype=np.uint8) % 2
        z = np.array(z, dtype=np.uint8) % 2
        phases = np.array(phases, dtype=np.uint8) % 4
        labels = tuple(labels)
        n = len(labels)
        if x.shape != (n, n) or z.shape != (n, n) or phases.shape != (n,):
            raise DomainError("tableau block shapes do not match label count")
        if len(set(labels)) != n:
            raise DomainError("duplicate qubit labels")
        self.x = x
        self.z = z
        self.phases = phases
        self.labels = labels
        self._check()

    @property
    def n(self) -> int:
        return len(self.labels)

    def _check(self):
        n = self.n
        if n == 0:
            return
        # Pairwise commutation: the symplectic Gram matrix must vanish.
        gram = (self.x @ self.z.T + self.z @ self.x.T) % 2
        if gram.any():
            raise DomainError("generators do not commute")
        if _gf2_rank(np.concatenate([self.x, self.z], axis=1)) != n:
            raise DomainError("generators are not independent")
        y_count = (self.x & self.z).sum(axis=1) % 2
        if ((self.phases % 2) != y_count).any():
            raise DomainError("phases violate hermiticity")

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.x.copy(), self.z.copy(),
                                 self.phases.copy(), self.labels)

    def index_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"no qubit labelled {label}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return (self.labels == other.labels
                and np.array_equal(self.x, other.x)
                and np.array_equal(self.z, other.z)
                and np.array_equal(self.phases, other.phases))

    def __hash__(self):
        return hash((self.labels, self.x.tobytes(), self.z.tobytes(),
                     self.phases.tobytes()))

    def __repr__(self) -> str:
        return f"StabilizerTableau(n={self.n})"

    def row_str(self, i: int) -> str:
        letters = []
        y_count = 0
        for j in range(self.n):
            xb, zb = self.x[i, j], self.z[i, j]
            if xb and zb:
                letters.append("Y")
                y_count += 1
            elif xb:
                letters.append("X")
            elif zb:
                letters.append("Z")
            else:
                letters.append("I")
        sign = "+" if (self.phases[i] - y_count) % 4 == 0 else "-"
        return sign + "".join(letters)

    def dumps(self) -> str:
        """One generator per line, sign then Pauli letters."""
        return "\n".join(self.row_str(i) for i in range(self.n))


# --------------------------------------------------------------------------
# GF(2) helpers.

def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, col]:
                m[r] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _gf2_solve(mat: np.ndarray, target: np.ndarray) -> np.ndarray | None:
    """Find c with c @ mat = target over GF(2), or None.

    Solved as mat.T x = target via Gauss-Jordan on the augmented matrix.
    """
    rows, cols = mat.shape
    aug = np.concatenate(
        [(mat.T % 2).astype(np.uint8),
         (target % 2).astype(np.uint8)[:, None]], axis=1)
    pivot_cols: list[int] = []
    rank = 0
    for c in range(rows):
        pivot = None
        for r in range(rank, cols):
            if aug[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        aug[[rank, pivot]] = aug[[pivot, rank]]
        for r in range(cols):
            if r != rank and aug[r, c]:
                aug[r] ^= aug[rank]
        pivot_cols.append(c)
        rank += 1
    if aug[rank:, rows].any():
        return None
    x = np.zeros(rows, dtype=np.uint8)
    for idx, c in enumerate(pivot_cols):
        x[c] = aug[idx, rows]
    return x


# --------------------------------------------------------------------------
# Row algebra.

def _row_pauli(t: StabilizerTableau, i: int) -> tuple[np.ndarray, np.ndarray, int]:
    return t.x[i].copy(), t.z[i].copy(), int(t.phases[i])


def _pauli_product(a, b):
    """Multiply two n-qubit Paulis given as (x, z, r) with arrays."""
    xa, za, ra = a
    xb, zb, rb = b
    r = (ra + rb + 2 * int((za & xb).sum())) % 4
    return (xa ^ xb, za ^ zb, r)


def _row_mul(t: StabilizerTableau, i: int, j: int):
    """row_i <- row_i * row_j, in place."""
    prod = _pauli_product(_row_pauli(t, i), _row_pauli(t, j))
    t.x[i], t.z[i], t.phases[i] = prod[0], prod[1], prod[2]


def _conjugate_qubit(t: StabilizerTableau, q: int, c: Clifford):
    """Conjugate every generator by the Clifford c acting on qubit q."""
    for i in range(t.n):
        xb, zb = int(t.x[i, q]), int(t.z[i, q])
        if xb == 0 and zb == 0:
            continue
        nx, nz, nr = _papply(c, (xb, zb, 0))
        t.x[i, q], t.z[i, q] = nx, nz
        t.phases[i] = (int(t.phases[i]) + nr) % 4


# --------------------------------------------------------------------------
# Public operations.

def from_graph(g: GraphState) -> StabilizerTableau:
    """Tableau of the graph state: K_a = X_a prod_{b ~ a} Z_b.

    The empty graph is rejected: an oracle needs at least one qubit.
    """
    if not g.vertices:
        raise DomainError("cannot build a tableau from an empty graph")
    labels = tuple(sorted(g.vertices))
    index = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    x = np.eye(n, dtype=np.uint8)
    z = np.zeros((n, n), dtype=np.uint8)
    for a, b in g.edges:
        ia, ib = index[a], index[b]
        z[ia, ib] = 1
        z[ib, ia] = 1
    return StabilizerTableau(x, z, np.zeros(n, dtype=np.uint8), labels)


_AXIS_BITS = {"x": (1, 0), "y": (1, 1), "z": (0, 1)}


def _measurement_pauli(n: int, q: int, axis: str, sign: str):
    mx, mz = _AXIS_BITS[axis]
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    x[q], z[q] = mx, mz
    # +X/+Z have phase 0, +Y is i*XZ; the minus sign adds i^2.
    r = 1 if axis == "y" else 0
    if sign == "-":
        r = (r + 2) % 4
    return x, z, r


def project(t: StabilizerTableau, q: int, axis: str,
            sign: str = "+") -> StabilizerTableau:
    """Measure qubit q (by index) along a Pauli axis and trace it out.

    The projector for the requested sign is applied; when the opposite
    outcome is certain a BranchImpossibleError is raised. The returned
    tableau has one qubit fewer and keeps the remaining labels.
    """
    if axis not in _AXIS_BITS:
        raise DomainError(f"unknown measurement axis {axis!r}")
    if sign not in ("+", "-"):
        raise DomainError(f"unknown measurement sign {sign!r}")
    if not (0 <= q < t.n):
        raise DomainError(f"qubit index {q} out of range for n={t.n}")
    work = t.copy()
    mx_bits, mz_bits, m_r = _measurement_pauli(work.n, q, axis, sign)

    anti = [i for i in range(work.n)
            if (int(work.x[i, q]) * int(mz_bits[q])
                + int(work.z[i, q]) * int(mx_bits[q])) % 2 == 1]

    if anti:
        # Random outcome: either sign is reachable. Fold the first
        # anticommuting generator into the rest, then replace it by the
        # measurement operator itself.
        p = anti[0]
        for i in anti[1:]:
            _row_mul(work, i, p)
        work.x[p], work.z[p] = mx_bits, mz_bits
        work.phases[p] = m_r
        pivot = p
    else:
        # Deterministic outcome: +-M is in the group. Solve for the row
        # combination equal to it and check the achievable sign.
        mat = np.concatenate([work.x, work.z], axis=1)
        target = np.concatenate([mx_bits, mz_bits])
        comb = _gf2_solve(mat, target)
        if comb is None:
            raise DomainError("measurement operator outside the Pauli span")
        acc = (np.zeros(work.n, dtype=np.uint8),
               np.zeros(work.n, dtype=np.uint8), 0)
        members = [i for i in range(work.n) if comb[i]]
        for i in members:
            acc = _pauli_product(acc, _row_pauli(work, i))
        if acc[2] != m_r:
            raise BranchImpossibleError(
                f"outcome {sign} on axis {axis} has probability zero"
            )
        # Concentrate the combination into its last member so exactly one
        # generator becomes +-M, then clear q from the others.
        pivot = members[-1]
        work.x[pivot], work.z[pivot] = mx_bits, mz_bits
        work.phases[pivot] = m_r

    for i in range(work.n):
        if i == pivot:
            continue
        if work.x[i, q] or work.z[i, q]:
            _row_mul(work, i, pivot)

    keep_rows = [i for i in range(work.n) if i != pivot]
    keep_cols = [j for j in range(work.n) if j != q]
    new_labels = tuple(l for j, l in enumerate(work.labels) if j != q)
    nx = work.x[np.ix_(keep_rows, keep_cols)]
    nz = work.z[np.ix_(keep_rows, keep_cols)]
    phases = work.phases[keep_rows]
    return StabilizerTableau(nx, nz, phases, new_labels)


def to_graph_up_to_local_clifford(
        t: StabilizerTableau) -> tuple[GraphState, LocalCliffordWitness]:
    """Reduce to graph form and return the graph plus per-qubit witness.

    The algorithm is deterministic: Hadamards make the X block
    invertible, row reduction makes it the identity, phase gates clear
    the Z diagonal and Z gates fix residual signs. The witness maps the
    graph state back to the input's stabilizer group.
    """
    if t.n == 0:
        return GraphState(), LocalCliffordWitness({})
    work = t.copy()
    n = work.n
    applied: list[Clifford] = [IDENTITY] * n

    for _ in range(n + 1):
        pivots = _reduce_x_block(work)
        if len(pivots) == n:
            break
        row = len(pivots)
        pivot_set = set(pivots)
        j = next(jj for jj in range(n)
                 if work.z[row, jj] and jj not in pivot_set)
        _conjugate_qubit(work, j, HADAMARD)
        applied[j] = _compose(applied[j], HADAMARD)
    else:
        raise AssertionError("X block did not become invertible")

    for j in range(n):
        if work.z[j, j]:
            _conjugate_qubit(work, j, PHASE)
            applied[j] = _compose(applied[j], PHASE)
    z_gate = _compose(PHASE, PHASE)
    for j in range(n):
        if work.phases[j] == 2:
            _conjugate_qubit(work, j, z_gate)
            applied[j] = _compose(applied[j], z_gate)

    assert np.array_equal(work.x, np.eye(n, dtype=np.uint8))
    assert not work.z.diagonal().any()
    assert np.array_equal(work.z, work.z.T)
    assert not work.phases.any()

    edges = [(work.labels[i], work.labels[j])
             for i in range(n) for j in range(i + 1, n) if work.z[i, j]]
    graph = GraphState(work.labels, edges)
    ops = {label: CLIFFORD_INDEX[clifford_inverse(applied[j])]
           for j, label in enumerate(work.labels)}
    return graph, LocalCliffordWitness(ops)


def _reduce_x_block(t: StabilizerTableau) -> list[int]:
    """Gauss-Jordan on the X block via row ops; returns pivot columns."""
    n = t.n
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if t.x[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            _swap_rows(t, rank, pivot)
        for r in range(n):
            if r != rank and t.x[r, col]:
                _row_mul(t, r, rank)
        pivots.append(col)
        rank += 1
    return pivots


def _swap_rows(t: StabilizerTableau, i: int, j: int):
    t.x[[i, j]] = t.x[[j, i]]
    t.z[[i, j]] = t.z[[j, i]]
    t.phases[[i, j]] = t.phases[[j, i]]


def apply_witness(t: StabilizerTableau,
                  witness: LocalCliffordWitness) -> StabilizerTableau:
    """Conjugate each qubit of t by its witness Clifford."""
    work = t.copy()
    for label, idx in witness.ops.items():
        _conjugate_qubit(work, work.index_of(label), CLIFFORD_TABLE[idx])
    return work


def same_group(t1: StabilizerTableau, t2: StabilizerTableau) -> bool:
    """Whether two tableaux generate the same signed stabilizer group."""
    if t1.labels != t2.labels:
        return False
    if t1.n == 0:
        return True
    mat = np.concatenate([t2.x, t2.z], axis=1)
    for i in range(t1.n):
        target = np.concatenate([t1.x[i], t1.z[i]])
        comb = _gf2_solve(mat, target)
        if comb is None:
            return False
        acc = (np.zeros(t2.n, dtype=np.uint8),
               np.zeros(t2.n, dtype=np.uint8), 0)
        for j in range(t2.n):
            if comb[j]:
                acc = _pauli_product(acc, _row_pauli(t2, j))
        if acc[2] != t1.phases[i]:
            return False
    return True


def equal_up_to_local_clifford(t1: StabilizerTableau,
                               t2: StabilizerTableau,
                               max_graphs: int = 1_000_000) -> bool:
    """Whether two states differ only by single-qubit Cliffords.

    Both tableaux must describe the same qubit labels, otherwise the
    comparison is meaningless and a ComparabilityError is raised.
    """
    if t1.n != t2.n or t1.labels != t2.labels:
        raise ComparabilityError(
            f"cannot compare tableaux over labels {t1.labels} and {t2.labels}"
        )
    if t1.n == 0:
        return True
    g1, _ = to_graph_up_to_local_clifford(t1)
    g2, _ = to_graph_up_to_local_clifford(t2)
    return lc_equivalent(g1, g2, max_graphs=max_graphs)
