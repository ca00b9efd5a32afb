"""Graph states and their reduction calculus.

A graph state is a simple undirected graph whose vertices are qubits and
whose edges record CZ interactions. Single-qubit Pauli measurements act on
the graph by vertex deletion and local complementation, so the whole
interactive reduction workflow (measure, complement, optimise) runs on
plain combinatorial data.

All operations are pure: they return new GraphState values and never
mutate their arguments.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    BoundsError,
    BudgetExceededError,
    DomainError,
    MissingVertexError,
    ParseError,
)

# Hard cap on drafting lattice dimensions, shared with the grid module.
MAX_GRID_DIM = 121

Edge = tuple[int, int]
Coords = Mapping[int, tuple[int, int]]


def _norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclasses.dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """A Pauli measurement basis: an axis and an outcome sign."""

    axis: str
    sign: str = "+"

    def __post_init__(self):
        if self.axis not in ("x", "y", "z"):
            raise DomainError(f"unknown measurement axis {self.axis!r}")
        if self.sign not in ("+", "-"):
            raise DomainError(f"unknown measurement sign {self.sign!r}")

    @classmethod
    def parse(cls, text: str) -> "MeasurementBasis":
        """Parse forms like "x", "+y", "z-" into a basis."""
        s = text.strip().lower()
        sign = "+"
        if s and s[0] in "+-":
            sign, s = s[0], s[1:]
        elif s and s[-1] in "+-":
            sign, s = s[-1], s[:-1]
        return cls(axis=s, sign=sign)

    def __str__(self) -> str:
        return f"{self.sign}{self.axis}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasurementBasis):
            return NotImplemented
        return self.axis == other.axis and self.sign == other.sign

    def __hash__(self) -> int:
        return hash((self.axis, self.sign))


@dataclasses.dataclass(frozen=True)
class MeasurementRecord:
    """What a measurement did to the graph, for history and replay.

    corrections maps each surviving former neighbour of the measured
    vertex to an opaque byproduct label. The labels fold the measured
    axis, the outcome sign and (for x) the chosen special neighbour; they
    are bookkeeping for downstream interpretation, not unitaries.
    """

    vertex: int
    basis: MeasurementBasis
    b0: int | None
    corrections: Mapping[int, str]


class GraphState:
    """An immutable simple graph with optional per-vertex coordinates.

    Equality and hashing consider the vertex and edge sets only; the
    coordinates are presentation metadata carried along by lattice
    layouts and ignored by the reduction calculus.
    """

    __slots__ = ("vertices", "edges", "coords", "_adj")

    def __init__(self, vertices: Iterable[int] = (),
                 edges: Iterable[Edge] = (),
                 coords: Coords | None = None):
        vset = frozenset(vertices)
        eset = set()
        for a, b in edges:
            if a == b:
                raise DomainError(f"self-loop on vertex {a}")
            e = _norm_edge(a, b)
            if e in eset:
                raise DomainError(f"duplicate edge {e}")
            eset.add(e)
        for a, b in eset:
            if a not in vset:
                raise MissingVertexError(a)
            if b not in vset:
                raise MissingVertexError(b)
        for v in vset:
            if not isinstance(v, int) or v < 0:
                raise DomainError(f"vertex ids must be non-negative ints, got {v!r}")
        object.__setattr__(self, "vertices", vset)
        object.__setattr__(self, "edges", frozenset(eset))
        kept = None
        if coords:
            kept = {v: tuple(coords[v]) for v in vset if v in coords}
        object.__setattr__(self, "coords", kept)
        object.__setattr__(self, "_adj", None)

    def __setattr__(self, name, value):
        raise AttributeError("GraphState is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphState):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"GraphState({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def _adjacency(self) -> dict[int, frozenset[int]]:
        cached = object.__getattribute__(self, "_adj")
        if cached is None:
            adj: dict[int, set[int]] = {v: set() for v in self.vertices}
            for a, b in self.edges:
                adj[a].add(b)
                adj[b].add(a)
            cached = {v: frozenset(ns) for v, ns in adj.items()}
            object.__setattr__(self, "_adj", cached)
        return cached

    def neighbours(self, a: int) -> frozenset[int]:
        if a not in self.vertices:
            raise MissingVertexError(a)
        return self._adjacency()[a]

    def has_edge(self, a: int, b: int) -> bool:
        return _norm_edge(a, b) in self.edges


def create_grid(rows: int, cols: int) -> GraphState:
    """Build a rows x cols cluster grid with nearest-neighbour edges.

    Vertex ids are row-major (id = row * cols + col) and every vertex
    carries its (row, col) coordinate. Dimensions outside [1, 121] are
    rejected.
    """
    if not (1 <= rows <= MAX_GRID_DIM) or not (1 <= cols <= MAX_GRID_DIM):
        raise BoundsError(
            f"grid dimensions ({rows}, {cols}) outside [1, {MAX_GRID_DIM}]"
        )
    vertices = range(rows * cols)
    coords = {r * cols + c: (r, c) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return GraphState(vertices, edges, coords)


def edit(g: GraphState, action: str, *operands: int) -> GraphState:
    """Apply one structural edit and return the new graph.

    action is one of "add_vertex", "remove_vertex", "add_edge",
    "remove_edge". Self-loops, duplicate edges and absent endpoints are
    rejected; removing a vertex drops its incident edges.
    """
    if action == "add_vertex":
        (v,) = operands
        if v in g.vertices:
            raise DomainError(f"vertex {v} already present")
        return GraphState(g.vertices | {v}, g.edges, g.coords)
    if action == "remove_vertex":
        (v,) = operands
        if v not in g.vertices:
            raise MissingVertexError(v)
        edges = [e for e in g.edges if v not in e]
        return GraphState(g.vertices - {v}, edges, g.coords)
    if action == "add_edge":
        a, b = operands
        if a == b:
            raise DomainError(f"self-loop on vertex {a}")
        if a not in g.vertices:
            raise MissingVertexError(a)
        if b not in g.vertices:
            raise MissingVertexError(b)
        e = _norm_edge(a, b)
        if e in g.edges:
            raise DomainError(f"edge {e} already present")
        return GraphState(g.vertices, g.edges | {e}, g.coords)
    if action == "remove_edge":
        a, b = operands
        if a not in g.vertices:
            raise MissingVertexError(a)
        if b not in g.vertices:
            raise MissingVertexError(b)
        e = _norm_edge(a, b)
        if e not in g.edges:
            raise DomainError(f"edge {e} not present")
        return GraphState(g.vertices, g.edges - {e}, g.coords)
    raise DomainError(f"unknown edit action {action!r}")


def local_complement(g: GraphState, a: int) -> GraphState:
    """Complement the subgraph induced by the neighbourhood of a."""
    nb = g.neighbours(a)
    ns = sorted(nb)
    edges = set(g.edges)
    for i, u in enumerate(ns):
        for v in ns[i + 1:]:
            e = (u, v)
            if e in edges:
                edges.remove(e)
            else:
                edges.add(e)
    return GraphState(g.vertices, edges, g.coords)


def _delete(g: GraphState, a: int) -> GraphState:
    edges = [e for e in g.edges if a not in e]
    return GraphState(g.vertices - {a}, edges, g.coords)


def measure(g: GraphState, a: int, basis: MeasurementBasis,
            b0: int | None = None) -> tuple[GraphState, MeasurementRecord]:
    """Project vertex a in a Pauli basis and reduce the graph.

    The graph transformation realises the +1 outcome branch; the outcome
    sign only changes the byproduct labels in the returned record. For an
    x measurement b0 selects the special neighbour (default: the smallest
    id); an isolated vertex degenerates to plain deletion.

    Raises:
        MissingVertexError: a (or an explicit b0) is not in the graph.
        DomainError: b0 given but not a neighbour of a, or b0 given for
            a non-x basis.
    """
    nb = g.neighbours(a)
    if basis.axis != "x" and b0 is not None:
        raise DomainError("b0 only applies to x measurements")

    chosen: int | None = None
    if basis.axis == "z":
        out = _delete(g, a)
    elif basis.axis == "y":
        out = _delete(local_complement(g, a), a)
    else:
        if not nb:
            out = _delete(g, a)
        else:
            chosen = min(nb) if b0 is None else b0
            if chosen not in g.vertices:
                raise MissingVertexError(chosen)
            if chosen not in nb:
                raise DomainError(
                    f"b0={chosen} is not a neighbour of vertex {a}"
                )
            step = local_complement(g, chosen)
            step = _delete(local_complement(step, a), a)
            out = local_complement(step, chosen)

    corrections = {}
    for b in sorted(nb):
        label = f"{basis.axis}{basis.sign}"
        if chosen is not None and b == chosen:
            label += ":b0"
        corrections[b] = label
    record = MeasurementRecord(vertex=a, basis=basis, b0=chosen,
                               corrections=corrections)
    return out, record


def cz_count(g: GraphState) -> int:
    """Number of CZ interactions needed to prepare the state: the edge count."""
    return len(g.edges)


# ---------------------------------------------------------------------------
# Orbit machinery. Graphs are packed into per-vertex bitmask rows over a
# fixed sorted-id indexing, and whole graphs into upper-triangle integers,
# so orbit searches stay allocation-light.

def _to_rows(g: GraphState) -> tuple[tuple[int, ...], list[int]]:
    ids = tuple(sorted(g.vertices))
    index = {v: i for i, v in enumerate(ids)}
    rows = [0] * len(ids)
    for a, b in g.edges:
        ia, ib = index[a], index[b]
        rows[ia] |= 1 << ib
        rows[ib] |= 1 << ia
    return ids, rows


def _rows_to_graph(ids: tuple[int, ...], rows: list[int],
                   coords: Coords | None) -> GraphState:
    edges = []
    for i, row in enumerate(rows):
        m = row >> (i + 1)
        j = i + 1
        while m:
            if m & 1:
                edges.append((ids[i], ids[j]))
            m >>= 1
            j += 1
    return GraphState(ids, edges, coords)


def _tau_rows(rows: list[int], a: int) -> list[int]:
    nb = rows[a]
    out = list(rows)
    m = nb
    while m:
        b = (m & -m).bit_length() - 1
        out[b] ^= nb
        out[b] &= ~(1 << b)
        m &= m - 1
    return out


def _pack(rows: list[int], n: int) -> int:
    key = 0
    shift = 0
    for i in range(n):
        upper = rows[i] >> (i + 1)
        key |= upper << shift
        shift += n - i - 1
    return key


def _edge_count_rows(rows: list[int]) -> int:
    return sum(r.bit_count() for r in rows) // 2


class MinimizeResult(NamedTuple):
    """Result of a CZ-count minimisation over the LC orbit.

    Unpacks as (graph, lc_sequence); complete is False when the orbit
    search stopped at the node budget and the result is only the best
    representative found so far.
    """

    graph: GraphState
    lc_sequence: tuple[int, ...]
    complete: bool


def minimize_cz(g: GraphState, node_budget: int = 200_000) -> MinimizeResult:
    """Search the LC orbit of g for a representative with fewest edges.

    Deterministic breadth-first search: children are generated in
    ascending vertex id and ties between equal edge counts go to the
    graph discovered first. node_budget bounds the number of distinct
    graphs explored; when the bound is hit the best representative so
    far is returned with complete=False.
    """
    if node_budget < 1:
        raise DomainError("node_budget must be positive")
    ids, rows = _to_rows(g)
    n = len(ids)
    if n == 0:
        return MinimizeResult(g, (), True)

    start = _pack(rows, n)
    seen = {start}
    parents: dict[int, tuple[int, int]] = {}
    best_key, best_edges = start, _edge_count_rows(rows)
    queue = deque([rows])
    complete = True
    while queue and complete:
        current = queue.popleft()
        cur_key = _pack(current, n)
        for a in range(n):
            # Degree < 2 makes the complement a no-op.
            if current[a].bit_count() < 2:
                continue
            child = _tau_rows(current, a)
            key = _pack(child, n)
            if key in seen:
                continue
            if len(seen) >= node_budget:
                complete = False
                break
            seen.add(key)
            parents[key] = (cur_key, a)
            edges = _edge_count_rows(child)
            if edges < best_edges:
                best_edges, best_key = edges, key
            queue.append(child)

    sequence: list[int] = []
    key = best_key
    while key != start:
        key, a = parents[key]
        sequence.append(ids[a])
    sequence.reverse()

    out_rows = rows
    index = {v: i for i, v in enumerate(ids)}
    for v in sequence:
        out_rows = _tau_rows(out_rows, index[v])
    result = _rows_to_graph(ids, out_rows, g.coords)
    return MinimizeResult(result, tuple(sequence), complete)


def lc_equivalent(g1: GraphState, g2: GraphState,
                  max_graphs: int = 1_000_000) -> bool:
    """Decide whether g1 and g2 lie in the same LC orbit.

    Vertices are matched by id: no isomorphism quotient is applied, so
    graphs over different vertex sets are never equivalent. The search
    enumerates both orbits breadth-first from each end with memoised
    packed encodings and stops as soon as the frontiers touch.

    Raises:
        BudgetExceededError: more than max_graphs distinct graphs were
            generated without reaching a decision.
    """
    if g1.vertices != g2.vertices:
        return False
    ids = tuple(sorted(g1.vertices))
    n = len(ids)
    _, rows1 = _to_rows(g1)
    _, rows2 = _to_rows(g2)
    key1, key2 = _pack(rows1, n), _pack(rows2, n)
    if key1 == key2:
        return True

    sides = [
        ({key1}, deque([rows1])),
        ({key2}, deque([rows2])),
    ]
    explored = 2
    # A drained queue means that side's orbit is fully enumerated without
    # touching the other: the orbits are disjoint.
    while sides[0][1] and sides[1][1]:
        # Expand the side with the smaller frontier first.
        i = 0 if len(sides[0][1]) <= len(sides[1][1]) else 1
        seen, queue = sides[i]
        other_seen = sides[1 - i][0]
        current = queue.popleft()
        for a in range(n):
            if current[a].bit_count() < 2:
                continue
            child = _tau_rows(current, a)
            key = _pack(child, n)
            if key in seen:
                continue
            if key in other_seen:
                return True
            if explored >= max_graphs:
                raise BudgetExceededError(
                    f"LC orbit search exceeded {max_graphs} graphs"
                )
            seen.add(key)
            explored += 1
            queue.append(child)
    return False


# ---------------------------------------------------------------------------
# Interchange format.

def graph_to_doc(g: GraphState) -> dict:
    """Serialise a graph to its JSON document form.

    Vertices are sorted by id and carry row/col only when coordinates
    exist; edges are smaller-id-first pairs in sorted order.
    """
    vertices = []
    for v in sorted(g.vertices):
        entry: dict = {"id": v}
        if g.coords and v in g.coords:
            entry["row"], entry["col"] = g.coords[v]
        vertices.append(entry)
    edges = sorted([list(e) for e in g.edges])
    return {"vertices": vertices, "edges": edges}


def graph_from_doc(doc: object) -> GraphState:
    """Parse the JSON document form back into a GraphState.

    Schema violations raise ParseError; semantically broken content
    (absent endpoints, self-loops) surfaces the underlying DomainError.
    """
    if not isinstance(doc, dict) or set(doc) != {"vertices", "edges"}:
        raise ParseError("graph document must have exactly 'vertices' and 'edges'")
    raw_vertices = doc["vertices"]
    raw_edges = doc["edges"]
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise ParseError("'vertices' and 'edges' must be arrays")
    ids = []
    coords = {}
    for entry in raw_vertices:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ParseError(f"malformed vertex entry {entry!r}")
        extra = set(entry) - {"id", "row", "col"}
        if extra:
            raise ParseError(f"unknown vertex fields {sorted(extra)}")
        v = entry["id"]
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParseError(f"vertex id must be an int, got {v!r}")
        if v in coords or v in ids:
            raise ParseError(f"duplicate vertex id {v}")
        ids.append(v)
        if "row" in entry or "col" in entry:
            if not ("row" in entry and "col" in entry):
                raise ParseError(f"vertex {v} has partial coordinates")
            coords[v] = (entry["row"], entry["col"])
    edges = []
    for pair in raw_edges:
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise ParseError(f"malformed edge entry {pair!r}")
        a, b = pair
        if not isinstance(a, int) or not isinstance(b, int):
            raise ParseError(f"edge endpoints must be ints, got {pair!r}")
        edges.append((a, b))
    return GraphState(ids, edges, coords or None)
