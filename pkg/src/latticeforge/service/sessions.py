"""In-memory session store with an append-only event history.

Each session owns a drafted algorithm, its expanded lattice, and the
graph state produced by preparation.  Every mutating operation appends
one event; replaying the history from the prepared snapshot must
reproduce the current graph exactly, which the tests exercise.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from ..errors import DomainError
from ..graphs import (
    GraphState,
    MeasurementBasis,
    graph_to_doc,
    local_complement,
    measure,
    minimize_cz,
)
from ..grid import AlgorithmGrid, load, save
from ..lattice import Lattice, open_algorithm, prepare


@dataclass
class Session:
    id: str
    grid: AlgorithmGrid
    lattice: Lattice
    initial_doc: dict
    pristine: Optional[Lattice] = None
    history: list[dict] = field(default_factory=list)
    submissions: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def version(self) -> int:
        return len(self.history)

    @property
    def prepared(self) -> bool:
        return self.pristine is not None

    def record(self, op: str, **args) -> dict:
        event = {"seq": len(self.history), "op": op, "args": args}
        self.history.append(event)
        return event


class SessionStore:
    """Maps session ids to sessions.  Creation is thread safe."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, grid: AlgorithmGrid) -> Session:
        lattice = open_algorithm(grid)
        session = Session(id=uuid.uuid4().hex[:12], grid=grid,
                          lattice=lattice, initial_doc=save(grid))
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(session_id)

    def drop(self, session_id: str) -> bool:
        with self._lock:
            return self._sessions.pop(session_id, None) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


def replace_grid(session: Session, grid: AlgorithmGrid) -> None:
    """Swap in a new draft: drops the prepared state, keeps the history."""
    lattice = open_algorithm(grid)
    session.grid = grid
    session.lattice = lattice
    session.pristine = None
    session.record("grid", algorithm=save(grid))


def prepare_session(session: Session) -> None:
    """Prepares the lattice once; later calls are no-ops."""
    if session.pristine is not None:
        return
    ready = prepare(session.lattice)
    session.pristine = ready
    session.lattice = ready
    session.record("prepare")


def reset_session(session: Session) -> None:
    if session.pristine is None:
        raise DomainError("session has not been prepared")
    session.lattice = session.pristine
    session.record("reset")


def apply_measure(session: Session, vertex: int, axis: str, sign: str,
                  b0: Optional[int]):
    if session.pristine is None:
        raise DomainError("session has not been prepared")
    basis = MeasurementBasis(axis=axis, sign=sign)
    graph, rec = measure(session.lattice.graph, vertex, basis, b0=b0)
    session.lattice = session.lattice.with_graph(graph)
    session.record("measure", vertex=vertex, axis=axis, sign=sign, b0=b0)
    return rec


def apply_local_complement(session: Session, vertex: int) -> None:
    if session.pristine is None:
        raise DomainError("session has not been prepared")
    graph = local_complement(session.lattice.graph, vertex)
    session.lattice = session.lattice.with_graph(graph)
    session.record("lc", vertex=vertex)


def apply_minimize(session: Session, node_budget: int):
    if session.pristine is None:
        raise DomainError("session has not been prepared")
    result = minimize_cz(session.lattice.graph, node_budget=node_budget)
    session.lattice = session.lattice.with_graph(result.graph)
    session.record("minimize", node_budget=node_budget)
    return result


def replay(session: Session) -> Optional[GraphState]:
    """Folds the event history over the initial draft.

    Returns the graph the history implies, or None when the session is
    not currently prepared.  Used to check that the store applied every
    operation deterministically.
    """
    lattice = open_algorithm(load(session.initial_doc))
    prepared_graph: Optional[GraphState] = None
    graph: Optional[GraphState] = None
    for event in session.history:
        op = event["op"]
        args = event["args"]
        if op == "grid":
            lattice = open_algorithm(load(args["algorithm"]))
            prepared_graph = None
            graph = None
        elif op == "prepare":
            prepared_graph = prepare(lattice).graph
            graph = prepared_graph
        elif op == "reset":
            assert prepared_graph is not None
            graph = prepared_graph
        elif op == "measure":
            assert graph is not None
            basis = MeasurementBasis(axis=args["axis"], sign=args["sign"])
            graph, _ = measure(graph, args["vertex"], basis, b0=args["b0"])
        elif op == "lc":
            assert graph is not None
            graph = local_complement(graph, args["vertex"])
        elif op == "minimize":
            assert graph is not None
            graph = minimize_cz(graph, node_budget=args["node_budget"]).graph
        else:  # pragma: no cover
            raise AssertionError(f"unknown event {op!r}")
    return graph


def snapshot(session: Session) -> dict:
    """A JSON-serialisable image of the session for on-demand saving."""
    return {
        "session_id": session.id,
        "algorithm": save(session.grid),
        "initial_algorithm": session.initial_doc,
        "version": session.version,
        "prepared": session.prepared,
        "history": [dict(event) for event in session.history],
        "graph": graph_to_doc(session.lattice.graph)
        if session.prepared else None,
    }
