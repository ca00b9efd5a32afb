"""HTTP service exposing drafting, reduction and compilation.

All state lives in an in-process session store created per app
instance.  Mutating endpoints serialise on a per-session lock, so two
concurrent measurements cannot interleave their read-modify-write.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .. import __version__
from ..errors import (
    BindingError,
    ConfigurationError,
    LatticeForgeError,
    LayoutError,
    MissingVertexError,
    SubmissionError,
)
from ..graphs import graph_to_doc
from ..grid import AlgorithmGrid, load, metrics
from ..lattice import lattice_to_doc
from ..qasm import ThetaBinding, collect_rotations, emit
from . import sessions as ops
from .schemas import (
    CompileRequest,
    CompileResponse,
    CreateSessionRequest,
    HistoryEventOut,
    LocalComplementRequest,
    LocalComplementResponse,
    MeasureRequest,
    MeasureResponse,
    MeasurementRecordOut,
    MetricsOut,
    MinimizeRequest,
    MinimizeResponse,
    ReplaceGridRequest,
    RotationSiteOut,
    SaveRequest,
    SessionStateOut,
    SubmissionResultOut,
    SubmitRequest,
)
from .sessions import Session, SessionStore
from .submit import submit as submit_qasm


def _sites_doc(sites) -> list[dict]:
    return [{"kind": k, "row": r, "col": c} for (k, r, c) in sites]


def _http_from_error(exc: LatticeForgeError,
                     version: Optional[int] = None) -> HTTPException:
    if isinstance(exc, MissingVertexError):
        return HTTPException(status_code=409, detail={
            "kind": "missing-vertex", "message": str(exc),
            "vertex": exc.vertex, "version": version,
        })
    if isinstance(exc, BindingError):
        return HTTPException(status_code=422, detail={
            "kind": "binding", "message": str(exc),
            "missing": _sites_doc(exc.missing),
            "unknown": _sites_doc(exc.unknown),
        })
    if isinstance(exc, LayoutError):
        return HTTPException(status_code=422, detail={
            "kind": "layout", "message": str(exc),
            "diagnostics": [
                {"severity": d.severity, "rule": d.rule,
                 "message": d.message,
                 "cells": [list(cell) for cell in d.cells],
                 "tiles": [list(tile) for tile in d.tiles]}
                for d in exc.diagnostics
            ],
        })
    if isinstance(exc, ConfigurationError):
        return HTTPException(status_code=400, detail={
            "kind": "configuration", "message": str(exc),
        })
    if isinstance(exc, SubmissionError):
        return HTTPException(status_code=502, detail={
            "kind": "submission", "message": str(exc),
        })
    return HTTPException(status_code=422, detail={
        "kind": type(exc).__name__, "message": str(exc),
    })


def create_app() -> FastAPI:
    app = FastAPI(title="latticeforge", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()
    app.state.store = store

    def _get(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail={
                "kind": "unknown-session",
                "message": f"no session {session_id!r}",
            })
        return session

    def _state(session: Session) -> SessionStateOut:
        m = metrics(session.grid)
        return SessionStateOut(
            session_id=session.id,
            name=session.grid.name,
            version=session.version,
            prepared=session.prepared,
            metrics=MetricsOut(min_lattice=m.min_lattice,
                               qubit_count=m.qubit_count,
                               t_count=m.t_count),
            lattice=lattice_to_doc(session.lattice),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/sessions", response_model=SessionStateOut, status_code=201)
    def create_session(body: CreateSessionRequest) -> SessionStateOut:
        try:
            grid = AlgorithmGrid() if body.algorithm is None \
                else load(body.algorithm)
            session = store.create(grid)
        except LatticeForgeError as exc:
            raise _http_from_error(exc)
        return _state(session)

    @app.get("/sessions/{session_id}", response_model=SessionStateOut)
    def get_session(session_id: str) -> SessionStateOut:
        session = _get(session_id)
        with session.lock:
            return _state(session)

    @app.put("/sessions/{session_id}/grid", response_model=SessionStateOut)
    def replace_grid(session_id: str,
                     body: ReplaceGridRequest) -> SessionStateOut:
        session = _get(session_id)
        with session.lock:
            try:
                grid = load(body.algorithm)
                ops.replace_grid(session, grid)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return _state(session)

    @app.get("/sessions/{session_id}/metrics", response_model=MetricsOut)
    def get_metrics(session_id: str) -> MetricsOut:
        session = _get(session_id)
        with session.lock:
            m = metrics(session.grid)
            return MetricsOut(min_lattice=m.min_lattice,
                              qubit_count=m.qubit_count,
                              t_count=m.t_count)

    @app.post("/sessions/{session_id}/layout")
    def layout(session_id: str) -> dict:
        session = _get(session_id)
        with session.lock:
            try:
                ops.prepare_session(session)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return lattice_to_doc(session.lattice)

    @app.post("/sessions/{session_id}/prepare", response_model=SessionStateOut)
    def prepare_session(session_id: str) -> SessionStateOut:
        session = _get(session_id)
        with session.lock:
            try:
                ops.prepare_session(session)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return _state(session)

    @app.post("/sessions/{session_id}/reset", response_model=SessionStateOut)
    def reset_session(session_id: str) -> SessionStateOut:
        session = _get(session_id)
        with session.lock:
            try:
                ops.reset_session(session)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return _state(session)

    @app.post("/sessions/{session_id}/measure", response_model=MeasureResponse)
    def measure(session_id: str, body: MeasureRequest) -> MeasureResponse:
        session = _get(session_id)
        with session.lock:
            try:
                rec = ops.apply_measure(session, body.vertex, body.axis,
                                        body.sign, body.b0)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return MeasureResponse(
                record=MeasurementRecordOut(
                    vertex=rec.vertex,
                    axis=rec.basis.axis,
                    sign=rec.basis.sign,
                    b0=rec.b0,
                    corrections=dict(rec.corrections),
                ),
                version=session.version,
                lattice=lattice_to_doc(session.lattice),
            )

    @app.post("/sessions/{session_id}/lc",
              response_model=LocalComplementResponse)
    def local_complement(session_id: str,
                         body: LocalComplementRequest) -> LocalComplementResponse:
        session = _get(session_id)
        with session.lock:
            try:
                ops.apply_local_complement(session, body.vertex)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return LocalComplementResponse(
                vertex=body.vertex,
                version=session.version,
                lattice=lattice_to_doc(session.lattice),
            )

    @app.post("/sessions/{session_id}/minimize-cz",
              response_model=MinimizeResponse)
    def minimize(session_id: str, body: MinimizeRequest) -> MinimizeResponse:
        session = _get(session_id)
        with session.lock:
            try:
                result = ops.apply_minimize(session, body.node_budget)
            except LatticeForgeError as exc:
                raise _http_from_error(exc, version=session.version)
            return MinimizeResponse(
                lc_sequence=list(result.lc_sequence),
                complete=result.complete,
                cz_count=len(result.graph.edges),
                version=session.version,
                lattice=lattice_to_doc(session.lattice),
            )

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str) -> dict:
        session = _get(session_id)
        with session.lock:
            return graph_to_doc(session.lattice.graph)

    @app.get("/sessions/{session_id}/history",
             response_model=list[HistoryEventOut])
    def get_history(session_id: str) -> list[HistoryEventOut]:
        session = _get(session_id)
        with session.lock:
            return [HistoryEventOut(**event) for event in session.history]

    @app.post("/sessions/{session_id}/save")
    def save_session(session_id: str, body: SaveRequest) -> dict:
        session = _get(session_id)
        with session.lock:
            doc = ops.snapshot(session)
        if body.path:
            directory = os.path.dirname(body.path) or "."
            fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(doc, fh, indent=2, sort_keys=True)
                os.replace(tmp, body.path)
            except OSError as exc:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise HTTPException(status_code=422, detail={
                    "kind": "io", "message": str(exc),
                })
        return doc

    @app.get("/sessions/{session_id}/rotations",
             response_model=list[RotationSiteOut])
    def get_rotations(session_id: str) -> list[RotationSiteOut]:
        session = _get(session_id)
        return [RotationSiteOut(kind=s.kind.value, row=s.row, col=s.col)
                for s in collect_rotations(session.grid)]

    @app.post("/sessions/{session_id}/compile", response_model=CompileResponse)
    def compile_session(session_id: str,
                        body: CompileRequest) -> CompileResponse:
        session = _get(session_id)
        try:
            bindings = [ThetaBinding(b.kind, b.row, b.col, b.theta)
                        for b in body.bindings]
            program = emit(session.grid, bindings)
        except LatticeForgeError as exc:
            raise _http_from_error(exc)
        return CompileResponse(qasm=program.text, qubits=program.qubits)

    @app.post("/sessions/{session_id}/submit",
              response_model=SubmissionResultOut)
    def submit(session_id: str, body: SubmitRequest) -> SubmissionResultOut:
        session = _get(session_id)
        try:
            result = submit_qasm(body.qasm, body.endpoint,
                                 json_wrap=body.json_wrap)
        except LatticeForgeError as exc:
            raise _http_from_error(exc)
        with session.lock:
            session.submissions.append(result.to_doc())
        return SubmissionResultOut(**result.to_doc())

    return app


app = create_app()
