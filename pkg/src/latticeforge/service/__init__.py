"""HTTP service layer: FastAPI app, session store, submission client."""

from .app import create_app
from .sessions import Session, SessionStore, replay, snapshot
from .submit import ENDPOINT_ENV, SubmissionResult, resolve_endpoint, submit

__all__ = [
    "create_app",
    "Session",
    "SessionStore",
    "replay",
    "snapshot",
    "ENDPOINT_ENV",
    "SubmissionResult",
    "resolve_endpoint",
    "submit",
]
