"""Submission of compiled programs to an external queue endpoint.

The target URL comes from the explicit argument or the
TUQ_QASM_ENDPOINT environment variable.  The program is posted once as
text/plain (or wrapped in a JSON envelope on request) and the reply is
recorded verbatim.  A non-2xx status is reported as a warning on the
result, never raised and never retried; only transport failures and a
missing endpoint raise.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import httpx

from ..errors import ConfigurationError, SubmissionError

ENDPOINT_ENV = "TUQ_QASM_ENDPOINT"


@dataclass(frozen=True)
class SubmissionResult:
    endpoint: str
    status: int
    body: str
    ok: bool
    warning: Optional[str] = None

    def to_doc(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "status": self.status,
            "body": self.body,
            "ok": self.ok,
            "warning": self.warning,
        }


def resolve_endpoint(endpoint: Optional[str] = None) -> str:
    target = endpoint or os.environ.get(ENDPOINT_ENV)
    if not target:
        raise ConfigurationError(
            "no submission endpoint: pass one explicitly or set "
            f"{ENDPOINT_ENV}"
        )
    return target


def submit(qasm: str, endpoint: Optional[str] = None, *,
           json_wrap: bool = False, timeout: float = 10.0,
           transport: Optional[httpx.BaseTransport] = None) -> SubmissionResult:
    """Posts a program and returns the recorded reply.

    `transport` exists so tests can swap in a mock without a socket.
    """
    target = resolve_endpoint(endpoint)
    try:
        with httpx.Client(timeout=timeout, transport=transport) as client:
            if json_wrap:
                response = client.post(target, json={"qasm": qasm})
            else:
                response = client.post(
                    target, content=qasm.encode("utf-8"),
                    headers={"Content-Type": "text/plain"},
                )
    except httpx.HTTPError as exc:
        raise SubmissionError(f"submission to {target} failed: {exc}") from exc
    ok = 200 <= response.status_code < 300
    warning = None
    if not ok:
        warning = f"endpoint returned status {response.status_code}"
    return SubmissionResult(
        endpoint=target,
        status=response.status_code,
        body=response.text,
        ok=ok,
        warning=warning,
    )
