"""HTTP session service over the resumable engine.

A session wraps one run.  Creating it parses the source and advances the run
to its first prompt or to a terminal state; each submitted decision resumes
it one step.  Transitions of a session are serialized by a per-session lock,
so racing clients get a stale or illegal-state answer instead of interleaved
resumes.  Sessions live in memory only and expire after a period of no
requests touching them.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import ast, engine
from .choice import LEFT, RIGHT, ChoiceDecision, ChoicePoint
from .enumeration import DEFAULT_MAX_OUTCOMES, enumerate_outcomes
from .errors import ParseError
from .parser import load_program

DEFAULT_SESSION_TTL = 30 * 60.0


class CreateSessionBody(BaseModel):
    source: str


class ChoiceBody(BaseModel):
    pointId: int
    pick: Literal["left", "right"]


class EnumerateBody(BaseModel):
    source: str
    maxOutcomes: int = DEFAULT_MAX_OUTCOMES


@dataclass
class _Session:
    id: str
    state: engine.ExecutionState
    touched: float
    history: list[tuple[ChoicePoint, ChoiceDecision]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _wire_value(v: ast.Value):
    if isinstance(v, ast.IntVal):
        return v.value
    if isinstance(v, ast.BoolVal):
        return v.value
    if isinstance(v, ast.StrVal):
        return v.value
    return v.object_name


def _wire_fields(snapshot: dict[str, dict[str, ast.Value]]):
    return {name: {fname: _wire_value(fval) for fname, fval in fields.items()}
            for name, fields in snapshot.items()}


def _session_view(session: _Session) -> dict:
    state = session.state
    view: dict = {
        "sessionId": session.id,
        "output": list(state.store.output_log),
    }
    if isinstance(state, engine.AwaitingChoice):
        point = state.point
        view["status"] = "awaiting_choice"
        view["pendingChoice"] = {
            "pointId": point.id,
            "objectName": point.object_name,
            "className": point.class_name,
            "leftText": point.left_text,
            "rightText": point.right_text,
        }
    elif isinstance(state, engine.Finished):
        view["status"] = "finished"
        view["finalFields"] = _wire_fields(state.store.snapshot())
    else:
        view["status"] = "failed"
        view["error"] = str(state.reason)
    return view


def _parse_error_response(err: ParseError) -> JSONResponse:
    return JSONResponse(status_code=422, content={
        "parseError": str(err), "line": err.line, "col": err.col,
    })


def create_app(*, session_ttl: float = DEFAULT_SESSION_TTL,
               static_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="javai session service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    def reap(now: Optional[float] = None) -> None:
        now = time.monotonic() if now is None else now
        with registry_lock:
            dead = [s for s in sessions.values() if now - s.touched > session_ttl]
            for session in dead:
                del sessions[session.id]
        for session in dead:
            engine.discard(session.state)

    def lookup(session_id: str) -> Optional[_Session]:
        reap()
        with registry_lock:
            session = sessions.get(session_id)
            if session is not None:
                session.touched = time.monotonic()
            return session

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        reap()
        try:
            program = load_program(body.source)
        except ParseError as err:
            return _parse_error_response(err)
        state = engine.run(program)  # to the first prompt or a terminal state
        session = _Session(secrets.token_hex(16), state, time.monotonic())
        with registry_lock:
            sessions[session.id] = session
        return _session_view(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        session = lookup(session_id)
        if session is None:
            return JSONResponse(status_code=404, content={"error": "unknown session"})
        return _session_view(session)

    @app.post("/api/sessions/{session_id}/choice")
    def submit_choice(session_id: str, body: ChoiceBody):
        session = lookup(session_id)
        if session is None:
            return JSONResponse(status_code=404, content={"error": "unknown session"})
        with session.lock:
            state = session.state
            if not isinstance(state, engine.AwaitingChoice):
                return JSONResponse(status_code=409,
                                    content={"error": "illegal_state"})
            if body.pointId != state.point.id:
                return JSONResponse(status_code=409, content={"error": "stale"})
            decision = ChoiceDecision(body.pointId,
                                      LEFT if body.pick == "left" else RIGHT)
            session.state = engine.resume(state, decision)
            session.history.append((state.point, decision))
            session.touched = time.monotonic()
            return _session_view(session)

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        with registry_lock:
            session = sessions.pop(session_id, None)
        if session is not None:
            engine.discard(session.state)
        return Response(status_code=204)

    @app.post("/api/enumerate")
    def enumerate_endpoint(body: EnumerateBody):
        try:
            program = load_program(body.source)
        except ParseError as err:
            return _parse_error_response(err)
        result = enumerate_outcomes(program, max_outcomes=body.maxOutcomes)
        outcomes = []
        for outcome in result.outcomes:
            wire = {
                "choices": outcome.script,
                "status": outcome.status,
                "output": list(outcome.output),
                "finalFields": _wire_fields(outcome.final_fields),
            }
            if outcome.failure is not None:
                wire["error"] = str(outcome.failure)
            outcomes.append(wire)
        return {"outcomes": outcomes, "truncated": result.truncated}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="playground")

    return app
