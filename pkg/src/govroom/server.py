"""HTTP + SSE gateway: session registry, per-session serialization, auth.

Each session is guarded by its own lock, so two racing actions on one session
are applied in some serial order and their events hit the log before either
response returns. Streaming uses server-sent events: a snapshot frame on
attach, one update frame per accepted action, and a terminal frame when the
session completes or expires.
"""

from __future__ import annotations

import json
import queue
import secrets
import threading
import time
from pathlib import Path
from typing import Any, Callable, Mapping

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .errors import EXPIRED, INVALID_ACTION, SCENARIO_INVALID, ZONE_LOCKED, GameError
from .lint import LintReport, lint_scenario
from .scenario import Scenario, parse_scenario
from .session import apply_action, create_session, creation_event, parse_action
from .telemetry import (
    EventStore,
    SurveyResponse,
    cohort_report_to_json,
    difficulty_report,
    validate_rating,
)
from .views import player_view

TERMINAL_PHASES = ("completed", "expired")

_STATUS_BY_CODE = {ZONE_LOCKED: 409, EXPIRED: 410, INVALID_ACTION: 400}


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


class SessionRecord:
    def __init__(self, state, token: str, scenario: Scenario):
        self.state = state
        self.token = token
        self.scenario = scenario
        self.lock = threading.Lock()
        self.next_seq = 1
        self.watchers: list[queue.Queue] = []
        self.watch_lock = threading.Lock()

    def broadcast(self, frame: dict | None) -> None:
        with self.watch_lock:
            for q in self.watchers:
                q.put(frame)


def load_scenarios(
    directory: str | Path,
) -> tuple[dict[str, Scenario], dict[str, LintReport], list[str]]:
    """Load every *.json scenario in a directory.

    Returns (playable, lint-failing by id, unparseable file messages).
    """
    playable: dict[str, Scenario] = {}
    invalid: dict[str, LintReport] = {}
    broken: list[str] = []
    for path in sorted(Path(directory).glob("*.json")):
        try:
            scenario = parse_scenario(path.read_bytes())
        except GameError as exc:
            broken.append(f"{path.name}: {exc.code}: {exc.message}")
            continue
        report = lint_scenario(scenario)
        if report.errors:
            invalid[scenario.id] = report
        else:
            playable[scenario.id] = scenario
    return playable, invalid, broken


def create_app(
    scenarios: Mapping[str, Scenario],
    store: EventStore,
    clock: Callable[[], float] = time.time,
    invalid: Mapping[str, LintReport] | None = None,
    instructor_token: str | None = None,
) -> FastAPI:
    app = FastAPI(title="govroom", docs_url=None, redoc_url=None)
    sessions: dict[str, SessionRecord] = {}
    registry_lock = threading.Lock()
    invalid = dict(invalid or {})

    app.state.sessions = sessions
    app.state.store = store

    def bearer_token(request: Request) -> str | None:
        header = request.headers.get("authorization", "")
        if header.lower().startswith("bearer "):
            return header[7:].strip()
        return request.query_params.get("token")

    def authorize(session_id: str, request: Request) -> SessionRecord | JSONResponse:
        record = sessions.get(session_id)
        if record is None:
            return _error_response(404, "unknown-session", f'no session "{session_id}"')
        if bearer_token(request) != record.token:
            return _error_response(401, "invalid-token", "missing or wrong session token")
        return record

    @app.get("/api/scenarios")
    def list_scenarios() -> dict:
        return {
            "scenarios": [
                {
                    "id": s.id,
                    "title": s.title,
                    "company_profile": s.company_profile,
                    "time_limit": s.time_limit,
                }
                for s in scenarios.values()
            ]
        }

    @app.post("/api/sessions")
    def create(body: dict = Body(...)) -> Any:
        scenario_id = body.get("scenario_id")
        if not isinstance(scenario_id, str):
            return _error_response(400, INVALID_ACTION, 'body must carry a "scenario_id" string')
        if scenario_id in invalid:
            first = invalid[scenario_id].errors[0]
            return _error_response(422, SCENARIO_INVALID, f"scenario fails lint: {first.message}")
        scenario = scenarios.get(scenario_id)
        if scenario is None:
            return _error_response(404, "unknown-scenario", f'no scenario "{scenario_id}"')
        now = clock()
        state = create_session(scenario, now, validated=True)
        record = SessionRecord(state, secrets.token_urlsafe(16), scenario)
        with registry_lock:
            sessions[state.session_id] = record
        store.append_event(creation_event(state, scenario))
        return JSONResponse(
            status_code=201,
            content={
                "session_id": state.session_id,
                "token": record.token,
                "view": player_view(state, scenario, now),
            },
        )

    @app.get("/api/sessions/{session_id}")
    def get_view(session_id: str, request: Request) -> Any:
        record = authorize(session_id, request)
        if isinstance(record, JSONResponse):
            return record
        with record.lock:
            return {"view": player_view(record.state, record.scenario, clock())}

    @app.post("/api/sessions/{session_id}/actions")
    def post_action(session_id: str, request: Request, body: dict = Body(...)) -> Any:
        record = authorize(session_id, request)
        if isinstance(record, JSONResponse):
            return record
        try:
            action = parse_action(body)
        except GameError as exc:
            return _error_response(400, exc.code, exc.message)
        with record.lock:
            now = clock()
            outcome = apply_action(record.state, action, now, record.scenario, seq=record.next_seq)
            store.append_event(outcome.events[0])
            record.next_seq += 1
            state_changed = outcome.state is not record.state
            record.state = outcome.state
            view = player_view(record.state, record.scenario, now)
            if outcome.error is None or state_changed:
                phase = record.state.phase
                frame_type = "terminal" if phase in TERMINAL_PHASES else "update"
                record.broadcast({"type": frame_type, "view": view})
                if frame_type == "terminal":
                    record.broadcast(None)
        if outcome.error is not None:
            status = _STATUS_BY_CODE.get(outcome.error.code, 400)
            return _error_response(status, outcome.error.code, outcome.error.message)
        return {"view": view, "feedback": dict(outcome.feedback)}

    @app.post("/api/sessions/{session_id}/survey")
    def post_survey(session_id: str, request: Request, body: dict = Body(...)) -> Any:
        record = authorize(session_id, request)
        if isinstance(record, JSONResponse):
            return record
        question = body.get("question")
        if not isinstance(question, str) or not question:
            return _error_response(400, INVALID_ACTION, 'body must carry a "question" string')
        try:
            rating = validate_rating(body.get("rating"))
        except GameError as exc:
            return _error_response(400, exc.code, exc.message)
        with record.lock:
            over = record.state.phase in TERMINAL_PHASES or clock() > record.state.deadline
            if not over:
                return _error_response(
                    409, ZONE_LOCKED, "the survey opens once the session is completed or expired"
                )
            accepted = store.append_survey(
                SurveyResponse(session_id=session_id, question=question, rating=rating)
            )
        return {"accepted": accepted}

    @app.get("/api/sessions/{session_id}/stream")
    def stream(session_id: str, request: Request) -> Any:
        record = authorize(session_id, request)
        if isinstance(record, JSONResponse):
            return record

        def frames():
            q: queue.Queue = queue.Queue()
            with record.watch_lock:
                record.watchers.append(q)
            try:
                with record.lock:
                    view = player_view(record.state, record.scenario, clock())
                    terminal = record.state.phase in TERMINAL_PHASES
                yield f"data: {json.dumps({'type': 'snapshot', 'view': view})}\n\n"
                if terminal:
                    return
                while True:
                    try:
                        frame = q.get(timeout=15.0)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    if frame is None:
                        return
                    yield f"data: {json.dumps(frame)}\n\n"
                    if frame.get("type") == "terminal":
                        return
            finally:
                with record.watch_lock:
                    if q in record.watchers:
                        record.watchers.remove(q)

        return StreamingResponse(frames(), media_type="text/event-stream")

    @app.get("/api/analytics")
    def analytics(request: Request) -> Any:
        if instructor_token is None:
            return _error_response(403, "analytics-disabled", "no instructor token configured")
        if bearer_token(request) != instructor_token:
            return _error_response(401, "invalid-token", "missing or wrong instructor token")
        logs = [store.events_for(sid) for sid in store.session_ids()]
        report = difficulty_report(logs, store.survey_responses())
        return cohort_report_to_json(report)

    return app
