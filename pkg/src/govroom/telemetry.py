"""Append-only event log, survey capture, and cohort analytics.

Storage is one UTF-8 file of newline-delimited JSON records plus an in-memory
index. Two record kinds share the file: "event" (a GameEvent) and "survey"
(a SurveyResponse). The format is documented in docs/telemetry.md.
"""

from __future__ import annotations

import hashlib
import json
import statistics
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    CORRUPT_LOG,
    INVALID_RATING,
    NO_RESPONSES,
    SEQUENCE_GAP,
    STORAGE_FAILURE,
    GameError,
)

CREATION_ACTION = "session_created"

ZONE_SUBMIT_ACTIONS = {
    "submit_ranking": "zone1",
    "submit_matching": "zone2",
    "submit_policy": "zone3",
}

ZONE_NAMES = ("zone1", "zone2", "zone3")


def payload_digest(payload: Mapping[str, Any]) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class GameEvent:
    session_id: str
    seq: int
    timestamp: float
    action: str
    outcome: str  # "accepted" or "rejected"
    error: str | None  # error code when rejected
    phase: str  # session phase after the action was processed
    payload: Mapping[str, Any]
    digest: str


@dataclass(frozen=True)
class SurveyResponse:
    session_id: str
    question: str
    rating: int | str  # 1..5 for scale questions, free string for categorical


def make_event(
    session_id: str,
    seq: int,
    timestamp: float,
    action: str,
    outcome: str,
    error: str | None,
    phase: str,
    payload: Mapping[str, Any],
) -> GameEvent:
    return GameEvent(
        session_id=session_id,
        seq=seq,
        timestamp=timestamp,
        action=action,
        outcome=outcome,
        error=error,
        phase=phase,
        payload=dict(payload),
        digest=payload_digest(payload),
    )


def event_to_record(event: GameEvent) -> dict:
    return {
        "kind": "event",
        "session_id": event.session_id,
        "seq": event.seq,
        "timestamp": event.timestamp,
        "action": event.action,
        "outcome": event.outcome,
        "error": event.error,
        "phase": event.phase,
        "payload": dict(event.payload),
        "digest": event.digest,
    }


def event_from_record(record: Mapping[str, Any]) -> GameEvent:
    try:
        return GameEvent(
            session_id=record["session_id"],
            seq=record["seq"],
            timestamp=record["timestamp"],
            action=record["action"],
            outcome=record["outcome"],
            error=record.get("error"),
            phase=record["phase"],
            payload=dict(record["payload"]),
            digest=record["digest"],
        )
    except (KeyError, TypeError) as exc:
        raise GameError(CORRUPT_LOG, f"malformed event record: {exc}") from exc


def survey_to_record(response: SurveyResponse) -> dict:
    return {
        "kind": "survey",
        "session_id": response.session_id,
        "question": response.question,
        "rating": response.rating,
    }


def survey_from_record(record: Mapping[str, Any]) -> SurveyResponse:
    try:
        return SurveyResponse(
            session_id=record["session_id"],
            question=record["question"],
            rating=record["rating"],
        )
    except KeyError as exc:
        raise GameError(CORRUPT_LOG, f"malformed survey record: {exc}") from exc


def validate_rating(rating: Any) -> int | str:
    if isinstance(rating, bool) or not isinstance(rating, (int, str)):
        raise GameError(INVALID_RATING, "rating must be an integer 1..5 or a string")
    if isinstance(rating, int) and not 1 <= rating <= 5:
        raise GameError(INVALID_RATING, f"scale rating must be in 1..5, got {rating}")
    if isinstance(rating, str) and not rating:
        raise GameError(INVALID_RATING, "categorical rating must not be empty")
    return rating


class EventStore:
    """Append-only store for game events and survey responses.

    Thread-safe for concurrent appends across sessions; per-session ordering
    is enforced through contiguous sequence numbers starting at 0.
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._events: list[GameEvent] = []
        self._by_session: dict[str, list[GameEvent]] = {}
        self._surveys: list[SurveyResponse] = []
        self._survey_keys: set[tuple[str, str]] = set()
        self._fh = None
        if self._path is not None:
            if self._path.exists():
                self._load()
            self._fh = open(self._path, "a", encoding="utf-8")

    def _load(self) -> None:
        assert self._path is not None
        with open(self._path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise GameError(CORRUPT_LOG, f"line {lineno}: invalid JSON: {exc.msg}") from exc
                kind = record.get("kind")
                if kind == "event":
                    self._index_event(event_from_record(record), lineno)
                elif kind == "survey":
                    response = survey_from_record(record)
                    self._surveys.append(response)
                    self._survey_keys.add((response.session_id, response.question))
                else:
                    raise GameError(CORRUPT_LOG, f'line {lineno}: unknown record kind "{kind}"')

    def _index_event(self, event: GameEvent, lineno: int | None = None) -> None:
        log = self._by_session.setdefault(event.session_id, [])
        if event.seq != len(log):
            where = f"line {lineno}: " if lineno is not None else ""
            raise GameError(
                SEQUENCE_GAP if lineno is None else CORRUPT_LOG,
                f"{where}expected seq {len(log)} for session {event.session_id}, got {event.seq}",
            )
        log.append(event)
        self._events.append(event)

    def _write(self, record: dict) -> None:
        if self._fh is None:
            return
        try:
            self._fh.write(json.dumps(record, sort_keys=True) + "\n")
            self._fh.flush()
        except OSError as exc:
            raise GameError(STORAGE_FAILURE, f"could not append to log: {exc}") from exc

    def append_event(self, event: GameEvent) -> None:
        with self._lock:
            log = self._by_session.get(event.session_id, [])
            if event.seq != len(log):
                raise GameError(
                    SEQUENCE_GAP,
                    f"expected seq {len(log)} for session {event.session_id}, got {event.seq}",
                )
            self._write(event_to_record(event))
            self._index_event(event)

    def append_survey(self, response: SurveyResponse) -> bool:
        """Record a response; first write wins per (session, question). Returns False on repeat."""
        validate_rating(response.rating)
        with self._lock:
            key = (response.session_id, response.question)
            if key in self._survey_keys:
                return False
            self._write(survey_to_record(response))
            self._surveys.append(response)
            self._survey_keys.add(key)
            return True

    def events_for(self, session_id: str) -> tuple[GameEvent, ...]:
        with self._lock:
            return tuple(self._by_session.get(session_id, ()))

    def session_ids(self) -> tuple[str, ...]:
        with self._lock:
            return tuple(self._by_session)

    def all_events(self) -> tuple[GameEvent, ...]:
        with self._lock:
            return tuple(self._events)

    def survey_responses(self) -> tuple[SurveyResponse, ...]:
        with self._lock:
            return tuple(self._surveys)

    def surveys_for(self, session_id: str) -> tuple[SurveyResponse, ...]:
        with self._lock:
            return tuple(r for r in self._surveys if r.session_id == session_id)

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


@dataclass(frozen=True)
class CohortReport:
    sessions: int
    completion_rate: float  # percentage, one decimal
    zone_median_seconds: Mapping[str, float | None]
    zone_mean_attempts: Mapping[str, float]
    zone_mean_hints: Mapping[str, float]
    rating_distributions: Mapping[str, Mapping[int | str, float]] = field(default_factory=dict)


def rating_distribution(
    responses: Sequence[SurveyResponse], question: str
) -> dict[int | str, float]:
    """Percentage per rating value for one question, at one-decimal precision."""
    ratings = [r.rating for r in responses if r.question == question]
    if not ratings:
        raise GameError(NO_RESPONSES, f'no responses recorded for question "{question}"')
    counts = Counter(ratings)
    total = len(ratings)
    return {rating: round(100 * count / total, 1) for rating, count in sorted(counts.items(), key=lambda kv: str(kv[0]))}


def _validate_log(events: Sequence[GameEvent]) -> None:
    if not events:
        raise GameError(CORRUPT_LOG, "session log is empty")
    if events[0].action != CREATION_ACTION or events[0].seq != 0:
        raise GameError(CORRUPT_LOG, "session log must begin with a creation event at seq 0")
    for i, event in enumerate(events):
        if event.seq != i:
            raise GameError(CORRUPT_LOG, f"expected seq {i}, got {event.seq}")
        if i > 0 and event.timestamp < events[i - 1].timestamp:
            raise GameError(CORRUPT_LOG, f"timestamp decreases at seq {event.seq}")


def difficulty_report(
    logs: Iterable[Sequence[GameEvent]],
    responses: Sequence[SurveyResponse] = (),
) -> CohortReport:
    """Difficulty-calibration arithmetic over a cohort of session logs."""
    durations: dict[str, list[float]] = {z: [] for z in ZONE_NAMES}
    attempts: dict[str, list[int]] = {z: [] for z in ZONE_NAMES}
    hints: dict[str, list[int]] = {z: [] for z in ZONE_NAMES}
    sessions = 0
    completed = 0

    for events in logs:
        _validate_log(events)
        sessions += 1
        entered: dict[str, float] = {}
        submitted: dict[str, float] = {}
        submit_counts: Counter[str] = Counter()
        hint_counts: Counter[str] = Counter()
        prev_phase = events[0].phase
        for event in events[1:]:
            if event.phase != prev_phase:
                if event.phase in ZONE_NAMES:
                    entered[event.phase] = event.timestamp
                prev_phase = event.phase
            zone = ZONE_SUBMIT_ACTIONS.get(event.action)
            if zone is not None:
                submit_counts[zone] += 1
                if event.outcome == "accepted" and zone not in submitted:
                    submitted[zone] = event.timestamp
            if event.action == "request_hint" and event.outcome == "accepted":
                if event.phase in ZONE_NAMES:
                    hint_counts[event.phase] += 1
        if prev_phase == "completed":
            completed += 1
        for zone in ZONE_NAMES:
            if zone in entered:
                attempts[zone].append(submit_counts[zone])
                hints[zone].append(hint_counts[zone])
                if zone in submitted:
                    durations[zone].append(submitted[zone] - entered[zone])

    distributions: dict[str, dict[int | str, float]] = {}
    for question in sorted({r.question for r in responses}):
        distributions[question] = rating_distribution(responses, question)

    return CohortReport(
        sessions=sessions,
        completion_rate=round(100 * completed / sessions, 1) if sessions else 0.0,
        zone_median_seconds={
            z: statistics.median(durations[z]) if durations[z] else None for z in ZONE_NAMES
        },
        zone_mean_attempts={
            z: sum(attempts[z]) / len(attempts[z]) if attempts[z] else 0.0 for z in ZONE_NAMES
        },
        zone_mean_hints={
            z: sum(hints[z]) / len(hints[z]) if hints[z] else 0.0 for z in ZONE_NAMES
        },
        rating_distributions=distributions,
    )


def cohort_report_to_json(report: CohortReport) -> dict:
    return {
        "sessions": report.sessions,
        "completion_rate": report.completion_rate,
        "zone_median_seconds": dict(report.zone_median_seconds),
        "zone_mean_attempts": dict(report.zone_mean_attempts),
        "zone_mean_hints": dict(report.zone_mean_hints),
        "rating_distributions": {
            question: {str(rating): pct for rating, pct in dist.items()}
            for question, dist in report.rating_distributions.items()
        },
    }
