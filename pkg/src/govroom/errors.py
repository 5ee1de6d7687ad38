"""Stable machine error codes shared by the engines, the session layer, and the API."""

from __future__ import annotations

# Scenario parsing / linting
SYNTAX_ERROR = "syntax-error"
SCHEMA_VIOLATION = "schema-violation"
DANGLING_REFERENCE = "dangling-reference"
SCENARIO_INVALID = "scenario-invalid"

# Zone 1
NO_SUCH_EDGE = "no-such-edge"
ENCOUNTER_NOT_VISITED = "encounter-not-visited"
NOT_A_VALID_PERMUTATION = "not-a-valid-permutation"

# Zone 2
UNKNOWN_CONTROL = "unknown-control"
UNKNOWN_FRAMEWORK = "unknown-framework"

# Zone 3
DUPLICATE_ADD = "duplicate-add"
NOT_SELECTED = "not-selected"
POSITION_OUT_OF_BOUNDS = "position-out-of-bounds"
UNKNOWN_ELEMENT = "unknown-element"
ZONES_NOT_COMPLETE = "zones-not-complete"

# Session flow
ZONE_ALREADY_SUBMITTED = "zone-already-submitted"
ZONE_LOCKED = "zone-locked"
EXPIRED = "expired"
NO_MORE_HINTS = "no-more-hints"
UNKNOWN_PUZZLE = "unknown-puzzle"
INVALID_ACTION = "invalid-action"

# Telemetry
SEQUENCE_GAP = "sequence-gap"
STORAGE_FAILURE = "storage-failure"
CORRUPT_LOG = "corrupt-log"
NO_RESPONSES = "no-responses"
INVALID_RATING = "invalid-rating"


class GameError(Exception):
    """A rule violation carrying a stable machine code.

    Raised by every engine operation whose precondition fails; the session
    layer converts it into a rejected event and the gateway maps the code to
    an HTTP status. State is never mutated before the raise.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __repr__(self) -> str:  # pragma: no cover
        return f"GameError({self.code!r}, {self.message!r})"
