"""Shared exception types.

CounterexampleFound is the falsification channel: constructive routines
whose success is guaranteed by a proved statement raise it (with a fully
reproducible payload) instead of silently swallowing an impossible state.
"""

from __future__ import annotations

from typing import Any


class ContractViolation(ValueError):
    """A caller-certified precondition does not actually hold."""


class CounterexampleFound(RuntimeError):
    """A guaranteed construction failed; the payload replays the instance."""

    def __init__(self, claim: str, payload: dict[str, Any]):
        super().__init__(f"falsification of {claim}: {payload}")
        self.claim = claim
        self.payload = payload
