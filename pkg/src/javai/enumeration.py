"""Exhaustive exploration of every way the prompts of a run can be answered.

The decision tree is walked depth first, left pick before right.  Each probe
replays the program from scratch with a scripted prefix; when the run asks a
prompt past the end of the prefix, that prefix forks into its two extensions
and the probe is abandoned.  Replays are cheap because programs have no
loops, and determinism guarantees a prefix always meets the same prompts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import ast, engine
from .choice import LEFT, RIGHT, ChoiceDecision, ChoicePoint, Pick

DEFAULT_MAX_OUTCOMES = 1024


@dataclass(frozen=True)
class Outcome:
    """One terminal run: the picks that led there and what it produced."""

    choices: tuple[tuple[ChoicePoint, Pick], ...]
    status: str  # "finished" | "failed"
    output: tuple[str, ...]
    final_fields: dict[str, dict[str, ast.Value]]
    failure: Optional[engine.FailureReason] = None

    @property
    def script(self) -> str:
        return "".join(pick.value for _, pick in self.choices)


@dataclass(frozen=True)
class EnumerationResult:
    outcomes: tuple[Outcome, ...]
    truncated: bool


def enumerate_outcomes(program: ast.SourceProgram, *,
                       max_outcomes: int = DEFAULT_MAX_OUTCOMES,
                       max_call_depth: int = engine.DEFAULT_MAX_CALL_DEPTH
                       ) -> EnumerationResult:
    outcomes: list[Outcome] = []
    pending: list[tuple[Pick, ...]] = [()]
    truncated = False
    while pending:
        if len(outcomes) >= max_outcomes:
            truncated = True
            break
        prefix = pending.pop()
        probe = _replay(program, prefix, max_call_depth)
        if probe is None:
            # Ran past the prefix: fork.  Right goes under left so the
            # left extension is explored first.
            pending.append(prefix + (RIGHT,))
            pending.append(prefix + (LEFT,))
        else:
            outcomes.append(probe)
    return EnumerationResult(tuple(outcomes), truncated)


def _replay(program: ast.SourceProgram, prefix: tuple[Pick, ...],
            max_call_depth: int) -> Optional[Outcome]:
    state = engine.advance(engine.start(program, max_call_depth=max_call_depth))
    taken: list[tuple[ChoicePoint, Pick]] = []
    while isinstance(state, engine.AwaitingChoice):
        if len(taken) == len(prefix):
            engine.discard(state)
            return None
        pick = prefix[len(taken)]
        taken.append((state.point, pick))
        state = engine.resume(state, ChoiceDecision(state.point.id, pick))
    if isinstance(state, engine.Finished):
        return Outcome(tuple(taken), "finished", tuple(state.store.output_log),
                       state.store.snapshot())
    return Outcome(tuple(taken), "failed", tuple(state.store.output_log),
                   state.store.snapshot(), state.reason)
