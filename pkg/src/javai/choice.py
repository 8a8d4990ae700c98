"""Decision sources that answer the prompts a running program raises.

Every `(+)` in a class being instantiated becomes one ChoicePoint; whoever
drives the run supplies a Pick per point, in prompt order, exactly once.
A source that cannot answer must raise instead of guessing.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Iterable, TextIO


class Pick(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    def __str__(self) -> str:
        return self.value


LEFT = Pick.LEFT
RIGHT = Pick.RIGHT


def parse_script(text: str) -> tuple[Pick, ...]:
    """Turn a script like "LRL" into picks; raises ValueError on other chars."""
    out = []
    for i, ch in enumerate(text):
        if ch in "Ll":
            out.append(LEFT)
        elif ch in "Rr":
            out.append(RIGHT)
        else:
            raise ValueError(f"choice script may only contain L and R,"
                             f" got {ch!r} at position {i + 1}")
    return tuple(out)


def render_script(picks: Iterable[Pick]) -> str:
    return "".join(p.value for p in picks)


@dataclass(frozen=True)
class ChoicePoint:
    """One pending prompt: pick the left or right branch for this object."""

    id: int  # 1-based, unique within a run
    object_name: str
    class_name: str
    left_text: str
    right_text: str


@dataclass(frozen=True)
class ChoiceDecision:
    point_id: int
    pick: Pick


class ScriptExhaustedError(Exception):
    """A scripted source was consulted past the end of its script."""

    def __init__(self, point: ChoicePoint):
        super().__init__(f"choice script exhausted at prompt {point.id}")
        self.point = point


class ChannelClosedError(Exception):
    """The interactive channel went away mid-prompt."""

    def __init__(self, point: ChoicePoint):
        super().__init__(f"input closed while prompt {point.id} was pending")
        self.point = point


class ChoiceStrategy:
    def choose(self, point: ChoicePoint) -> Pick:
        raise NotImplementedError


class ScriptedChooser(ChoiceStrategy):
    def __init__(self, picks: Iterable[Pick]):
        self.picks = tuple(picks)
        self.consumed = 0

    def choose(self, point: ChoicePoint) -> Pick:
        if self.consumed >= len(self.picks):
            raise ScriptExhaustedError(point)
        pick = self.picks[self.consumed]
        self.consumed += 1
        return pick


class InteractiveChooser(ChoiceStrategy):
    """Prompts on a text channel; accepts 1/2 or left/right, re-asks otherwise."""

    def __init__(self, source: TextIO | None = None, sink: TextIO | None = None):
        self.source = source if source is not None else sys.stdin
        self.sink = sink if sink is not None else sys.stderr

    def choose(self, point: ChoicePoint) -> Pick:
        self.sink.write(f"Creating {point.class_name} as {point.object_name}:"
                        f" choose\n"
                        f"  [1] {point.left_text}\n"
                        f"  [2] {point.right_text}\n")
        while True:
            self.sink.write("> ")
            self.sink.flush()
            line = self.source.readline()
            if line == "":
                raise ChannelClosedError(point)
            answer = line.strip().lower()
            if answer in ("1", "l", "left"):
                return LEFT
            if answer in ("2", "r", "right"):
                return RIGHT
            self.sink.write("please answer 1 or 2\n")
