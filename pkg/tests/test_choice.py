"""Decision sources: scripts and the interactive prompt loop."""

import io

import pytest

from javai import engine, parser
from javai.choice import (
    ChannelClosedError,
    ChoicePoint,
    InteractiveChooser,
    Pick,
    ScriptExhaustedError,
    ScriptedChooser,
    parse_script,
    render_script,
)

from conftest import program_source

POINT = ChoicePoint(1, "p#1", "TempleU",
                    "employee = true", "employee = false")


def test_script_parsing():
    assert parse_script("LRlr") == (Pick.LEFT, Pick.RIGHT,
                                    Pick.LEFT, Pick.RIGHT)
    assert parse_script("") == ()
    assert render_script(parse_script("LRL")) == "LRL"
    with pytest.raises(ValueError, match="position 2"):
        parse_script("Lx")


def test_scripted_chooser_consumes_in_order():
    chooser = ScriptedChooser(parse_script("RL"))
    assert chooser.choose(POINT) is Pick.RIGHT
    assert chooser.choose(POINT) is Pick.LEFT
    with pytest.raises(ScriptExhaustedError) as info:
        chooser.choose(POINT)
    assert info.value.point is POINT


def interact(answers: str) -> tuple[Pick, str]:
    sink = io.StringIO()
    chooser = InteractiveChooser(io.StringIO(answers), sink)
    pick = chooser.choose(POINT)
    return pick, sink.getvalue()


def test_interactive_prompt_text_and_numeric_answers():
    pick, shown = interact("1\n")
    assert pick is Pick.LEFT
    assert shown == ("Creating TempleU as p#1: choose\n"
                     "  [1] employee = true\n"
                     "  [2] employee = false\n"
                     "> ")
    pick, _ = interact("2\n")
    assert pick is Pick.RIGHT


@pytest.mark.parametrize("answer, pick", [
    ("l", Pick.LEFT), ("LEFT", Pick.LEFT),
    ("r", Pick.RIGHT), ("Right", Pick.RIGHT),
    ("  2  ", Pick.RIGHT),
])
def test_interactive_accepts_words_and_whitespace(answer, pick):
    got, _ = interact(answer + "\n")
    assert got is pick


def test_interactive_reprompts_on_nonsense():
    pick, shown = interact("banana\n\n1\n")
    assert pick is Pick.LEFT
    assert shown.count("please answer 1 or 2") == 2
    assert shown.count("> ") == 3
    assert shown.count("Creating") == 1  # header printed once


def test_interactive_closed_channel():
    chooser = InteractiveChooser(io.StringIO(""), io.StringIO())
    with pytest.raises(ChannelClosedError):
        chooser.choose(POINT)


def test_interactive_run_equals_scripted_run():
    prog = parser.load_program(program_source("nested_choice.javai"))
    scripted = engine.run(prog, ScriptedChooser(parse_script("LR")))
    typed = engine.run(prog, InteractiveChooser(io.StringIO("1\n2\n"),
                                                io.StringIO()))
    assert typed.store.output_log == scripted.store.output_log
    assert typed.store.snapshot() == scripted.store.snapshot()


def test_run_surfaces_closed_channel_as_failure():
    prog = parser.load_program(program_source("templeu.javai"))
    state = engine.run(prog, InteractiveChooser(io.StringIO(""),
                                                io.StringIO()))
    assert isinstance(state, engine.Failed)
    assert isinstance(state.reason, engine.ChannelClosed)
