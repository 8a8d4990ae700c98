"""An interpreter for javai, a small untyped object language whose class
declarations may carry choice disjunctions, written "(+)", that the user
resolves when an object is created."""

from .ast import (
    BoolVal,
    IntVal,
    ObjRef,
    SourceProgram,
    StrVal,
    Value,
    contains_choice,
    render_value,
)
from .choice import (
    LEFT,
    RIGHT,
    ChannelClosedError,
    ChoiceDecision,
    ChoicePoint,
    ChoiceStrategy,
    InteractiveChooser,
    Pick,
    ScriptedChooser,
    ScriptExhaustedError,
    parse_script,
    render_script,
)
from .engine import (
    AwaitingChoice,
    ExecutionState,
    Failed,
    FailureReason,
    Finished,
    IllegalStateError,
    ObjectInstance,
    ProgramStore,
    Running,
    StaleDecisionError,
    advance,
    discard,
    resume,
    run,
    start,
)
from .enumeration import EnumerationResult, Outcome, enumerate_outcomes
from .errors import ParseError
from .parser import load_program, parse_program, validate_program
from .pretty import dump_program, pretty_decl, pretty_expr, pretty_program, pretty_stmt

__version__ = "0.1.0"

__all__ = [
    "AwaitingChoice", "BoolVal", "ChannelClosedError", "ChoiceDecision",
    "ChoicePoint", "ChoiceStrategy", "EnumerationResult", "ExecutionState",
    "Failed", "FailureReason", "Finished", "IllegalStateError",
    "InteractiveChooser", "IntVal", "LEFT", "ObjectInstance", "ObjRef",
    "Outcome", "ParseError", "Pick", "ProgramStore", "RIGHT", "Running",
    "ScriptExhaustedError", "ScriptedChooser", "SourceProgram",
    "StaleDecisionError", "StrVal", "Value", "advance", "contains_choice",
    "discard", "dump_program", "enumerate_outcomes", "load_program",
    "parse_program", "parse_script", "pretty_decl", "pretty_expr",
    "pretty_program", "pretty_stmt", "render_script", "render_value",
    "resume", "run", "start", "validate_program",
]
