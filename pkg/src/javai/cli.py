"""Command-line entry point.

Exit codes: 0 run finished, 1 run failed, 2 parse or pre-execution error,
3 choice script ran out, 4 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine
from .ast import render_value
from .choice import InteractiveChooser, ScriptedChooser, parse_script
from .enumeration import DEFAULT_MAX_OUTCOMES, enumerate_outcomes
from .errors import ParseError
from .parser import load_program
from .pretty import dump_program

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_EXHAUSTED = 3
EXIT_USAGE = 4

DEFAULT_PORT = 7477


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 4, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _script_arg(text: str):
    try:
        return parse_script(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="javai",
                             description="Run, explore, and serve javai programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a program")
    p_run.add_argument("file", help="source file")
    mode = p_run.add_mutually_exclusive_group()
    mode.add_argument("--choices", type=_script_arg, metavar="SCRIPT",
                      help="answer prompts from a string of L and R")
    mode.add_argument("--interactive", action="store_true",
                      help="answer prompts on the terminal")
    p_run.add_argument("--trace", action="store_true",
                       help="log each applied rule to standard error")
    p_run.add_argument("--max-depth", type=_positive_int, metavar="N",
                       default=engine.DEFAULT_MAX_CALL_DEPTH,
                       help="call depth limit (default %(default)s)")
    p_run.set_defaults(handler=cmd_run)

    p_enum = sub.add_parser("enumerate", help="list every outcome")
    p_enum.add_argument("file", help="source file")
    p_enum.add_argument("--max-outcomes", type=_positive_int, metavar="N",
                        default=DEFAULT_MAX_OUTCOMES,
                        help="stop after N outcomes (default %(default)s)")
    p_enum.set_defaults(handler=cmd_enumerate)

    p_parse = sub.add_parser("parse", help="dump the parsed tree")
    p_parse.add_argument("file", help="source file")
    p_parse.set_defaults(handler=cmd_parse)

    p_serve = sub.add_parser("serve", help="start the session service")
    p_serve.add_argument("--port", type=_positive_int, metavar="P",
                         default=DEFAULT_PORT,
                         help="listen port (default %(default)s)")
    p_serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as leave:  # argparse already printed its message
        code = leave.code
        return code if isinstance(code, int) else EXIT_USAGE
    return args.handler(args)


def _load(path_text: str):
    """Returns (program, None) or (None, exit_code), reporting to stderr."""
    try:
        source = Path(path_text).read_text(encoding="utf-8")
    except OSError as err:
        detail = err.strerror or str(err)
        print(f"javai: cannot read {path_text}: {detail}", file=sys.stderr)
        return None, EXIT_USAGE
    try:
        return load_program(source), None
    except ParseError as err:
        print(f"javai: {err}", file=sys.stderr)
        return None, EXIT_PARSE


def cmd_run(args) -> int:
    program, code = _load(args.file)
    if program is None:
        return code
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    if args.interactive:
        chooser = InteractiveChooser()
    else:
        chooser = ScriptedChooser(args.choices or ())
    state = engine.run(program, chooser,
                       max_call_depth=args.max_depth, trace=trace)
    for line in state.store.output_log:
        print(line)
    if isinstance(state, engine.Finished):
        return EXIT_OK
    print(f"javai: execution failed: {state.reason}", file=sys.stderr)
    if isinstance(state.reason, engine.ChoiceScriptExhausted):
        return EXIT_EXHAUSTED
    return EXIT_FAILED


def cmd_enumerate(args) -> int:
    program, code = _load(args.file)
    if program is None:
        return code
    result = enumerate_outcomes(program, max_outcomes=args.max_outcomes)
    for i, outcome in enumerate(result.outcomes, 1):
        script = outcome.script or "-"
        if outcome.status == "finished":
            print(f"outcome {i} [{script}] finished")
        else:
            print(f"outcome {i} [{script}] failed: {outcome.failure}")
        for line in outcome.output:
            print(f"  output | {line}")
        for obj_name, fields in outcome.final_fields.items():
            shown = ", ".join(f"{k} = {render_value(v)}"
                              for k, v in fields.items()) or "(no fields)"
            print(f"  fields | {obj_name}: {shown}")
    n = len(result.outcomes)
    summary = f"{n} outcome" if n == 1 else f"{n} outcomes"
    if result.truncated:
        summary += f" (truncated at {args.max_outcomes})"
    print(summary)
    return EXIT_OK


def cmd_parse(args) -> int:
    program, code = _load(args.file)
    if program is None:
        return code
    print(dump_program(program))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    static = Path.cwd() / "frontend" / "dist"
    app = create_app(static_dir=static if static.is_dir() else None)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="info")
    return EXIT_OK
