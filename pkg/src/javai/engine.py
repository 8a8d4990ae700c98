"""Executes parsed programs as a resumable state machine.

Execution alternates two phases: statement reduction, which takes the current
statement apart by its head constructor, and backchaining, which scans an
object's declaration for a procedure matching a call and substitutes the
evaluated arguments into its body.  Object creation first strips every choice
node from the class declaration, prompting once per node met on the chosen
path, then evaluates the field initializers left to right.

A run is a generator that yields a ChoicePoint whenever it needs an answer.
The generator is driven on a dedicated thread with a large stack, because
deeply recursive programs nest `yield from` frames far beyond what the main
thread's C stack tolerates.  Suspension parks that thread; `resume` feeds it
the pick and pumps it to the next prompt or to a terminal state.

Runtime errors never raise past the API: they terminate the run in a
`Failed` state carrying a FailureReason, with output up to that point kept.
"""

from __future__ import annotations

import queue
import sys
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Optional, Union

from . import ast
from .choice import (
    LEFT,
    ChannelClosedError,
    ChoiceDecision,
    ChoicePoint,
    ChoiceStrategy,
    Pick,
    ScriptExhaustedError,
)
from .pretty import pretty_decl, pretty_expr, pretty_stmt

DEFAULT_MAX_CALL_DEPTH = 10_000

# Thread stack for interpreter runs.  Mostly untouched virtual memory; a
# 10k-deep call chain costs on the order of 100k nested generator frames.
_STACK_BYTES = 512 * 1024 * 1024
_FRAMES_PER_CALL = 16
_RECURSION_HEADROOM = 20_000

TraceFn = Callable[[str], None]


# === failure model ===

class FailureReason:
    """Why a run ended in Failed; subclasses render one-line diagnostics."""


@dataclass(frozen=True)
class NoMatchingProcedure(FailureReason):
    object_name: str
    proc: str
    arity: int

    def __str__(self) -> str:
        return (f"object {self.object_name} has no matching procedure "
                f"{self.proc}/{self.arity}")


@dataclass(frozen=True)
class UnknownObject(FailureReason):
    name: str

    def __str__(self) -> str:
        return f"unknown object '{self.name}'"


@dataclass(frozen=True)
class UnknownField(FailureReason):
    object_name: str
    field_name: str

    def __str__(self) -> str:
        return f"object {self.object_name} has no field '{self.field_name}'"


@dataclass(frozen=True)
class DuplicateField(FailureReason):
    object_name: str
    field_name: str

    def __str__(self) -> str:
        return f"object {self.object_name} declares field '{self.field_name}' twice"


@dataclass(frozen=True)
class UnknownClass(FailureReason):
    name: str

    def __str__(self) -> str:
        return f"unknown class '{self.name}'"


@dataclass(frozen=True)
class DivisionByZero(FailureReason):
    def __str__(self) -> str:
        return "division by zero"


@dataclass(frozen=True)
class TypeMismatch(FailureReason):
    op: str
    values: tuple[ast.Value, ...]

    def __str__(self) -> str:
        shown = ", ".join(ast.render_value(v) for v in self.values)
        return f"operator '{self.op}' cannot take {shown}"


@dataclass(frozen=True)
class RecursionLimitExceeded(FailureReason):
    limit: int

    def __str__(self) -> str:
        return f"call depth exceeded the limit of {self.limit}"


@dataclass(frozen=True)
class ChoiceScriptExhausted(FailureReason):
    prompt_id: int

    def __str__(self) -> str:
        return f"choice script exhausted at prompt {self.prompt_id}"


@dataclass(frozen=True)
class ChannelClosed(FailureReason):
    def __str__(self) -> str:
        return "choice input channel closed"


class _ExecFailure(Exception):
    def __init__(self, reason: FailureReason):
        super().__init__(str(reason))
        self.reason = reason


class IllegalStateError(Exception):
    """The state cannot accept the requested transition."""


class StaleDecisionError(Exception):
    """The decision references a prompt that is not the pending one."""


# === runtime data ===

@dataclass(frozen=True)
class ProcEntry:
    """One procedure found in a resolved declaration.

    `path` records the conjunction descents (L/R) from the declaration root
    to this procedure, so dispatch can report which side the search took.
    """

    name: str
    arity: int
    decl: ast.Decl  # binder-wrapped ProcDecl
    path: tuple[str, ...]


@dataclass
class ObjectInstance:
    name: str
    class_name: str
    fields: dict[str, ast.Value]
    procs: list[ProcEntry]
    decl: ast.Decl  # resolved declaration, free of choice nodes


@dataclass
class ProgramStore:
    objects: dict[str, ObjectInstance] = field(default_factory=dict)
    output_log: list[str] = field(default_factory=list)
    fresh_counter: int = 0

    def fresh_name(self, binder: str) -> str:
        self.fresh_counter += 1
        return f"{binder}#{self.fresh_counter}"

    def snapshot(self) -> dict[str, dict[str, ast.Value]]:
        """Plain mapping of every object's fields, for comparisons."""
        return {name: dict(inst.fields) for name, inst in self.objects.items()}


@dataclass
class Running:
    store: ProgramStore
    continuation: "_Machine"
    _consumed: bool = field(default=False, repr=False)


@dataclass
class AwaitingChoice:
    store: ProgramStore
    point: ChoicePoint
    continuation: "_Machine"
    _consumed: bool = field(default=False, repr=False)


@dataclass
class Finished:
    store: ProgramStore


@dataclass
class Failed:
    store: ProgramStore
    reason: FailureReason


ExecutionState = Union[Running, AwaitingChoice, Finished, Failed]


# === substitution ===

def subst_expr(e: ast.Expr, var: str, val: ast.Value) -> ast.Expr:
    if isinstance(e, ast.FieldRef):
        return ast.ValueLit(val, span=e.span) if e.name == var else e
    if isinstance(e, ast.QualifiedFieldRef):
        return replace(e, target=val) if e.target == var else e
    if isinstance(e, ast.Binary):
        return replace(e, lhs=subst_expr(e.lhs, var, val),
                       rhs=subst_expr(e.rhs, var, val))
    if isinstance(e, ast.Unary):
        return replace(e, operand=subst_expr(e.operand, var, val))
    return e


def subst_goal(g: ast.Stmt, var: str, val: ast.Value) -> ast.Stmt:
    if isinstance(g, ast.Call):
        target = val if g.target == var else g.target
        return replace(g, target=target,
                       args=tuple(subst_expr(a, var, val) for a in g.args))
    if isinstance(g, ast.Assign):
        # The field name is a storage slot, never an occurrence of var.
        target = val if g.target == var else g.target
        return replace(g, target=target, value=subst_expr(g.value, var, val))
    if isinstance(g, ast.Seq):
        first = subst_goal(g.first, var, val)
        if isinstance(g.first, ast.New) and g.first.binder == var:
            return replace(g, first=first)  # rebound for the rest of the sequence
        return replace(g, first=first, second=subst_goal(g.second, var, val))
    if isinstance(g, ast.Print):
        return replace(g, arg=subst_expr(g.arg, var, val))
    if isinstance(g, ast.If):
        return replace(g, cond=subst_expr(g.cond, var, val),
                       then=subst_goal(g.then, var, val),
                       orelse=subst_goal(g.orelse, var, val))
    return g  # New, Skip


def subst_decl(d: ast.Decl, var: str, val: ast.Value) -> ast.Decl:
    if isinstance(d, ast.ParamBinder):
        if d.var == var:
            return d  # inner binder shadows
        return replace(d, body=subst_decl(d.body, var, val))
    if isinstance(d, ast.ProcDecl):
        return replace(d, body=subst_goal(d.body, var, val))
    if isinstance(d, ast.FieldInit):
        return replace(d, init=subst_expr(d.init, var, val))
    if isinstance(d, (ast.Conj, ast.Choice)):
        return replace(d, left=subst_decl(d.left, var, val),
                       right=subst_decl(d.right, var, val))
    return d


def _proc_of(d: ast.Decl) -> ast.ProcDecl:
    while isinstance(d, ast.ParamBinder):
        d = d.body
    assert isinstance(d, ast.ProcDecl)
    return d


def _trunc_div(a: int, b: int) -> int:
    q = a // b
    if a % b != 0 and (a < 0) != (b < 0):
        q += 1
    return q


def _clip(text: str, limit: int = 96) -> str:
    return text if len(text) <= limit else text[:limit - 3] + "..."


# === the interpreter proper ===

class _Interp:
    def __init__(self, program: ast.SourceProgram, store: ProgramStore,
                 trace: Optional[TraceFn], max_call_depth: int):
        self.program = program
        self.store = store
        self.trace = trace
        self.max_call_depth = max_call_depth
        self.depth = 0
        self.next_point_id = 1

    def emit(self, rule: int, subject: str) -> None:
        if self.trace is not None:
            self.trace(f"[rule {rule}] {_clip(subject)}")

    def run_main(self) -> Iterator[ChoicePoint]:
        try:
            yield from self.exec_goal(self.program.main, None)
        except _ExecFailure as failure:
            return Failed(self.store, failure.reason)
        except RecursionError:
            return Failed(self.store, RecursionLimitExceeded(self.max_call_depth))
        return Finished(self.store)

    # --- statement reduction ---

    def exec_goal(self, g: ast.Stmt, ctx: Optional[str]) -> Iterator[ChoicePoint]:
        if isinstance(g, ast.Seq):
            self.emit(7, pretty_stmt(g))
            if isinstance(g.first, ast.New):
                name = yield from self.exec_new(g.first)
                rest = subst_goal(g.second, g.first.binder, ast.ObjRef(name))
                yield from self.exec_goal(rest, ctx)
            else:
                yield from self.exec_goal(g.first, ctx)
                yield from self.exec_goal(g.second, ctx)
        elif isinstance(g, ast.New):
            yield from self.exec_new(g)
        elif isinstance(g, ast.Call):
            yield from self.exec_call(g, ctx)
        elif isinstance(g, ast.Assign):
            self.exec_assign(g, ctx)
        elif isinstance(g, ast.Print):
            value = self.eval_expr(g.arg, ctx)
            self.store.output_log.append(ast.render_value(value))
        elif isinstance(g, ast.If):
            cond = self.eval_expr(g.cond, ctx)
            if not isinstance(cond, ast.BoolVal):
                raise _ExecFailure(TypeMismatch("if", (cond,)))
            yield from self.exec_goal(g.then if cond.value else g.orelse, ctx)
        elif isinstance(g, ast.Skip):
            pass
        else:
            raise TypeError(f"not a statement node: {g!r}")

    def exec_new(self, g: ast.New) -> Iterator[ChoicePoint]:
        self.emit(8, pretty_stmt(g))
        decl = self.program.classes.get(g.class_name)
        if decl is None:
            raise _ExecFailure(UnknownClass(g.class_name))
        name = self.store.fresh_name(g.binder)
        resolved = yield from self.resolve_choices(decl, name, g.class_name)
        self.initialize_fields(resolved, name, g.class_name)
        return name

    def exec_call(self, g: ast.Call, ctx: Optional[str]) -> Iterator[ChoicePoint]:
        obj = self.target_object(g.target, ctx, g.proc)
        shown_args = ", ".join(pretty_expr(a) for a in g.args)
        self.emit(5, f"{obj.name}.{g.proc}({shown_args})")
        args = [self.eval_expr(a, ctx) for a in g.args]
        if self.depth >= self.max_call_depth:
            raise _ExecFailure(RecursionLimitExceeded(self.max_call_depth))
        self.depth += 1
        try:
            yield from self.backchain(obj, g.proc, args)
        finally:
            self.depth -= 1

    def exec_assign(self, g: ast.Assign, ctx: Optional[str]) -> None:
        obj = self.target_object(g.target, ctx, g.field)
        value = self.eval_expr(g.value, ctx)
        self.emit(6, f"{obj.name}.{g.field} = {ast.render_value(value)}")
        if g.field not in obj.fields:
            raise _ExecFailure(UnknownField(obj.name, g.field))
        obj.fields[g.field] = value

    # --- backchaining ---

    def backchain(self, obj: ObjectInstance, name: str,
                  args: list[ast.Value]) -> Iterator[ChoicePoint]:
        entry = None
        for candidate in obj.procs:
            if candidate.name == name and candidate.arity == len(args):
                entry = candidate  # leftmost match wins, no backtracking
                break
        if entry is None:
            raise _ExecFailure(NoMatchingProcedure(obj.name, name, len(args)))
        for step in entry.path:
            side = "left" if step == "L" else "right"
            self.emit(3 if step == "L" else 4,
                      f"searching {side} conjunct of {obj.name} for {name}/{len(args)}")
        decl = entry.decl
        for value in args:
            assert isinstance(decl, ast.ParamBinder)
            self.emit(2, f"{obj.name}: {decl.var} := {ast.render_value(value)}")
            decl = subst_decl(decl.body, decl.var, value)
        assert isinstance(decl, ast.ProcDecl)
        self.emit(1, f"matched {name}/{len(args)} in {obj.name}")
        yield from self.exec_goal(decl.body, obj.name)

    # --- object creation ---

    def resolve_choices(self, d: ast.Decl, object_name: str,
                        class_name: str) -> Iterator[ChoicePoint]:
        if isinstance(d, ast.Choice):
            point = ChoicePoint(self.next_point_id, object_name, class_name,
                                pretty_decl(d.left), pretty_decl(d.right))
            self.next_point_id += 1
            if self.trace is not None:
                self.trace(f"[choice] creating {object_name} <{class_name}>: "
                           f"{point.left_text} (+) {point.right_text}")
            pick = yield point
            branch = d.left if pick is LEFT else d.right
            resolved = yield from self.resolve_choices(branch, object_name,
                                                       class_name)
            return resolved
        if isinstance(d, ast.Conj):
            left = yield from self.resolve_choices(d.left, object_name, class_name)
            right = yield from self.resolve_choices(d.right, object_name, class_name)
            return ast.Conj(left, right, span=d.span)
        return d

    def initialize_fields(self, resolved: ast.Decl, name: str,
                          class_name: str) -> ObjectInstance:
        instance = ObjectInstance(name, class_name, {}, [], resolved)
        # Inserted before walking so initializers can read earlier fields.
        self.store.objects[name] = instance

        def walk(d: ast.Decl, path: tuple[str, ...]) -> None:
            if isinstance(d, ast.Conj):
                walk(d.left, path + ("L",))
                walk(d.right, path + ("R",))
            elif isinstance(d, ast.FieldInit):
                if d.name in instance.fields:
                    raise _ExecFailure(DuplicateField(name, d.name))
                instance.fields[d.name] = self.eval_expr(d.init, name)
            elif isinstance(d, (ast.ProcDecl, ast.ParamBinder)):
                proc = _proc_of(d)
                instance.procs.append(ProcEntry(proc.name, len(proc.params),
                                                d, path))
            elif isinstance(d, ast.EmptyDecl):
                pass
            else:
                raise AssertionError(f"unresolved declaration node: {d!r}")

        walk(resolved, ())
        return instance

    # --- names and values ---

    def target_object(self, target, ctx: Optional[str],
                      used_name: str) -> ObjectInstance:
        if target is None:
            if ctx is None:
                raise _ExecFailure(UnknownObject(used_name))
            return self.store.objects[ctx]
        if isinstance(target, str):
            # A leftover name: inside a body it may be a field holding an
            # object; anywhere else it never got bound by a `new`.
            if ctx is None:
                raise _ExecFailure(UnknownObject(target))
            holder = self.store.objects[ctx]
            if target not in holder.fields:
                raise _ExecFailure(UnknownObject(target))
            return self.deref(holder.fields[target])
        return self.deref(target)

    def deref(self, value: ast.Value) -> ObjectInstance:
        if not isinstance(value, ast.ObjRef):
            raise _ExecFailure(TypeMismatch(".", (value,)))
        instance = self.store.objects.get(value.object_name)
        if instance is None:
            raise _ExecFailure(UnknownObject(value.object_name))
        return instance

    def eval_expr(self, e: ast.Expr, ctx: Optional[str]) -> ast.Value:
        if isinstance(e, ast.IntLiteral):
            return ast.IntVal(e.value)
        if isinstance(e, ast.BoolLiteral):
            return ast.BoolVal(e.value)
        if isinstance(e, ast.StringLiteral):
            return ast.StrVal(e.value)
        if isinstance(e, ast.ValueLit):
            return e.value
        if isinstance(e, ast.FieldRef):
            if ctx is None:
                raise _ExecFailure(UnknownObject(e.name))
            instance = self.store.objects[ctx]
            if e.name not in instance.fields:
                raise _ExecFailure(UnknownField(instance.name, e.name))
            return instance.fields[e.name]
        if isinstance(e, ast.QualifiedFieldRef):
            instance = self.target_object(e.target, ctx, e.field)
            if e.field not in instance.fields:
                raise _ExecFailure(UnknownField(instance.name, e.field))
            return instance.fields[e.field]
        if isinstance(e, ast.Unary):
            value = self.eval_expr(e.operand, ctx)
            if e.op == "-" and isinstance(value, ast.IntVal):
                return ast.IntVal(-value.value)
            if e.op == "!" and isinstance(value, ast.BoolVal):
                return ast.BoolVal(not value.value)
            raise _ExecFailure(TypeMismatch(e.op, (value,)))
        if isinstance(e, ast.Binary):
            return self.eval_binary(e, ctx)
        raise TypeError(f"not an expression node: {e!r}")

    def eval_binary(self, e: ast.Binary, ctx: Optional[str]) -> ast.Value:
        if e.op in ("&&", "||"):
            lhs = self.eval_expr(e.lhs, ctx)
            if not isinstance(lhs, ast.BoolVal):
                raise _ExecFailure(TypeMismatch(e.op, (lhs,)))
            if e.op == "&&" and not lhs.value:
                return ast.BoolVal(False)
            if e.op == "||" and lhs.value:
                return ast.BoolVal(True)
            rhs = self.eval_expr(e.rhs, ctx)
            if not isinstance(rhs, ast.BoolVal):
                raise _ExecFailure(TypeMismatch(e.op, (rhs,)))
            return rhs
        lhs = self.eval_expr(e.lhs, ctx)
        rhs = self.eval_expr(e.rhs, ctx)
        if e.op == "==":
            return ast.BoolVal(lhs == rhs)
        if e.op == "!=":
            return ast.BoolVal(lhs != rhs)
        if not isinstance(lhs, ast.IntVal) or not isinstance(rhs, ast.IntVal):
            raise _ExecFailure(TypeMismatch(e.op, (lhs, rhs)))
        a, b = lhs.value, rhs.value
        if e.op == "+":
            return ast.IntVal(a + b)
        if e.op == "-":
            return ast.IntVal(a - b)
        if e.op == "*":
            return ast.IntVal(a * b)
        if e.op == "/":
            if b == 0:
                raise _ExecFailure(DivisionByZero())
            return ast.IntVal(_trunc_div(a, b))
        if e.op == "<":
            return ast.BoolVal(a < b)
        if e.op == "<=":
            return ast.BoolVal(a <= b)
        if e.op == ">":
            return ast.BoolVal(a > b)
        if e.op == ">=":
            return ast.BoolVal(a >= b)
        raise TypeError(f"unknown operator {e.op!r}")


# === thread-backed generator driver ===

_spawn_lock = threading.Lock()


def _spawn(target) -> threading.Thread:
    with _spawn_lock:
        try:
            old = threading.stack_size(_STACK_BYTES)
        except (ValueError, RuntimeError):
            old = None
        try:
            thread = threading.Thread(target=target, daemon=True,
                                      name="javai-exec")
            thread.start()
        finally:
            if old is not None:
                threading.stack_size(old)
    return thread


class _Machine:
    """Owns one run's generator and the thread it executes on."""

    def __init__(self, gen):
        self._gen = gen
        self._inbox: queue.Queue = queue.Queue()
        self._outbox: queue.Queue = queue.Queue()
        self._thread: threading.Thread | None = None
        self._done = False

    def advance(self, send_value=None):
        if self._done:
            raise IllegalStateError("run already finished")
        if self._thread is None:
            self._thread = _spawn(self._pump)
        else:
            self._inbox.put(("send", send_value))
        kind, payload = self._outbox.get()
        if kind == "yield":
            return kind, payload
        self._done = True
        if kind == "raise":
            raise payload
        return kind, payload  # ("return", terminal state)

    def close(self) -> None:
        if self._done:
            return
        self._done = True
        if self._thread is None:
            self._gen.close()
            return
        self._inbox.put(("close", None))
        self._outbox.get()
        self._thread.join()

    def _pump(self) -> None:
        gen = self._gen
        try:
            item = next(gen)
            while True:
                self._outbox.put(("yield", item))
                cmd, value = self._inbox.get()
                if cmd == "close":
                    gen.close()
                    self._outbox.put(("closed", None))
                    return
                item = gen.send(value)
        except StopIteration as stop:
            self._outbox.put(("return", stop.value))
        except BaseException as exc:  # surfaced on the controlling thread
            self._outbox.put(("raise", exc))


# === public API ===

def start(program: ast.SourceProgram, *,
          max_call_depth: int = DEFAULT_MAX_CALL_DEPTH,
          trace: Optional[TraceFn] = None) -> Running:
    """Set up a run of the program's main body without advancing it."""
    _ensure_recursion_limit(max_call_depth)
    store = ProgramStore()
    interp = _Interp(program, store, trace, max_call_depth)
    return Running(store, _Machine(interp.run_main()))


def advance(state: Running) -> ExecutionState:
    """Drive a fresh run to its first prompt or terminal state."""
    if not isinstance(state, Running):
        raise IllegalStateError(f"cannot advance a {type(state).__name__} state")
    if state._consumed:
        raise IllegalStateError("this run was already advanced")
    state._consumed = True
    return _step(state.continuation, None, state.store)


def resume(state: AwaitingChoice, decision: ChoiceDecision) -> ExecutionState:
    """Feed one decision to a suspended run and drive it onward."""
    if not isinstance(state, AwaitingChoice):
        raise IllegalStateError(f"cannot resume a {type(state).__name__} state")
    if state._consumed:
        raise IllegalStateError("this prompt was already answered")
    if decision.point_id != state.point.id:
        raise StaleDecisionError(
            f"decision targets prompt {decision.point_id}, "
            f"but prompt {state.point.id} is pending")
    state._consumed = True
    return _step(state.continuation, decision.pick, state.store)


def run(program: ast.SourceProgram,
        chooser: Optional[ChoiceStrategy] = None, *,
        max_call_depth: int = DEFAULT_MAX_CALL_DEPTH,
        trace: Optional[TraceFn] = None) -> ExecutionState:
    """Run main from an empty store.

    With a chooser, prompts are answered as they appear and the result is
    terminal.  Without one, the first prompt is returned as AwaitingChoice
    for the caller to resume.
    """
    state = advance(start(program, max_call_depth=max_call_depth, trace=trace))
    if chooser is None:
        return state
    while isinstance(state, AwaitingChoice):
        try:
            pick = chooser.choose(state.point)
        except ScriptExhaustedError:
            point_id = state.point.id
            discard(state)
            return Failed(state.store, ChoiceScriptExhausted(point_id))
        except ChannelClosedError:
            discard(state)
            return Failed(state.store, ChannelClosed())
        state = resume(state, ChoiceDecision(state.point.id, pick))
    return state


def discard(state: ExecutionState) -> None:
    """Abandon a suspended run, releasing its thread."""
    machine = getattr(state, "continuation", None)
    if machine is not None:
        machine.close()


def _step(machine: "_Machine", send_value, store: ProgramStore) -> ExecutionState:
    kind, payload = machine.advance(send_value)
    if kind == "yield":
        return AwaitingChoice(store, payload, machine)
    return payload


def _ensure_recursion_limit(max_call_depth: int) -> None:
    want = max_call_depth * _FRAMES_PER_CALL + _RECURSION_HEADROOM
    if sys.getrecursionlimit() < want:
        sys.setrecursionlimit(want)
