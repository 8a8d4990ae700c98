"""AST node types for javai programs.

A program is a set of named class declarations plus one main body.  A class
declaration is a tree whose leaves are field initializers and procedure
declarations, combined with the '&' conjunction operator and the '(+)'
choice operator; a choice node is resolved by the user when an object of
the class is created.  Statements and expressions are conventional.

All nodes are frozen dataclasses.  Structural equality ignores source
spans, so a parsed tree compares equal to a hand-built one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col}"


# === Runtime values ===========================================================

class Value:
    """Base class for runtime values; instances are immutable."""


@dataclass(frozen=True)
class IntVal(Value):
    value: int


@dataclass(frozen=True)
class BoolVal(Value):
    value: bool


@dataclass(frozen=True)
class StrVal(Value):
    value: str


@dataclass(frozen=True)
class ObjRef(Value):
    object_name: str


def render_value(v: Value) -> str:
    """Canonical text form of a value, as printed by `print`."""
    if isinstance(v, IntVal):
        return str(v.value)
    if isinstance(v, BoolVal):
        return "true" if v.value else "false"
    if isinstance(v, StrVal):
        return v.value
    if isinstance(v, ObjRef):
        return v.object_name
    raise TypeError(f"not a value: {v!r}")


# === Expressions ==============================================================

class Expr:
    pass


@dataclass(frozen=True)
class IntLiteral(Expr):
    value: int
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class BoolLiteral(Expr):
    value: bool
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class StringLiteral(Expr):
    value: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FieldRef(Expr):
    """A bare name; refers to a field of the enclosing object."""

    name: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class QualifiedFieldRef(Expr):
    """`target.field` where target names an object binder."""

    target: Union[str, Value]
    field: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # + - * / == != < <= > >= && ||
    lhs: Expr
    rhs: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # - !
    operand: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ValueLit(Expr):
    """A literal injected by argument substitution; never produced by the parser."""

    value: Value
    span: Span | None = field(default=None, compare=False)


# === Statements ===============================================================

class Stmt:
    pass


@dataclass(frozen=True)
class Call(Stmt):
    """`target.proc(args)`; target None means a bare call on the enclosing object."""

    target: Union[str, Value, None]
    proc: str
    args: tuple[Expr, ...]
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Assign(Stmt):
    """`target.field = value`; target None writes a field of the enclosing object."""

    target: Union[str, Value, None]
    field: str
    value: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Seq(Stmt):
    first: Stmt
    second: Stmt
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class New(Stmt):
    """`binder = new class_name`; binds binder for the rest of the sequence."""

    binder: str
    class_name: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Print(Stmt):
    arg: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    orelse: Stmt
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Skip(Stmt):
    span: Span | None = field(default=None, compare=False)


# === Class declarations =======================================================

class Decl:
    pass


@dataclass(frozen=True)
class FieldInit(Decl):
    name: str
    init: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ProcDecl(Decl):
    name: str
    params: tuple[str, ...]
    body: Stmt
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ParamBinder(Decl):
    """One parameter binder; procedure declarations carry one per parameter,
    leftmost parameter outermost."""

    var: str
    body: Decl
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Conj(Decl):
    """The '&' node: both declarations are in force."""

    left: Decl
    right: Decl
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Choice(Decl):
    """The '(+)' node: the user keeps exactly one side at object creation."""

    left: Decl
    right: Decl
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class EmptyDecl(Decl):
    """Canonical declaration of an empty class body."""

    span: Span | None = field(default=None, compare=False)


@dataclass
class SourceProgram:
    classes: dict[str, Decl]
    main: Stmt


def contains_choice(d: Decl) -> bool:
    """True iff any '(+)' node occurs anywhere in the declaration tree."""
    if isinstance(d, Choice):
        return True
    if isinstance(d, Conj):
        return contains_choice(d.left) or contains_choice(d.right)
    if isinstance(d, ParamBinder):
        return contains_choice(d.body)
    return False
