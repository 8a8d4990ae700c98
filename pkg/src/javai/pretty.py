"""Single-line source renderers for declarations, statements, and expressions.

The labels shown at a choice prompt come straight from pretty_decl, so these
renderings are user-facing, not just debugging aids.  Printing a parsed
program and parsing it again yields a structurally equal tree.
"""

from __future__ import annotations

from . import ast

_ESCAPES = {"\n": "\\n", "\t": "\\t", '"': '\\"', "\\": "\\\\"}

# Loosest binds first.  Comparison chains are left-associative like the parser.
_BIN_PREC = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "+": 4, "-": 4, "*": 5, "/": 5,
}
_UNARY_PREC = 6


def _quote(text: str) -> str:
    return '"' + "".join(_ESCAPES.get(c, c) for c in text) + '"'


def _value(v: ast.Value) -> str:
    if isinstance(v, ast.StrVal):
        return _quote(v.value)
    return ast.render_value(v)


def _target(t) -> str:
    if isinstance(t, str):
        return t
    if isinstance(t, ast.ObjRef):
        return t.object_name
    return _value(t)


def pretty_expr(e: ast.Expr) -> str:
    return _expr(e, 0)


def _expr(e: ast.Expr, prec: int) -> str:
    if isinstance(e, ast.IntLiteral):
        return str(e.value)
    if isinstance(e, ast.BoolLiteral):
        return "true" if e.value else "false"
    if isinstance(e, ast.StringLiteral):
        return _quote(e.value)
    if isinstance(e, ast.FieldRef):
        return e.name
    if isinstance(e, ast.QualifiedFieldRef):
        return f"{_target(e.target)}.{e.field}"
    if isinstance(e, ast.ValueLit):
        return _value(e.value)
    if isinstance(e, ast.Unary):
        text = e.op + _expr(e.operand, _UNARY_PREC)
        return f"({text})" if prec > _UNARY_PREC else text
    if isinstance(e, ast.Binary):
        p = _BIN_PREC[e.op]
        text = f"{_expr(e.lhs, p)} {e.op} {_expr(e.rhs, p + 1)}"
        return f"({text})" if prec > p else text
    raise TypeError(f"not an expression node: {e!r}")


def pretty_stmt(g: ast.Stmt) -> str:
    if isinstance(g, ast.Seq):
        return f"{_atom_stmt(g.first)}; {pretty_stmt(g.second)}"
    if isinstance(g, ast.Call):
        args = ", ".join(pretty_expr(a) for a in g.args)
        head = "" if g.target is None else _target(g.target) + "."
        return f"{head}{g.proc}({args})"
    if isinstance(g, ast.Assign):
        head = "" if g.target is None else _target(g.target) + "."
        return f"{head}{g.field} = {pretty_expr(g.value)}"
    if isinstance(g, ast.New):
        return f"{g.binder} = new {g.class_name}"
    if isinstance(g, ast.Print):
        return f"print({pretty_expr(g.arg)})"
    if isinstance(g, ast.If):
        return (f"if {pretty_expr(g.cond)} then {_atom_stmt(g.then)}"
                f" else {_atom_stmt(g.orelse)}")
    if isinstance(g, ast.Skip):
        return "skip"
    raise TypeError(f"not a statement node: {g!r}")


def _atom_stmt(g: ast.Stmt) -> str:
    # Sequences need braces wherever the grammar wants a single statement.
    if isinstance(g, ast.Seq):
        return "{ " + pretty_stmt(g) + " }"
    return pretty_stmt(g)


# Declaration precedence: "(+)" is looser than "&", both right-associative.
_CHOICE_PREC, _CONJ_PREC, _ATOM_PREC = 1, 2, 3


def pretty_decl(d: ast.Decl) -> str:
    return _decl(d, 0)


def _decl(d: ast.Decl, prec: int) -> str:
    if isinstance(d, ast.Choice):
        text = f"{_decl(d.left, _CONJ_PREC)} (+) {_decl(d.right, _CHOICE_PREC)}"
        return f"({text})" if prec > _CHOICE_PREC else text
    if isinstance(d, ast.Conj):
        text = f"{_decl(d.left, _ATOM_PREC)} & {_decl(d.right, _CONJ_PREC)}"
        return f"({text})" if prec > _CONJ_PREC else text
    if isinstance(d, ast.FieldInit):
        return f"{d.name} = {pretty_expr(d.init)}"
    if isinstance(d, ast.ParamBinder):
        return _decl(_proc_of(d), prec)
    if isinstance(d, ast.ProcDecl):
        return f"{d.name}({', '.join(d.params)}) := {pretty_stmt(d.body)}"
    if isinstance(d, ast.EmptyDecl):
        return ""
    raise TypeError(f"not a declaration node: {d!r}")


def _proc_of(d: ast.Decl) -> ast.ProcDecl:
    while isinstance(d, ast.ParamBinder):
        d = d.body
    if not isinstance(d, ast.ProcDecl):
        raise TypeError(f"binder does not wrap a procedure: {d!r}")
    return d


def pretty_program(prog: ast.SourceProgram) -> str:
    """Re-printable one-class-per-line rendering of a whole program."""
    parts = []
    for name, d in prog.classes.items():
        body = pretty_decl(d)
        parts.append(f"class {name} {{ {body} }}" if body else f"class {name} {{ }}")
    parts.append(f"void main() {{ {pretty_stmt(prog.main)} }}")
    return "\n".join(parts) + "\n"


def dump_program(prog: ast.SourceProgram) -> str:
    """Structural line-per-node dump used by the `parse` command.

    Conjunctions and choices become their own indented lines, so a dump
    contains one "(+)" line per choice node in the source.
    """
    lines: list[str] = []
    for name, d in prog.classes.items():
        lines.append(f"class {name}")
        _dump_decl(d, 1, lines)
    lines.append("main")
    for stmt in _seq_spine(prog.main):
        lines.append("  " + pretty_stmt(stmt))
    return "\n".join(lines)


def _dump_decl(d: ast.Decl, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    if isinstance(d, ast.Conj):
        lines.append(pad + "&")
        _dump_decl(d.left, depth + 1, lines)
        _dump_decl(d.right, depth + 1, lines)
    elif isinstance(d, ast.Choice):
        lines.append(pad + "(+)")
        _dump_decl(d.left, depth + 1, lines)
        _dump_decl(d.right, depth + 1, lines)
    elif isinstance(d, ast.EmptyDecl):
        lines.append(pad + "(empty)")
    else:
        lines.append(pad + pretty_decl(d))


def _seq_spine(g: ast.Stmt):
    while isinstance(g, ast.Seq):
        yield g.first
        g = g.second
    yield g
