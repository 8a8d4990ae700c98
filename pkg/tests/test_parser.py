"""Syntax-level checks: shapes, precedence, errors, round trips."""

import dataclasses

import pytest

from javai import ast, parser
from javai.errors import (
    DuplicateClassError,
    DuplicateParamError,
    MissingMainError,
    ParseError,
    UnknownClassError,
    UnqualifiedNameError,
)

from conftest import DATA, PROGRAMS, program_source

CORPUS = sorted(p.name for p in PROGRAMS.glob("*.javai"))


def walk(node):
    """Yield every AST node reachable from `node`."""
    if isinstance(node, (ast.Span, str, int, bool, type(None))):
        return
    if isinstance(node, tuple):
        for item in node:
            yield from walk(item)
        return
    if isinstance(node, dict):
        for item in node.values():
            yield from walk(item)
        return
    yield node
    for f in dataclasses.fields(node):
        if f.name == "span":
            continue
        yield from walk(getattr(node, f.name))


def parse_class(body: str) -> ast.Decl:
    prog = parser.parse_program(f"class C {{ {body} }} void main() {{ skip }}")
    return prog.classes["C"]


# --- the running example, checked down to the node ---

def test_templeu_shape():
    prog = parser.load_program(program_source("templeu.javai"))
    assert set(prog.classes) == {"TempleU"}
    d = prog.classes["TempleU"]
    assert d == ast.Conj(
        ast.FieldInit("tuition", ast.IntLiteral(0)),
        ast.Conj(
            ast.Choice(ast.FieldInit("employee", ast.BoolLiteral(True)),
                       ast.FieldInit("employee", ast.BoolLiteral(False))),
            ast.ProcDecl("comp_tuition", (), ast.If(
                ast.FieldRef("employee"),
                ast.Assign(None, "tuition", ast.IntLiteral(3000)),
                ast.Assign(None, "tuition", ast.IntLiteral(5000)),
            )),
        ),
    )
    assert prog.main == ast.Seq(
        ast.New("p", "TempleU"),
        ast.Seq(ast.Call("p", "comp_tuition", ()),
                ast.Print(ast.QualifiedFieldRef("p", "tuition"))),
    )


def test_empty_class_body():
    prog = parser.parse_program("class Hollow { } void main() { skip }")
    assert prog.classes["Hollow"] == ast.EmptyDecl()


# --- declaration operators ---

def test_conj_binds_tighter_than_choice():
    d = parse_class("a = 1 & b = 2 (+) c = 3")
    assert d == ast.Choice(
        ast.Conj(ast.FieldInit("a", ast.IntLiteral(1)),
                 ast.FieldInit("b", ast.IntLiteral(2))),
        ast.FieldInit("c", ast.IntLiteral(3)))


def test_declaration_operators_associate_right():
    d = parse_class("a = 1 (+) b = 2 (+) c = 3")
    assert isinstance(d, ast.Choice) and isinstance(d.right, ast.Choice)
    d = parse_class("a = 1 & b = 2 & c = 3")
    assert isinstance(d, ast.Conj) and isinstance(d.right, ast.Conj)


def test_parenthesised_choice_under_conj():
    d = parse_class("(a = 1 (+) b = 2) & c = 3")
    assert isinstance(d, ast.Conj) and isinstance(d.left, ast.Choice)


def test_proc_body_is_greedy():
    d = parse_class("p() := skip; skip")
    assert d == ast.ProcDecl("p", (), ast.Seq(ast.Skip(), ast.Skip()))


def test_conj_ends_proc_body():
    d = parse_class("p() := skip & q() := skip")
    assert isinstance(d, ast.Conj)
    assert d.left == ast.ProcDecl("p", (), ast.Skip())
    assert d.right == ast.ProcDecl("q", (), ast.Skip())


def test_params_become_nested_binders():
    d = parse_class("p(x, y) := x = 1")
    assert d == ast.ParamBinder("x", ast.ParamBinder("y", ast.ProcDecl(
        "p", ("x", "y"), ast.Assign(None, "x", ast.IntLiteral(1)))))


# --- statements and expressions ---

def test_if_branches_are_single_statements():
    prog = parser.parse_program(
        "class C { } void main() { if true then { skip; skip } else print(1) }")
    g = prog.main
    assert isinstance(g, ast.If)
    assert isinstance(g.then, ast.Seq)
    assert g.orelse == ast.Print(ast.IntLiteral(1))


def test_new_binds_rest_of_sequence():
    prog = parser.parse_program("class C { } void main() { x = new C; x.p(); skip }")
    assert prog.main == ast.Seq(
        ast.New("x", "C"),
        ast.Seq(ast.Call("x", "p", ()), ast.Skip()))


def test_arithmetic_precedence():
    prog = parser.parse_program("class C { } void main() { print(1 + 2 * 3 - 4) }")
    assert prog.main == ast.Print(ast.Binary(
        "-",
        ast.Binary("+", ast.IntLiteral(1),
                   ast.Binary("*", ast.IntLiteral(2), ast.IntLiteral(3))),
        ast.IntLiteral(4)))


def test_boolean_operators_and_unary():
    prog = parser.parse_program(
        "class C { } void main() { print(!true || 1 < 2 && false) }")
    g = prog.main.arg
    assert g.op == "||"
    assert g.lhs == ast.Unary("!", ast.BoolLiteral(True))
    assert g.rhs.op == "&&"


def test_string_escapes():
    prog = parser.parse_program(
        'class C { } void main() { print("a\\n\\"b\\"") }')
    assert prog.main == ast.Print(ast.StringLiteral('a\n"b"'))


def test_comments_are_skipped():
    prog = parser.parse_program(
        "// header\nclass C { x = 1 // trailing\n} void main() { skip }")
    assert prog.classes["C"] == ast.FieldInit("x", ast.IntLiteral(1))


# --- diagnostics carry exact positions ---

@pytest.mark.parametrize("source, line, col", [
    ("class C { x = 1 +", 1, 18),
    ("class C { x = }\nvoid main() { skip }", 1, 15),
    ("class C { }\nvoid main() { print(1", 2, 22),
    ("class C { }\nvoid main() { $ }", 2, 15),
])
def test_parse_error_positions(source, line, col):
    with pytest.raises(ParseError) as info:
        parser.parse_program(source)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, col {col}: ")


def test_unterminated_string():
    with pytest.raises(ParseError, match="unterminated"):
        parser.parse_program('class C { } void main() { print("oops }')


def test_static_errors():
    with pytest.raises(DuplicateClassError):
        parser.parse_program("class A { } class A { } void main() { skip }")
    with pytest.raises(MissingMainError):
        parser.parse_program("class A { }")
    with pytest.raises(DuplicateParamError):
        parser.parse_program("class A { p(x, x) := skip } void main() { skip }")
    with pytest.raises(UnknownClassError):
        parser.load_program("class A { } void main() { x = new B; skip }")
    with pytest.raises(UnqualifiedNameError):
        parser.load_program("class A { p() := skip } void main() { p() }")
    with pytest.raises(UnqualifiedNameError):
        parser.load_program("class A { } void main() { x = 3 }")


def test_unknown_class_inside_proc_body():
    src = "class A { p() := y = new Ghost; skip } void main() { skip }"
    with pytest.raises(UnknownClassError):
        parser.load_program(src)


def test_trailing_tokens_rejected():
    with pytest.raises(ParseError):
        parser.parse_program("class C { } void main() { skip } }")


# --- corpus-wide properties ---

@pytest.mark.parametrize("name", CORPUS)
def test_corpus_parses_and_round_trips(name):
    from javai.pretty import pretty_program
    prog = parser.load_program(program_source(name))
    again = parser.load_program(pretty_program(prog))
    assert again == prog


def test_corpus_covers_every_source_node_type():
    seen = set()
    for name in CORPUS:
        prog = parser.parse_program(program_source(name))
        for cls in prog.classes.values():
            seen.update(type(n).__name__ for n in walk(cls))
        seen.update(type(n).__name__ for n in walk(prog.main))
    wanted = {
        "IntLiteral", "BoolLiteral", "StringLiteral", "FieldRef",
        "QualifiedFieldRef", "Binary", "Unary",
        "Call", "Assign", "Seq", "New", "Print", "If", "Skip",
        "FieldInit", "ProcDecl", "ParamBinder", "Conj", "Choice", "EmptyDecl",
    }
    assert wanted <= seen


def test_every_parsed_node_has_a_span():
    prog = parser.parse_program(program_source("constructs.javai"))
    nodes = list(walk(prog.classes["Widget"])) + list(walk(prog.main))
    assert nodes and all(n.span is not None for n in nodes)


def test_malformed_corpus_files_fail_cleanly():
    for name in ("dangling.javai", "no_main.javai", "dup_class.javai",
                 "bad_char.javai"):
        with pytest.raises(ParseError):
            parser.parse_program((DATA / name).read_text())
