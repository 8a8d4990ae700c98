"""Recursive-descent parser and pre-execution checks.

parse_program handles syntax plus the two program-shape rules (unique class
names, exactly one main body).  validate_program adds the checks that need
the whole tree: every `new` names a declared class, and main never uses a
bare field or procedure name, since there is no enclosing object to supply
one.  load_program chains the two.
"""

from __future__ import annotations

from . import ast
from .errors import (
    DuplicateClassError,
    DuplicateParamError,
    MissingMainError,
    ParseError,
    UnknownClassError,
    UnqualifiedNameError,
)
from .lexer import Token, tokenize

_CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")


def parse_program(source: str) -> ast.SourceProgram:
    """Parse source text into a SourceProgram; raises ParseError on bad input."""
    return _Parser(tokenize(source)).program()


def validate_program(program: ast.SourceProgram) -> ast.SourceProgram:
    _check_known_classes(program)
    _check_main_qualified(program.main)
    return program


def load_program(source: str) -> ast.SourceProgram:
    return validate_program(parse_program(source))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # --- token plumbing ---

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            wanted = what or (f"'{text}'" if text else kind.lower())
            found = self.peek()
            raise ParseError(f"expected {wanted}, found {found}",
                             found.line, found.col,
                             expected=frozenset({wanted}))
        return tok

    def fail(self, message: str, *expected: str) -> ParseError:
        tok = self.peek()
        return ParseError(f"{message}, found {tok}", tok.line, tok.col,
                          expected=frozenset(expected))

    @staticmethod
    def span(tok: Token) -> ast.Span:
        width = max(len(tok.text), 1)
        return ast.Span(tok.line, tok.col, tok.line, tok.col + width)

    # --- program structure ---

    def program(self) -> ast.SourceProgram:
        classes: dict[str, ast.Decl] = {}
        while self.at("KEYWORD", "class"):
            name_tok, decl = self.classdef()
            if name_tok.text in classes:
                raise DuplicateClassError(
                    f"class '{name_tok.text}' is declared twice",
                    name_tok.line, name_tok.col)
            classes[name_tok.text] = decl
        if self.at("EOF"):
            eof = self.peek()
            raise MissingMainError("program has no main body", eof.line, eof.col)
        main = self.main()
        if not self.at("EOF"):
            raise self.fail("expected end of input")
        return ast.SourceProgram(classes, main)

    def classdef(self) -> tuple[Token, ast.Decl]:
        self.expect("KEYWORD", "class")
        name = self.expect("IDENT", what="class name")
        self.expect("PUNCT", "{")
        if self.accept("PUNCT", "}"):
            return name, ast.EmptyDecl(span=self.span(name))
        decl = self.dform()
        self.expect("PUNCT", "}")
        return name, decl

    def main(self) -> ast.Stmt:
        if not self.at("KEYWORD", "void"):
            raise self.fail("expected a class or the main body", "class", "void")
        self.advance()
        tok = self.expect("IDENT", what="'main'")
        if tok.text != "main":
            raise ParseError(f"expected 'main', found '{tok.text}'", tok.line, tok.col,
                             expected=frozenset({"'main'"}))
        self.expect("PUNCT", "(")
        self.expect("PUNCT", ")")
        self.expect("PUNCT", "{")
        body = self.goal()
        self.expect("PUNCT", "}")
        return body

    # --- declarations ---

    def dform(self) -> ast.Decl:
        left = self.dconj()
        if self.at("PUNCT", "(+)"):
            tok = self.advance()
            right = self.dform()
            return ast.Choice(left, right, span=self.span(tok))
        return left

    def dconj(self) -> ast.Decl:
        left = self.datom()
        if self.at("PUNCT", "&"):
            tok = self.advance()
            right = self.dconj()
            return ast.Conj(left, right, span=self.span(tok))
        return left

    def datom(self) -> ast.Decl:
        if self.accept("PUNCT", "("):
            inner = self.dform()
            self.expect("PUNCT", ")")
            return inner
        if not self.at("IDENT"):
            raise self.fail("expected a field, a procedure, or '('",
                            "identifier", "'('")
        name = self.advance()
        if self.accept("PUNCT", "="):
            init = self.expr()
            return ast.FieldInit(name.text, init, span=self.span(name))
        if self.accept("PUNCT", "("):
            params = self.params()
            self.expect("PUNCT", ")")
            self.expect("PUNCT", ":=")
            body = self.goal()
            return desugar_procedure(name.text, params, body, self.span(name))
        raise self.fail("expected '=' or '(' after declaration name", "'='", "'('")

    def params(self) -> list[Token]:
        if not self.at("IDENT"):
            return []
        out = [self.advance()]
        while self.accept("PUNCT", ","):
            out.append(self.expect("IDENT", what="parameter name"))
        return out

    # --- statements ---

    def goal(self) -> ast.Stmt:
        first = self.gatom()
        if self.at("PUNCT", ";"):
            tok = self.advance()
            rest = self.goal()
            return ast.Seq(first, rest, span=self.span(tok))
        return first

    def gatom(self) -> ast.Stmt:
        if self.at("KEYWORD", "print"):
            tok = self.advance()
            self.expect("PUNCT", "(")
            arg = self.expr()
            self.expect("PUNCT", ")")
            return ast.Print(arg, span=self.span(tok))
        if self.at("KEYWORD", "if"):
            tok = self.advance()
            cond = self.expr()
            self.expect("KEYWORD", "then")
            then = self.gatom()
            self.expect("KEYWORD", "else")
            orelse = self.gatom()
            return ast.If(cond, then, orelse, span=self.span(tok))
        if self.at("KEYWORD", "skip"):
            tok = self.advance()
            return ast.Skip(span=self.span(tok))
        if self.accept("PUNCT", "{"):
            inner = self.goal()
            self.expect("PUNCT", "}")
            return inner
        if not self.at("IDENT"):
            raise self.fail("expected a statement",
                            "identifier", "'print'", "'if'", "'skip'", "'{'")
        head = self.advance()
        if self.accept("PUNCT", "."):
            member = self.expect("IDENT", what="field or procedure name")
            if self.accept("PUNCT", "("):
                args = self.args()
                self.expect("PUNCT", ")")
                return ast.Call(head.text, member.text, tuple(args),
                                span=self.span(head))
            if self.accept("PUNCT", "="):
                value = self.expr()
                return ast.Assign(head.text, member.text, value,
                                  span=self.span(head))
            raise self.fail("expected '(' or '=' after qualified name",
                            "'('", "'='")
        if self.accept("PUNCT", "("):
            args = self.args()
            self.expect("PUNCT", ")")
            return ast.Call(None, head.text, tuple(args), span=self.span(head))
        if self.accept("PUNCT", "="):
            if self.at("KEYWORD", "new"):
                self.advance()
                cls = self.expect("IDENT", what="class name")
                return ast.New(head.text, cls.text, span=self.span(head))
            value = self.expr()
            return ast.Assign(None, head.text, value, span=self.span(head))
        raise self.fail("expected '.', '(' or '=' after name",
                        "'.'", "'('", "'='")

    def args(self) -> list[ast.Expr]:
        if self.at("PUNCT", ")"):
            return []
        out = [self.expr()]
        while self.accept("PUNCT", ","):
            out.append(self.expr())
        return out

    # --- expressions, loosest level first ---

    def expr(self) -> ast.Expr:
        return self.or_expr()

    def or_expr(self) -> ast.Expr:
        left = self.and_expr()
        while self.at("PUNCT", "||"):
            tok = self.advance()
            left = ast.Binary("||", left, self.and_expr(), span=self.span(tok))
        return left

    def and_expr(self) -> ast.Expr:
        left = self.cmp_expr()
        while self.at("PUNCT", "&&"):
            tok = self.advance()
            left = ast.Binary("&&", left, self.cmp_expr(), span=self.span(tok))
        return left

    def cmp_expr(self) -> ast.Expr:
        left = self.add_expr()
        while self.peek().kind == "PUNCT" and self.peek().text in _CMP_OPS:
            tok = self.advance()
            left = ast.Binary(tok.text, left, self.add_expr(), span=self.span(tok))
        return left

    def add_expr(self) -> ast.Expr:
        left = self.mul_expr()
        while self.peek().kind == "PUNCT" and self.peek().text in ("+", "-"):
            tok = self.advance()
            left = ast.Binary(tok.text, left, self.mul_expr(), span=self.span(tok))
        return left

    def mul_expr(self) -> ast.Expr:
        left = self.unary_expr()
        while self.peek().kind == "PUNCT" and self.peek().text in ("*", "/"):
            tok = self.advance()
            left = ast.Binary(tok.text, left, self.unary_expr(), span=self.span(tok))
        return left

    def unary_expr(self) -> ast.Expr:
        if self.peek().kind == "PUNCT" and self.peek().text in ("-", "!"):
            tok = self.advance()
            return ast.Unary(tok.text, self.unary_expr(), span=self.span(tok))
        return self.primary()

    def primary(self) -> ast.Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return ast.IntLiteral(int(tok.text), span=self.span(tok))
        if tok.kind == "STRING":
            self.advance()
            return ast.StringLiteral(tok.text, span=self.span(tok))
        if tok.kind == "KEYWORD" and tok.text in ("true", "false"):
            self.advance()
            return ast.BoolLiteral(tok.text == "true", span=self.span(tok))
        if self.accept("PUNCT", "("):
            inner = self.expr()
            self.expect("PUNCT", ")")
            return inner
        if tok.kind == "IDENT":
            self.advance()
            if self.accept("PUNCT", "."):
                member = self.expect("IDENT", what="field name")
                return ast.QualifiedFieldRef(tok.text, member.text,
                                             span=self.span(tok))
            return ast.FieldRef(tok.text, span=self.span(tok))
        raise self.fail("expected an expression",
                        "integer", "string", "'true'", "'false'",
                        "identifier", "'('")


def desugar_procedure(name: str, params: list[Token], body: ast.Stmt,
                      span: ast.Span) -> ast.Decl:
    """Wrap a procedure in one binder per parameter, leftmost outermost."""
    seen: dict[str, Token] = {}
    for tok in params:
        if tok.text in seen:
            raise DuplicateParamError(
                f"parameter '{tok.text}' repeats in procedure '{name}'",
                tok.line, tok.col)
        seen[tok.text] = tok
    decl: ast.Decl = ast.ProcDecl(name, tuple(t.text for t in params), body,
                                  span=span)
    for tok in reversed(params):
        decl = ast.ParamBinder(tok.text, decl, span=span)
    return decl


# --- pre-execution checks ---

def _check_known_classes(program: ast.SourceProgram) -> None:
    known = set(program.classes)

    def goal(g: ast.Stmt) -> None:
        if isinstance(g, ast.New) and g.class_name not in known:
            _static_error(UnknownClassError,
                          f"unknown class '{g.class_name}'", g.span)
        elif isinstance(g, ast.Seq):
            goal(g.first)
            goal(g.second)
        elif isinstance(g, ast.If):
            goal(g.then)
            goal(g.orelse)

    def decl(d: ast.Decl) -> None:
        if isinstance(d, (ast.Conj, ast.Choice)):
            decl(d.left)
            decl(d.right)
        elif isinstance(d, ast.ParamBinder):
            decl(d.body)
        elif isinstance(d, ast.ProcDecl):
            goal(d.body)

    for d in program.classes.values():
        decl(d)
    goal(program.main)


def _check_main_qualified(main: ast.Stmt) -> None:
    # Bare names in expressions may still be rewritten by an earlier `x = new C`
    # in the same sequence, so only calls and assignments are checked here;
    # an unbound bare read fails at run time instead.
    def goal(g: ast.Stmt) -> None:
        if isinstance(g, ast.Call) and g.target is None:
            _static_error(UnqualifiedNameError,
                          f"call to '{g.proc}' in main must name an object",
                          g.span)
        elif isinstance(g, ast.Assign) and g.target is None:
            _static_error(UnqualifiedNameError,
                          f"assignment to '{g.field}' in main must name an object",
                          g.span)
        elif isinstance(g, ast.Seq):
            goal(g.first)
            goal(g.second)
        elif isinstance(g, ast.If):
            goal(g.then)
            goal(g.orelse)

    goal(main)


def _static_error(kind: type[ParseError], message: str,
                  span: ast.Span | None) -> None:
    line = span.line if span else 0
    col = span.col if span else 0
    raise kind(message, line, col)
