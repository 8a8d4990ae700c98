"""Tokenizer for javai source text."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = {
    "class", "void", "new", "print", "if", "then", "else", "skip",
    "true", "false",
}

# Multi-character punctuation, longest first.  "(+)" is the choice operator
# and must win over a bare "(".
_PUNCT3 = ("(+)",)
_PUNCT2 = (":=", "==", "!=", "<=", ">=", "&&", "||")
_PUNCT1 = "+-*/<>!=.;&(){},"

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | KEYWORD | INT | STRING | PUNCT | EOF
    text: str
    line: int
    col: int

    def __str__(self) -> str:
        return "end of input" if self.kind == "EOF" else f"'{self.text}'"


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens; raises ParseError on bad characters."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance()
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            text = source[i:j]
            advance(j - i)
            tokens.append(Token("INT", text, start_line, start_col))
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            advance(j - i)
            kind = "KEYWORD" if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, start_line, start_col))
            continue
        if ch == '"':
            advance()
            chars: list[str] = []
            while True:
                if i >= n or source[i] == "\n":
                    raise ParseError("unterminated string literal",
                                     start_line, start_col)
                c = source[i]
                if c == '"':
                    advance()
                    break
                if c == "\\":
                    advance()
                    if i >= n or source[i] not in _ESCAPES:
                        raise ParseError("bad escape sequence", line, col)
                    chars.append(_ESCAPES[source[i]])
                    advance()
                else:
                    chars.append(c)
                    advance()
            tokens.append(Token("STRING", "".join(chars), start_line, start_col))
            continue
        for p in _PUNCT3:
            if source.startswith(p, i):
                advance(len(p))
                tokens.append(Token("PUNCT", p, start_line, start_col))
                break
        else:
            for p in _PUNCT2:
                if source.startswith(p, i):
                    advance(2)
                    tokens.append(Token("PUNCT", p, start_line, start_col))
                    break
            else:
                if ch in _PUNCT1:
                    advance()
                    tokens.append(Token("PUNCT", ch, start_line, start_col))
                else:
                    raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens
