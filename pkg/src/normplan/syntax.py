"""Tokenizer and term/literal readers shared by the scenario loader and the
policy parser.

Symbols are lowercase identifiers, variables are capitalized, integers are
bare digit runs.  Classical negation is a leading '-'.  Compound arguments
(action terms inside permitted/obl) are parsed by the policy module on top
of these primitives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .logic import Atom, Literal
from .terms import SimpleTerm

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>-?\d+)
  | (?P<name>[a-z_][A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<punct>[(),:-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | var | punct | end
    text: str
    column: int  # 1-based offset in the source line


def tokenize(text: str, line: int | None = None) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with one-token lookahead."""

    def __init__(self, tokens: list[Token], line: int | None = None):
        self.tokens = tokens
        self.line = line
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.current
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise self.error(f"expected {want!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.current
        return tok.kind == kind and (text is None or tok.text == text)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.current.column)


def parse_simple_args(ts: TokenStream, allow_vars: bool = False) -> tuple[SimpleTerm, ...]:
    """Parses '(t1, ..., tn)' of symbols/integers (and variables if allowed);
    returns () when no parenthesis follows."""
    if not ts.at("punct", "("):
        return ()
    ts.advance()
    args: list[SimpleTerm] = []
    while True:
        tok = ts.current
        if tok.kind == "int":
            args.append(int(tok.text))
            ts.advance()
        elif tok.kind == "name":
            args.append(tok.text)
            ts.advance()
        elif tok.kind == "var" and allow_vars:
            args.append(tok.text)
            ts.advance()
        else:
            raise ts.error(f"expected a term, found {tok.text or 'end of input'!r}")
        if ts.at("punct", ","):
            ts.advance()
            continue
        ts.expect("punct", ")")
        return tuple(args)


def parse_flat_literal(text: str, line: int | None = None,
                       allow_vars: bool = False) -> Literal:
    """Reads a literal with simple arguments, e.g. '-has_ore(gold)'."""
    ts = TokenStream(tokenize(text, line), line)
    lit = read_flat_literal(ts, allow_vars=allow_vars)
    if not ts.at("end"):
        raise ts.error(f"trailing input after literal: {ts.current.text!r}")
    return lit


def read_flat_literal(ts: TokenStream, allow_vars: bool = False) -> Literal:
    positive = True
    if ts.at("punct", "-"):
        ts.advance()
        positive = False
    name = ts.expect("name").text
    args = parse_simple_args(ts, allow_vars=allow_vars)
    return Literal(Atom(name, args), positive)


def is_variable(term: SimpleTerm) -> bool:
    return isinstance(term, str) and len(term) > 0 and term[0].isupper()
