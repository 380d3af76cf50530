"""Concrete syntax: lexing, parsing, and scope resolution.

The surface language is a line-oriented sequence of declarations and
pragmas; expressions use named variables, which `resolve` turns into the
de Bruijn core syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import SYNTAX, UNBOUND, fail
from .syntax import (
    Absurd, App, ElimJ, ElimK, Empty, Fst, Global, Id, Lambda, Nat, NatElim,
    Pair, Pi, Refl, Sigma, Snd, Span, Succ, Term, TT, Unit, Universe, Var,
    Zero, RESERVED_WORDS, shift,
)

_PUNCTS = (":=", "->", "=>", "(", ")", ":", ";", "*", ",")
_PRAGMAS = ("#normalize", "#check")


@dataclass(frozen=True, slots=True)
class SourceFile:
    name: str
    text: str


@dataclass(frozen=True, slots=True)
class Token:
    """kind is "ident", "eof", or the literal spelling of a keyword/symbol."""

    kind: str
    text: str
    span: Span


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch in "_'")


def lex(src: SourceFile) -> list[Token]:
    tokens: list[Token] = []
    text = src.text
    pos, line, col = 0, 1, 1
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos, line, col = pos + 1, line + 1, 1
            continue
        if ch in " \t\r":
            pos, col = pos + 1, col + 1
            continue
        if text.startswith("--", pos):
            while pos < n and text[pos] != "\n":
                pos, col = pos + 1, col + 1
            continue
        start_col = col
        if _is_ident_start(ch):
            end = pos + 1
            while end < n and _is_ident_char(text[end]):
                end += 1
            word = text[pos:end]
            col += end - pos
            span = Span(src.name, line, start_col, line, col)
            kind = word if word in RESERVED_WORDS else "ident"
            tokens.append(Token(kind, word, span))
            pos = end
            continue
        if ch == "#":
            end = pos + 1
            while end < n and _is_ident_char(text[end]):
                end += 1
            word = text[pos:end]
            col += end - pos
            span = Span(src.name, line, start_col, line, col)
            if word not in _PRAGMAS:
                fail(SYNTAX, f"unknown pragma {word!r}", span)
            tokens.append(Token(word, word, span))
            pos = end
            continue
        for punct in _PUNCTS:
            if text.startswith(punct, pos):
                col += len(punct)
                span = Span(src.name, line, start_col, line, col)
                tokens.append(Token(punct, punct, span))
                pos += len(punct)
                break
        else:
            span = Span(src.name, line, start_col, line, col + 1)
            fail(SYNTAX, f"unexpected character {ch!r}", span)
    tokens.append(Token("eof", "", Span(src.name, line, col, line, col)))
    return tokens


# Surface expressions keep names and spans; resolution maps them onto core
# terms with de Bruijn indices.

@dataclass(frozen=True, slots=True)
class SExpr:
    span: Span


@dataclass(frozen=True, slots=True)
class SName(SExpr):
    text: str


@dataclass(frozen=True, slots=True)
class SUniverse(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SRefl(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class STT(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SZero(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SNat(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SUnit(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SEmpty(SExpr):
    pass


@dataclass(frozen=True, slots=True)
class SFun(SExpr):
    binders: tuple[str, ...]
    body: SExpr


@dataclass(frozen=True, slots=True)
class SPi(SExpr):
    binder: str | None
    domain: SExpr
    codomain: SExpr


@dataclass(frozen=True, slots=True)
class SSigma(SExpr):
    binder: str | None
    first: SExpr
    second: SExpr


@dataclass(frozen=True, slots=True)
class SApp(SExpr):
    fn: SExpr
    arg: SExpr


@dataclass(frozen=True, slots=True)
class SPair(SExpr):
    first: SExpr
    second: SExpr


@dataclass(frozen=True, slots=True)
class SFst(SExpr):
    target: SExpr


@dataclass(frozen=True, slots=True)
class SSnd(SExpr):
    target: SExpr


@dataclass(frozen=True, slots=True)
class SSucc(SExpr):
    arg: SExpr


@dataclass(frozen=True, slots=True)
class SId(SExpr):
    ty: SExpr
    lhs: SExpr
    rhs: SExpr


@dataclass(frozen=True, slots=True)
class SJ(SExpr):
    ty: SExpr
    base: SExpr
    motive: SExpr
    case: SExpr
    target: SExpr
    proof: SExpr


@dataclass(frozen=True, slots=True)
class SK(SExpr):
    ty: SExpr
    base: SExpr
    motive: SExpr
    case: SExpr
    proof: SExpr


@dataclass(frozen=True, slots=True)
class SAbsurd(SExpr):
    motive: SExpr
    target: SExpr


@dataclass(frozen=True, slots=True)
class SNatElim(SExpr):
    motive: SExpr
    zcase: SExpr
    scase: SExpr
    target: SExpr


@dataclass(frozen=True, slots=True)
class Definition:
    name: str
    name_span: Span
    ty: SExpr
    body: SExpr
    span: Span


@dataclass(frozen=True, slots=True)
class NormalizePragma:
    expr: SExpr
    span: Span


@dataclass(frozen=True, slots=True)
class CheckPragma:
    expr: SExpr
    ty: SExpr
    span: Span


Item = Definition | NormalizePragma | CheckPragma


def _join(a: Span, b: Span) -> Span:
    return Span(a.file, a.line, a.col, b.end_line, b.end_col)


# Keyword atoms that take a fixed count of atom arguments.
_FORM_ARITY = {"fst": 1, "snd": 1, "succ": 1, "Id": 3, "absurd": 2,
               "natElim": 4, "K": 5, "J": 6}

# Tokens that can begin an atom; applications extend while the next token
# is one of these.
_ATOM_STARTS = frozenset(
    {"(", "ident", "U", "refl", "tt", "zero", "Nat", "Unit", "Empty"}
    | set(_FORM_ARITY)
)


@dataclass(eq=False, slots=True)
class Parser:
    tokens: list[Token]
    pos: int = 0

    @property
    def head(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int) -> Token:
        at = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[at]

    def advance(self) -> Token:
        tok = self.head
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.head
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            fail(SYNTAX, f"expected {kind!r}, found {found}", tok.span)
        return self.advance()

    def parse_items(self) -> list[Item]:
        items: list[Item] = []
        while self.head.kind != "eof":
            items.append(self.parse_item())
        return items

    def parse_item(self) -> Item:
        tok = self.head
        if tok.kind == "def":
            self.advance()
            name_tok = self.expect("ident")
            self.expect(":")
            ty = self.parse_expr()
            self.expect(":=")
            body = self.parse_expr()
            semi = self.expect(";")
            return Definition(name_tok.text, name_tok.span, ty, body,
                              _join(tok.span, semi.span))
        if tok.kind == "#normalize":
            self.advance()
            expr = self.parse_expr()
            semi = self.expect(";")
            return NormalizePragma(expr, _join(tok.span, semi.span))
        if tok.kind == "#check":
            self.advance()
            expr = self.parse_expr()
            self.expect(":")
            ty = self.parse_expr()
            semi = self.expect(";")
            return CheckPragma(expr, ty, _join(tok.span, semi.span))
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        fail(SYNTAX, f"expected a declaration or pragma, found {found}",
             tok.span)

    def parse_expr(self) -> SExpr:
        if self.head.kind == "fun":
            fun_tok = self.advance()
            binders = [self.expect("ident").text]
            while self.head.kind == "ident":
                binders.append(self.advance().text)
            self.expect("=>")
            body = self.parse_expr()
            return SFun(_join(fun_tok.span, body.span), tuple(binders), body)
        return self.parse_quant()

    def parse_quant(self) -> SExpr:
        # "(x : A)" introduces a dependent binder only when followed by an
        # arrow or star; "(e)" and "(a , b)" go through the atom path.
        if (self.head.kind == "("
                and self.peek(1).kind == "ident"
                and self.peek(2).kind == ":"):
            open_tok = self.advance()
            name = self.advance().text
            self.advance()
            domain = self.parse_expr()
            self.expect(")")
            arrow = self.head
            if arrow.kind not in ("->", "*"):
                fail(SYNTAX,
                     f"expected '->' or '*' after a binder, found "
                     f"{repr(arrow.text) if arrow.kind != 'eof' else 'end of input'}",
                     arrow.span)
            self.advance()
            codomain = self.parse_expr()
            span = _join(open_tok.span, codomain.span)
            if arrow.kind == "->":
                return SPi(span, name, domain, codomain)
            return SSigma(span, name, domain, codomain)
        left = self.parse_app()
        if self.head.kind in ("->", "*"):
            arrow = self.advance()
            right = self.parse_expr()
            span = _join(left.span, right.span)
            if arrow.kind == "->":
                return SPi(span, None, left, right)
            return SSigma(span, None, left, right)
        return left

    def parse_app(self) -> SExpr:
        expr = self.parse_atom()
        while self.head.kind in _ATOM_STARTS:
            arg = self.parse_atom()
            expr = SApp(_join(expr.span, arg.span), expr, arg)
        return expr

    def parse_atom(self) -> SExpr:
        tok = self.head
        kind = tok.kind
        if kind == "(":
            self.advance()
            first = self.parse_expr()
            if self.head.kind == ",":
                self.advance()
                second = self.parse_expr()
                close = self.expect(")")
                return SPair(_join(tok.span, close.span), first, second)
            self.expect(")")
            return first
        if kind == "ident":
            self.advance()
            return SName(tok.span, tok.text)
        if kind == "U":
            self.advance()
            return SUniverse(tok.span)
        if kind == "refl":
            self.advance()
            return SRefl(tok.span)
        if kind == "tt":
            self.advance()
            return STT(tok.span)
        if kind == "zero":
            self.advance()
            return SZero(tok.span)
        if kind == "Nat":
            self.advance()
            return SNat(tok.span)
        if kind == "Unit":
            self.advance()
            return SUnit(tok.span)
        if kind == "Empty":
            self.advance()
            return SEmpty(tok.span)
        if kind in _FORM_ARITY:
            self.advance()
            args = [self.parse_atom() for _ in range(_FORM_ARITY[kind])]
            span = _join(tok.span, args[-1].span)
            if kind == "fst":
                return SFst(span, args[0])
            if kind == "snd":
                return SSnd(span, args[0])
            if kind == "succ":
                return SSucc(span, args[0])
            if kind == "Id":
                return SId(span, *args)
            if kind == "absurd":
                return SAbsurd(span, *args)
            if kind == "natElim":
                return SNatElim(span, *args)
            if kind == "K":
                return SK(span, *args)
            return SJ(span, *args)
        found = "end of input" if kind == "eof" else repr(tok.text)
        fail(SYNTAX, f"expected an expression, found {found}", tok.span)


def parse(src: SourceFile) -> list[Item]:
    return Parser(lex(src)).parse_items()


def resolve_expr(e: SExpr, scope: tuple[str, ...],
                 globals_: frozenset[str]) -> Term:
    """Turn a surface expression into a core term.

    `scope` lists bound names outermost first; the innermost match wins and
    its distance from the end is the de Bruijn index.
    """
    cls = type(e)
    if cls is SName:
        for distance, name in enumerate(reversed(scope)):
            if name == e.text:
                return Var(distance, span=e.span)
        if e.text in globals_:
            return Global(e.text, span=e.span)
        fail(UNBOUND, f"unbound name '{e.text}'", e.span)
    if cls is SUniverse:
        return Universe(0, span=e.span)
    if cls is SRefl:
        return Refl(span=e.span)
    if cls is STT:
        return TT(span=e.span)
    if cls is SZero:
        return Zero(span=e.span)
    if cls is SNat:
        return Nat(span=e.span)
    if cls is SUnit:
        return Unit(span=e.span)
    if cls is SEmpty:
        return Empty(span=e.span)
    if cls is SFun:
        body = resolve_expr(e.body, scope + e.binders, globals_)
        for name in reversed(e.binders):
            body = Lambda(name, body, span=e.span)
        return body
    if cls is SPi or cls is SSigma:
        first = e.domain if cls is SPi else e.first
        second = e.codomain if cls is SPi else e.second
        first_t = resolve_expr(first, scope, globals_)
        if e.binder is None:
            # Non-dependent arrow: the codomain never mentions the binder,
            # so resolve in the same scope and shift under it.
            second_t = shift(resolve_expr(second, scope, globals_), 0, 1)
            name = "_"
        else:
            second_t = resolve_expr(second, scope + (e.binder,), globals_)
            name = e.binder
        if cls is SPi:
            return Pi(name, first_t, second_t, span=e.span)
        return Sigma(name, first_t, second_t, span=e.span)
    if cls is SApp:
        return App(resolve_expr(e.fn, scope, globals_),
                   resolve_expr(e.arg, scope, globals_), span=e.span)
    if cls is SPair:
        return Pair(resolve_expr(e.first, scope, globals_),
                    resolve_expr(e.second, scope, globals_), span=e.span)
    if cls is SFst:
        return Fst(resolve_expr(e.target, scope, globals_), span=e.span)
    if cls is SSnd:
        return Snd(resolve_expr(e.target, scope, globals_), span=e.span)
    if cls is SSucc:
        return Succ(resolve_expr(e.arg, scope, globals_), span=e.span)
    if cls is SId:
        return Id(resolve_expr(e.ty, scope, globals_),
                  resolve_expr(e.lhs, scope, globals_),
                  resolve_expr(e.rhs, scope, globals_), span=e.span)
    if cls is SJ:
        return ElimJ(resolve_expr(e.ty, scope, globals_),
                     resolve_expr(e.base, scope, globals_),
                     resolve_expr(e.motive, scope, globals_),
                     resolve_expr(e.case, scope, globals_),
                     resolve_expr(e.target, scope, globals_),
                     resolve_expr(e.proof, scope, globals_), span=e.span)
    if cls is SK:
        return ElimK(resolve_expr(e.ty, scope, globals_),
                     resolve_expr(e.base, scope, globals_),
                     resolve_expr(e.motive, scope, globals_),
                     resolve_expr(e.case, scope, globals_),
                     resolve_expr(e.proof, scope, globals_), span=e.span)
    if cls is SAbsurd:
        return Absurd(resolve_expr(e.motive, scope, globals_),
                      resolve_expr(e.target, scope, globals_), span=e.span)
    if cls is SNatElim:
        return NatElim(resolve_expr(e.motive, scope, globals_),
                       resolve_expr(e.zcase, scope, globals_),
                       resolve_expr(e.scase, scope, globals_),
                       resolve_expr(e.target, scope, globals_), span=e.span)
    raise AssertionError(f"unhandled surface node {cls.__name__}")
