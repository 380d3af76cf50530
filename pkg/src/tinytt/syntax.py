"""Core terms with de Bruijn indices and their structural operations."""

from __future__ import annotations

from dataclasses import dataclass

# Words the surface language reserves; binder hints must avoid them when printed.
RESERVED_WORDS = frozenset({
    "def", "fun", "U", "refl", "J", "K", "Empty", "absurd", "Unit", "tt",
    "Nat", "zero", "succ", "natElim", "Id", "fst", "snd",
})


@dataclass(frozen=True, slots=True)
class Span:
    """Source range with 1-based lines and columns; end column is exclusive."""

    file: str
    line: int
    col: int
    end_line: int
    end_col: int


class Term:
    """Base class for core terms.

    Terms are immutable after construction. Binder names are display hints
    only; `alpha_equal` is the equality judgment and ignores both hints and
    spans. Index 0 refers to the innermost binder.
    """

    __slots__ = ()


@dataclass(eq=False, slots=True)
class Universe(Term):
    # level None is an internal checking wildcard (any level); it is never
    # produced by the parser and never inferred.
    level: int | None = 0
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Var(Term):
    index: int
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Global(Term):
    name: str
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Pi(Term):
    name: str
    domain: Term
    codomain: Term  # binds one variable
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Lambda(Term):
    name: str
    body: Term  # binds one variable
    span: Span | None = None


@dataclass(eq=False, slots=True)
class App(Term):
    fn: Term
    arg: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Sigma(Term):
    name: str
    first: Term
    second: Term  # binds one variable
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Pair(Term):
    first: Term
    second: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Fst(Term):
    target: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Snd(Term):
    target: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Id(Term):
    ty: Term
    lhs: Term
    rhs: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Refl(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class ElimJ(Term):
    ty: Term
    base: Term
    motive: Term
    case: Term
    target: Term
    proof: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class ElimK(Term):
    ty: Term
    base: Term
    motive: Term
    case: Term
    proof: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Empty(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Absurd(Term):
    motive: Term
    target: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Unit(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class TT(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Nat(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Zero(Term):
    span: Span | None = None


@dataclass(eq=False, slots=True)
class Succ(Term):
    arg: Term
    span: Span | None = None


@dataclass(eq=False, slots=True)
class NatElim(Term):
    motive: Term
    zcase: Term
    scase: Term
    target: Term
    span: Span | None = None


def shift(t: Term, cutoff: int, amount: int) -> Term:
    """Add `amount` to every index at or above `cutoff`; spans are kept."""
    cls = type(t)
    if cls is Var:
        return Var(t.index + amount, t.span) if t.index >= cutoff else t
    if cls is Pi:
        return Pi(t.name, shift(t.domain, cutoff, amount),
                  shift(t.codomain, cutoff + 1, amount), t.span)
    if cls is Lambda:
        return Lambda(t.name, shift(t.body, cutoff + 1, amount), t.span)
    if cls is App:
        return App(shift(t.fn, cutoff, amount), shift(t.arg, cutoff, amount), t.span)
    if cls is Sigma:
        return Sigma(t.name, shift(t.first, cutoff, amount),
                     shift(t.second, cutoff + 1, amount), t.span)
    if cls is Pair:
        return Pair(shift(t.first, cutoff, amount), shift(t.second, cutoff, amount), t.span)
    if cls is Fst:
        return Fst(shift(t.target, cutoff, amount), t.span)
    if cls is Snd:
        return Snd(shift(t.target, cutoff, amount), t.span)
    if cls is Id:
        return Id(shift(t.ty, cutoff, amount), shift(t.lhs, cutoff, amount),
                  shift(t.rhs, cutoff, amount), t.span)
    if cls is ElimJ:
        return ElimJ(shift(t.ty, cutoff, amount), shift(t.base, cutoff, amount),
                     shift(t.motive, cutoff, amount), shift(t.case, cutoff, amount),
                     shift(t.target, cutoff, amount), shift(t.proof, cutoff, amount), t.span)
    if cls is ElimK:
        return ElimK(shift(t.ty, cutoff, amount), shift(t.base, cutoff, amount),
                     shift(t.motive, cutoff, amount), shift(t.case, cutoff, amount),
                     shift(t.proof, cutoff, amount), t.span)
    if cls is Absurd:
        return Absurd(shift(t.motive, cutoff, amount), shift(t.target, cutoff, amount), t.span)
    if cls is Succ:
        return Succ(shift(t.arg, cutoff, amount), t.span)
    if cls is NatElim:
        return NatElim(shift(t.motive, cutoff, amount), shift(t.zcase, cutoff, amount),
                       shift(t.scase, cutoff, amount), shift(t.target, cutoff, amount), t.span)
    # Universe, Global, Refl, Empty, Unit, TT, Nat, Zero have no subterms.
    return t


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to binder names; spans never participate."""
    ca, cb = type(a), type(b)
    if ca is not cb:
        return False
    if ca is Var:
        return a.index == b.index
    if ca is Universe:
        return a.level == b.level
    if ca is Global:
        return a.name == b.name
    if ca is Pi or ca is Sigma:
        x, y = (a.domain, b.domain) if ca is Pi else (a.first, b.first)
        u, v = (a.codomain, b.codomain) if ca is Pi else (a.second, b.second)
        return alpha_equal(x, y) and alpha_equal(u, v)
    if ca is Lambda:
        return alpha_equal(a.body, b.body)
    if ca is App:
        return alpha_equal(a.fn, b.fn) and alpha_equal(a.arg, b.arg)
    if ca is Pair:
        return alpha_equal(a.first, b.first) and alpha_equal(a.second, b.second)
    if ca is Fst or ca is Snd:
        return alpha_equal(a.target, b.target)
    if ca is Id:
        return (alpha_equal(a.ty, b.ty) and alpha_equal(a.lhs, b.lhs)
                and alpha_equal(a.rhs, b.rhs))
    if ca is ElimJ:
        return (alpha_equal(a.ty, b.ty) and alpha_equal(a.base, b.base)
                and alpha_equal(a.motive, b.motive) and alpha_equal(a.case, b.case)
                and alpha_equal(a.target, b.target) and alpha_equal(a.proof, b.proof))
    if ca is ElimK:
        return (alpha_equal(a.ty, b.ty) and alpha_equal(a.base, b.base)
                and alpha_equal(a.motive, b.motive) and alpha_equal(a.case, b.case)
                and alpha_equal(a.proof, b.proof))
    if ca is Absurd:
        return alpha_equal(a.motive, b.motive) and alpha_equal(a.target, b.target)
    if ca is Succ:
        return alpha_equal(a.arg, b.arg)
    if ca is NatElim:
        return (alpha_equal(a.motive, b.motive) and alpha_equal(a.zcase, b.zcase)
                and alpha_equal(a.scase, b.scase) and alpha_equal(a.target, b.target))
    # Refl, Empty, Unit, TT, Nat, Zero carry nothing.
    return True
