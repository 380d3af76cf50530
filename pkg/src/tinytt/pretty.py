"""Surface-syntax printer for core terms."""

from __future__ import annotations

from .syntax import (
    RESERVED_WORDS, Absurd, App, ElimJ, ElimK, Empty, Fst, Global, Id, Lambda,
    Nat, NatElim, Pair, Pi, Refl, Sigma, Snd, Succ, Term, TT, Unit, Universe,
    Var, Zero,
)

# Precedence tiers mirroring the grammar: arrow/fun forms, application
# chains, and self-delimited atoms.
_EXPR = 0
_APP = 1
_ATOM = 2


def pretty(t: Term, names: tuple[str, ...] = (), avoid: frozenset[str] = frozenset()) -> str:
    """Render `t` so it re-parses to an alpha-equal term.

    `names` gives free variables their names, outermost first. `avoid` lists
    extra names (typically globals) that freshened binders must not shadow.
    Universe levels above 0 have no surface spelling and render as U1, U2,
    and so on; such terms only appear in diagnostics.
    """
    return _render(t, list(names), frozenset(avoid) | RESERVED_WORDS, _EXPR)


def _render(t: Term, names: list[str], avoid: frozenset[str], need: int) -> str:
    s, level = _form(t, names, avoid)
    return f"({s})" if level < need else s


def _form(t: Term, names: list[str], avoid: frozenset[str]) -> tuple[str, int]:
    cls = type(t)
    if cls is Var:
        i = t.index
        return (names[-1 - i] if 0 <= i < len(names) else f"?v{i}"), _ATOM
    if cls is Global:
        return t.name, _ATOM
    if cls is Universe:
        if t.level is None:
            return "U?", _ATOM
        return ("U" if t.level == 0 else f"U{t.level}"), _ATOM
    if cls is Pi or cls is Sigma:
        op = "->" if cls is Pi else "*"
        dom = t.domain if cls is Pi else t.first
        cod = t.codomain if cls is Pi else t.second
        if _uses(cod, 0):
            n = _fresh(t.name, names, avoid)
            left = f"({n} : {_render(dom, names, avoid, _EXPR)})"
            names.append(n)
        else:
            left = _render(dom, names, avoid, _APP)
            names.append(t.name or "_")
        right = _render(cod, names, avoid, _EXPR)
        names.pop()
        return f"{left} {op} {right}", _EXPR
    if cls is Lambda:
        binders: list[str] = []
        body: Term = t
        while type(body) is Lambda:
            binders.append(_fresh(body.name, names, avoid))
            names.append(binders[-1])
            body = body.body
        s = _render(body, names, avoid, _EXPR)
        del names[len(names) - len(binders):]
        return f"fun {' '.join(binders)} => {s}", _EXPR
    if cls is App:
        return f"{_render(t.fn, names, avoid, _APP)} {_render(t.arg, names, avoid, _ATOM)}", _APP
    if cls is Pair:
        return (f"({_render(t.first, names, avoid, _EXPR)} , "
                f"{_render(t.second, names, avoid, _EXPR)})"), _ATOM
    if cls is Fst:
        return f"fst {_render(t.target, names, avoid, _ATOM)}", _APP
    if cls is Snd:
        return f"snd {_render(t.target, names, avoid, _ATOM)}", _APP
    if cls is Succ:
        return f"succ {_render(t.arg, names, avoid, _ATOM)}", _APP
    if cls is Id:
        parts = [_render(x, names, avoid, _ATOM) for x in (t.ty, t.lhs, t.rhs)]
        return "Id " + " ".join(parts), _APP
    if cls is ElimJ:
        parts = [_render(x, names, avoid, _ATOM)
                 for x in (t.ty, t.base, t.motive, t.case, t.target, t.proof)]
        return "J " + " ".join(parts), _APP
    if cls is ElimK:
        parts = [_render(x, names, avoid, _ATOM)
                 for x in (t.ty, t.base, t.motive, t.case, t.proof)]
        return "K " + " ".join(parts), _APP
    if cls is Absurd:
        return (f"absurd {_render(t.motive, names, avoid, _ATOM)} "
                f"{_render(t.target, names, avoid, _ATOM)}"), _APP
    if cls is NatElim:
        parts = [_render(x, names, avoid, _ATOM)
                 for x in (t.motive, t.zcase, t.scase, t.target)]
        return "natElim " + " ".join(parts), _APP
    if cls is Refl:
        return "refl", _ATOM
    if cls is TT:
        return "tt", _ATOM
    if cls is Zero:
        return "zero", _ATOM
    if cls is Nat:
        return "Nat", _ATOM
    if cls is Unit:
        return "Unit", _ATOM
    if cls is Empty:
        return "Empty", _ATOM
    raise AssertionError(f"unprintable term {t!r}")


def _fresh(hint: str, names: list[str], avoid: frozenset[str]) -> str:
    """Pick a printable name for a binder that shadows nothing in scope."""
    cand = hint if hint else "x"
    while cand in avoid or cand in names:
        cand += "'"
    return cand


def _uses(t: Term, k: int) -> bool:
    """Does index `k` occur free in `t`?"""
    cls = type(t)
    if cls is Var:
        return t.index == k
    if cls is Pi:
        return _uses(t.domain, k) or _uses(t.codomain, k + 1)
    if cls is Sigma:
        return _uses(t.first, k) or _uses(t.second, k + 1)
    if cls is Lambda:
        return _uses(t.body, k + 1)
    if cls is App:
        return _uses(t.fn, k) or _uses(t.arg, k)
    if cls is Pair:
        return _uses(t.first, k) or _uses(t.second, k)
    if cls is Fst or cls is Snd:
        return _uses(t.target, k)
    if cls is Succ:
        return _uses(t.arg, k)
    if cls is Id:
        return _uses(t.ty, k) or _uses(t.lhs, k) or _uses(t.rhs, k)
    if cls is ElimJ:
        return any(_uses(x, k) for x in (t.ty, t.base, t.motive, t.case, t.target, t.proof))
    if cls is ElimK:
        return any(_uses(x, k) for x in (t.ty, t.base, t.motive, t.case, t.proof))
    if cls is Absurd:
        return _uses(t.motive, k) or _uses(t.target, k)
    if cls is NatElim:
        return any(_uses(x, k) for x in (t.motive, t.zcase, t.scase, t.target))
    return False
