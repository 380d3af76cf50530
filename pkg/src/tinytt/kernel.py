"""Bidirectional type checker over evaluated types."""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import (
    CANNOT_INFER, DUPLICATE, K_DISABLED, MISMATCH, NOT_FUNCTION, NOT_PAIR,
    REFL_ENDPOINTS, UNBOUND, UNIVERSE, fail,
)
from .pretty import pretty
from .semantics import (
    Fuel, FuelExhausted, SigEntry, Signature, V_EMPTY, V_NAT, V_REFL, V_UNIT,
    V_U0, V_ZERO, VId, VPi, VSigma, VUniverse, Value, apply_closure,
    eval_term, quote, convert, vfst, vapp, vvar,
)
from .syntax import (
    Absurd, App, ElimJ, ElimK, Empty, Fst, Global, Id, Lambda, Nat, NatElim,
    Pair, Pi, Refl, Sigma, Snd, Span, Succ, Term, TT, Unit, Universe, Var,
    Zero, shift,
)


@dataclass(frozen=True, slots=True)
class FlagSet:
    """Checking policy switches; the defaults are the conservative ones."""

    type_in_type: bool = False
    enable_k: bool = False
    fuel: int = 1_000_000


@dataclass(eq=False, slots=True)
class Context:
    """Typing context: parallel name/type telescopes plus an eval environment.

    `names` and `types` run outermost first; `env` binds each variable to a
    neutral and runs innermost first, matching the evaluator's convention.
    """

    sig: Signature
    flags: FlagSet
    fuel: Fuel
    names: tuple[str, ...] = ()
    types: tuple[Value, ...] = ()
    env: tuple[Value, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.names)

    def bind(self, name: str, ty: Value) -> Context:
        return Context(self.sig, self.flags, self.fuel,
                       self.names + (name,), self.types + (ty,),
                       (vvar(self.depth),) + self.env)

    def type_of_var(self, index: int) -> Value:
        return self.types[len(self.types) - 1 - index]

    def eval(self, t: Term) -> Value:
        return eval_term(self.env, t, self.fuel, self.sig)

    def convert(self, a: Value, b: Value) -> bool:
        return convert(self.depth, a, b, self.fuel, self.sig)


# Display budget for types inside diagnostics; independent of the checking
# fuel so a message can still be produced after exhaustion elsewhere.
_SHOW_FUEL = 10_000
_SHOW_WIDTH = 80


def show_type(ctx: Context, v: Value, width: int = _SHOW_WIDTH) -> str:
    """Beta-normal rendering of a type for diagnostics, truncated."""
    try:
        term = quote(ctx.depth, v, Fuel.budget(_SHOW_FUEL), ctx.sig)
        text = pretty(term, ctx.names, frozenset(ctx.sig.entries))
    except FuelExhausted:
        return "..."
    return text if len(text) <= width else text[: width - 3] + "..."


def check_is_type(ctx: Context, t: Term) -> int:
    """Check that `t` is a type; return the universe level it lives at."""
    ty = infer(ctx, t)
    if type(ty) is not VUniverse:
        fail(MISMATCH, "expected a type", t.span,
             (f"found a term of type {show_type(ctx, ty)}",))
    return ty.level if ty.level is not None else 0


def _motive_target(*segments: Term) -> Term:
    """Build the expected type of an eliminator motive.

    The trailing universe carries the level wildcard: motives may land in
    any universe level, under either policy.
    """
    result: Term = Universe(None)
    for seg in reversed(segments):
        result = Pi("_", seg, result)
    return result


def infer(ctx: Context, t: Term) -> Value:
    """Synthesize a type value for `t`, or fail with a diagnostic."""
    cls = type(t)
    if cls is Var:
        return ctx.type_of_var(t.index)
    if cls is Global:
        entry = ctx.sig.entries.get(t.name)
        if entry is None:
            fail(UNBOUND, f"unbound name '{t.name}'", t.span)
        return entry.ty
    if cls is Universe:
        if ctx.flags.type_in_type:
            return V_U0
        return VUniverse((t.level if t.level is not None else 0) + 1)
    if cls is Pi or cls is Sigma:
        dom = t.domain if cls is Pi else t.first
        cod = t.codomain if cls is Pi else t.second
        i = check_is_type(ctx, dom)
        j = check_is_type(ctx.bind(t.name, ctx.eval(dom)), cod)
        return V_U0 if ctx.flags.type_in_type else VUniverse(max(i, j))
    if cls is Id:
        # Formation lands at the level of the endpoint type.
        i = check_is_type(ctx, t.ty)
        ty_v = ctx.eval(t.ty)
        check(ctx, t.lhs, ty_v)
        check(ctx, t.rhs, ty_v)
        return V_U0 if ctx.flags.type_in_type else VUniverse(i)
    if cls is App:
        fn_ty = infer(ctx, t.fn)
        if type(fn_ty) is not VPi:
            fail(NOT_FUNCTION, "not a function", t.span,
                 (f"the applied term has type {show_type(ctx, fn_ty)}",))
        check(ctx, t.arg, fn_ty.domain)
        return apply_closure(fn_ty.codomain, ctx.eval(t.arg), ctx.fuel, ctx.sig)
    if cls is Fst:
        ty = infer(ctx, t.target)
        if type(ty) is not VSigma:
            fail(NOT_PAIR, "not a pair", t.span,
                 (f"the projected term has type {show_type(ctx, ty)}",))
        return ty.first
    if cls is Snd:
        ty = infer(ctx, t.target)
        if type(ty) is not VSigma:
            fail(NOT_PAIR, "not a pair", t.span,
                 (f"the projected term has type {show_type(ctx, ty)}",))
        return apply_closure(ty.second, vfst(ctx.eval(t.target), ctx.fuel),
                             ctx.fuel, ctx.sig)
    if cls is ElimJ:
        # ElimJ(A, x, P, d, y, p): P : (y : A) -> Id A x y -> Universe,
        # d : P x refl, y : A, p : Id A x y, result P y p.
        check_is_type(ctx, t.ty)
        a_v = ctx.eval(t.ty)
        check(ctx, t.base, a_v)
        x_v = ctx.eval(t.base)
        motive_ty = Pi("y", t.ty,
                       _motive_target(Id(shift(t.ty, 0, 1), shift(t.base, 0, 1), Var(0))))
        check(ctx, t.motive, ctx.eval(motive_ty))
        motive_v = ctx.eval(t.motive)
        case_ty = vapp(vapp(motive_v, x_v, ctx.fuel, ctx.sig), V_REFL, ctx.fuel, ctx.sig)
        check(ctx, t.case, case_ty)
        check(ctx, t.target, a_v)
        y_v = ctx.eval(t.target)
        check(ctx, t.proof, VId(a_v, x_v, y_v))
        p_v = ctx.eval(t.proof)
        return vapp(vapp(motive_v, y_v, ctx.fuel, ctx.sig), p_v, ctx.fuel, ctx.sig)
    if cls is ElimK:
        # ElimK(A, x, P, d, p): P : Id A x x -> Universe, d : P refl,
        # p : Id A x x, result P p. Guarded by the K flag before anything.
        if not ctx.flags.enable_k:
            fail(K_DISABLED, "K eliminator requires --enable-K", t.span)
        check_is_type(ctx, t.ty)
        a_v = ctx.eval(t.ty)
        check(ctx, t.base, a_v)
        x_v = ctx.eval(t.base)
        check(ctx, t.motive, ctx.eval(_motive_target(Id(t.ty, t.base, t.base))))
        motive_v = ctx.eval(t.motive)
        check(ctx, t.case, vapp(motive_v, V_REFL, ctx.fuel, ctx.sig))
        check(ctx, t.proof, VId(a_v, x_v, x_v))
        return vapp(motive_v, ctx.eval(t.proof), ctx.fuel, ctx.sig)
    if cls is Absurd:
        check(ctx, t.motive, ctx.eval(_motive_target(Empty())))
        check(ctx, t.target, V_EMPTY)
        return vapp(ctx.eval(t.motive), ctx.eval(t.target), ctx.fuel, ctx.sig)
    if cls is NatElim:
        # NatElim(P, z, s, n): z : P zero, s : (m : Nat) -> P m -> P (succ m).
        check(ctx, t.motive, ctx.eval(_motive_target(Nat())))
        motive_v = ctx.eval(t.motive)
        check(ctx, t.zcase, vapp(motive_v, V_ZERO, ctx.fuel, ctx.sig))
        scase_ty = Pi("m", Nat(),
                      Pi("_", App(shift(t.motive, 0, 1), Var(0)),
                         App(shift(t.motive, 0, 2), Succ(Var(1)))))
        check(ctx, t.scase, ctx.eval(scase_ty))
        check(ctx, t.target, V_NAT)
        return vapp(motive_v, ctx.eval(t.target), ctx.fuel, ctx.sig)
    if cls is Empty or cls is Unit or cls is Nat:
        return V_U0
    if cls is TT:
        return V_UNIT
    if cls is Zero:
        return V_NAT
    if cls is Succ:
        check(ctx, t.arg, V_NAT)
        return V_NAT
    # Lambda, Pair, and Refl only check against a given type.
    fail(CANNOT_INFER, "cannot infer a type for this term", t.span,
         ("functions, pairs, and refl only check against a stated type",))


def check(ctx: Context, t: Term, expected: Value) -> None:
    """Check `t` against the type value `expected`."""
    cls = type(t)
    if cls is Lambda:
        if type(expected) is VPi:
            inner = ctx.bind(t.name, expected.domain)
            result = apply_closure(expected.codomain, vvar(ctx.depth), ctx.fuel, ctx.sig)
            check(inner, t.body, result)
            return
        fail(MISMATCH, "type mismatch", t.span,
             (f"expected: {show_type(ctx, expected)}", "found:    a function"))
    if cls is Pair:
        if type(expected) is VSigma:
            check(ctx, t.first, expected.first)
            second_ty = apply_closure(expected.second, ctx.eval(t.first),
                                      ctx.fuel, ctx.sig)
            check(ctx, t.second, second_ty)
            return
        fail(MISMATCH, "type mismatch", t.span,
             (f"expected: {show_type(ctx, expected)}", "found:    a pair"))
    if cls is Refl:
        if type(expected) is VId:
            if not ctx.convert(expected.lhs, expected.rhs):
                fail(REFL_ENDPOINTS, "refl endpoints differ", t.span,
                     (f"left:  {show_type(ctx, expected.lhs)}",
                      f"right: {show_type(ctx, expected.rhs)}"))
            return
        fail(MISMATCH, "type mismatch", t.span,
             (f"expected: {show_type(ctx, expected)}", "found:    refl"))
    inferred = infer(ctx, t)
    if ctx.convert(inferred, expected):
        return
    if type(inferred) is VUniverse and type(expected) is VUniverse:
        fail(UNIVERSE,
             f"universe inconsistency: type lives in U{inferred.level} "
             f"but is annotated U{expected.level}", t.span)
    fail(MISMATCH, "type mismatch", t.span,
         (f"expected: {show_type(ctx, expected)}",
          f"found:    {show_type(ctx, inferred)}"))


def check_declaration(sig: Signature, name: str, ty_term: Term, body_term: Term,
                      flags: FlagSet, span: Span | None = None) -> None:
    """Check `name : ty := body` and install it in the signature.

    The declared type is evaluated now; the body is stored and evaluates on
    first use, so a well-typed body with no normal form can still be
    installed.
    """
    if name in sig.entries:
        fail(DUPLICATE, f"duplicate definition of '{name}'", span)
    ctx = Context(sig, flags, Fuel.budget(flags.fuel))
    check_is_type(ctx, ty_term)
    ty_v = ctx.eval(ty_term)
    check(ctx, body_term, ty_v)
    sig.entries[name] = SigEntry(ty_v, body_term, span)
