"""Typed bracket abstraction from surface terms to combinatory terms.

Lambdas are removed innermost-first by the classical translation:

    [x:s] x      =  s k k        (instantiated as the identity at s)
    [x:s] M      =  k M          when x is not free in M
    [x:s] (M N)  =  s [x]M [x]N

with every combinator's type parameters computed from the types in
scope, so the output type-checks by construction.  No eta rule and no
other simplification: the translation is deterministic and its output
is stable enough to pin in tests.
"""

from __future__ import annotations

from ..syntax import (
    App as CApp, Arrow, Fix, Ifz, Iota, K, S, Succ, Pred, TypeMismatch,
    Zero, numeral, type_of,
)
from . import surface as sf

__all__ = ["elaborate", "infer_type"]

_PRIM_IR = {
    "zero": (Zero, Iota),
    "succ": (Succ, Arrow(Iota, Iota)),
    "pred": (Pred, Arrow(Iota, Iota)),
    "ifz": (Ifz, Arrow(Iota, Arrow(Iota, Arrow(Iota, Iota)))),
}

# IR nodes: ("var", name, ty) | ("const", term, ty) | ("app", f, a, ty)


def _ty(ir):
    return ir[-1]


def _lower(e, env):
    if isinstance(e, sf.Var):
        if e.name not in env:
            raise sf.UnboundVariable(e.name)
        return ("var", e.name, env[e.name])
    if isinstance(e, sf.Prim):
        if e.tag == "fix":
            raise TypeMismatch(e, "fix applied to an argument of type"
                               " s -> s", "a bare fix")
        term, ty = _PRIM_IR[e.tag]
        return ("const", term, ty)
    if isinstance(e, sf.NumLit):
        return ("const", numeral(e.n), Iota)
    if isinstance(e, sf.App):
        if e.fun == sf.FixS:
            air = _lower(e.arg, env)
            aty = _ty(air)
            if not (aty.is_arrow and aty.domain is aty.codomain):
                raise TypeMismatch(e, "an argument of type s -> s for fix",
                                   aty)
            sigma = aty.domain
            fix_ir = ("const", Fix(sigma), Arrow(aty, sigma))
            return ("app", fix_ir, air, sigma)
        fir = _lower(e.fun, env)
        fty = _ty(fir)
        if not fty.is_arrow:
            raise TypeMismatch(e, "an arrow type", fty)
        air = _lower(e.arg, env)
        if _ty(air) is not fty.domain:
            raise TypeMismatch(e, fty.domain, _ty(air))
        return ("app", fir, air, fty.codomain)
    if isinstance(e, sf.Lam):
        body = _lower(e.body, {**env, e.name: e.annot})
        return _abstract(e.name, e.annot, body)
    raise TypeError(f"not a surface term: {e!r}")


def _free(x, ir):
    if ir[0] == "var":
        return ir[1] == x
    if ir[0] == "app":
        return _free(x, ir[1]) or _free(x, ir[2])
    return False


def _identity(sigma):
    arr = Arrow(sigma, sigma)
    return CApp(CApp(S(sigma, arr, sigma), K(sigma, arr)), K(sigma, sigma))


def _abstract(x, sigma, ir):
    tau = _ty(ir)
    if not _free(x, ir):
        k_ir = ("const", K(tau, sigma), Arrow(tau, Arrow(sigma, tau)))
        return ("app", k_ir, ir, Arrow(sigma, tau))
    if ir[0] == "var":
        return ("const", _identity(sigma), Arrow(sigma, sigma))
    f_abs = _abstract(x, sigma, ir[1])
    a_abs = _abstract(x, sigma, ir[2])
    ta = _ty(ir[2])
    s_const = S(sigma, ta, tau)
    s_ty = Arrow(Arrow(sigma, Arrow(ta, tau)),
                 Arrow(Arrow(sigma, ta), Arrow(sigma, tau)))
    inner = ("app", ("const", s_const, s_ty), f_abs,
             Arrow(Arrow(sigma, ta), Arrow(sigma, tau)))
    return ("app", inner, a_abs, Arrow(sigma, tau))


def _to_term(ir):
    if ir[0] == "const":
        return ir[1]
    if ir[0] == "app":
        return CApp(_to_term(ir[1]), _to_term(ir[2]))
    raise sf.UnboundVariable(ir[1])


def infer_type(e):
    """Type of a closed surface term, without building the combinator form."""
    return _ty(_lower(e, {}))


def elaborate(e):
    """Compile a closed surface term to a well-typed combinatory term."""
    ir = _lower(e, {})
    t = _to_term(ir)
    got = type_of(t)
    if got is not _ty(ir):
        raise AssertionError("translation changed the type")
    return t
