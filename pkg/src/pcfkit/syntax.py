"""Combinatory PCF: types, terms, numerals, and the type checker.

Types and terms are hash-consed: building the same tree twice yields the
same object. Structural equality therefore coincides with identity, and
every term carries three facts computed once at construction time:

  * ``ty``       its PCF type, or None if some application is ill-typed
  * ``numeral``  n if the term is syntactically succ^n(zero), else None
  * ``rule``     which reduction rule (if any) applies to the whole term

The reduction engine and the denotational interpreter lean on these
fields heavily; nothing in this module ever rescans a subtree.
"""

from __future__ import annotations

import weakref

from .rules import RuleName

__all__ = [
    "PcfType", "Iota", "Arrow",
    "Term", "Zero", "Succ", "Pred", "Ifz", "K", "S", "Fix", "App",
    "TypeMismatch", "type_of", "numeral", "as_numeral", "term_size",
    "term_to_sexp", "type_to_sexp", "parse_term_sexp", "parse_type_sexp",
    "SexpError", "type_surface",
    "random_type", "random_term",
]


class PcfType:
    """A PCF type: the base type of naturals, or an arrow between types.

    ``domain``/``codomain`` are None exactly for the base type. Instances
    are interned, so ``==`` is pointer comparison.
    """

    __slots__ = ("domain", "codomain")
    _pool: dict = {}

    def __new__(cls, domain, codomain):
        key = (domain, codomain)
        cached = cls._pool.get(key)
        if cached is None:
            cached = super().__new__(cls)
            cached.domain = domain
            cached.codomain = codomain
            cls._pool[key] = cached
        return cached

    @property
    def is_arrow(self) -> bool:
        return self.domain is not None

    def __repr__(self):
        return type_to_sexp(self)


Iota = PcfType(None, None)


def Arrow(domain: PcfType, codomain: PcfType) -> PcfType:
    """The function type from domain to codomain."""
    return PcfType(domain, codomain)


class TypeMismatch(TypeError):
    """An application whose function part does not accept its argument."""

    def __init__(self, subterm, expected, actual):
        self.subterm = subterm
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"ill-typed application: expected {expected}, got {actual}"
        )


class Term:
    """A combinatory PCF term.

    Tags: zero, succ, pred, ifz, k, s, fix, app. Constants carry their
    type parameters in ``params`` so every well-formed tree has exactly
    one type. Use the module-level constructors; do not instantiate
    directly.
    """

    __slots__ = ("tag", "fun", "arg", "params", "ty", "numeral", "rule",
                 "__weakref__")

    # Weak interning: terms die when the last outside reference does, so
    # long fuzzing runs do not pin every intermediate reduct in memory.
    _pool: weakref.WeakValueDictionary = weakref.WeakValueDictionary()

    def __repr__(self):
        return term_to_sexp(self)


_ARROW_NN = Arrow(Iota, Iota)
_IFZ_TYPE = Arrow(Iota, Arrow(Iota, _ARROW_NN))


def _constant_type(tag, params):
    if tag == "zero":
        return Iota
    if tag in ("succ", "pred"):
        return _ARROW_NN
    if tag == "ifz":
        return _IFZ_TYPE
    if tag == "k":
        sigma, tau = params
        return Arrow(sigma, Arrow(tau, sigma))
    if tag == "s":
        sigma, tau, rho = params
        return Arrow(Arrow(sigma, Arrow(tau, rho)),
                     Arrow(Arrow(sigma, tau), Arrow(sigma, rho)))
    if tag == "fix":
        (sigma,) = params
        return Arrow(Arrow(sigma, sigma), sigma)
    raise AssertionError(tag)


def _app_rule(f, a):
    """Which rule applies at the root of App(f, a), if any.

    Constraint: at most one rule can ever match (the relation is
    single-valued); the branches below are mutually exclusive by the
    shape of f.
    """
    tag = f.tag
    if tag == "pred":
        if a.numeral is not None:
            return RuleName.PredZero if a.numeral == 0 else RuleName.PredSucc
        return RuleName.PredArg if a.rule is not None else None
    if tag == "succ":
        return RuleName.SuccArg if a.rule is not None else None
    if tag == "fix":
        return RuleName.FixRule
    if tag == "app":
        g = f.fun
        if g.tag == "k":
            return RuleName.KRule
        if g.tag == "app":
            h = g.fun
            if h.tag == "s":
                return RuleName.SRule
            if h.tag == "ifz":
                if a.numeral is not None:
                    return (RuleName.IfzZero if a.numeral == 0
                            else RuleName.IfzSucc)
                return RuleName.IfzScrut if a.rule is not None else None
    # partial k/s/ifz applications and stuck heads fall through here;
    # they step only if the function part itself steps
    return RuleName.AppLeft if f.rule is not None else None


def _intern(tag, fun, arg, params):
    key = (tag, fun, arg, params)
    t = Term._pool.get(key)
    if t is not None:
        return t
    t = object.__new__(Term)
    t.tag = tag
    t.fun = fun
    t.arg = arg
    t.params = params
    if tag == "app":
        fty = fun.ty
        if fty is not None and fty.domain is not None and arg.ty is fty.domain:
            t.ty = fty.codomain
        else:
            t.ty = None
        if fun.tag == "succ" and arg.numeral is not None:
            t.numeral = arg.numeral + 1
        else:
            t.numeral = None
        t.rule = _app_rule(fun, arg)
    else:
        t.ty = _constant_type(tag, params)
        t.numeral = 0 if tag == "zero" else None
        t.rule = None
    Term._pool[key] = t
    return t


Zero = _intern("zero", None, None, ())
Succ = _intern("succ", None, None, ())
Pred = _intern("pred", None, None, ())
Ifz = _intern("ifz", None, None, ())


def K(sigma: PcfType, tau: PcfType) -> Term:
    """The constant k at sigma, tau; type sigma => tau => sigma."""
    return _intern("k", None, None, (sigma, tau))


def S(sigma: PcfType, tau: PcfType, rho: PcfType) -> Term:
    """The constant s; type (sigma=>tau=>rho) => (sigma=>tau) => sigma=>rho."""
    return _intern("s", None, None, (sigma, tau, rho))


def Fix(sigma: PcfType) -> Term:
    """The fixed-point constant at sigma; type (sigma=>sigma) => sigma."""
    return _intern("fix", None, None, (sigma,))


def App(fun: Term, arg: Term) -> Term:
    """Application. Always constructible; type_of reports ill-typed uses."""
    return _intern("app", fun, arg, ())


def type_of(t: Term) -> PcfType:
    """The unique PCF type of t, or TypeMismatch for an ill-typed tree."""
    if t.ty is not None:
        return t.ty
    # walk down to the innermost offending application for the error
    cur = t
    while True:
        f, a = cur.fun, cur.arg
        if f.ty is None:
            cur = f
        elif a.ty is None:
            cur = a
        else:
            if f.ty.domain is None:
                raise TypeMismatch(cur, "an arrow type", f.ty)
            raise TypeMismatch(cur, f.ty.domain, a.ty)


def numeral(n: int) -> Term:
    """The nth numeral: succ applied n times to zero."""
    if n < 0:
        raise ValueError("numerals are naturals")
    t = Zero
    for _ in range(n):
        t = App(Succ, t)
    return t


def as_numeral(t: Term):
    """n if t is syntactically numeral(n), else None. O(1): cached."""
    return t.numeral


def term_size(t: Term) -> int:
    """Number of nodes, applications included."""
    n = 0
    stack = [t]
    while stack:
        x = stack.pop()
        n += 1
        if x.tag == "app":
            stack.append(x.fun)
            stack.append(x.arg)
    return n


# ---------------------------------------------------------------------------
# Canonical S-expression form (bit-exact external format)

def type_to_sexp(ty: PcfType) -> str:
    if ty.domain is None:
        return "iota"
    return f"(arr {type_to_sexp(ty.domain)} {type_to_sexp(ty.codomain)})"


def term_to_sexp(t: Term) -> str:
    # iterative: numerals and fix-chains nest too deep for recursion
    out = []
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
        elif x.tag == "app":
            stack += [")", x.arg, " ", x.fun, "(app "]
        elif x.tag == "k":
            a, b = x.params
            out.append(f"(k {type_to_sexp(a)} {type_to_sexp(b)})")
        elif x.tag == "s":
            a, b, c = x.params
            out.append(
                f"(s {type_to_sexp(a)} {type_to_sexp(b)} {type_to_sexp(c)})")
        elif x.tag == "fix":
            out.append(f"(fix {type_to_sexp(x.params[0])})")
        else:
            out.append(x.tag)
    return "".join(out)


class SexpError(ValueError):
    pass


_ATOM_TERMS = {"zero": Zero, "succ": Succ, "pred": Pred, "ifz": Ifz}


def _sexp_tokens(text):
    for piece in text.replace("(", " ( ").replace(")", " ) ").split():
        yield piece


def _as_type(x):
    if isinstance(x, PcfType):
        return x
    if x == "iota":
        return Iota
    raise SexpError(f"expected a type, got {x!r}")


def _as_term(x):
    if isinstance(x, Term):
        return x
    if isinstance(x, str) and x in _ATOM_TERMS:
        return _ATOM_TERMS[x]
    raise SexpError(f"expected a term, got {x!r}")


def _finish(items):
    if not items or not isinstance(items[0], str):
        raise SexpError("empty or headless form")
    head, rest = items[0], items[1:]
    if head == "arr" and len(rest) == 2:
        return Arrow(_as_type(rest[0]), _as_type(rest[1]))
    if head == "app" and len(rest) == 2:
        return App(_as_term(rest[0]), _as_term(rest[1]))
    if head == "k" and len(rest) == 2:
        return K(_as_type(rest[0]), _as_type(rest[1]))
    if head == "s" and len(rest) == 3:
        return S(_as_type(rest[0]), _as_type(rest[1]), _as_type(rest[2]))
    if head == "fix" and len(rest) == 1:
        return Fix(_as_type(rest[0]))
    raise SexpError(f"bad form ({head} ...) with {len(rest)} items")


def _parse_sexp(text):
    stack = []
    result = None
    for tok in _sexp_tokens(text):
        if tok == "(":
            stack.append([])
            continue
        if tok == ")":
            if not stack:
                raise SexpError("unbalanced ')'")
            node = _finish(stack.pop())
        else:
            node = tok
        if stack:
            stack[-1].append(node)
        elif result is None:
            result = node
        else:
            raise SexpError("trailing content after expression")
    if stack:
        raise SexpError("unbalanced '('")
    if result is None:
        raise SexpError("empty input")
    return result


def parse_term_sexp(text: str) -> Term:
    return _as_term(_parse_sexp(text))


def parse_type_sexp(text: str) -> PcfType:
    return _as_type(_parse_sexp(text))


def type_surface(ty: PcfType) -> str:
    """Surface rendering: nat, nat -> nat, (nat -> nat) -> nat."""
    if ty.domain is None:
        return "nat"
    dom = type_surface(ty.domain)
    if ty.domain.is_arrow:
        dom = f"({dom})"
    return f"{dom} -> {type_surface(ty.codomain)}"


# ---------------------------------------------------------------------------
# Random well-typed closed terms, for the property suites

def random_type(rng, depth: int = 2) -> PcfType:
    if depth <= 0 or rng.random() < 0.6:
        return Iota
    return Arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))


def _k_params(ty):
    # sigma => tau => sigma
    c = ty.codomain
    if ty.is_arrow and c.is_arrow and c.codomain is ty.domain:
        return (ty.domain, c.domain)
    return None


def _s_params(ty):
    # (sigma => tau => rho) => (sigma => tau) => sigma => rho
    if not ty.is_arrow:
        return None
    a, b = ty.domain, ty.codomain
    if not (a.is_arrow and a.codomain.is_arrow):
        return None
    sigma, tau, rho = a.domain, a.codomain.domain, a.codomain.codomain
    if b is Arrow(Arrow(sigma, tau), Arrow(sigma, rho)):
        return (sigma, tau, rho)
    return None


def _fix_params(ty):
    # (sigma => sigma) => sigma
    a = ty.domain
    if ty.is_arrow and a is not None and a.is_arrow \
            and a.domain is a.codomain and a.domain is ty.codomain:
        return (ty.codomain,)
    return None


def _inhabitant(ty):
    if ty.domain is None:
        return Zero
    return App(K(ty.codomain, ty.domain), _inhabitant(ty.codomain))


def random_term(rng, ty: PcfType = Iota, depth: int = 8) -> Term:
    """A random closed well-typed term of the given type.

    Builds down from the target type with constructor-appropriate
    choices; depth bounds the recursion.
    """
    choices = []
    if ty is Iota:
        choices.append((3, lambda: numeral(_geom(rng))))
    if ty is Succ.ty:
        choices.append((1, lambda: Succ))
        choices.append((1, lambda: Pred))
    if ty is Ifz.ty:
        choices.append((1, lambda: Ifz))
    kp = _k_params(ty)
    if kp is not None:
        choices.append((1, lambda: K(*kp)))
    sp = _s_params(ty)
    if sp is not None:
        choices.append((1, lambda: S(*sp)))
    fp = _fix_params(ty)
    if fp is not None:
        choices.append((1, lambda: Fix(*fp)))
    if depth > 0:
        choices.append((4, lambda: _random_app(rng, ty, depth)))
        choices.append((1, lambda: App(Fix(ty),
                                       random_term(rng, Arrow(ty, ty),
                                                   depth - 1))))
        if ty is Iota:
            choices.append((2, lambda: _random_ifz(rng, depth)))
    if not choices:
        return _inhabitant(ty)
    total = sum(w for w, _ in choices)
    pick = rng.random() * total
    for w, thunk in choices:
        pick -= w
        if pick <= 0:
            return thunk()
    return choices[-1][1]()


def _geom(rng):
    n = 0
    while rng.random() < 0.55 and n < 30:
        n += 1
    return n


def _random_app(rng, ty, depth):
    alpha = random_type(rng, min(2, depth - 1))
    f = random_term(rng, Arrow(alpha, ty), depth - 1)
    a = random_term(rng, alpha, depth - 1)
    return App(f, a)


def _random_ifz(rng, depth):
    z = random_term(rng, Iota, depth - 1)
    s = random_term(rng, Iota, depth - 1)
    scrut = random_term(rng, Iota, depth - 1)
    return App(App(App(Ifz, z), s), scrut)
