"""Indexed well-founded trees with decidable equality, and the encodings
of types and terms into them.

A WSpec packages the classifying data (index set, constructor heads,
arities, source and target maps) as plain callables, because the head
set for terms is infinite: every pair of types yields its own
application constructor.  Heads carry their type parameters, so head
equality is tuple equality and the whole tree comparison reduces to
finitely many head checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    App, Arrow, Fix, Ifz, Iota, K, PcfType, Pred, S, Succ, Zero, type_of,
)

__all__ = [
    "WSpec", "WTree", "IndexMismatch", "InvalidTree",
    "get_fib", "subtrees", "w_equal", "validate", "decide_forall_finite",
    "TYPE_SPEC", "TERM_SPEC",
    "encode_type", "decode_type", "encode_term", "decode_term",
]


class IndexMismatch(Exception):
    """The two trees live over different indices; equality is not posed."""


class InvalidTree(Exception):
    """A tree that does not fit its spec (head, arity, or child index)."""


@dataclass(frozen=True)
class WSpec:
    index_eq: object
    head_eq: object
    arity: object
    target: object
    source: object


@dataclass(frozen=True)
class WTree:
    head: object
    children: tuple = ()


def get_fib(spec, w):
    """Head constructor together with the index it targets."""
    return (w.head, spec.target(w.head))


def subtrees(w):
    return list(w.children)


def decide_forall_finite(domain, pred):
    """Exhaustive universal quantifier; vacuously true on empty domains."""
    return all(pred(x) for x in domain)


def w_equal(spec, u, v):
    """Decidable tree equality: heads first, then children pointwise."""
    iu, iv = spec.target(u.head), spec.target(v.head)
    if not spec.index_eq(iu, iv):
        raise IndexMismatch(f"trees indexed by {iu!r} and {iv!r}")
    if not spec.head_eq(u.head, v.head):
        return False
    # identical heads, so identical arities and child indices
    return decide_forall_finite(
        range(spec.arity(u.head)),
        lambda b: w_equal(spec, u.children[b], v.children[b]))


def validate(spec, w, index=None):
    """Check well-indexedness throughout; raises InvalidTree on failure."""
    if not isinstance(w, WTree):
        raise InvalidTree("not a WTree")
    stack = [(w, spec.target(w.head) if index is None else index)]
    while stack:
        node, idx = stack.pop()
        if not isinstance(node, WTree):
            raise InvalidTree("not a WTree")
        tgt = spec.target(node.head)
        if not spec.index_eq(tgt, idx):
            raise InvalidTree(f"head targets {tgt!r}, expected {idx!r}")
        n = spec.arity(node.head)
        if len(node.children) != n:
            raise InvalidTree(
                f"head {node.head!r} has arity {n}, got "
                f"{len(node.children)} children")
        for b in range(n):
            stack.append((node.children[b], spec.source(node.head, b)))


# The type encoding: two heads over a one-point index set.

def _type_arity(head):
    if head == "iota":
        return 0
    if head == "arr":
        return 2
    raise InvalidTree(f"unknown type head {head!r}")


def _type_target(head):
    _type_arity(head)
    return "*"


def _type_source(head, b):
    if head == "arr" and b in (0, 1):
        return "*"
    raise InvalidTree(f"no child slot {b} for type head {head!r}")


TYPE_SPEC = WSpec(
    index_eq=lambda a, b: a == b,
    head_eq=lambda a, b: a == b,
    arity=_type_arity,
    target=_type_target,
    source=_type_source,
)


def encode_type(sigma):
    if sigma is Iota:
        return WTree("iota")
    return WTree("arr", (encode_type(sigma.domain),
                         encode_type(sigma.codomain)))


def decode_type(w):
    if not isinstance(w, WTree):
        raise InvalidTree("not a WTree")
    if w.head == "iota":
        if w.children:
            raise InvalidTree("iota is a leaf")
        return Iota
    if w.head == "arr":
        if len(w.children) != 2:
            raise InvalidTree("arr takes two children")
        return Arrow(decode_type(w.children[0]), decode_type(w.children[1]))
    raise InvalidTree(f"unknown type head {w.head!r}")


# The term encoding: heads are (tag, *type-parameters), indexed by type.
# Constants are leaves; application is the one binary head, with the
# function child at the arrow index and the argument at its domain.

def _decode_leaf(head):
    tag, params = head[0], head[1:]
    if tag == "zero" and not params:
        return Zero
    if tag == "succ" and not params:
        return Succ
    if tag == "pred" and not params:
        return Pred
    if tag == "ifz" and not params:
        return Ifz
    if not all(isinstance(p, PcfType) for p in params):
        raise InvalidTree(f"head parameters must be types: {head!r}")
    if tag == "k" and len(params) == 2:
        return K(*params)
    if tag == "s" and len(params) == 3:
        return S(*params)
    if tag == "fix" and len(params) == 1:
        return Fix(*params)
    raise InvalidTree(f"unknown term head {head!r}")


def _term_arity(head):
    return 2 if head[0] == "app" else 0


def _term_target(head):
    if not isinstance(head, tuple) or not head:
        raise InvalidTree(f"term heads are tuples, got {head!r}")
    if head[0] == "app":
        if len(head) != 3 or not all(isinstance(p, PcfType) for p in head[1:]):
            raise InvalidTree(f"bad app head {head!r}")
        return head[2]
    return _decode_leaf(head).ty


def _term_source(head, b):
    if head[0] == "app" and b in (0, 1):
        sigma, tau = head[1], head[2]
        return Arrow(sigma, tau) if b == 0 else sigma
    raise InvalidTree(f"no child slot {b} for head {head!r}")


TERM_SPEC = WSpec(
    index_eq=lambda a, b: a is b,
    head_eq=lambda a, b: a == b,
    arity=_term_arity,
    target=_term_target,
    source=_term_source,
)


def encode_term(t):
    """Encode a well-typed term; raises the usual type error otherwise."""
    if t.ty is None:
        type_of(t)
    memo = {}
    stack = [t]
    while stack:
        cur = stack[-1]
        if cur in memo:
            stack.pop()
            continue
        if cur.tag == "app":
            f, a = cur.fun, cur.arg
            if f in memo and a in memo:
                fty = f.ty
                memo[cur] = WTree(("app", fty.domain, fty.codomain),
                                  (memo[f], memo[a]))
                stack.pop()
            else:
                if a not in memo:
                    stack.append(a)
                if f not in memo:
                    stack.append(f)
        else:
            memo[cur] = WTree((cur.tag,) + cur.params)
            stack.pop()
    return memo[t]


def decode_term(w):
    out = {}
    stack = [w]
    while stack:
        node = stack[-1]
        key = id(node)
        if key in out:
            stack.pop()
            continue
        if not isinstance(node, WTree):
            raise InvalidTree("not a WTree")
        head = node.head
        if not isinstance(head, tuple) or not head:
            raise InvalidTree(f"term heads are tuples, got {head!r}")
        if head[0] == "app":
            if len(head) != 3 or len(node.children) != 2:
                raise InvalidTree(f"bad app node {head!r}")
            sigma, tau = head[1], head[2]
            if not (isinstance(sigma, PcfType) and isinstance(tau, PcfType)):
                raise InvalidTree(f"bad app head {head!r}")
            f, a = node.children
            if id(f) in out and id(a) in out:
                ft, at = out[id(f)], out[id(a)]
                if ft.ty is not Arrow(sigma, tau) or at.ty is not sigma:
                    raise InvalidTree("children do not fit the app head")
                out[key] = App(ft, at)
                stack.pop()
            else:
                if id(a) not in out:
                    stack.append(a)
                if id(f) not in out:
                    stack.append(f)
        else:
            if node.children:
                raise InvalidTree(f"{head!r} is a leaf head")
            out[key] = _decode_leaf(head)
            stack.pop()
    return out[id(w)]
