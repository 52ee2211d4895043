"""Finite posets, pointed dcpos, and least fixed points of monotone maps.

Carriers are index sets 0..size-1 and the order is a full boolean matrix,
so every classical side condition (reflexivity, directedness, existence
of suprema) is checked by exhaustive scan.  Rows are mirrored into int
bitmasks internally; that keeps the constructor checks usable even for
function-space posets with a few hundred points.
"""

from __future__ import annotations

import itertools

__all__ = [
    "FinitePoset",
    "FiniteDcpoBot",
    "MonotoneMap",
    "TooLarge",
    "check_directed",
    "lub",
    "exponential",
    "least_fixed_point",
    "monotone_tables",
    "preserves_directed_lubs",
    "chain",
    "diamond",
    "flat",
    "random_dcpo",
    "parse_poset",
    "format_poset",
]


class TooLarge(Exception):
    """An enumeration guard tripped; the requested object has too many points."""


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite poset given by its full order matrix.

    ``leq[i][j]`` is truthy when element i is below element j.  The three
    poset laws are verified exhaustively at construction time.
    """

    __slots__ = ("size", "leq", "_rows", "_cols")

    def __init__(self, leq):
        n = len(leq)
        rows = []
        for row in leq:
            if len(row) != n:
                raise ValueError("order matrix must be square")
            m = 0
            for j, bit in enumerate(row):
                if bit:
                    m |= 1 << j
            rows.append(m)
        for i in range(n):
            if not rows[i] >> i & 1:
                raise ValueError(f"not reflexive at element {i}")
        for i in range(n):
            for j in _bits(rows[i]):
                if j != i and rows[j] >> i & 1:
                    raise ValueError(f"antisymmetry fails on {{{i}, {j}}}")
        for i in range(n):
            reach = 0
            for j in _bits(rows[i]):
                reach |= rows[j]
            if reach & ~rows[i]:
                raise ValueError(f"not transitive below element {i}")
        cols = [0] * n
        for i in range(n):
            for j in _bits(rows[i]):
                cols[j] |= 1 << i
        self.size = n
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self._rows = tuple(rows)
        self._cols = tuple(cols)

    def le(self, i, j):
        return bool(self._rows[i] >> j & 1)

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"FinitePoset(size={self.size})"


def _subset_mask(p, subset):
    mask = 0
    for i in set(subset):
        if not 0 <= i < p.size:
            raise ValueError(f"element {i} outside carrier of size {p.size}")
        mask |= 1 << i
    return mask


def _directed_mask(p, mask):
    # nonempty, and every pair has an upper bound inside the subset
    if not mask:
        return False
    members = list(_bits(mask))
    for a in members:
        for b in members:
            if not p._rows[a] & p._rows[b] & mask:
                return False
    return True


def check_directed(p, subset):
    return _directed_mask(p, _subset_mask(p, subset))


def lub(p, subset):
    """Least upper bound of the subset over the whole carrier, or None."""
    ub = (1 << p.size) - 1
    for i in _bits(_subset_mask(p, subset)):
        ub &= p._rows[i]
    for u in _bits(ub):
        if not ub & ~p._rows[u]:
            return u
    return None


def _max_in(p, mask):
    # greatest element of the subset itself, or None
    for m in _bits(mask):
        if not mask & ~p._cols[m]:
            return m
    return None


class FiniteDcpoBot:
    """A finite poset with a least element.

    Finite directed subsets always contain their own maximum, so the
    completeness half of the definition holds automatically; for carriers
    of up to 6 points it is nevertheless confirmed subset by subset.
    The optional ``tables`` tuple records, for function-space instances,
    which map each carrier index stands for.
    """

    __slots__ = ("poset", "bottom", "tables")

    def __init__(self, poset, bottom, tables=None):
        if not 0 <= bottom < poset.size:
            raise ValueError("bottom index outside carrier")
        if poset._rows[bottom] != (1 << poset.size) - 1:
            raise ValueError("bottom is not below every element")
        if poset.size <= 6:
            for mask in range(1, 1 << poset.size):
                if _directed_mask(poset, mask) and _max_in(poset, mask) is None:
                    raise ValueError("directed subset without a maximum")
        self.poset = poset
        self.bottom = bottom
        self.tables = tables

    @property
    def size(self):
        return self.poset.size

    def le(self, i, j):
        return self.poset.le(i, j)

    def __eq__(self, other):
        if not isinstance(other, FiniteDcpoBot):
            return NotImplemented
        return self.poset == other.poset and self.bottom == other.bottom

    def __hash__(self):
        return hash((self.poset, self.bottom))

    def __repr__(self):
        return f"FiniteDcpoBot(size={self.size}, bottom={self.bottom})"


def _table_monotone(sp, tp, table):
    for i in range(sp.size):
        ti = tp._rows[table[i]]
        for j in _bits(sp._rows[i]):
            if not ti >> table[j] & 1:
                return False
    return True


class MonotoneMap:
    """An order-preserving map between pointed dcpos, as a lookup table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source, target, table):
        table = tuple(table)
        if len(table) != source.size:
            raise ValueError("table length must match the source carrier")
        for v in table:
            if not 0 <= v < target.size:
                raise ValueError(f"table value {v} outside target carrier")
        if not _table_monotone(source.poset, target.poset, table):
            raise ValueError("table is not order preserving")
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, i):
        return self.table[i]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.source, self.target, self.table) == (
            other.source, other.target, other.table)

    def __hash__(self):
        return hash((self.source, self.target, self.table))

    def __repr__(self):
        return f"MonotoneMap({self.table})"


def monotone_tables(d, e):
    """Yield every monotone table d -> e in lexicographic order."""
    sp, tp = d.poset, e.poset
    for t in itertools.product(range(e.size), repeat=d.size):
        if _table_monotone(sp, tp, t):
            yield t


def exponential(d, e):
    """The dcpo of all monotone maps d -> e under the pointwise order."""
    if e.size ** d.size > 10 ** 6:
        raise TooLarge(
            f"{e.size}^{d.size} candidate tables exceed the enumeration guard")
    tables = tuple(monotone_tables(d, e))
    m = len(tables)
    # per argument x and value v, the set of tables g with v <= g(x)
    ge = [[0] * e.size for _ in range(d.size)]
    erows = e.poset._rows
    for j, g in enumerate(tables):
        bit = 1 << j
        for x in range(d.size):
            gx = g[x]
            col = ge[x]
            for v in range(e.size):
                if erows[v] >> gx & 1:
                    col[v] |= bit
    full = (1 << m) - 1
    rows = []
    for f in tables:
        r = full
        for x in range(d.size):
            r &= ge[x][f[x]]
        rows.append(r)
    leq = [[rows[i] >> j & 1 for j in range(m)] for i in range(m)]
    bottom = tables.index((e.bottom,) * d.size)
    return FiniteDcpoBot(FinitePoset(leq), bottom, tables=tables)


def least_fixed_point(f):
    """Iterate f from bottom until it stabilizes; returns the fixed point."""
    if f.source != f.target:
        raise ValueError("least_fixed_point needs an endomap")
    x = f.source.bottom
    for _ in range(f.source.size + 1):
        nxt = f.table[x]
        if nxt == x:
            return x
        x = nxt
    raise AssertionError("iteration from bottom failed to stabilize")


def preserves_directed_lubs(d, e, table):
    """Whether a raw table sends suprema of directed subsets to suprema.

    The table need not be monotone; this is the hypothesis side of the
    monotone-for-free lemma, checked over every directed subset.
    """
    p = d.poset
    if p.size > 12:
        raise TooLarge("subset enumeration guard")
    for mask in range(1, 1 << p.size):
        if not _directed_mask(p, mask):
            continue
        members = list(_bits(mask))
        top = lub(p, members)
        if top is None:
            return False
        img = lub(e.poset, [table[i] for i in members])
        if img is None or img != table[top]:
            return False
    return True


def chain(n):
    """The n-point linear order 0 < 1 < ... < n-1 with bottom 0."""
    leq = [[1 if i <= j else 0 for j in range(n)] for i in range(n)]
    return FiniteDcpoBot(FinitePoset(leq), 0)


def diamond():
    """Bottom 0, incomparable 1 and 2, top 3."""
    leq = [
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ]
    return FiniteDcpoBot(FinitePoset(leq), 0)


def flat(width):
    """Bottom 0 under `width` pairwise-incomparable points."""
    n = width + 1
    leq = [[1 if i == j or i == 0 else 0 for j in range(n)] for i in range(n)]
    return FiniteDcpoBot(FinitePoset(leq), 0)


def random_dcpo(rng, size):
    """A random pointed dcpo on `size` elements.

    Draws a random relation, closes it reflexively and transitively, and
    rejects draws that break antisymmetry or lack a least element.
    """
    p = 0.9 / size if size > 1 else 0.0
    while True:
        rel = [[i == j for j in range(size)] for i in range(size)]
        for i in range(size):
            for j in range(size):
                if i != j and rng.random() < p:
                    rel[i][j] = True
        for k in range(size):
            for i in range(size):
                if rel[i][k]:
                    for j in range(size):
                        if rel[k][j]:
                            rel[i][j] = True
        if any(rel[i][j] and rel[j][i]
               for i in range(size) for j in range(i + 1, size)):
            continue
        bottoms = [i for i in range(size)
                   if all(rel[i][j] for j in range(size))]
        if not bottoms:
            continue
        return FiniteDcpoBot(FinitePoset(rel), bottoms[0])


def format_poset(p):
    lines = [str(p.size)]
    for i in range(p.size):
        lines.append(" ".join("1" if p.le(i, j) else "0"
                              for j in range(p.size)))
    return "\n".join(lines) + "\n"


def parse_poset(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty poset fixture")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad size line {lines[0]!r}") from None
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, got {len(lines) - 1}")
    leq = []
    for ln in lines[1:]:
        tokens = ln.split()
        if len(tokens) == 1 and len(tokens[0]) == n:
            tokens = list(tokens[0])
        if len(tokens) != n or any(t not in ("0", "1") for t in tokens):
            raise ValueError(f"bad matrix row {ln!r}")
        leq.append([int(t) for t in tokens])
    return FinitePoset(leq)
