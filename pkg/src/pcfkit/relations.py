"""k-step reflexive-transitive closure over single-valued step functions.

The decision procedures work against any object with two methods:
next(x) giving the unique successor of x or None, and eq(x, y) deciding
equality of carrier elements. FiniteRelation supplies graph fixtures and
bfs_closure_oracle the independent brute force the tests compare against.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Protocol

__all__ = [
    "StepFunction", "FiniteRelation", "decide_k_step",
    "decide_reaches_within", "bfs_closure_oracle",
    "parse_relation", "format_relation",
]


class StepFunction(Protocol):
    def next(self, x): ...
    def eq(self, x, y) -> bool: ...


def decide_k_step(r: StepFunction, x, y, k: int) -> bool:
    """Whether y is related to x by the k-step closure.

    Follows the recursion that justifies decidability: at k = 0 the
    closure is equality; otherwise take the unique strict step from x
    (failing if there is none) and recur. So this walks exactly k steps.
    """
    for _ in range(k):
        x = r.next(x)
        if x is None:
            return False
    return r.eq(x, y)


def decide_reaches_within(r: StepFunction, x, y, k: int) -> bool:
    """Whether some j <= k has y reachable from x in j steps.

    The bounded form of the search that realizes membership in the full
    reflexive-transitive closure.
    """
    for j in range(k + 1):
        if r.eq(x, y):
            return True
        if j < k:
            x = r.next(x)
            if x is None:
                return False
    return False


@dataclass(frozen=True)
class FiniteRelation:
    """A finite graph fixture: nodes 0..node_count-1 plus an edge list."""

    node_count: int
    edges: tuple

    def __post_init__(self):
        for s, d in self.edges:
            if not (0 <= s < self.node_count and 0 <= d < self.node_count):
                raise ValueError(f"edge ({s},{d}) out of range")

    @property
    def single_valued(self) -> bool:
        sources = [s for s, _ in self.edges]
        return len(sources) == len(set(sources))

    def as_step_function(self):
        if not self.single_valued:
            raise ValueError("relation is not single-valued")
        table = dict(self.edges)

        class _Fn:
            def next(self, x, _table=table):
                return _table.get(x)

            def eq(self, x, y):
                return x == y

        return _Fn()


def bfs_closure_oracle(g: FiniteRelation, source: int):
    """Reachability with minimal distances, by breadth-first search.

    Works on arbitrary finite relations; this is the brute force the
    closure procedures are checked against.
    """
    adj = {}
    for s, d in g.edges:
        adj.setdefault(s, []).append(d)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return {(node, d) for node, d in dist.items()}


def parse_relation(text: str) -> FiniteRelation:
    """Fixture format: first line node_count, then one 'src dst' per line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty relation fixture")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        s, d = ln.split()
        edges.append((int(s), int(d)))
    return FiniteRelation(n, tuple(edges))


def format_relation(g: FiniteRelation) -> str:
    lines = [str(g.node_count)]
    lines += [f"{s} {d}" for s, d in g.edges]
    return "\n".join(lines) + "\n"
