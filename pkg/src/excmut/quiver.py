"""Finite acyclic quivers, the Euler form, and Dynkin classification.

Vertices are 0-based internally; the JSON format and module names
(``P1``, ``S2``, ...) are 1-based.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .errors import BadIndex, CyclicQuiver, DimensionMismatch, ParseError, RepInfinite

REP_INFINITE = "RepInfinite"


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...] = ()
    topological_order: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_one_based(cls, n: int, arrows) -> "Quiver":
        return validate_quiver(n, [(s - 1, t - 1) for s, t in arrows])

    @cached_property
    def arrows_into(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(a for a, (s, t) in enumerate(self.arrows) if t == v) for v in range(self.n))

    @cached_property
    def arrows_out_of(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(a for a, (s, t) in enumerate(self.arrows) if s == v) for v in range(self.n))

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.arrows_out_of[v]]

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.arrows_into[v]]

    def reflect(self, k: int) -> "Quiver":
        """Reverse every arrow incident to ``k``; arrow indices are kept."""
        arrows = tuple((t, s) if k in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.n, arrows, _toposort(self.n, arrows))

    def to_json(self) -> dict:
        return {"vertices": self.n, "arrows": [[s + 1, t + 1] for s, t in self.arrows]}

    def __str__(self):
        arr = ", ".join(f"{s + 1}->{t + 1}" for s, t in self.arrows)
        return f"Quiver(n={self.n}; {arr})"


def _toposort(n, arrows):
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for s, t in arrows:
        out[s].append(t)
        indeg[t] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for t in out[v]:
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
        ready.sort()
    if len(order) != n:
        raise CyclicQuiver("quiver has an oriented cycle")
    return tuple(order)


def validate_quiver(n: int, arrows) -> Quiver:
    if not isinstance(n, int) or n < 1:
        raise BadIndex(f"vertex count must be a positive integer, got {n!r}")
    arrows = tuple((int(s), int(t)) for s, t in arrows)
    for s, t in arrows:
        if not (0 <= s < n and 0 <= t < n):
            raise BadIndex(f"arrow {s + 1}->{t + 1} outside 1..{n}")
    return Quiver(n, arrows, _toposort(n, arrows))


def parse_quiver(text: str) -> Quiver:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict) or "vertices" not in obj or "arrows" not in obj:
        raise ParseError('expected an object with keys "vertices" and "arrows"')
    try:
        arrows = [(int(s), int(t)) for s, t in obj["arrows"]]
    except (TypeError, ValueError):
        raise ParseError('"arrows" must be a list of [source, target] pairs') from None
    return Quiver.from_one_based(obj["vertices"], arrows)


def euler_form(q: Quiver, d, e) -> int:
    if len(d) != q.n or len(e) != q.n:
        raise DimensionMismatch(f"dimension vectors must have length {q.n}")
    return sum(x * y for x, y in zip(d, e)) - sum(d[s] * e[t] for s, t in q.arrows)


def euler_matrix(q: Quiver) -> list[list[int]]:
    E = [[int(i == j) for j in range(q.n)] for i in range(q.n)]
    for s, t in q.arrows:
        E[s][t] -= 1
    return E


def _components(q: Quiver) -> list[list[int]]:
    adj = {v: set() for v in range(q.n)}
    for s, t in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen, comps = set(), []
    for v in range(q.n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_tree(vertices, edges) -> str | None:
    k = len(vertices)
    if len(edges) != k - 1:
        return None
    deg = Counter()
    for s, t in edges:
        deg[s] += 1
        deg[t] += 1
    branch = [v for v in vertices if deg[v] >= 3]
    if not branch:
        return f"A{k}"
    if len(branch) > 1 or deg[branch[0]] > 3:
        return None
    c = branch[0]
    adj = {v: [] for v in vertices}
    for s, t in edges:
        adj[s].append(t)
        adj[t].append(s)
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while deg[cur] == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{k}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{k}"
    return None


def dynkin_type(q: Quiver) -> str:
    """``"A2"``, ``"D4"``, ``"A1xA1"`` ... or ``"RepInfinite"``.

    Multiple arrows between two vertices always give ``RepInfinite``.
    """
    pairs = Counter(frozenset(a) for a in q.arrows)
    if any(c > 1 for c in pairs.values()):
        return REP_INFINITE
    names = []
    for comp in _components(q):
        cs = set(comp)
        edges = [(s, t) for s, t in q.arrows if s in cs]
        name = _classify_tree(comp, edges)
        if name is None:
            return REP_INFINITE
        names.append(name)
    return "x".join(names)


_COXETER = {"A": lambda k: k + 1, "D": lambda k: 2 * k - 2, "E": lambda k: {6: 12, 7: 18, 8: 30}[k]}


def positive_root_count(q: Quiver) -> int:
    t = dynkin_type(q)
    if t == REP_INFINITE:
        raise RepInfinite(f"{q} is not of Dynkin type")
    total = 0
    for part in t.split("x"):
        k = int(part[1:])
        total += k * _COXETER[part[0]](k) // 2
    return total


def coxeter_number(q: Quiver) -> int:
    t = dynkin_type(q)
    return max(_COXETER[p[0]](int(p[1:])) for p in t.split("x"))


def is_dynkin(q: Quiver) -> bool:
    return dynkin_type(q) != REP_INFINITE


# a few standard quivers used throughout the tests and the CLI

def linear_a(n: int) -> Quiver:
    """A_n with arrows i+1 -> i (1-based), the orientation of the A_2 example."""
    return Quiver.from_one_based(n, [(i + 1, i) for i in range(1, n)])


def d4() -> Quiver:
    return Quiver.from_one_based(4, [(2, 1), (3, 1), (4, 1)])


def triangle_quiver() -> Quiver:
    """Three vertices with arrows 2->1, 3->1, 3->2."""
    return Quiver.from_one_based(3, [(2, 1), (3, 1), (3, 2)])


def kronecker() -> Quiver:
    return Quiver.from_one_based(2, [(1, 2), (1, 2)])
