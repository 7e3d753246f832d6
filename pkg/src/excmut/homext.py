"""The decorated Hom-Ext quiver of an exceptional sequence.

There is an arrow ``E_i -> E_j`` when ``Hom(E_i, E_j) != 0`` (decorated
``m`` or ``e`` according to whether a mono or an epi exists) or when
``Ext^1(E_j, E_i) != 0`` (decorated ``x``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DecorationUndecidable, InternalInconsistency
from .repcat import _candidates, ext1_dim, hom_basis


@dataclass(frozen=True)
class HomExtQuiver:
    vertices: tuple  # Representations, in sequence order
    arrows: tuple[tuple[int, int, str], ...]  # (from, to, decoration), 0-based

    def __post_init__(self):
        pairs = [(i, j) for i, j, _ in self.arrows]
        if len(pairs) != len(set(pairs)):
            raise InternalInconsistency("two decorations on one ordered pair")

    def arrow(self, i: int, j: int) -> str | None:
        for a, b, d in self.arrows:
            if (a, b) == (i, j):
                return d
        return None

    def successors(self, i: int) -> list[int]:
        return [b for a, b, _ in self.arrows if a == i]


def decorate(A, B) -> str | None:
    """``"m"``, ``"e"`` or ``None`` for the Hom part of the pair ``A -> B``."""
    H = list(hom_basis(A, B))
    if not H:
        return None
    for f in _candidates(H):
        if f.is_mono():
            return "m"
        if f.is_epi():
            return "e"
    raise DecorationUndecidable(f"no mono or epi found in Hom({A.label()}, {B.label()})")


def build(seq) -> HomExtQuiver:
    terms = tuple(seq)
    arrows = []
    for i, j in itertools.permutations(range(len(terms)), 2):
        d = decorate(terms[i], terms[j])
        x = ext1_dim(terms[j], terms[i]) != 0
        if d and x:
            raise InternalInconsistency(f"Hom and Ext^1 both give an arrow {i + 1} -> {j + 1}")
        if d:
            arrows.append((i, j, d))
        elif x:
            arrows.append((i, j, "x"))
    return HomExtQuiver(terms, tuple(sorted(arrows)))


def is_acyclic(g: HomExtQuiver) -> bool:
    n = len(g.vertices)
    state = [0] * n  # 0 new, 1 on stack, 2 done

    def visit(v):
        state[v] = 1
        for w in g.successors(v):
            if state[w] == 1 or (state[w] == 0 and not visit(w)):
                return False
        state[v] = 2
        return True

    return all(state[v] or visit(v) for v in range(n))


def is_connected(g: HomExtQuiver) -> bool:
    n = len(g.vertices)
    if n <= 1:
        return True
    adj = {v: set() for v in range(n)}
    for a, b, _ in g.arrows:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def arrow_rule_violations(g: HomExtQuiver) -> list[tuple[str, tuple[int, int, int]]]:
    """Triples ``(A, B, C)`` of distinct vertices breaking one of the composition rules.

    Rules: (a) no e-arrow A->B followed by an m-arrow B->C; (b) m then m
    gives m; (c) e then e gives e; (d) e then x gives x; (e) x then m
    gives x; (f) any arrow followed by an m-arrow gives an arrow A->C.
    """
    bad = []
    n = len(g.vertices)
    for a, b, c in itertools.permutations(range(n), 3):
        ab, bc, ac = g.arrow(a, b), g.arrow(b, c), g.arrow(a, c)
        if ab is None or bc is None:
            continue
        t = (a, b, c)
        if ab == "e" and bc == "m":
            bad.append(("a", t))
        if ab == "m" and bc == "m" and ac != "m":
            bad.append(("b", t))
        if ab == "e" and bc == "e" and ac != "e":
            bad.append(("c", t))
        if ab == "e" and bc == "x" and ac != "x":
            bad.append(("d", t))
        if ab == "x" and bc == "m" and ac != "x":
            bad.append(("e", t))
        if bc == "m" and ac is None:
            bad.append(("f", t))
    return bad


def check_arrow_rules(g: HomExtQuiver) -> None:
    bad = arrow_rule_violations(g)
    if bad:
        clause, (a, b, c) = bad[0]
        raise InternalInconsistency(f"rule ({clause}) fails on vertices {a + 1}, {b + 1}, {c + 1}")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: HomExtQuiver) -> str:
    lines = ["digraph {"]
    for i, E in enumerate(g.vertices):
        lines.append(f"  v{i + 1} [label={_quote(E.label())}];")
    for a, b, d in g.arrows:
        lines.append(f"  v{a + 1} -> v{b + 1} [label={_quote(d)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
