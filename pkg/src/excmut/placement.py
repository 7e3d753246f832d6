"""Placing an almost complete exceptional sequence and its complements in D.

Given ``E = (A_0, ..., A_{n-2})`` with complements ``C_0, ..., C_{n-1}``
(``C_i`` inserted before ``A_i``), choose shifts ``u_i`` and ``t_i`` so that
``(+) A_i[u_i]`` is an almost complete silting object in the fundamental
domain ``S_{n-1}`` whose complements there are exactly the ``C_i[t_i]``.
The construction recurses through the perpendicular category of the last
term; each level places the last term by one of the rules P1, P2, P3.

Also here: Bongartz complements and the exhaustive searches showing that
no single placement works for several sequences at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .derived import SiltingCandidate, exchange_triangle, is_partial_silting
from .errors import DomainError, InvariantViolation, IsProjective, RepInfinite
from .excseq import (
    MutationTriangle,
    complements_almost_complete,
    ext_projectives,
    is_exceptional_sequence,
    mutation_triangle,
    perpendicular_subcategory,
)
from .homext import build as build_homext
from .quiver import is_dynkin
from .repcat import (
    Representation,
    Stalk,
    decompose,
    direct_sum,
    enumerate_indecomposables,
    ext1_dim,
    extension_of_copies,
    hom_dim,
    is_exceptional,
    is_isomorphic,
    is_projective_module,
    projective,
)


@dataclass(frozen=True)
class PlacementResult:
    """One recursion level: rank ``r``, ``len(A) = r - 1``, ``len(C) = r``."""
    A: tuple[Representation, ...]
    C: tuple[Representation, ...]
    u: tuple[int, ...]
    t: tuple[int, ...]
    rules: tuple[str, ...]  # rule used to place A_i, at the level where it was placed
    triangles: tuple[MutationTriangle, ...]
    context: tuple[Representation, ...] = field(repr=False)  # indecomposables of the ambient category
    xproj: tuple[Representation, ...] = field(repr=False)  # its Ext-projectives
    sub: "PlacementResult | None" = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.C)

    @property
    def A_hat(self) -> tuple[Stalk, ...]:
        return tuple(Stalk(a, d) for a, d in zip(self.A, self.u))

    @property
    def C_hat(self) -> tuple[Stalk, ...]:
        return tuple(Stalk(c, d) for c, d in zip(self.C, self.t))

    def levels(self) -> list["PlacementResult"]:
        out, p = [], self
        while p is not None:
            out.append(p)
            p = p.sub
        return out

    def to_json(self) -> dict:
        return {
            "A": [{"module": s.module.label(), "dim": list(s.module.dim), "degree": s.shift} for s in self.A_hat],
            "C": [{"module": s.module.label(), "dim": list(s.module.dim), "degree": s.shift} for s in self.C_hat],
            "rules": list(self.rules),
            "triangles": [
                {"source": T.source.label(), "middle": T.middle.label(), "multiplicity": T.multiplicity,
                 "v": T.v, "result": T.result.label(), "w": T.w}
                for T in self.triangles],
        }


def _match(X, mods):
    for M in mods:
        if is_isomorphic(X, M):
            return M
    return None


def _in_subdomain(s: Stalk, r: int, xproj) -> bool:
    """Membership in ``ctx[0] v ... v ctx[r-2] v X[r-1]`` (stalk modules assumed in ctx)."""
    if 0 <= s.shift <= r - 2:
        return True
    return s.shift == r - 1 and _match(s.module, xproj) is not None


def _place(E, ctx, xproj) -> PlacementResult:
    r = len(E) + 1
    if len(xproj) != r:
        raise InvariantViolation("rank", f"context has {len(xproj)} Ext-projectives, expected {r}")
    if r == 1:
        if len(ctx) != 1:
            raise InvariantViolation("rank", f"rank one context has {len(ctx)} indecomposables")
        return PlacementResult((), (ctx[0],), (), (0,), (), (), tuple(ctx), tuple(xproj))
    C = [M for _, M in complements_almost_complete(E, ctx)]
    A = E[-1]
    sub_ctx, sub_proj = perpendicular_subcategory(A, ctx)
    sub = _place(E[:-1], sub_ctx, sub_proj)
    for i in range(r - 1):
        if not is_isomorphic(sub.C[i], C[i]):
            raise InvariantViolation("complements", f"C_{i} differs between levels")
    u, t = list(sub.u), list(sub.t)
    C = list(sub.C) + [C[-1]]
    tc = t[r - 2]
    Cp = C[r - 2]
    tri = mutation_triangle(Cp, A)
    if hom_dim(Cp, A):
        rule, ua = "P1", tc
    elif ext1_dim(Cp, A):
        rule, ua = "P2", tc + 1
    else:
        rule = "P3"
        ua = r - 3
        while not _p3_ok(ua, tc, E, u, r):
            ua += 1
            if ua > r:
                raise InvariantViolation("U", "P3 search exceeded the domain")
    if not is_isomorphic(tri.result, C[r - 1]):
        raise InvariantViolation("triangle", f"mutation of C_{r - 2} gives {tri.result.label()}, not C_{r - 1}")
    u.append(ua)
    t.append(tc + tri.w)
    return PlacementResult(tuple(E), tuple(C), tuple(u), tuple(t), sub.rules + (rule,),
                           sub.triangles + (tri,), tuple(ctx), tuple(xproj), sub)


def _p3_ok(d, tc, E, u, r) -> bool:
    A = E[-1]
    if d < tc:
        return False
    if r >= 3 and ext1_dim(E[r - 3], A) and not d > u[r - 3]:
        return False
    if r >= 4 and ext1_dim(E[r - 4], A) and not d > u[r - 4]:
        return False
    return True


def place_almost_complete(seq) -> PlacementResult:
    E = list(seq)
    if not E:
        raise DomainError("use a quiver with one vertex for the empty sequence")
    q = E[0].quiver
    if not is_dynkin(q):
        raise RepInfinite(f"{q} is not of Dynkin type")
    if len(E) != q.n - 1 or not is_exceptional_sequence(E):
        raise DomainError("need an almost complete exceptional sequence")
    ctx = list(enumerate_indecomposables(q))
    p = _place(E, ctx, ext_projectives(ctx))
    ledger = verify_placement(p)
    for clause, (ok, witness) in sorted(ledger.items()):
        if not ok:
            raise InvariantViolation(clause, witness)
    return p


def place_rank_one(q) -> PlacementResult:
    """The base case: the empty sequence over a one-vertex quiver."""
    ctx = list(enumerate_indecomposables(q))
    return _place([], ctx, ext_projectives(ctx))


# verification


def _domain_scan(p: PlacementResult) -> list[Stalk]:
    r = p.rank
    Ahat = SiltingCandidate(p.A_hat)
    out = []
    for d in range(0, r):
        for X in p.context:
            s = Stalk(X, d)
            if not _in_subdomain(s, r, p.xproj):
                continue
            if any(a.shift == d and is_isomorphic(a.module, X) for a in Ahat):
                continue
            if is_partial_silting(Ahat.plus(s)):
                out.append(s)
    return out


def _path_ok(p: PlacementResult) -> bool:
    """A directed path from ``A_{r-2}`` to ``C_{r-1}`` whose last arrow is an m- or e-arrow."""
    seq = list(p.A) + [p.C[-1]]
    g = build_homext(seq)
    start, end = len(p.A) - 1, len(seq) - 1
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return any(g.arrow(v, end) in ("m", "e") for v in seen)


def _verify_level(p: PlacementResult) -> dict[str, tuple[bool, str]]:
    r = p.rank
    res = {}

    def put(clause, ok, witness=""):
        prev = res.get(clause, (True, ""))
        res[clause] = (prev[0] and ok, prev[1] or ("" if ok else f"rank {r}: {witness}"))

    stalks = p.A_hat + p.C_hat
    bad = [s for s in stalks if not _in_subdomain(s, r, p.xproj)]
    put("U", not bad, f"outside the domain: {bad}")
    Ahat = SiltingCandidate(p.A_hat)
    put("V", len(Ahat) == r - 1 and is_partial_silting(Ahat), "not partial silting")
    scan = _domain_scan(p)
    same = len(scan) == r and all(any(s.shift == c.shift and is_isomorphic(s.module, c.module) for s in scan)
                                  for c in p.C_hat)
    put("W", same, f"domain complements {scan} vs {list(p.C_hat)}")
    if r == 1:
        return res
    ua, tc, tn = p.u[r - 2], p.t[r - 2], p.t[r - 1]
    if ua == tn:
        put("X", _path_ok(p), "no directed path ending in a morphism")
    put("Y", tn >= ua >= tc, f"degrees {tn} >= {ua} >= {tc} fail")
    put("lower-bound", tc >= r - 3, f"d(C_{r - 2}) = {tc} < {r - 3}")
    if p.rules[-1] == "P3":
        E = list(p.A)
        minimal = ua == r - 3 or not _p3_ok(ua - 1, tc, E, p.u, r)
        put("P3-minimal", minimal, f"degree {ua} is not minimal")
    # triangle shifts: u_i = t_i + v_i when r_i > 0, and t_{i+1} = t_i + w_i
    for i, T in enumerate(p.triangles):
        if T.multiplicity:
            put("shift-u", p.u[i] == p.t[i] + T.v, f"u_{i} != t_{i} + v_{i}")
        put("shift-t", p.t[i + 1] == p.t[i] + T.w, f"t_{i + 1} != t_{i} + w_{i}")
    # exchange triangles in D: right approximation of C_{i+1} recovers C_i with middle A_i^{r_i}
    for i, T in enumerate(p.triangles):
        ex = exchange_triangle(Ahat, p.C_hat[i + 1])
        left_ok = ex.left.shift == p.t[i] and is_isomorphic(ex.left.module, p.C[i])
        mid_ok = len(ex.middle) == T.multiplicity and all(
            s.shift == p.u[i] and is_isomorphic(s.module, p.A[i]) for s in ex.middle)
        put("exchange", left_ok and mid_ok, f"triangle {i} is not the shifted mutation triangle")
    return res


def verify_placement(p: PlacementResult) -> dict[str, tuple[bool, str]]:
    """Every clause, aggregated over all recursion levels: ``clause -> (holds, witness)``."""
    out: dict[str, tuple[bool, str]] = {}
    for level in p.levels():
        for clause, (ok, w) in _verify_level(level).items():
            prev = out.get(clause, (True, ""))
            out[clause] = (prev[0] and ok, prev[1] or w)
    return out


# Bongartz complements


def bongartz_summands(Y: Representation) -> list[Representation]:
    """Indecomposable Ext-projectives of the perpendicular category of ``Y``."""
    q = Y.quiver
    if not is_dynkin(q):
        raise RepInfinite(f"{q} is not of Dynkin type")
    if not is_exceptional(Y):
        raise DomainError(f"{Y.label()} is not exceptional")
    if is_projective_module(Y):
        raise IsProjective(f"{Y.label()} is projective")
    _, xproj = perpendicular_subcategory(Y)
    return xproj


def bongartz_by_extension(Y: Representation) -> list[Representation]:
    """Bongartz's construction: summands of ``E`` in ``0 -> H -> E -> Y^s -> 0`` not isomorphic to ``Y``."""
    q = Y.quiver
    H = direct_sum([projective(q, i) for i in range(q.n)])
    E, _ = extension_of_copies(Y, H)
    return [P for P, _ in decompose(E) if not is_isomorphic(P, Y)]


def bongartz_complement(Y: Representation) -> Representation:
    W = bongartz_summands(Y)
    q = Y.quiver
    if len(W) != q.n - 1:
        raise InvariantViolation("bongartz", f"{len(W)} summands, expected {q.n - 1}")
    T = [Y] + W
    if any(ext1_dim(a, b) for a in T for b in T):
        raise InvariantViolation("bongartz", "Y (+) W is not rigid")
    if any(hom_dim(Y, w) for w in W):
        raise InvariantViolation("bongartz", "Hom(Y, W) != 0")
    for U in enumerate_indecomposables(q):
        if ext1_dim(Y, U) == 0 and any(ext1_dim(w, U) for w in W):
            raise InvariantViolation("bongartz", f"Ext(Y, {U.label()}) = 0 but Ext(W, {U.label()}) != 0")
    other = bongartz_by_extension(Y)
    if len(other) != len(W) or not all(_match(w, other) is not None for w in W):
        raise InvariantViolation("bongartz", "Ext-projectives differ from the universal extension construction")
    return direct_sum(W)


# global placement searches


@dataclass(frozen=True)
class SearchOutcome:
    assignment: dict | None  # module label -> degree
    examined: int
    m: int | None = None

    @property
    def found(self) -> bool:
        return self.assignment is not None


def _distinct_modules(sequences):
    mods = []
    for seq in sequences:
        for E in seq:
            if _match(E, mods) is None:
                mods.append(E)
    return mods


def search_global_placement(q, sequences, bound: int, mode: str = "silting", lo: int = 0) -> SearchOutcome:
    """Look for one degree per module making every sequence compatible.

    ``mode="silting"``: every placed sequence is a silting object in D, degrees in ``[lo, bound]``.
    ``mode="mutation"``: ``sequences[0]`` and each ``sequences[i]`` (a single-term change of it)
    become m-cluster tilting objects in ``S_m``, with ``U_i`` the forward mutation of ``U_0``
    at the replaced summand, degrees in ``[0, bound]``.
    """
    sequences = [list(s) for s in sequences]
    if mode == "silting":
        return _search_silting(sequences, bound, lo)
    if mode == "mutation":
        return _search_mutation(sequences, bound)
    raise DomainError(f"unknown search mode {mode!r}")


def _search_silting(sequences, bound, lo) -> SearchOutcome:
    from .derived import is_silting

    mods = _distinct_modules(sequences)
    idx = [[next(k for k, M in enumerate(mods) if is_isomorphic(M, E)) for E in seq] for seq in sequences]
    examined = 0
    for degs in itertools.product(range(lo, bound + 1), repeat=len(mods)):
        examined += 1
        if all(is_silting(SiltingCandidate(tuple(Stalk(mods[k], degs[k]) for k in ix))) for ix in idx):
            return SearchOutcome({M.label(): d for M, d in zip(mods, degs)}, examined)
    return SearchOutcome(None, examined)


def _search_mutation(sequences, bound) -> SearchOutcome:
    from .cluster import cm_left_approximation, in_domain, is_m_cluster_tilting, normalize_to_domain
    from .derived import DerivedObject, cone, normalize_stalks, stack_maps

    base = sequences[0]
    changes = []
    for seq in sequences[1:]:
        removed = [E for E in base if _match(E, seq) is None]
        added = [E for E in seq if _match(E, base) is None]
        if len(removed) != 1 or len(added) != 1:
            raise DomainError("each further sequence must differ from the first in exactly one term")
        changes.append((base.index(removed[0]), added[0]))

    def successor(Tbar, X, m):
        copies, _ = cm_left_approximation(Tbar, X, m)
        if not copies:
            return normalize_to_domain(Stalk(X.module, X.shift + 1), m)
        f = stack_maps(DerivedObject.stalk(X.module, X.shift), copies)
        st = normalize_stalks(cone(f))
        if len(st) != 1:
            return None
        return normalize_to_domain(st[0], m)

    examined = 0
    # for m >= bound + 2 no F-component links degrees in [0, bound + 1], so larger m repeat this case
    for m in range(1, bound + 3):
        for degs in itertools.product(range(0, bound + 1), repeat=len(base)):
            examined += 1
            U0 = [Stalk(E, d) for E, d in zip(base, degs)]
            if not all(in_domain(s, m) for s in U0) or not is_m_cluster_tilting(U0, m):
                continue
            assignment = {E.label(): d for E, d in zip(base, degs)}
            ok = True
            for pos, Y in changes:
                Tbar = U0[:pos] + U0[pos + 1:]
                nxt = successor(Tbar, U0[pos], m)
                if nxt is None or not is_isomorphic(nxt.module, Y) or not 0 <= nxt.shift <= bound:
                    ok = False
                    break
                if assignment.get(Y.label(), nxt.shift) != nxt.shift:
                    ok = False
                    break
                assignment[Y.label()] = nxt.shift
                if not is_m_cluster_tilting(Tbar + [nxt], m):
                    ok = False
                    break
            if ok:
                return SearchOutcome(assignment, examined, m)
    return SearchOutcome(None, examined)
