"""Verification suites, shared by ``verify-all`` and the acceptance tests.

Each check returns a ``SuiteResult``; a failed check carries a witness.
Exceptions of type ``InternalInconsistency`` raised by the library while a
suite runs are caught and reported as failures of that suite.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import exactla as la
from .cluster import (
    brute_force_complements,
    check_dmap_criterion,
    complements,
    d_chain,
    exchange_triangles,
    ext_cm_dim,
    ext_d_dim,
    fundamental_domain,
    is_m_cluster_tilting,
    is_m_rigid,
    shift_periodicity_holds,
)
from .derived import (
    DerivedObject,
    SiltingCandidate,
    hom_d_dim,
    hom_d_dim_complexes,
    is_partial_silting,
    is_silting,
    projective_cover,
    silting_complements_in_window,
)
from .errors import InternalInconsistency
from .excseq import (
    ExceptionalSequence,
    complements_almost_complete,
    enumerate_complete_sequences,
    is_exceptional_sequence,
    mutation_orbit,
    simple_sequence,
)
from .homext import arrow_rule_violations, build, is_acyclic, is_connected
from .placement import place_almost_complete, place_rank_one, verify_placement
from .repcat import (
    Stalk,
    ar_translate,
    enumerate_indecomposables,
    ext1_dim,
    hom_basis,
    hom_dim,
    is_isomorphic,
    is_projective_module,
    kernel,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "detail": self.detail}


def _run(name, fn, *args) -> SuiteResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn(*args)
    except InternalInconsistency as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return SuiteResult(name, ok, detail, time.perf_counter() - t0)


def _same(s: Stalk, t: Stalk) -> bool:
    return s.shift == t.shift and is_isomorphic(s.module, t.module)


# oracles


def ext1_dim_by_resolution(X, Y) -> int:
    """``Ext^1(X, Y)`` as the cokernel of ``Hom(P0, Y) -> Hom(K, Y)`` for ``0 -> K -> P0 -> X -> 0``."""
    p = projective_cover(X)
    K, iota = kernel(p)
    restricted = [(g @ iota).flat() for g in hom_basis(p.source, Y)]
    length = sum(a * b for a, b in zip(K.dim, Y.dim))
    return hom_dim(K, Y) - la.rank_of_vectors(restricted, length)


def check_sequences(q):
    seqs = enumerate_complete_sequences(q)
    orbit = mutation_orbit(simple_sequence(q))
    if [s.key() for s in seqs] != [s.key() for s in orbit]:
        return False, f"{len(seqs)} sequences by brute force, {len(orbit)} in the mutation orbit"
    return True, f"{len(seqs)} complete sequences, all reached by mutation"


def check_homext(q):
    seqs = enumerate_complete_sequences(q)
    for s in seqs:
        g = build(s)
        if not is_acyclic(g):
            return False, f"cycle in the Hom-Ext quiver of {s}"
        if not is_connected(g):
            return False, f"Hom-Ext quiver of {s} is disconnected"
        bad = arrow_rule_violations(g)
        if bad:
            return False, f"rule ({bad[0][0]}) fails on {s} at {bad[0][1]}"
    return True, f"{len(seqs)} quivers acyclic, connected, rules (a)-(f) hold"


def _slice_ordered_exceptional(T) -> tuple[bool, bool]:
    """``(partial, complete)`` by brute force over orderings.

    A candidate qualifies when each slice is rigid and some ordering with
    non-decreasing degree is an exceptional sequence.
    """
    stalks = list(T)
    for X, Y in itertools.combinations(stalks, 2):
        if X.shift == Y.shift and (ext1_dim(X.module, Y.module) or ext1_dim(Y.module, X.module)):
            return False, False
    for perm in itertools.permutations(stalks):
        if any(a.shift > b.shift for a, b in zip(perm, perm[1:])):
            continue
        if is_exceptional_sequence([s.module for s in perm]):
            n = stalks[0].module.quiver.n
            return True, len(stalks) == n
    return False, False


def check_silting(q, lo=0, hi=None):
    """Partial silting against slice-ordered exceptional orderings.

    Runs over every basic stalk candidate with degrees in ``[lo, hi]`` and at
    most n+1 summands; silting objects must be exactly the complete ones and
    must not extend further inside the window.
    """
    n = q.n
    hi = n if hi is None else hi
    stalks = [Stalk(X, d) for d in range(lo, hi + 1) for X in enumerate_indecomposables(q)]
    counts = {"partial": 0, "silting": 0}
    for size in range(1, n + 2):
        for combo in itertools.combinations(stalks, size):
            T = SiltingCandidate(combo)
            partial, complete = _slice_ordered_exceptional(combo)
            if is_partial_silting(T) != partial:
                return False, f"partial silting disagrees with ordering on {T}"
            if is_silting(T) != complete:
                return False, f"silting disagrees with complete ordering on {T}"
            if partial:
                counts["partial"] += 1
                if size > n:
                    return False, f"partial silting object {T} with {size} summands"
            if complete:
                counts["silting"] += 1
                # maximal: no further stalk in the window can be added
                for s in stalks:
                    if s not in combo and is_partial_silting(T.plus(s)):
                        return False, f"silting {T} extends by {s}"
    return True, f"{counts['partial']} partial silting, {counts['silting']} silting, all with n summands"


def _rigid_subsets(q, m, size):
    dom = fundamental_domain(q, m)
    for combo in itertools.combinations(dom, size):
        if is_m_rigid(combo, m):
            yield list(combo)


def check_rigidity(q, m):
    """Rigidity in D against rigidity in ``C_m``, for every basic object of ``S_m``.

    Objects with more than n+1 summands need no separate check: both sides
    pass to direct summands, and no n+1 summands are rigid on either side.
    """
    dom = fundamental_domain(q, m)
    # the lemma is about all 1 <= i <= m at once; single degrees can differ
    for X, Y in itertools.combinations_with_replacement(dom, 2):
        pairs = [(X, Y), (Y, X)]
        d_side = all(ext_d_dim(A, B, i) == 0 for A, B in pairs for i in range(1, m + 1))
        c_side = all(ext_cm_dim(A, B, i, m) == 0 for A, B in pairs for i in range(1, m + 1))
        if d_side != c_side:
            return False, f"Ext vanishing differs on {X} (+) {Y}"
    checked = 0
    for size in range(1, q.n + 2):
        for combo in itertools.combinations(dom, size):
            checked += 1
            T = SiltingCandidate(combo)
            if is_partial_silting(T) != is_m_rigid(combo, m):
                return False, f"partial silting vs m-rigid differ on {T}"
            if is_silting(T) != is_m_cluster_tilting(combo, m):
                return False, f"silting vs m-cluster tilting differ on {T}"
    return True, f"{len(dom)} indecomposables, {checked} objects"


def check_complements(q, m):
    """Complements, degree bounds and exchange triangles for every almost complete m-cluster tilting object."""
    count = 0
    for Tbar in _rigid_subsets(q, m, q.n - 1):
        count += 1
        chain = complements(Tbar, m)
        brute = brute_force_complements(Tbar, m)
        if len(chain) != m + 1 or len(brute) != m + 1:
            return False, f"{Tbar}: {len(brute)} complements"
        if not all(any(_same(a, b) for b in brute) for a in chain):
            return False, f"{Tbar}: chain {chain} vs brute force {brute}"
        for i, M in enumerate(chain):
            if not i - 1 <= M.shift <= i:
                return False, f"{Tbar}: d(M_{i}) = {M.shift}"
            if i < m and M.shift > chain[i + 1].shift:
                return False, f"{Tbar}: degrees decrease after M_{i}"
        tris = exchange_triangles(Tbar, m)
        if len(tris) != m + 1 or not all(t.in_d for t in tris[:-1]) or tris[-1].in_d:
            return False, f"{Tbar}: triangle shape {[t.in_d for t in tris]}"
        for t in tris:
            check_dmap_criterion(t, m)
    return True, f"{count} almost complete objects"


def check_periodicity(q, m, lo=-3, hi=None):
    """Complements in the window ``[lo, hi]`` are shifts of the end terms of the central chain."""
    hi = m + 3 if hi is None else hi
    count = 0
    for Tbar in _rigid_subsets(q, m, q.n - 1):
        count += 1
        chain = d_chain(Tbar, m, lo - 1, hi + 1)
        if not shift_periodicity_holds(chain, m):
            return False, f"{Tbar}: chain {chain} is not shift-periodic"
        window = [r.stalk for r in silting_complements_in_window(SiltingCandidate(tuple(Tbar)), (lo, hi))]
        expected = [M for M in chain.values() if lo <= M.shift <= hi]
        if len(window) != len(expected) or not all(any(_same(a, b) for b in expected) for a in window):
            return False, f"{Tbar}: window scan {window} vs chain {expected}"
    return True, f"{count} almost complete objects, window [{lo}, {hi}]"


def _almost_complete_sequences(q):
    seen, out = set(), []
    for s in enumerate_complete_sequences(q):
        for j in range(q.n):
            terms = s.terms[:j] + s.terms[j + 1:]
            key = tuple(M.dim for M in terms)
            if key not in seen:
                seen.add(key)
                out.append(terms)
    return out


def check_placement(q):
    if q.n == 1:
        p = place_rank_one(q)
        ok = all(ok for ok, _ in verify_placement(p).values())
        return ok, "rank one: the single complement sits in degree 0"
    seqs = _almost_complete_sequences(q)
    rules = set()
    for E in seqs:
        p = place_almost_complete(E)
        comps = complements_almost_complete(ExceptionalSequence(E))
        if len(p.C) != q.n or not all(is_isomorphic(a, M) for a, (_, M) in zip(p.C, comps)):
            return False, f"{list(E)}: placed complements differ from the module complements"
        for clause, (ok, witness) in verify_placement(p).items():
            if not ok:
                return False, f"{list(E)}: clause {clause}: {witness}"
        rules.update(p.rules)
    return True, f"{len(seqs)} sequences placed, rules used {sorted(rules)}"


def check_oracles(q, shifts=2):
    mods = enumerate_indecomposables(q)
    for X in mods:
        for Y in mods:
            if ext1_dim(X, Y) != ext1_dim_by_resolution(X, Y):
                return False, f"Ext^1({X.label()}, {Y.label()}) differs from the resolution"
    pairs = 0
    for X in mods:
        for Y in mods:
            for b in range(-shifts, shifts + 1):
                pairs += 1
                lhs = hom_d_dim(X, 0, Y, b)
                rhs = hom_d_dim_complexes(DerivedObject.stalk(X, 0), DerivedObject.stalk(Y, b))
                if lhs != rhs:
                    return False, f"Hom_D({X.label()}, {Y.label()}[{b}]): {lhs} vs {rhs}"
    return True, f"Ext^1 on {len(mods) ** 2} pairs, Hom_D on {pairs} shifted pairs"


def check_duality(q, m=1):
    mods = enumerate_indecomposables(q)
    for X in mods:
        if is_projective_module(X):
            continue
        tX = ar_translate(X)
        if tX.shift != 0:
            return False, f"tau {X.label()} is not a module"
        for Y in mods:
            if ext1_dim(X, Y) != hom_dim(Y, tX.module):
                return False, f"Ext^1({X.label()}, {Y.label()}) != Hom({Y.label()}, tau {X.label()})"
    dom = fundamental_domain(q, m)
    for X in dom:
        for Y in dom:
            if ext_cm_dim(X, Y, 1, m) != ext_cm_dim(Y, X, 1, m):
                return False, f"Ext^1_C({X}, {Y}) is not symmetric"
    return True, f"AR duality on {len(mods)} modules, symmetry on {len(dom)} objects of C_{m}"


def verify_all(q, max_m: int = 1, silting_rank: int = 3) -> list[SuiteResult]:
    """Run every suite on ``q``; the silting scan is skipped above ``silting_rank``."""
    out = [
        _run("sequences", check_sequences, q),
        _run("homext", check_homext, q),
    ]
    if q.n <= silting_rank:
        out.append(_run("silting", check_silting, q))
    for m in range(1, max_m + 1):
        out.append(_run(f"rigidity m={m}", check_rigidity, q, m))
        if q.n == 1:
            # the only almost complete object is zero
            continue
        out.append(_run(f"complements m={m}", check_complements, q, m))
        out.append(_run(f"periodicity m={m}", check_periodicity, q, m))
    out.append(_run("placement", check_placement, q))
    out.append(_run("oracles", check_oracles, q))
    out.append(_run("duality", check_duality, q))
    return out
