"""The bounded derived category of a path algebra, as bounded complexes of projectives.

Cohomological conventions: ``X[s]`` has ``H^{-s}(X[s]) = X``.  A module
``M`` placed in degree ``s`` is modelled by its minimal projective
resolution ``K -> P0`` sitting in degrees ``-s-1, -s``.  Hom spaces are
chain maps modulo homotopy, which is exact for projective complexes.
Because the algebra is hereditary, every object is the sum of its
shifted cohomology modules; :func:`normalize_stalks` computes that form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import exactla as la
from .errors import DomainError, InternalInconsistency, RepInfinite
from .exactla import Matrix
from .quiver import Quiver, is_dynkin
from .repcat import (
    Morphism,
    Representation,
    Stalk,
    block_morphism,
    canonical,
    cokernel,
    decompose,
    direct_sum,
    enumerate_indecomposables,
    ext1_dim,
    factor_through_mono,
    hom_basis,
    hom_dim,
    is_isomorphic,
    kernel,
    projective,
    zero_morphism,
    zero_representation,
)


# objects


@dataclass(frozen=True)
class DerivedObject:
    """Complex ``terms[0] -> terms[1] -> ...`` with ``terms[0]`` in degree ``lo``."""
    quiver: Quiver
    lo: int
    terms: tuple[Representation, ...]
    diffs: tuple[Morphism, ...]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise InternalInconsistency("a complex needs one differential between consecutive terms")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise InternalInconsistency(f"d o d != 0 at degree {self.lo + k}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, k: int) -> Representation:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        return zero_representation(self.quiver)

    def diff(self, k: int) -> Morphism:
        """``d^k: X^k -> X^{k+1}``."""
        if self.lo <= k < self.hi:
            return self.diffs[k - self.lo]
        return zero_morphism(self.term(k), self.term(k + 1))

    def is_zero(self) -> bool:
        return all(T.is_zero() for T in self.terms)

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @classmethod
    def build(cls, q: Quiver, lo: int, terms, diffs) -> "DerivedObject":
        """Construct, trimming zero terms at both ends."""
        terms, diffs = list(terms), list(diffs)
        while terms and terms[0].is_zero():
            terms.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        while terms and terms[-1].is_zero():
            terms.pop()
            if diffs:
                diffs.pop()
        if not terms:
            return cls(q, 0, (), ())
        return cls(q, lo, tuple(terms), tuple(diffs))

    @classmethod
    def zero(cls, q: Quiver) -> "DerivedObject":
        return cls(q, 0, (), ())

    @classmethod
    def stalk(cls, M: Representation, s: int = 0) -> "DerivedObject":
        """``M[s]`` via its minimal projective resolution."""
        return _stalk_complex(M, s)

    def shift(self, s: int) -> "DerivedObject":
        return shift(self, s)

    def __repr__(self):
        body = " -> ".join(f"{T.dim}@{self.lo + i}" for i, T in enumerate(self.terms))
        return f"DerivedObject({body or '0'})"


def projective_cover(M: Representation) -> Morphism:
    """Minimal epimorphism ``(+) P_v^{t_v} -> M`` with ``t = dim top(M)``."""
    q = M.quiver
    gens = []
    for v in range(q.n):
        rad = [M.maps[a].column(c) for a in q.arrows_into[v] for c in range(M.maps[a].cols)]
        units = [tuple(int(i == j) for i in range(M.dim[v])) for j in range(M.dim[v])]
        for idx in la.extend_to_basis(rad, units, M.dim[v]):
            gens.append((v, units[idx]))
    maps = []
    for v, m in gens:
        P = projective(q, v)
        H = hom_basis(P, M)
        # P_v is one-dimensional at v, so a map is fixed by the image of the generator
        A = Matrix.from_columns([h.comps[v].column(0) for h in H], M.dim[v])
        coeffs = la.solve(A, m)
        phi = zero_morphism(P, M)
        for c, h in zip(coeffs, H):
            if c:
                phi = phi + h.scale(c)
        maps.append(phi)
    if not maps:
        return zero_morphism(zero_representation(q), M)
    return block_morphism([f.source for f in maps], [M], [maps])


@lru_cache(maxsize=20_000)
def _stalk_complex(M: Representation, s: int) -> DerivedObject:
    q = M.quiver
    if M.is_zero():
        return DerivedObject.zero(q)
    p = projective_cover(M)
    if not p.is_epi():
        raise InternalInconsistency("projective cover is not onto")
    K, iota = kernel(p)
    return DerivedObject.build(q, -s - 1, [K, p.source], [iota])


def shift(X: DerivedObject, s: int) -> DerivedObject:
    if s == 0 or not X.terms:
        return X
    sign = -1 if s % 2 else 1
    return DerivedObject(X.quiver, X.lo - s, X.terms, tuple(d.scale(sign) for d in X.diffs))


def direct_sum_objects(objs) -> tuple[DerivedObject, list["ChainMap"], list["ChainMap"]]:
    """``(S, injections, projections)`` for the direct sum of ``objs``."""
    objs = list(objs)
    q = objs[0].quiver
    nonzero = [X for X in objs if X.terms]
    if not nonzero:
        S = DerivedObject.zero(q)
        return S, [ChainMap.zero(X, S) for X in objs], [ChainMap.zero(S, X) for X in objs]
    lo = min(X.lo for X in nonzero)
    hi = max(X.hi for X in nonzero)
    terms = [direct_sum([X.term(k) for X in objs], q) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo, hi):
        grid = [[X.diff(k) if i == j else None for j, X in enumerate(objs)] for i, Y in enumerate(objs)]
        diffs.append(block_morphism([X.term(k) for X in objs], [X.term(k + 1) for X in objs], grid))
    S = DerivedObject(q, lo, tuple(terms), tuple(diffs))
    incs, projs = [], []
    for i, X in enumerate(objs):
        inc, pr = {}, {}
        for k in range(lo, hi + 1):
            srcs = [Y.term(k) for Y in objs]
            inc[k] = block_morphism([X.term(k)], srcs, [[_identity(X.term(k)) if j == i else None] for j in range(len(objs))])
            pr[k] = block_morphism(srcs, [X.term(k)], [[_identity(X.term(k)) if j == i else None for j in range(len(objs))]])
        incs.append(ChainMap.from_dict(X, S, inc))
        projs.append(ChainMap.from_dict(S, X, pr))
    return S, incs, projs


def _identity(X: Representation) -> Morphism:
    return Morphism(X, X, tuple(Matrix.identity(d) for d in X.dim))


# chain maps


@dataclass(frozen=True)
class ChainMap:
    source: DerivedObject
    target: DerivedObject
    lo: int
    comps: tuple[Morphism, ...]

    @classmethod
    def from_dict(cls, X: DerivedObject, Y: DerivedObject, comps: dict) -> "ChainMap":
        lo, hi = _span(X, Y)
        return cls(X, Y, lo, tuple(comps.get(k) or zero_morphism(X.term(k), Y.term(k))
                                   for k in range(lo, hi + 1)))

    @classmethod
    def zero(cls, X: DerivedObject, Y: DerivedObject) -> "ChainMap":
        return cls.from_dict(X, Y, {})

    def comp(self, k: int) -> Morphism:
        i = k - self.lo
        if 0 <= i < len(self.comps):
            return self.comps[i]
        return zero_morphism(self.source.term(k), self.target.term(k))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition ``self o other``."""
        X, Z = other.source, self.target
        lo, hi = _span(X, Z)
        return ChainMap.from_dict(X, Z, {k: self.comp(k) @ other.comp(k) for k in range(lo, hi + 1)})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        lo, hi = _span(self.source, self.target)
        return ChainMap.from_dict(self.source, self.target,
                                  {k: self.comp(k) + other.comp(k) for k in range(lo, hi + 1)})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, self.lo, tuple(f.scale(c) for f in self.comps))

    def is_chain_map(self) -> bool:
        lo, hi = _span(self.source, self.target)
        return all((self.target.diff(k) @ self.comp(k)) .flat() == (self.comp(k + 1) @ self.source.diff(k)).flat()
                   for k in range(lo - 1, hi + 1))

    def flat(self, lo: int, hi: int) -> tuple:
        return tuple(x for k in range(lo, hi + 1) for x in self.comp(k).flat())


def _span(X: DerivedObject, Y: DerivedObject) -> tuple[int, int]:
    degs = [d for Z in (X, Y) if Z.terms for d in (Z.lo, Z.hi)]
    if not degs:
        return 0, -1
    return min(degs), max(degs)


@dataclass(frozen=True)
class HomSpace:
    """``Hom_D(X, Y)``: cycles ``z`` and boundaries ``b`` as flattened chain maps."""
    source: DerivedObject
    target: DerivedObject
    lo: int
    hi: int
    cycles: tuple[tuple, ...]
    boundaries: tuple[tuple, ...]
    classes: tuple[ChainMap, ...]

    @property
    def dim(self) -> int:
        return len(self.classes)

    @property
    def length(self) -> int:
        return sum(self.target.term(k).dim[v] * self.source.term(k).dim[v]
                   for k in range(self.lo, self.hi + 1) for v in range(self.source.quiver.n))

    def contains_all(self, maps) -> bool:
        """Whether ``maps`` together with the boundaries span every cycle."""
        vecs = [f.flat(self.lo, self.hi) for f in maps] + list(self.boundaries)
        return la.rank_of_vectors(vecs + list(self.cycles), self.length) == la.rank_of_vectors(vecs, self.length)


@lru_cache(maxsize=50_000)
def hom_space(X: DerivedObject, Y: DerivedObject) -> HomSpace:
    lo, hi = _span(X, Y)
    q = X.quiver
    # chain maps: coordinates in hom_basis(X^k, Y^k), condition d_Y f^k = f^{k+1} d_X
    var = [(k, h) for k in range(lo, hi + 1) for h in hom_basis(X.term(k), Y.term(k))]
    cols = []
    for k, h in var:
        col = []
        for c in range(lo - 1, hi + 1):
            if c == k:
                part = Y.diff(k) @ h
            elif c == k - 1:
                part = (h @ X.diff(k - 1)).scale(-1)
            else:
                part = zero_morphism(X.term(c), Y.term(c + 1))
            col.extend(part.flat())
        cols.append(col)
    nrows = len(cols[0]) if cols else 0
    A = Matrix.from_columns(cols, nrows) if cols else Matrix.zeros(0, 0)
    cycles = []
    for vec in la.kernel_basis(A):
        f = {}
        for (k, h), c in zip(var, vec):
            if c:
                f[k] = f[k] + h.scale(c) if k in f else h.scale(c)
        cycles.append(ChainMap.from_dict(X, Y, f))
    # homotopies h^k: X^k -> Y^{k-1} give d_Y h^k + h^{k+1} d_X
    bounds = []
    for k in range(lo, hi + 2):
        for h in hom_basis(X.term(k), Y.term(k - 1)):
            f = {k: Y.diff(k - 1) @ h, k - 1: h @ X.diff(k - 1)}
            bounds.append(ChainMap.from_dict(X, Y, f))
    zf = [f.flat(lo, hi) for f in cycles]
    bf = [f.flat(lo, hi) for f in bounds]
    length = sum(Y.term(k).dim[v] * X.term(k).dim[v] for k in range(lo, hi + 1) for v in range(q.n))
    chosen = la.extend_to_basis(bf, zf, length)
    if la.rank_of_vectors(bf + zf, length) != la.rank_of_vectors(zf, length):
        raise InternalInconsistency("a null-homotopic map is not a chain map")
    return HomSpace(X, Y, lo, hi, tuple(zf), tuple(bf), tuple(cycles[i] for i in chosen))


def hom_d_classes(X: DerivedObject, Y: DerivedObject) -> tuple[ChainMap, ...]:
    return hom_space(X, Y).classes


def hom_d_dim_complexes(X: DerivedObject, Y: DerivedObject) -> int:
    return hom_space(X, Y).dim


def hom_d_dim(X: Representation, a: int, Y: Representation, b: int) -> int:
    """``dim Hom_D(X[a], Y[b])`` by hereditary vanishing."""
    if b == a:
        return hom_dim(X, Y)
    if b == a + 1:
        return ext1_dim(X, Y)
    return 0


def stack_maps(X: DerivedObject, pairs) -> ChainMap:
    """``X -> (+) Y_i`` from maps ``f_i: X -> Y_i`` given as ``(Y_i, f_i)``."""
    S, incs, _ = direct_sum_objects([Y for Y, _ in pairs])
    total = ChainMap.zero(X, S)
    for inc, (_, f) in zip(incs, pairs):
        total = total + inc @ f
    return total


def join_maps(pairs, Y: DerivedObject) -> ChainMap:
    """``(+) X_i -> Y`` from maps ``g_i: X_i -> Y`` given as ``(X_i, g_i)``."""
    S, _, projs = direct_sum_objects([X for X, _ in pairs])
    total = ChainMap.zero(S, Y)
    for pr, (_, g) in zip(projs, pairs):
        total = total + g @ pr
    return total


# cones and cohomology


def cone(f: ChainMap) -> DerivedObject:
    """``Cone^k = X^{k+1} (+) Y^k`` with ``d = [[-d_X, 0], [f, d_Y]]``."""
    X, Y = f.source, f.target
    q = X.quiver
    degs = [d for d in ([X.lo - 1, X.hi - 1] if X.terms else []) + ([Y.lo, Y.hi] if Y.terms else [])]
    if not degs:
        return DerivedObject.zero(q)
    lo, hi = min(degs), max(degs)
    terms = [direct_sum([X.term(k + 1), Y.term(k)], q) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo, hi):
        grid = [[X.diff(k + 1).scale(-1), None], [f.comp(k + 1), Y.diff(k)]]
        diffs.append(block_morphism([X.term(k + 1), Y.term(k)], [X.term(k + 2), Y.term(k + 1)], grid))
    return DerivedObject.build(q, lo, terms, diffs)


def cocone(g: ChainMap) -> tuple[DerivedObject, ChainMap]:
    """``Z = Cone(g)[-1]`` with its map ``Z -> X``, completing ``Z -> X -> Y -> Z[1]``."""
    X = g.source
    C = cone(g)
    Z = shift(C, -1)
    # Z^k = X^k (+) Y^{k-1}; the map to X is the first projection
    comps = {}
    for k in Z.degrees():
        Xk, Yk = X.term(k), g.target.term(k - 1)
        comps[k] = block_morphism([Xk, Yk], [Xk], [[_identity(Xk), None]])
        if comps[k].source != Z.term(k):
            raise InternalInconsistency("cocone term does not match its block form")
    p = ChainMap.from_dict(Z, X, comps)
    return Z, p


def cohomology(X: DerivedObject, k: int) -> Representation:
    Zk, iota = kernel(X.diff(k))
    g = factor_through_mono(X.diff(k - 1), iota)
    H, _ = cokernel(g)
    return H


@lru_cache(maxsize=20_000)
def normalize_stalks(X: DerivedObject) -> tuple[Stalk, ...]:
    """Indecomposable stalk summands ``H[s]``, sorted by (shift, dimension vector)."""
    out = []
    for k in X.degrees():
        H = cohomology(X, k)
        if H.is_zero():
            continue
        for P, mult in decompose(H):
            out.extend([Stalk(canonical(P), -k)] * mult)
    out.sort(key=lambda s: (s.shift, s.module.dim))
    return tuple(out)


def is_isomorphic_stalks(a, b) -> bool:
    """Multisets of stalks agree up to isomorphism."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    used = set()
    for s in a:
        for j, t in enumerate(b):
            if j not in used and s.shift == t.shift and is_isomorphic(s.module, t.module):
                used.add(j)
                break
        else:
            return False
    return True


# approximations in D


def _factor_ok_right(summands, copies, Y) -> bool:
    """Every map ``S -> Y`` (S a summand) factors through ``copies`` up to homotopy."""
    for S in summands:
        H = hom_space(S, Y)
        if not H.dim:
            continue
        comps = [g @ psi for T, g in copies for psi in hom_d_classes(S, T)]
        if not H.contains_all(comps):
            return False
    return True


def _factor_ok_left(X, summands, copies) -> bool:
    for S in summands:
        H = hom_space(X, S)
        if not H.dim:
            continue
        comps = [psi @ f for T, f in copies for psi in hom_d_classes(T, S)]
        if not H.contains_all(comps):
            return False
    return True


def minimal_right_approximation_d(summands, Y: DerivedObject) -> list[tuple[DerivedObject, ChainMap]]:
    """Copies ``(T, g: T -> Y)`` forming a minimal right add-approximation of ``Y``."""
    summands = list(summands)
    copies = [(T, g) for T in summands for g in hom_d_classes(T, Y)]
    k = 0
    while k < len(copies):
        trial = copies[:k] + copies[k + 1:]
        if _factor_ok_right(summands, trial, Y):
            copies = trial
        else:
            k += 1
    return copies


def minimal_left_approximation_d(X: DerivedObject, summands) -> list[tuple[DerivedObject, ChainMap]]:
    """Copies ``(T, f: X -> T)`` forming a minimal left add-approximation of ``X``."""
    summands = list(summands)
    copies = [(T, f) for T in summands for f in hom_d_classes(X, T)]
    k = 0
    while k < len(copies):
        trial = copies[:k] + copies[k + 1:]
        if _factor_ok_left(X, summands, trial):
            copies = trial
        else:
            k += 1
    return copies


def right_minimality_certificate(summands, copies, Y) -> bool:
    if not _factor_ok_right(summands, copies, Y):
        return False
    return all(not _factor_ok_right(summands, copies[:k] + copies[k + 1:], Y) for k in range(len(copies)))


def left_minimality_certificate(X, summands, copies) -> bool:
    if not _factor_ok_left(X, summands, copies):
        return False
    return all(not _factor_ok_left(X, summands, copies[:k] + copies[k + 1:]) for k in range(len(copies)))


# silting


class InvalidCandidate(DomainError):
    pass


@dataclass(frozen=True)
class SiltingCandidate:
    summands: tuple[Stalk, ...]

    def __post_init__(self):
        for s, t in itertools.combinations(self.summands, 2):
            if s.shift == t.shift and is_isomorphic(s.module, t.module):
                raise InvalidCandidate(f"repeated summand {s}")

    @classmethod
    def of(cls, *pairs) -> "SiltingCandidate":
        """From ``(module, degree)`` pairs."""
        return cls(tuple(Stalk(M, d) for M, d in pairs))

    def sorted(self) -> "SiltingCandidate":
        return SiltingCandidate(tuple(sorted(self.summands, key=lambda s: (s.shift, s.module.dim))))

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def plus(self, s: Stalk) -> "SiltingCandidate":
        return SiltingCandidate(self.summands + (s,))

    def to_json(self) -> list:
        return [{"module": s.module.label(), "dim": list(s.module.dim), "degree": s.shift}
                for s in self.sorted().summands]

    def __repr__(self):
        return " (+) ".join(map(repr, self.summands)) or "0"


def stalk_pair_ok(X: Stalk, Y: Stalk) -> bool:
    """``Hom_D(X, Y[t]) = 0`` for all ``t > 0``."""
    a, b = X.shift, Y.shift
    if a > b and hom_dim(X.module, Y.module):
        return False
    if a >= b and ext1_dim(X.module, Y.module):
        return False
    return True


def is_partial_silting(T: SiltingCandidate) -> bool:
    return all(stalk_pair_ok(X, Y) for X in T for Y in T)


def is_silting(T: SiltingCandidate) -> bool:
    if not len(T):
        return False
    return len(T) == T.summands[0].module.quiver.n and is_partial_silting(T)


def staircase(seq) -> SiltingCandidate:
    return SiltingCandidate(tuple(Stalk(E, i) for i, E in enumerate(seq)))


def silting_order(T: SiltingCandidate):
    """The summands ordered as an exceptional sequence, or ``None``."""
    from .excseq import ExceptionalSequence, is_exceptional_sequence

    if not is_partial_silting(T):
        return None
    order = []
    for d in sorted({s.shift for s in T}):
        remaining = sorted((s.module for s in T if s.shift == d), key=lambda M: M.dim)
        while remaining:
            # a module with no nonzero map into it from another remaining module goes first
            free = [M for M in remaining
                    if not any(N is not M and hom_dim(N, M) for N in remaining)]
            if not free:
                return None
            order.append(free[0])
            remaining.remove(free[0])
    if not is_exceptional_sequence(order):
        return None
    return ExceptionalSequence(tuple(order))


@dataclass(frozen=True)
class ExchangeTriangle:
    """``M* -> B -> M -> M*[1]`` with ``B -> M`` a minimal right add(T)-approximation."""
    left: Stalk
    middle: tuple[Stalk, ...]
    right: Stalk


def exchange_triangle(Tbar: SiltingCandidate, M: Stalk) -> ExchangeTriangle:
    summands = [DerivedObject.stalk(s.module, s.shift) for s in Tbar]
    Y = DerivedObject.stalk(M.module, M.shift)
    copies = minimal_right_approximation_d(summands, Y)
    if not copies:
        # B = 0, so the triangle is M[-1] -> 0 -> M
        return ExchangeTriangle(Stalk(M.module, M.shift - 1), (), M)
    g = join_maps(copies, Y)
    Z, p = cocone(g)
    left = normalize_stalks(Z)
    if len(left) != 1:
        raise InternalInconsistency(f"exchange cocone of {M} has {len(left)} summands")
    middle = tuple(sorted((s for T, _ in copies for s in normalize_stalks(T)),
                          key=lambda s: (s.shift, s.module.dim)))
    return ExchangeTriangle(left[0], middle, M)


@dataclass(frozen=True)
class ComplementRecord:
    stalk: Stalk
    triangle: ExchangeTriangle


def silting_complements_in_window(Tbar: SiltingCandidate, window: tuple[int, int]) -> list[ComplementRecord]:
    """Indecomposable stalks ``X[d]``, ``d`` in ``window``, completing ``Tbar`` to a silting object."""
    if not len(Tbar):
        raise InvalidCandidate("the almost complete object is empty; rank one has nothing to exchange")
    q = Tbar.summands[0].module.quiver
    if not is_dynkin(q):
        raise RepInfinite(f"{q} is not of Dynkin type")
    if len(Tbar) != q.n - 1 or not is_partial_silting(Tbar):
        raise InvalidCandidate("need a partial silting object with n-1 summands")
    lo, hi = window
    found = []
    for d in range(lo, hi + 1):
        for X in enumerate_indecomposables(q):
            s = Stalk(X, d)
            if any(t.shift == d and is_isomorphic(t.module, X) for t in Tbar):
                continue
            if is_silting(Tbar.plus(s)):
                found.append(s)
    out = []
    for s in found:
        tri = exchange_triangle(Tbar, s)
        nxt = tri.left
        if nxt.shift == s.shift and is_isomorphic(nxt.module, s.module):
            raise InternalInconsistency(f"exchange of {s} returned an isomorphic object")
        if not is_silting(Tbar.plus(nxt)):
            raise InternalInconsistency(f"exchange of {s} gave {nxt}, not a complement")
        out.append(ComplementRecord(s, tri))
    return out
