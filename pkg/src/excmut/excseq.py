"""Exceptional sequences and their mutations.

Mutation indices are 1-based (``mutate(seq, 1)`` acts on the first two
terms).  Complements of an almost complete sequence are indexed by
0-based insertion position.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from . import exactla as la
from .errors import (
    ApproximationNeitherMonoNorEpi,
    BadIndex,
    DomainError,
    InternalInconsistency,
)
from .repcat import (
    Morphism,
    Representation,
    canonical,
    cokernel,
    column_morphism,
    endo_dim_checked,
    enumerate_indecomposables,
    ext1_dim,
    extension_by_copies,
    extension_of_copies,
    hom_basis,
    hom_dim,
    is_exceptional,
    is_isomorphic,
    kernel,
    row_morphism,
)


def is_exceptional_sequence(terms) -> bool:
    terms = list(terms)
    if not all(is_exceptional(E) for E in terms):
        return False
    for i, j in itertools.combinations(range(len(terms)), 2):
        if hom_dim(terms[j], terms[i]) or ext1_dim(terms[j], terms[i]):
            return False
    return True


class InvalidSequence(DomainError):
    pass


@dataclass(frozen=True)
class ExceptionalSequence:
    terms: tuple[Representation, ...]

    def __post_init__(self):
        if self.terms and len(self.terms) > self.terms[0].quiver.n:
            raise InvalidSequence("an exceptional sequence has at most n terms")
        if not is_exceptional_sequence(self.terms):
            raise InvalidSequence("terms do not form an exceptional sequence: "
                                  + ", ".join(E.label() for E in self.terms))

    @classmethod
    def of(cls, *terms) -> "ExceptionalSequence":
        return cls(tuple(terms))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    @property
    def quiver(self):
        return self.terms[0].quiver

    def is_complete(self) -> bool:
        return bool(self.terms) and len(self.terms) == self.quiver.n

    def key(self) -> tuple:
        return tuple(E.dim for E in self.terms)

    def labels(self) -> list[str]:
        return [E.label() for E in self.terms]

    def same_as(self, other: "ExceptionalSequence") -> bool:
        return len(self) == len(other) and all(is_isomorphic(a, b) for a, b in zip(self, other))

    def __repr__(self):
        return "(" + ", ".join(self.labels()) + ")"


# approximations inside mod H


def _spans(maps, space) -> bool:
    """Whether ``maps`` span the same space as the basis ``space``."""
    if not space:
        return True
    length = len(space[0].flat())
    return la.rank_of_vectors([f.flat() for f in maps], length) == len(space)


def minimal_left_approximation(C: Representation, A: Representation) -> Morphism | None:
    """Minimal left add(A)-approximation ``C -> A^t``; ``None`` when Hom(C, A) = 0."""
    endo_dim_checked(A)
    basis = list(hom_basis(C, A))
    if not basis:
        return None
    copies = list(basis)
    k = 0
    while k < len(copies):
        trial = copies[:k] + copies[k + 1:]
        # with End(A) = k, maps C -> A factoring through the stack are the span
        if trial and _spans(trial, basis):
            copies = trial
        else:
            k += 1
    return column_morphism(copies)


def minimal_right_approximation(A: Representation, C: Representation) -> Morphism | None:
    """Minimal right add(A)-approximation ``A^t -> C``; ``None`` when Hom(A, C) = 0."""
    endo_dim_checked(A)
    basis = list(hom_basis(A, C))
    if not basis:
        return None
    copies = list(basis)
    k = 0
    while k < len(copies):
        trial = copies[:k] + copies[k + 1:]
        if trial and _spans(trial, basis):
            copies = trial
        else:
            k += 1
    return row_morphism(copies)


def left_minimality_certificate(f: Morphism, A: Representation) -> bool:
    """Deleting any single copy of ``A`` from ``f: C -> A^t`` loses the approximation property."""
    C = f.source
    t = f.target.total_dim // A.total_dim
    basis = list(hom_basis(C, A))
    comps = _split_column(f, A, t)
    for k in range(t):
        if _spans(comps[:k] + comps[k + 1:], basis):
            return False
    return _spans(comps, basis)


def _split_column(f: Morphism, A: Representation, t: int) -> list[Morphism]:
    out = []
    for c in range(t):
        comps = []
        for v, M in enumerate(f.comps):
            d = A.dim[v]
            comps.append(la.Matrix(d, M.cols, M.data[c * d:(c + 1) * d]))
        out.append(Morphism(f.source, A, tuple(comps)))
    return out


def _as_exceptional(X: Representation, context: str) -> Representation:
    if not is_exceptional(X):
        raise InternalInconsistency(f"{context}: result {X.label()} is not exceptional")
    endo_dim_checked(X)
    return canonical(X)


def right_mutation_term(E: Representation, F: Representation) -> Representation:
    """``E*`` for the pair ``(E, F)``: the new right-hand term after right mutation."""
    if hom_dim(E, F):
        f = minimal_left_approximation(E, F)
        if f.is_epi():
            K, _ = kernel(f)
            return _as_exceptional(K, "kernel of epi approximation")
        if f.is_mono():
            Q, _ = cokernel(f)
            return _as_exceptional(Q, "cokernel of mono approximation")
        raise ApproximationNeitherMonoNorEpi(f"approximation {E.label()} -> {F.label()}^t")
    if ext1_dim(E, F):
        X, _ = extension_by_copies(E, F)
        return _as_exceptional(X, "universal extension")
    return E


def left_mutation_term(E: Representation, F: Representation) -> Representation:
    """The new left-hand term after left mutation of the pair ``(E, F)``."""
    if hom_dim(E, F):
        g = minimal_right_approximation(E, F)
        if g.is_epi():
            K, _ = kernel(g)
            return _as_exceptional(K, "kernel of epi approximation")
        if g.is_mono():
            Q, _ = cokernel(g)
            return _as_exceptional(Q, "cokernel of mono approximation")
        raise ApproximationNeitherMonoNorEpi(f"approximation {E.label()}^t -> {F.label()}")
    if ext1_dim(E, F):
        X, _ = extension_of_copies(E, F)
        return _as_exceptional(X, "universal extension")
    return F


def _check_index(seq, i):
    if not 1 <= i <= len(seq) - 1:
        raise BadIndex(f"mutation index {i} outside 1..{len(seq) - 1}")


def mutate(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    """Right mutation: ``(..., E_i, E_{i+1}, ...) -> (..., E_{i+1}, E_i*, ...)``."""
    _check_index(seq, i)
    E, F = seq[i - 1], seq[i]
    terms = list(seq.terms)
    terms[i - 1:i + 1] = [F, right_mutation_term(E, F)]
    return _checked(terms)


def mutate_inverse(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    """Left mutation, the inverse of :func:`mutate` at the same index."""
    _check_index(seq, i)
    E, F = seq[i - 1], seq[i]
    terms = list(seq.terms)
    terms[i - 1:i + 1] = [left_mutation_term(E, F), E]
    return _checked(terms)


def _checked(terms) -> ExceptionalSequence:
    try:
        return ExceptionalSequence(tuple(terms))
    except InvalidSequence as exc:
        raise InternalInconsistency(f"mutation produced an invalid sequence: {exc}") from None


# complements and enumeration


def complements_almost_complete(seq: ExceptionalSequence | tuple, indecs=None) -> list[tuple[int, Representation]]:
    """For each insertion position ``j`` (0-based), the unique module completing ``seq``.

    ``indecs`` restricts the scan (used for perpendicular categories); the
    default is every indecomposable of a Dynkin quiver.
    """
    terms = list(seq)
    if indecs is None:
        indecs = enumerate_indecomposables(terms[0].quiver)
    out = []
    for j in range(len(terms) + 1):
        found = [M for M in indecs
                 if _fits(terms[:j], M, terms[j:])]
        if len(found) != 1:
            raise InternalInconsistency(
                f"position {j} has {len(found)} completing modules, expected exactly one")
        out.append((j, found[0]))
    return out


def _fits(before, M, after) -> bool:
    if not is_exceptional(M):
        return False
    for E in before:
        if hom_dim(M, E) or ext1_dim(M, E):
            return False
    for E in after:
        if hom_dim(E, M) or ext1_dim(E, M):
            return False
    return True


def _pair_tables(mods):
    k = len(mods)
    ok = [[hom_dim(mods[b], mods[a]) == 0 and ext1_dim(mods[b], mods[a]) == 0
           for b in range(k)] for a in range(k)]
    return ok  # ok[a][b]: b may follow a


def enumerate_complete_sequences(q) -> list[ExceptionalSequence]:
    """All complete exceptional sequences, by exhaustive extension of ordered tuples."""
    mods = [M for M in enumerate_indecomposables(q) if ext1_dim(M, M) == 0]
    ok = _pair_tables(mods)
    n = q.n
    results = []

    def extend(prefix):
        if len(prefix) == n:
            results.append(tuple(prefix))
            return
        for b in range(len(mods)):
            if b not in prefix and all(ok[a][b] for a in prefix):
                extend(prefix + [b])

    extend([])
    seqs = [ExceptionalSequence(tuple(mods[i] for i in t)) for t in results]
    seqs.sort(key=ExceptionalSequence.key)
    return seqs


def simple_sequence(q) -> ExceptionalSequence:
    """The simples ordered so that they form an exceptional sequence."""
    from .repcat import simple

    order = list(q.topological_order)
    return ExceptionalSequence(tuple(simple(q, v) for v in order))


def mutation_orbit(start: ExceptionalSequence) -> list[ExceptionalSequence]:
    """Closure of ``start`` under all mutations and inverse mutations."""
    seen = {start.key(): start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for i in range(1, len(s)):
            for t in (mutate(s, i), mutate_inverse(s, i)):
                if t.key() not in seen:
                    seen[t.key()] = t
                    queue.append(t)
    return sorted(seen.values(), key=ExceptionalSequence.key)


def perpendicular_subcategory(A: Representation, indecs=None):
    """``(indecomposables U with Hom(A,U) = Ext^1(A,U) = 0, their Ext-projectives)``."""
    if indecs is None:
        indecs = enumerate_indecomposables(A.quiver)
    perp = [U for U in indecs if hom_dim(A, U) == 0 and ext1_dim(A, U) == 0]
    return perp, ext_projectives(perp)


def ext_projectives(mods) -> list[Representation]:
    return [U for U in mods if all(ext1_dim(U, V) == 0 for V in mods)]


# mutation triangles


@dataclass(frozen=True)
class MutationTriangle:
    """``C -> A^r[v] -> C'[w] ->`` with ``f`` a minimal left thick(A)-approximation."""
    source: Representation
    middle: Representation
    multiplicity: int
    v: int
    result: Representation
    w: int

    def __post_init__(self):
        if self.v not in (0, 1) or self.w not in (0, 1):
            raise InternalInconsistency("triangle shifts must lie in {0, 1}")
        if self.multiplicity == 0 and (self.w != 1 or not is_isomorphic(self.result, self.source)):
            raise InternalInconsistency("orthogonal triangle must have C' = C and w = 1")


def mutation_triangle(C: Representation, A: Representation) -> MutationTriangle:
    """Triangle for the exceptional pair ``(C, A)``, computed as a mapping cone."""
    from .derived import cone, DerivedObject, hom_d_classes, normalize_stalks, stack_maps

    if not is_exceptional_sequence([C, A]):
        raise InvalidSequence(f"({C.label()}, {A.label()}) is not an exceptional pair")
    h, e = hom_dim(C, A), ext1_dim(C, A)
    if h and e:
        raise InternalInconsistency("Hom and Ext^1 both nonzero for an exceptional pair")
    if not h and not e:
        return MutationTriangle(C, A, 0, 0, C, 1)
    v = 0 if h else 1
    src = DerivedObject.stalk(C, 0)
    tgt = DerivedObject.stalk(A, v)
    classes = hom_d_classes(src, tgt)
    f = stack_maps(src, [(tgt, phi) for phi in classes])
    stalks = normalize_stalks(cone(f))
    if len(stalks) != 1:
        raise InternalInconsistency(f"cone of the approximation has {len(stalks)} summands")
    (X, shift), = [(s.module, s.shift) for s in stalks]
    result = _as_exceptional(X, "cone of the thick approximation")
    if not is_isomorphic(result, right_mutation_term(C, A)):
        raise InternalInconsistency("cone of the approximation disagrees with the mutation")
    return MutationTriangle(C, A, len(classes), v, result, shift)
