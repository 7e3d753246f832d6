"""Representations of a quiver over the rationals.

A representation holds one vector space dimension per vertex and one
exact matrix per arrow, of shape ``dim[target] x dim[source]``.  Hom spaces
are solved exactly from the commuting-square system; Ext^1 dimensions come
from the hereditary Euler identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import exactla as la
from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NotIndecomposable,
    RepInfinite,
    Unsupported,
)
from .exactla import Matrix
from .quiver import Quiver, coxeter_number, dynkin_type, euler_form, positive_root_count, REP_INFINITE


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dim: tuple[int, ...]
    maps: tuple[Matrix, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        q = self.quiver
        if len(self.dim) != q.n:
            raise DimensionMismatch(f"dimension vector {self.dim} does not fit {q.n} vertices")
        if len(self.maps) != len(q.arrows):
            raise DimensionMismatch("need exactly one matrix per arrow")
        for (s, t), M in zip(q.arrows, self.maps):
            if M.shape != (self.dim[t], self.dim[s]):
                raise DimensionMismatch(
                    f"arrow {s + 1}->{t + 1} needs a {self.dim[t]}x{self.dim[s]} matrix, got {M.shape}")

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def label(self) -> str:
        return self.name or "M(" + ",".join(map(str, self.dim)) + ")"

    def named(self, name: str) -> "Representation":
        return Representation(self.quiver, self.dim, self.maps, name)

    def __repr__(self):
        return f"<{self.label()} dim={self.dim}>"


@dataclass(frozen=True)
class Morphism:
    source: Representation
    target: Representation
    comps: tuple[Matrix, ...]

    def __post_init__(self):
        for v, M in enumerate(self.comps):
            if M.shape != (self.target.dim[v], self.source.dim[v]):
                raise DimensionMismatch(f"component at vertex {v + 1} has shape {M.shape}")

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self o other``."""
        return Morphism(other.source, self.target, tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, tuple(-a for a in self.comps))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    def flat(self) -> tuple:
        return tuple(x for M in self.comps for x in M.flat())

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.comps)

    def is_mono(self) -> bool:
        return all(la.rank(M) == M.cols for M in self.comps)

    def is_epi(self) -> bool:
        return all(la.rank(M) == M.rows for M in self.comps)

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_mono()

    def is_commuting(self) -> bool:
        X, Y = self.source, self.target
        return all(Y.maps[a] @ self.comps[s] == self.comps[t] @ X.maps[a]
                   for a, (s, t) in enumerate(X.quiver.arrows))


@dataclass(frozen=True)
class Stalk:
    """A module placed in a single degree: ``module[shift]``."""
    module: Representation
    shift: int

    def __repr__(self):
        return f"{self.module.label()}[{self.shift}]"


# construction helpers


def zero_representation(q: Quiver) -> Representation:
    return Representation(q, (0,) * q.n, tuple(Matrix.zeros(0, 0) for _ in q.arrows), "0")


def zero_morphism(X: Representation, Y: Representation) -> Morphism:
    return Morphism(X, Y, tuple(Matrix.zeros(Y.dim[v], X.dim[v]) for v in range(X.quiver.n)))


def identity(X: Representation) -> Morphism:
    return Morphism(X, X, tuple(Matrix.identity(d) for d in X.dim))


def from_matrices(q: Quiver, dim, maps, name=None) -> Representation:
    mats = []
    for (s, t), m in zip(q.arrows, maps):
        mats.append(m if isinstance(m, Matrix) else Matrix(dim[t], dim[s], m))
    return Representation(q, tuple(dim), tuple(mats), name)


def direct_sum(reps, q: Quiver | None = None) -> Representation:
    reps = list(reps)
    if not reps:
        return zero_representation(q)
    q = reps[0].quiver
    dim = tuple(sum(r.dim[v] for r in reps) for v in range(q.n))
    maps = tuple(Matrix.block_diag([r.maps[a] for r in reps]) for a in range(len(q.arrows)))
    return Representation(q, dim, maps)


def block_morphism(sources, targets, grid) -> Morphism:
    """Morphism ``(+)sources -> (+)targets`` from ``grid[i][j]: sources[j] -> targets[i]``.

    ``None`` entries are zero.
    """
    q = (sources or targets)[0].quiver
    S, T = direct_sum(sources, q), direct_sum(targets, q)
    comps = []
    for v in range(q.n):
        rows = []
        for i, Y in enumerate(targets):
            row = []
            for j, X in enumerate(sources):
                f = grid[i][j]
                row.append(f.comps[v] if f is not None else Matrix.zeros(Y.dim[v], X.dim[v]))
            rows.append(Matrix.hstack(row) if row else Matrix.zeros(Y.dim[v], 0))
        comps.append(Matrix.vstack(rows, S.dim[v]) if rows else Matrix.zeros(0, S.dim[v]))
    return Morphism(S, T, tuple(comps))


def column_morphism(f_list, target_reps=None) -> Morphism:
    """``X -> (+) Y_i`` stacking maps ``f_i: X -> Y_i``."""
    X = f_list[0].source
    return block_morphism([X], [f.target for f in f_list], [[f] for f in f_list])


def row_morphism(g_list) -> Morphism:
    """``(+) X_i -> Y`` from maps ``g_i: X_i -> Y``."""
    return block_morphism([g.source for g in g_list], [g_list[0].target], [list(g_list)])


# standard modules


def _paths_from(q: Quiver, i: int) -> list[tuple[int, tuple[int, ...]]]:
    """All paths starting at ``i`` as ``(end vertex, arrow tuple)``."""
    out = [(i, ())]
    frontier = [(i, ())]
    while frontier:
        nxt = []
        for v, p in frontier:
            for a in q.arrows_out_of[v]:
                nxt.append((q.arrows[a][1], p + (a,)))
        out.extend(nxt)
        frontier = nxt
    return out


def _paths_to(q: Quiver, i: int) -> list[tuple[int, tuple[int, ...]]]:
    """All paths ending at ``i`` as ``(start vertex, arrow tuple)``."""
    out = [(i, ())]
    frontier = [(i, ())]
    while frontier:
        nxt = []
        for v, p in frontier:
            for a in q.arrows_into[v]:
                nxt.append((q.arrows[a][0], (a,) + p))
        out.extend(nxt)
        frontier = nxt
    return out


@lru_cache(maxsize=None)
def projective(q: Quiver, i: int) -> Representation:
    """P_i (0-based ``i``): basis at ``j`` is the set of paths from ``i`` to ``j``."""
    paths = _paths_from(q, i)
    basis = [sorted(p for end, p in paths if end == v) for v in range(q.n)]
    index = [{p: k for k, p in enumerate(b)} for b in basis]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        M = [[0] * len(basis[s]) for _ in basis[t]]
        for k, p in enumerate(basis[s]):
            M[index[t][p + (a,)]][k] = 1
        maps.append(Matrix(len(basis[t]), len(basis[s]), M))
    return Representation(q, tuple(len(b) for b in basis), tuple(maps), f"P{i + 1}")


@lru_cache(maxsize=None)
def injective(q: Quiver, i: int) -> Representation:
    """I_i: basis at ``j`` is dual to the paths from ``j`` to ``i``."""
    paths = _paths_to(q, i)
    basis = [sorted(p for start, p in paths if start == v) for v in range(q.n)]
    index = [{p: k for k, p in enumerate(b)} for b in basis]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        M = [[0] * len(basis[s]) for _ in basis[t]]
        for k, p in enumerate(basis[t]):
            M[k][index[s][(a,) + p]] = 1
        maps.append(Matrix(len(basis[t]), len(basis[s]), M))
    return Representation(q, tuple(len(b) for b in basis), tuple(maps), f"I{i + 1}")


@lru_cache(maxsize=None)
def simple(q: Quiver, i: int) -> Representation:
    dim = tuple(int(v == i) for v in range(q.n))
    return from_matrices(q, dim, [Matrix.zeros(dim[t], dim[s]) for s, t in q.arrows], f"S{i + 1}")


def standard_modules(q: Quiver):
    """``(projectives, injectives, simples)`` indexed by vertex."""
    r = range(q.n)
    return ([projective(q, i) for i in r], [injective(q, i) for i in r], [simple(q, i) for i in r])


# Hom and Ext


def _hom_system(X: Representation, Y: Representation):
    q = X.quiver
    offsets, off = [], 0
    for v in range(q.n):
        offsets.append(off)
        off += Y.dim[v] * X.dim[v]
    nvars = off
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        Ya, Xa = Y.maps[a], X.maps[a]
        # (Y_a phi_s - phi_t X_a)[p][c] = 0
        for p in range(Y.dim[t]):
            for c in range(X.dim[s]):
                row = [Fraction(0)] * nvars
                for r in range(Y.dim[s]):
                    coeff = Ya[p, r]
                    if coeff:
                        row[offsets[s] + r * X.dim[s] + c] += coeff
                for r in range(X.dim[t]):
                    coeff = Xa[r, c]
                    if coeff:
                        row[offsets[t] + p * X.dim[t] + r] -= coeff
                rows.append(row)
    return Matrix(len(rows), nvars, rows), offsets


def _vector_to_morphism(X, Y, vec, offsets) -> Morphism:
    comps = []
    for v in range(X.quiver.n):
        r, c = Y.dim[v], X.dim[v]
        o = offsets[v]
        comps.append(Matrix(r, c, [vec[o + i * c:o + (i + 1) * c] for i in range(r)]))
    return Morphism(X, Y, tuple(comps))


@lru_cache(maxsize=200_000)
def hom_basis(X: Representation, Y: Representation) -> tuple[Morphism, ...]:
    if X.quiver != Y.quiver:
        raise DimensionMismatch("representations over different quivers")
    A, offsets = _hom_system(X, Y)
    return tuple(_vector_to_morphism(X, Y, v, offsets) for v in la.kernel_basis(A))


def hom_dim(X: Representation, Y: Representation) -> int:
    return len(hom_basis(X, Y))


@lru_cache(maxsize=200_000)
def ext1_dim(X: Representation, Y: Representation) -> int:
    e = hom_dim(X, Y) - euler_form(X.quiver, X.dim, Y.dim)
    if e < 0:
        raise InternalInconsistency(f"negative Ext^1 dimension between {X} and {Y}")
    return e


def _ext_coboundary(X: Representation, Y: Representation):
    """Columns spanning the image of ``(+)_v Hom(X_v,Y_v) -> (+)_a Hom(X_s,Y_t)``."""
    q = X.quiver
    aoff, off = [], 0
    for s, t in q.arrows:
        aoff.append(off)
        off += Y.dim[t] * X.dim[s]
    total = off
    cols = []
    for v in range(q.n):
        for i in range(Y.dim[v]):
            for j in range(X.dim[v]):
                # elementary phi_v = E_ij
                col = [Fraction(0)] * total
                for a, (s, t) in enumerate(q.arrows):
                    if s == v:  # Y_a E_ij : column j gets Y_a[:, i]
                        for p in range(Y.dim[t]):
                            col[aoff[a] + p * X.dim[s] + j] += Y.maps[a][p, i]
                    if t == v:  # - E_ij X_a : row i gets X_a[j, :]
                        for c in range(X.dim[s]):
                            col[aoff[a] + i * X.dim[s] + c] -= X.maps[a][j, c]
                cols.append(col)
    return cols, aoff, total


@lru_cache(maxsize=50_000)
def ext1_classes(X: Representation, Y: Representation) -> tuple[tuple[Matrix, ...], ...]:
    """Cocycles ``eta = (eta_a: X_s -> Y_t)`` representing a basis of Ext^1(X, Y)."""
    q = X.quiver
    cols, aoff, total = _ext_coboundary(X, Y)
    unit = [[Fraction(int(k == i)) for k in range(total)] for i in range(total)]
    chosen = la.extend_to_basis(cols, unit, total)
    classes = []
    for idx in chosen:
        vec = unit[idx]
        eta = []
        for a, (s, t) in enumerate(q.arrows):
            r, c = Y.dim[t], X.dim[s]
            o = aoff[a]
            eta.append(Matrix(r, c, [vec[o + i * c:o + (i + 1) * c] for i in range(r)]))
        classes.append(tuple(eta))
    if len(classes) != ext1_dim(X, Y):
        raise InternalInconsistency("cocycle count disagrees with the Euler identity")
    return tuple(classes)


def extension_by_copies(X: Representation, Y: Representation):
    """Universal extension ``0 -> Y^s -> E -> X -> 0``, ``s = dim Ext^1(X,Y)``.

    Returns ``(E, s)``.
    """
    classes = ext1_classes(X, Y)
    s = len(classes)
    q = X.quiver
    dim = tuple(s * Y.dim[v] + X.dim[v] for v in range(q.n))
    maps = []
    for a, (src, tgt) in enumerate(q.arrows):
        top = Matrix.hstack([Matrix.block_diag([Y.maps[a]] * s),
                             Matrix.vstack([c[a] for c in classes], X.dim[src])])
        bottom = Matrix.hstack([Matrix.zeros(X.dim[tgt], s * Y.dim[src]), X.maps[a]])
        maps.append(Matrix.vstack([top, bottom]))
    return Representation(q, dim, tuple(maps)), s


def extension_of_copies(X: Representation, Y: Representation):
    """Universal extension ``0 -> Y -> E -> X^s -> 0``.  Returns ``(E, s)``."""
    classes = ext1_classes(X, Y)
    s = len(classes)
    q = X.quiver
    dim = tuple(Y.dim[v] + s * X.dim[v] for v in range(q.n))
    maps = []
    for a, (src, tgt) in enumerate(q.arrows):
        top = Matrix.hstack([Y.maps[a]] + [c[a] for c in classes])
        bottom = Matrix.hstack([Matrix.zeros(s * X.dim[tgt], Y.dim[src]),
                                Matrix.block_diag([X.maps[a]] * s)])
        maps.append(Matrix.vstack([top, bottom]))
    return Representation(q, dim, tuple(maps)), s


# kernels, images, cokernels


def sub_representation(X: Representation, bases) -> tuple[Representation, Morphism]:
    """Subrepresentation spanned by the columns of ``bases[v]``; returns it with its inclusion."""
    q = X.quiver
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        B_s, B_t = bases[s], bases[t]
        M = la.solve_matrix(B_t, X.maps[a] @ B_s)
        if M is None:
            raise InternalInconsistency("subspaces are not closed under the arrow maps")
        maps.append(M)
    S = Representation(q, tuple(b.cols for b in bases), tuple(maps))
    return S, Morphism(S, X, tuple(bases))


def quotient_representation(Y: Representation, bases) -> tuple[Representation, Morphism]:
    """``Y / U`` for the subrepresentation ``U`` spanned by ``bases``; returns it with the projection."""
    q = Y.quiver
    projs = []
    for v in range(q.n):
        B = bases[v]
        rows = la.kernel_basis(B.T) if B.cols else [
            tuple(Fraction(int(i == j)) for j in range(Y.dim[v])) for i in range(Y.dim[v])]
        projs.append(Matrix(len(rows), Y.dim[v], rows))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        right_inv = la.solve_matrix(projs[s], Matrix.identity(projs[s].rows))
        maps.append(projs[t] @ Y.maps[a] @ right_inv)
    Q = Representation(q, tuple(p.rows for p in projs), tuple(maps))
    return Q, Morphism(Y, Q, tuple(projs))


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    bases = []
    for v, M in enumerate(f.comps):
        kb = la.kernel_basis(M)
        bases.append(Matrix.from_columns(kb, f.source.dim[v]))
    return sub_representation(f.source, bases)


def image(f: Morphism) -> tuple[Representation, Morphism]:
    return sub_representation(f.target, [la.column_space_basis(M) for M in f.comps])


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    return quotient_representation(f.target, [la.column_space_basis(M) for M in f.comps])


def morphism_kernel_cokernel(f: Morphism):
    """``((K, inclusion), (I, inclusion), (C, projection))``."""
    return kernel(f), image(f), cokernel(f)


def factor_through_mono(h: Morphism, iota: Morphism) -> Morphism:
    """The unique ``g`` with ``iota o g = h`` for a monomorphism ``iota``."""
    comps = []
    for v in range(h.source.quiver.n):
        g = la.solve_matrix(iota.comps[v], h.comps[v])
        if g is None:
            raise InternalInconsistency("map does not factor through the monomorphism")
        comps.append(g)
    return Morphism(h.source, iota.source, tuple(comps))


# decomposition and isomorphism


def _candidates(basis):
    """Deterministic elements of a space spanned by ``basis``."""
    yield from basis
    k = len(basis)
    for i, j in itertools.combinations(range(k), 2):
        yield basis[i] + basis[j].scale(2)
    for weights in ([(i + 1) for i in range(k)], [(i + 1) ** 2 for i in range(k)],
                    [(-1) ** i * (2 * i + 3) for i in range(k)], [((7 * i) % 11) + 1 for i in range(k)]):
        acc = basis[0].scale(weights[0])
        for w, b in zip(weights[1:], basis[1:]):
            acc = acc + b.scale(w)
        yield acc


def _block_matrix_of(phi: Morphism) -> Matrix:
    return Matrix.block_diag(list(phi.comps))


def _eval_poly(coeffs, M: Matrix) -> Matrix:
    """Horner evaluation, ``coeffs`` from the leading term down."""
    n = M.rows
    acc = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in coeffs:
        acc = acc @ M + ident.scale(c)
    return acc


def _split_once(X: Representation, phi: Morphism):
    import sympy

    Phi = _block_matrix_of(phi)
    x = sympy.Symbol("x")
    sm = sympy.Matrix(Phi.rows, Phi.cols, lambda i, j: sympy.Rational(Phi[i, j].numerator, Phi[i, j].denominator))
    _, factors = sympy.factor_list(sm.charpoly(x).as_expr(), x)
    if len(factors) < 2:
        return None
    N = X.total_dim
    parts = []
    for fac, _ in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(fac, x).all_coeffs()]
        bases = []
        for v in range(X.quiver.n):
            P = _eval_poly(coeffs, phi.comps[v]).power(N)
            bases.append(Matrix.from_columns(la.kernel_basis(P), X.dim[v]))
        S, _ = sub_representation(X, bases)
        parts.append(S)
    if sum(p.total_dim for p in parts) != N:
        raise InternalInconsistency("generalized eigenspaces do not fill the module")
    return parts


def _split(X: Representation) -> list[Representation]:
    if X.is_zero():
        return []
    E = hom_basis(X, X)
    if len(E) == 1:
        return [X]
    for phi in _candidates(list(E)):
        parts = _split_once(X, phi)
        if parts:
            return [p for part in parts for p in _split(part)]
    return [X]


def _canonical_key(X: Representation):
    return (X.dim, tuple(M.data for M in X.maps))


@lru_cache(maxsize=20_000)
def is_indecomposable(X: Representation) -> bool:
    return len(_split(X)) == 1


def _iso_indecomposables(X: Representation, Y: Representation) -> bool:
    if X.dim != Y.dim:
        return False
    if X == Y:
        return True
    H = hom_basis(X, Y)
    if not H:
        return False
    return any(f.is_iso() for f in _candidates(list(H)))


@lru_cache(maxsize=20_000)
def decompose(X: Representation) -> tuple[tuple[Representation, int], ...]:
    """Indecomposable summands with multiplicities, sorted by dimension vector."""
    groups: list[list] = []
    for P in _split(X):
        for g in groups:
            if _iso_indecomposables(g[0], P):
                g[1] += 1
                break
        else:
            groups.append([P, 1])
    groups.sort(key=lambda g: _canonical_key(g[0]))
    return tuple((g[0], g[1]) for g in groups)


def is_isomorphic(X: Representation, Y: Representation) -> bool:
    if X.dim != Y.dim:
        return False
    if X == Y:
        return True
    dx, dy = decompose(X), decompose(Y)
    if len(dx) != len(dy):
        return False
    used = set()
    for P, m in dx:
        for k, (Q, n) in enumerate(dy):
            if k not in used and m == n and _iso_indecomposables(P, Q):
                used.add(k)
                break
        else:
            return False
    return True


def is_exceptional(X: Representation) -> bool:
    if X.is_zero() or not is_indecomposable(X):
        return False
    return ext1_dim(X, X) == 0


def endo_dim_checked(X: Representation) -> None:
    """Raise ``Unsupported`` unless End(X) is one-dimensional."""
    d = hom_dim(X, X)
    if d != 1:
        raise Unsupported(f"End({X.label()}) has dimension {d}; only End = k is supported")


def find_isomorphic(X: Representation, candidates) -> int | None:
    for k, C in enumerate(candidates):
        if C.dim == X.dim and _iso_indecomposables(C, X):
            return k
    return None


# reflection and Coxeter functors


def reflect_at_sink(X: Representation, k: int) -> Representation:
    """Kernel reflection at the sink ``k``; lands on ``X.quiver.reflect(k)``."""
    q = X.quiver
    incoming = q.arrows_into[k]
    q2 = q.reflect(k)
    if not incoming:
        dim = tuple(0 if v == k else d for v, d in enumerate(X.dim))
        return Representation(q2, dim, tuple(
            Matrix.zeros(dim[t], dim[s]) if k in (s, t) else X.maps[a] for a, (s, t) in enumerate(q2.arrows)))
    h = Matrix.hstack([X.maps[a] for a in incoming])
    K = Matrix.from_columns(la.kernel_basis(h), h.cols)
    dim = list(X.dim)
    dim[k] = K.cols
    maps = list(X.maps)
    row = 0
    for a in incoming:
        s = q.arrows[a][0]
        maps[a] = Matrix(X.dim[s], K.cols, K.data[row:row + X.dim[s]])
        row += X.dim[s]
    return Representation(q2, tuple(dim), tuple(maps))


def reflect_at_source(X: Representation, k: int) -> Representation:
    """Cokernel reflection at the source ``k``; lands on ``X.quiver.reflect(k)``."""
    q = X.quiver
    outgoing = q.arrows_out_of[k]
    q2 = q.reflect(k)
    if not outgoing:
        dim = tuple(0 if v == k else d for v, d in enumerate(X.dim))
        return Representation(q2, dim, tuple(
            Matrix.zeros(dim[t], dim[s]) if k in (s, t) else X.maps[a] for a, (s, t) in enumerate(q2.arrows)))
    h = Matrix.vstack([X.maps[a] for a in outgoing], X.dim[k])
    B = la.column_space_basis(h)
    rows = la.kernel_basis(B.T) if B.cols else [
        tuple(Fraction(int(i == j)) for j in range(h.rows)) for i in range(h.rows)]
    pi = Matrix(len(rows), h.rows, rows)
    dim = list(X.dim)
    dim[k] = pi.rows
    maps = list(X.maps)
    col = 0
    for a in outgoing:
        t = q.arrows[a][1]
        maps[a] = Matrix(pi.rows, X.dim[t], [r[col:col + X.dim[t]] for r in pi.data])
        col += X.dim[t]
    return Representation(q2, tuple(dim), tuple(maps))


def sink_sequence(q: Quiver) -> list[int]:
    """``k_1, ..., k_n`` with ``k_j`` a sink of the quiver reflected at ``k_1..k_{j-1}``."""
    seq, cur = [], q
    for _ in range(q.n):
        k = min(v for v in cur.sinks() if v not in seq)
        seq.append(k)
        cur = cur.reflect(k)
    return seq


def coxeter_plus(X: Representation) -> Representation:
    """Kernel Coxeter functor; isomorphic to the AR translate on non-projectives."""
    for k in sink_sequence(X.quiver):
        X = reflect_at_sink(X, k)
    return X


def coxeter_minus(X: Representation) -> Representation:
    """Cokernel Coxeter functor; isomorphic to the inverse AR translate on non-injectives."""
    for k in reversed(sink_sequence(X.quiver)):
        X = reflect_at_source(X, k)
    return X


def _rebase(X: Representation, q: Quiver) -> Representation:
    return Representation(q, X.dim, X.maps, X.name)


def _which_standard(X: Representation, family) -> int | None:
    q = X.quiver
    for i in range(q.n):
        if _iso_indecomposables(family(q, i), X):
            return i
    return None


def ar_translate(X: Representation, inverse: bool = False) -> Stalk:
    """``tau X`` (or ``tau^-1 X``) as a stalk in the derived category.

    ``tau P_i = I_i[-1]`` and ``tau^-1 I_i = P_i[1]``.
    """
    if X.is_zero() or not is_indecomposable(X):
        raise NotIndecomposable(f"{X.label()} is not indecomposable")
    return _ar_translate(X, inverse)


@lru_cache(maxsize=50_000)
def _ar_translate(X: Representation, inverse: bool) -> Stalk:
    q = X.quiver
    Y = _rebase(coxeter_minus(X) if inverse else coxeter_plus(X), q)
    if not Y.is_zero():
        return Stalk(canonical(Y), 0)
    if inverse:
        i = _which_standard(X, injective)
        return Stalk(canonical(projective(q, i)), 1)
    i = _which_standard(X, projective)
    return Stalk(canonical(injective(q, i)), -1)


def coxeter_matrix(q: Quiver) -> list[list[Fraction]]:
    """``-E^{-1} E^T`` acting on column dimension vectors."""
    from .quiver import euler_matrix

    E = Matrix.from_rows(euler_matrix(q))
    Einv = la.solve_matrix(E, Matrix.identity(q.n))
    C = (Einv @ E.T).scale(-1)
    return [list(r) for r in C.data]


# indecomposables of Dynkin quivers


@lru_cache(maxsize=None)
def enumerate_indecomposables(q: Quiver) -> tuple[Representation, ...]:
    """One representative per isomorphism class, ordered by dimension vector.

    Built by reflecting simples back along a sink-adapted sequence.
    """
    if dynkin_type(q) == REP_INFINITE:
        raise RepInfinite(f"{q} is not of Dynkin type")
    seq = sink_sequence(q)
    n = q.n
    quivers = [q]
    steps = n * coxeter_number(q) + n
    ks = [seq[j % n] for j in range(steps)]
    for k in ks:
        quivers.append(quivers[-1].reflect(k))
    found = {}
    for j in range(steps):
        # simple at the sink k_{j+1} of quivers[j], reflected back to q
        M = simple(quivers[j], ks[j])
        for i in range(j - 1, -1, -1):
            M = reflect_at_source(M, ks[i])
            if M.is_zero():
                break
        if M.is_zero():
            continue
        M = _rebase(M, q)
        if M.dim in found:
            continue
        found[M.dim] = M
    expected = positive_root_count(q)
    if len(found) != expected:
        raise InternalInconsistency(f"found {len(found)} indecomposables, expected {expected}")
    mods = [_name_module(found[d]) for d in sorted(found)]
    return tuple(mods)


def _name_module(M: Representation) -> Representation:
    q = M.quiver
    if sum(M.dim) == 1:
        return M.named(f"S{M.dim.index(1) + 1}")
    for i in range(q.n):
        if projective(q, i).dim == M.dim:
            return M.named(f"P{i + 1}")
    for i in range(q.n):
        if injective(q, i).dim == M.dim:
            return M.named(f"I{i + 1}")
    return M.named("M(" + ",".join(map(str, M.dim)) + ")")


def canonical(X: Representation) -> Representation:
    """Catalog representative of an indecomposable over a Dynkin quiver; else ``X``."""
    q = X.quiver
    if dynkin_type(q) == REP_INFINITE:
        return X if X.name else _name_module(X)
    for M in enumerate_indecomposables(q):
        if M.dim == X.dim:
            return M
    return X


def is_projective_module(X: Representation) -> bool:
    q = X.quiver
    return all(ext1_dim(X, simple(q, i)) == 0 for i in range(q.n))


def is_injective_module(X: Representation) -> bool:
    q = X.quiver
    return all(ext1_dim(simple(q, i), X) == 0 for i in range(q.n))


# serialization


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def representation_to_json(X: Representation) -> dict:
    return {
        "name": X.label(),
        "dim": list(X.dim),
        "maps": [[[_frac_str(x) for x in row] for row in M.data] for M in X.maps],
    }


def representation_from_json(q: Quiver, obj: dict) -> Representation:
    dim = tuple(int(d) for d in obj["dim"])
    maps = []
    for (s, t), rows in zip(q.arrows, obj["maps"]):
        maps.append(Matrix(dim[t], dim[s], [[Fraction(x) for x in r] for r in rows]))
    return Representation(q, dim, tuple(maps), obj.get("name"))
