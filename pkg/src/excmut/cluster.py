"""The m-cluster category ``C_m = D / F`` with ``F = tau^-1 [m]``.

Objects are represented by stalks in the fundamental domain
``mod H[0] v ... v mod H[m-1] v H[m]``.  A morphism space in ``C_m`` is
the orbit sum ``(+)_j Hom_D(X, F^j Y)``; the summand ``j = 0`` consists of
the D-maps, every other summand of F-maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .derived import (
    DerivedObject,
    SiltingCandidate,
    cocone,
    cone,
    hom_d_dim,
    join_maps,
    left_minimality_certificate,
    minimal_left_approximation_d,
    minimal_right_approximation_d,
    normalize_stalks,
    right_minimality_certificate,
    stack_maps,
)
from .errors import DomainError, InternalInconsistency, NonTermination, RepInfinite
from .quiver import is_dynkin
from .repcat import (
    Stalk,
    ar_translate,
    enumerate_indecomposables,
    is_isomorphic,
    is_projective_module,
)

D_MAP = "D-map"
F_MAP = "F-map"

# orbit indices |j| <= ORBIT_WINDOW are summed; the next ORBIT_GUARD are asserted zero
ORBIT_WINDOW = 3
ORBIT_GUARD = 3


def _check_m(m: int):
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def F(s: Stalk, m: int) -> Stalk:
    """``tau^-1 X [d + m]``; an injective ``I_i[d]`` goes to ``P_i[d + m + 1]``."""
    t = ar_translate(s.module, inverse=True)
    return Stalk(t.module, s.shift + m + t.shift)


def F_inverse(s: Stalk, m: int) -> Stalk:
    t = ar_translate(s.module)
    return Stalk(t.module, s.shift - m + t.shift)


def F_power(s: Stalk, j: int, m: int) -> Stalk:
    for _ in range(abs(j)):
        s = F(s, m) if j > 0 else F_inverse(s, m)
    return s


def in_domain(s: Stalk, m: int) -> bool:
    if 0 <= s.shift <= m - 1:
        return True
    return s.shift == m and is_projective_module(s.module)


def fundamental_domain(q, m: int) -> list[Stalk]:
    _check_m(m)
    if not is_dynkin(q):
        raise RepInfinite(f"{q} is not of Dynkin type")
    mods = enumerate_indecomposables(q)
    out = [Stalk(M, d) for d in range(m) for M in mods]
    out += [Stalk(M, m) for M in mods if is_projective_module(M)]
    return out


def normalize_to_domain(s: Stalk, m: int) -> Stalk:
    """Move ``s`` along its F-orbit into the fundamental domain."""
    _check_m(m)
    q = s.module.quiver
    bound = 4 * (abs(s.shift) + m + 2) * (q.n + 2)
    for _ in range(bound):
        if in_domain(s, m):
            return s
        s = F_inverse(s, m) if s.shift >= m else F(s, m)
    raise NonTermination(f"{s} did not reach the fundamental domain in {bound} steps")


# orbit sums


def orbit_hom(X: Stalk, Y: Stalk, m: int) -> dict[int, int]:
    """``{j: dim Hom_D(X, F^j Y)}`` for the nonzero orbit components."""
    out = {}
    for j in range(-ORBIT_WINDOW - ORBIT_GUARD, ORBIT_WINDOW + ORBIT_GUARD + 1):
        Z = F_power(Y, j, m)
        h = hom_d_dim(X.module, X.shift, Z.module, Z.shift)
        if h and abs(j) > ORBIT_WINDOW:
            raise InternalInconsistency(f"orbit component j={j} of Hom({X}, {Y}) is nonzero")
        if h:
            out[j] = h
    return out


def hom_cm_dim(X: Stalk, Y: Stalk, m: int) -> int:
    return sum(orbit_hom(X, Y, m).values())


def ext_cm_dim(X: Stalk, Y: Stalk, i: int, m: int) -> int:
    """``dim Ext^i_{C_m}(X, Y) = dim Hom_{C_m}(X, Y[i])``."""
    return hom_cm_dim(X, Stalk(Y.module, Y.shift + i), m)


def ext_d_dim(X: Stalk, Y: Stalk, i: int) -> int:
    return hom_d_dim(X.module, X.shift, Y.module, Y.shift + i)


def is_m_rigid(T, m: int) -> bool:
    stalks = list(T)
    return all(ext_cm_dim(X, Y, i, m) == 0
               for X in stalks for Y in stalks for i in range(1, m + 1))


def is_m_cluster_tilting(T, m: int) -> bool:
    stalks = list(T)
    if not stalks or len(stalks) != stalks[0].module.quiver.n:
        return False
    for a in range(len(stalks)):
        for b in range(a + 1, len(stalks)):
            if _same(stalks[a], stalks[b], m):
                return False
    return is_m_rigid(stalks, m)


def _same(s: Stalk, t: Stalk, m: int) -> bool:
    s, t = normalize_to_domain(s, m), normalize_to_domain(t, m)
    return s.shift == t.shift and is_isomorphic(s.module, t.module)


# maps


@dataclass(frozen=True)
class OrbitMap:
    """A map in ``C_m`` as its nonzero orbit components ``j -> coefficient vector``."""
    source: Stalk
    target: Stalk
    parts: tuple[tuple[int, tuple], ...] = field(default=())


def classify_map(f: OrbitMap) -> str:
    nonzero = [j for j, vec in f.parts if any(vec)]
    return D_MAP if all(j == 0 for j in nonzero) else F_MAP


def orbit_identity(X: Stalk) -> OrbitMap:
    return OrbitMap(X, X, ((0, (1,)),))


def connecting_map(X: Stalk, Y: Stalk, m: int) -> OrbitMap:
    """The map ``X -> Y`` in ``C_m`` given by the first basis vector of each orbit component."""
    parts = tuple((j, (1,) + (0,) * (h - 1)) for j, h in sorted(orbit_hom(X, Y, m).items()))
    return OrbitMap(X, Y, parts)


# complements and exchange triangles


def _stalk_obj(s: Stalk) -> DerivedObject:
    return DerivedObject.stalk(s.module, s.shift)


def _single_stalk(obj: DerivedObject, what: str) -> Stalk:
    st = normalize_stalks(obj)
    if len(st) != 1:
        raise InternalInconsistency(f"{what} has {len(st)} indecomposable summands")
    return st[0]


def _stalks_equal(s: Stalk, t: Stalk) -> bool:
    return s.shift == t.shift and is_isomorphic(s.module, t.module)


def _quiver_of(Tbar):
    if not Tbar:
        raise DomainError("the almost complete object is empty; rank one has nothing to exchange")
    return Tbar[0].module.quiver


def brute_force_complements(Tbar, m: int) -> list[Stalk]:
    Tbar = list(Tbar)
    q = _quiver_of(Tbar)
    out = []
    for X in fundamental_domain(q, m):
        if any(_stalks_equal(X, t) for t in Tbar):
            continue
        if is_m_cluster_tilting(Tbar + [X], m):
            out.append(X)
    return out


def d_successor(Tbar, M: Stalk):
    """Cone of the minimal left add(Tbar)-approximation of ``M`` in D: ``(M', middle copies)``."""
    summands = [_stalk_obj(t) for t in Tbar]
    X = _stalk_obj(M)
    copies = minimal_left_approximation_d(X, summands)
    if not copies:
        return Stalk(M.module, M.shift + 1), ()
    f = stack_maps(X, copies)
    return _single_stalk(cone(f), "exchange cone"), tuple(copies)


def d_predecessor(Tbar, M: Stalk):
    """Cocone of the minimal right add(Tbar)-approximation of ``M`` in D."""
    summands = [_stalk_obj(t) for t in Tbar]
    Y = _stalk_obj(M)
    copies = minimal_right_approximation_d(summands, Y)
    if not copies:
        return Stalk(M.module, M.shift - 1), ()
    g = join_maps(copies, Y)
    Z, _ = cocone(g)
    return _single_stalk(Z, "exchange cocone"), tuple(copies)


def _middle_stalks(copies) -> tuple[Stalk, ...]:
    out = [s for T, _ in copies for s in normalize_stalks(T)]
    return tuple(sorted(out, key=lambda s: (s.shift, s.module.dim)))


def complements(Tbar, m: int) -> list[Stalk]:
    """The m+1 complements ``M_0, ..., M_m`` in chain order.

    Found by brute force; ordered by walking exchange triangles in D.
    """
    _check_m(m)
    Tbar = list(Tbar)
    q = _quiver_of(Tbar)
    if not is_dynkin(q):
        raise RepInfinite(f"{q} is not of Dynkin type")
    if len(Tbar) != q.n - 1 or not is_m_rigid(Tbar, m):
        raise DomainError("need an m-rigid object with n-1 summands")
    brute = brute_force_complements(Tbar, m)
    if len(brute) != m + 1:
        raise InternalInconsistency(f"found {len(brute)} complements, expected {m + 1}")
    # M_0 is the complement whose D-predecessor leaves the domain
    starts = [M for M in brute if not in_domain(d_predecessor(Tbar, M)[0], m)]
    if len(starts) != 1:
        raise InternalInconsistency(f"{len(starts)} candidates for the first complement")
    chain = [starts[0]]
    for _ in range(m):
        chain.append(d_successor(Tbar, chain[-1])[0])
    if not all(in_domain(M, m) for M in chain):
        raise InternalInconsistency("the exchange chain leaves the domain early")
    if sorted(map(_key, chain)) != sorted(map(_key, brute)) or \
            not all(any(_stalks_equal(a, b) for b in brute) for a in chain):
        raise InternalInconsistency("exchange chain disagrees with the brute-force complements")
    for i, M in enumerate(chain):
        if i < m and M.shift > chain[i + 1].shift:
            raise InternalInconsistency(f"degrees decrease at position {i}")
        if not (i - 1 <= M.shift <= i):
            raise InternalInconsistency(f"degree of M_{i} is {M.shift}, outside [{i - 1}, {i}]")
    return chain


def _key(s: Stalk):
    return (s.shift, s.module.dim)


@dataclass(frozen=True)
class ClusterTriangle:
    left: Stalk
    middle: tuple[Stalk, ...]
    right: Stalk
    f_class: str
    g_class: str
    in_d: bool


def _lifts(Tbar, m: int):
    """Distinct D-objects ``F^j(T)`` over the orbit window, tagged with ``j``."""
    out = []
    for t in Tbar:
        for j in range(-ORBIT_WINDOW, ORBIT_WINDOW + 1):
            out.append((j, F_power(t, j, m)))
    return out


def cm_left_approximation(Tbar, M: Stalk, m: int):
    """Minimal left add(Tbar)-approximation of ``M`` in ``C_m``, through orbit lifts.

    Returns ``(copies, tags)`` with ``tags[c]`` the orbit index of copy ``c``.
    """
    lifts = [(j, s) for j, s in _lifts(Tbar, m)
             if hom_d_dim(M.module, M.shift, s.module, s.shift)]
    objs = [_stalk_obj(s) for _, s in lifts]
    X = _stalk_obj(M)
    copies = minimal_left_approximation_d(X, objs)
    if not left_minimality_certificate(X, objs, list(copies)):
        raise InternalInconsistency("left approximation in C_m is not minimal")
    tags = [lifts[objs.index(T)][0] for T, _ in copies]
    return copies, tags


def cm_right_approximation(Tbar, M: Stalk, m: int):
    lifts = [(j, s) for j, s in _lifts(Tbar, m)
             if hom_d_dim(s.module, s.shift, M.module, M.shift)]
    objs = [_stalk_obj(s) for _, s in lifts]
    Y = _stalk_obj(M)
    copies = minimal_right_approximation_d(objs, Y)
    if not right_minimality_certificate(objs, list(copies), Y):
        raise InternalInconsistency("right approximation in C_m is not minimal")
    tags = [lifts[objs.index(T)][0] for T, _ in copies]
    return copies, tags


def _cls(tags) -> str:
    return D_MAP if all(j == 0 for j in tags) else F_MAP


def _middle_in_domain(copies, m) -> tuple[Stalk, ...]:
    out = [normalize_to_domain(s, m) for T, _ in copies for s in normalize_stalks(T)]
    return tuple(sorted(out, key=_key))


def exchange_triangles(Tbar, m: int) -> list[ClusterTriangle]:
    """The m triangles ``M_{j-1} -> B_j -> M_j`` in D, then the wrap-around ``M_m -> B_0 -> M_0``."""
    Tbar = list(Tbar)
    chain = complements(Tbar, m)
    out = []
    for j in range(1, m + 1):
        left, right = chain[j - 1], chain[j]
        nxt, copies = d_successor(Tbar, left)
        prev, rcopies = d_predecessor(Tbar, right)
        if not (_stalks_equal(nxt, right) and _stalks_equal(prev, left)):
            raise InternalInconsistency(f"triangle {j} does not link consecutive complements")
        middle = _middle_stalks(copies)
        if middle != _middle_stalks(rcopies):
            raise InternalInconsistency(f"left and right approximations of triangle {j} differ")
        if not all(any(_stalks_equal(b, t) for t in Tbar) for b in middle):
            raise InternalInconsistency(f"middle term of triangle {j} is not in add Tbar")
        # the same triangle must be an exchange triangle in C_m
        lc, ltags = cm_left_approximation(Tbar, left, m)
        rc, rtags = cm_right_approximation(Tbar, right, m)
        if _middle_in_domain(lc, m) != middle or _middle_in_domain(rc, m) != middle:
            raise InternalInconsistency(f"triangle {j}: C_m approximation differs from D approximation")
        out.append(ClusterTriangle(left, middle, right, _cls(ltags), _cls(rtags), True))
    out.append(wrap_around_triangle(Tbar, m, chain))
    for tri in out:
        check_dmap_criterion(tri, m)
    return out


def wrap_around_triangle(Tbar, m: int, chain=None) -> ClusterTriangle:
    """``M_m -> B_0 -> M_0`` in ``C_m``, from the C_m right approximation of ``M_0``."""
    Tbar = list(Tbar)
    if chain is None:
        chain = complements(Tbar, m)
    M0, Mm = chain[0], chain[-1]
    rc, rtags = cm_right_approximation(Tbar, M0, m)
    if rc:
        Z, _ = cocone(join_maps(rc, _stalk_obj(M0)))
        left = normalize_to_domain(_single_stalk(Z, "wrap-around cocone"), m)
    else:
        left = normalize_to_domain(Stalk(M0.module, M0.shift - 1), m)
    if not _stalks_equal(left, Mm):
        raise InternalInconsistency(f"wrap-around cocone is {left}, expected {Mm}")
    lc, ltags = cm_left_approximation(Tbar, Mm, m)
    middle = _middle_in_domain(rc, m)
    if _middle_in_domain(lc, m) != middle:
        raise InternalInconsistency("wrap-around: left and right approximations differ")
    # in D the predecessor of M_0 is M_{-1}, which lies outside the domain
    prev, _ = d_predecessor(Tbar, M0)
    in_d = _stalks_equal(prev, Mm)
    if in_d:
        raise InternalInconsistency("wrap-around triangle is a triangle in D")
    return ClusterTriangle(Mm, middle, M0, _cls(ltags), _cls(rtags), False)


def check_dmap_criterion(tri: ClusterTriangle, m: int) -> None:
    """For ``m >= 2`` and ``B != 0``: ``d(M*) <= d(M)`` iff both maps are D-maps."""
    if m < 2 or not tri.middle:
        return
    lhs = tri.left.shift <= tri.right.shift
    rhs = tri.f_class == D_MAP and tri.g_class == D_MAP
    if lhs != rhs:
        raise InternalInconsistency(
            f"D-map criterion fails on {tri.left} -> {tri.right}: degrees {lhs}, D-maps {rhs}")


def to_candidate(T) -> SiltingCandidate:
    return SiltingCandidate(tuple(T))


def d_chain(Tbar, m: int, lo: int, hi: int) -> dict[int, Stalk]:
    """Complements ``M_j`` for ``lo <= j <= hi``, extending the domain chain by exchange in D."""
    Tbar = list(Tbar)
    chain = complements(Tbar, m)
    out = dict(enumerate(chain))
    for j in range(m + 1, hi + 1):
        out[j] = d_successor(Tbar, out[j - 1])[0]
    for j in range(-1, lo - 1, -1):
        out[j] = d_predecessor(Tbar, out[j + 1])[0]
    return {j: out[j] for j in sorted(out) if lo <= j <= hi}


def shift_periodicity_holds(chain: dict[int, Stalk], m: int) -> bool:
    """``M_j = M_{-1}[j+1]`` for ``j < -1`` and ``M_j = M_{m+1}[j-m-1]`` for ``j > m+1``."""
    for j, M in chain.items():
        if j < -1:
            ref = chain[-1]
            if not _stalks_equal(M, Stalk(ref.module, ref.shift + j + 1)):
                return False
        if j > m + 1:
            ref = chain[m + 1]
            if not _stalks_equal(M, Stalk(ref.module, ref.shift + j - m - 1)):
                return False
    return True
