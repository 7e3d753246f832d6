import itertools

import pytest

from conftest import DYNKIN, std
from excmut.cluster import (
    D_MAP,
    F_MAP,
    F,
    F_inverse,
    brute_force_complements,
    check_dmap_criterion,
    classify_map,
    complements,
    connecting_map,
    d_chain,
    exchange_triangles,
    ext_cm_dim,
    fundamental_domain,
    in_domain,
    is_m_cluster_tilting,
    is_m_rigid,
    normalize_to_domain,
    orbit_identity,
    shift_periodicity_holds,
)
from excmut.derived import SiltingCandidate, is_partial_silting, is_silting
from excmut.errors import DomainError
from excmut.repcat import Stalk, is_isomorphic


def same(s, t):
    return s.shift == t.shift and is_isomorphic(s.module, t.module)


@pytest.mark.parametrize("name,m,size", [("A2", 1, 5), ("A2", 2, 8), ("A3", 1, 9), ("A3", 2, 15)])
def test_domain_size(name, m, size):
    dom = fundamental_domain(DYNKIN[name], m)
    assert len(dom) == size
    assert all(in_domain(s, m) for s in dom)


def test_normalize(a2):
    m = std(a2)
    s = normalize_to_domain(Stalk(m["S2"], 1), 1)
    assert same(s, Stalk(m["S1"], 0))
    s = Stalk(m["P2"], 1)
    assert normalize_to_domain(s, 1) == s
    for mm in (1, 2, 3):
        s = normalize_to_domain(Stalk(m["P2"], mm + 1), mm)
        assert in_domain(s, mm)
        assert same(F_inverse(Stalk(m["P2"], mm + 1), mm), s)


def test_f_round_trip(a3):
    for s in fundamental_domain(a3, 2):
        assert same(F_inverse(F(s, 2), 2), s)


def test_ext_examples(a2):
    m = std(a2)
    S1, P2, S2 = Stalk(m["S1"], 0), Stalk(m["P2"], 0), Stalk(m["S2"], 0)
    assert ext_cm_dim(S1, P2, 1, 1) == 0
    assert ext_cm_dim(S1, S2, 1, 1) == 1 == ext_cm_dim(S2, S1, 1, 1)


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_two_calabi_yau_symmetry(name):
    dom = fundamental_domain(DYNKIN[name], 1)
    for X, Y in itertools.product(dom, repeat=2):
        assert ext_cm_dim(X, Y, 1, 1) == ext_cm_dim(Y, X, 1, 1)


def test_rigidity_examples(a2):
    m = std(a2)
    T = [Stalk(m["S1"], 0), Stalk(m["P2"], 0)]
    assert is_m_cluster_tilting(T, 1)
    assert is_m_rigid([T[0]], 1) and not is_m_cluster_tilting([T[0]], 1)


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A2", 3), ("A3", 1)])
def test_silting_matches_cluster_tilting(name, m):
    dom = fundamental_domain(DYNKIN[name], m)
    n = DYNKIN[name].n
    for size in (n - 1, n):
        for combo in itertools.combinations(dom, size):
            T = SiltingCandidate(combo)
            assert is_partial_silting(T) == is_m_rigid(combo, m)
            assert is_silting(T) == is_m_cluster_tilting(combo, m)


def test_map_classes(a2):
    m = std(a2)
    assert classify_map(orbit_identity(Stalk(m["P2"], 0))) == D_MAP
    # S2[1] = F(S1) in C_1, so the isomorphism lives in the j = 1 component only
    f = connecting_map(Stalk(m["S2"], 1), Stalk(m["S1"], 0), 1)
    assert [j for j, _ in f.parts] == [1]
    assert classify_map(f) == F_MAP


def test_complements_a2(a2):
    m = std(a2)
    Tbar = [Stalk(m["P2"], 0)]
    got = complements(Tbar, 1)
    assert [(s.module.label(), s.shift) for s in got] == [("S1", 0), ("S2", 0)]
    got = complements(Tbar, 2)
    assert len(got) == 3 and len(brute_force_complements(Tbar, 2)) == 3
    with pytest.raises(DomainError):
        complements(Tbar, 0)


def test_exchange_triangles_a2(a2):
    m = std(a2)
    tris = exchange_triangles([Stalk(m["P2"], 0)], 1)
    first, wrap = tris
    assert first.in_d and [s.module.label() for s in first.middle] == ["P2"]
    assert (first.left.module.label(), first.right.module.label()) == ("S1", "S2")
    assert not wrap.in_d and wrap.middle == ()
    assert (wrap.left.module.label(), wrap.right.module.label()) == ("S2", "S1")


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A2", 3), ("A3", 1), ("A3", 2)])
def test_complement_properties(name, m):
    q = DYNKIN[name]
    for Tbar in itertools.combinations(fundamental_domain(q, m), q.n - 1):
        if not is_m_rigid(Tbar, m):
            continue
        chain = complements(list(Tbar), m)
        assert len(chain) == m + 1
        for i, M in enumerate(chain):
            assert i - 1 <= M.shift <= i
        assert all(a.shift <= b.shift for a, b in zip(chain, chain[1:]))
        tris = exchange_triangles(list(Tbar), m)
        for t in tris:
            check_dmap_criterion(t, m)
            assert all(any(same(b, x) for x in Tbar) for b in t.middle)
        if m >= 2:
            assert all(t.f_class == t.g_class == D_MAP for t in tris[:-1])
        chain = d_chain(list(Tbar), m, -4, m + 4)
        assert shift_periodicity_holds(chain, m)
