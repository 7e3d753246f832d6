import pytest

from conftest import DYNKIN, std
from excmut.derived import SiltingCandidate, is_silting, silting_complements_in_window
from excmut.errors import DomainError, IsProjective
from excmut.excseq import ExceptionalSequence, enumerate_complete_sequences, mutate
from excmut.placement import (
    bongartz_by_extension,
    bongartz_complement,
    bongartz_summands,
    place_almost_complete,
    place_rank_one,
    search_global_placement,
    verify_placement,
)
from excmut.quiver import Quiver
from excmut.repcat import enumerate_indecomposables, is_isomorphic, is_projective_module


def placed(stalks):
    return [(s.module.label(), s.shift) for s in stalks]


def test_trace_p1(a2):
    m = std(a2)
    p = place_almost_complete((m["P2"],))
    assert placed(p.A_hat) == [("P2", 0)]
    assert placed(p.C_hat) == [("S1", 0), ("S2", 0)]
    assert p.rules == ("P1",)
    assert all(is_silting(SiltingCandidate(p.A_hat + (c,))) for c in p.C_hat)


def test_trace_p2(a2):
    m = std(a2)
    p = place_almost_complete((m["S1"],))
    assert placed(p.A_hat) == [("S1", 1)]
    assert placed(p.C_hat) == [("S2", 0), ("P2", 1)]
    assert p.rules == ("P2",)
    assert all(ok for ok, _ in verify_placement(p).values())


def test_rank_one():
    q = Quiver.from_one_based(1, [])
    p = place_rank_one(q)
    assert p.A == () and placed(p.C_hat) == [("S1", 0)]


def _almost_complete(q):
    seen = {}
    for s in enumerate_complete_sequences(q):
        for k in range(q.n):
            E = s.terms[:k] + s.terms[k + 1:]
            seen.setdefault(tuple(M.dim for M in E), E)
    return list(seen.values())


@pytest.mark.parametrize("name", ["A2", "A3", "A3alt", "D4"])
def test_every_almost_complete_sequence(name):
    q = DYNKIN[name]
    rules = set()
    for E in _almost_complete(q):
        p = place_almost_complete(E)
        ledger = verify_placement(p)
        assert {"U", "V", "W", "Y", "lower-bound", "shift-t", "exchange"} <= set(ledger)
        assert all(ok for ok, _ in ledger.values()), ledger
        rules.update(p.rules)
    if q.n >= 3:
        assert rules == {"P1", "P2", "P3"}


def test_exchange_triangles_match_window_scan(a3):
    for E in _almost_complete(a3):
        p = place_almost_complete(E)
        recs = silting_complements_in_window(SiltingCandidate(p.A_hat), (0, a3.n - 1))
        for c in p.C_hat:
            assert any(r.stalk.shift == c.shift and is_isomorphic(r.stalk.module, c.module) for r in recs)


def test_bongartz(a2):
    m = std(a2)
    W = bongartz_complement(m["S2"])
    assert W.dim == (1, 1)
    with pytest.raises(IsProjective):
        bongartz_complement(m["P1"])
    for q in DYNKIN.values():
        for Y in enumerate_indecomposables(q):
            if is_projective_module(Y):
                continue
            W = bongartz_summands(Y)
            assert len(W) == q.n - 1
            other = bongartz_by_extension(Y)
            assert len(other) == len(W)
            assert all(any(is_isomorphic(w, v) for v in other) for w in W)
            bongartz_complement(Y)


def test_search_a2_unsatisfiable(a2):
    seqs = enumerate_complete_sequences(a2)
    out = search_global_placement(a2, seqs, bound=3, lo=-3)
    assert not out.found and out.examined == 7 ** 3


def test_search_a1():
    q = Quiver.from_one_based(1, [])
    out = search_global_placement(q, enumerate_complete_sequences(q), bound=0)
    assert out.found and out.assignment == {"S1": 0}


def test_search_single_mutation_is_satisfiable(tri):
    m = std(tri)
    E = ExceptionalSequence.of(m["P1"], m["P2"], m["P3"])
    out = search_global_placement(tri, [E, mutate(E, 1)], bound=2, mode="mutation")
    assert out.found


def test_search_rejects_bad_mode(a2):
    with pytest.raises(DomainError):
        search_global_placement(a2, enumerate_complete_sequences(a2), bound=1, mode="nope")
