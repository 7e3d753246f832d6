import pytest

from conftest import DYNKIN, std
from excmut.errors import InternalInconsistency
from excmut.excseq import ExceptionalSequence, enumerate_complete_sequences
from excmut.homext import (
    HomExtQuiver,
    arrow_rule_violations,
    build,
    check_arrow_rules,
    emit_dot,
    is_acyclic,
    is_connected,
)
from excmut.quiver import Quiver


def test_arrows_a2(a2):
    m = std(a2)
    g = build(ExceptionalSequence.of(m["S2"], m["S1"]))
    assert g.arrows == ((1, 0, "x"),)
    g = build(ExceptionalSequence.of(m["S1"], m["P2"]))
    assert g.arrows == ((0, 1, "m"),)


@pytest.mark.parametrize("name", list(DYNKIN))
def test_acyclic_connected_and_rules(name):
    for s in enumerate_complete_sequences(DYNKIN[name]):
        g = build(s)
        assert is_acyclic(g) and is_connected(g)
        assert arrow_rule_violations(g) == []
        check_arrow_rules(g)
        # at most one arrow between two vertices
        pairs = {frozenset((a, b)) for a, b, _ in g.arrows}
        assert len(pairs) == len(g.arrows)


def test_degenerate_inputs():
    empty = HomExtQuiver((), ())
    assert is_acyclic(empty) and is_connected(empty)
    assert emit_dot(empty) == "digraph {\n}\n"
    cyc = HomExtQuiver(("a", "b"), ((0, 1, "m"), (1, 0, "m")))
    assert not is_acyclic(cyc)
    q1 = Quiver.from_one_based(1, [])
    assert is_connected(build(ExceptionalSequence.of(std(q1)["S1"])))
    q = Quiver.from_one_based(2, [])
    assert not is_connected(build(ExceptionalSequence.of(std(q)["S1"], std(q)["S2"])))


def test_rule_violation_is_reported():
    # an e-arrow followed by an m-arrow is forbidden
    g = HomExtQuiver(("a", "b", "c"), ((0, 1, "e"), (0, 2, "m"), (1, 2, "m")))
    assert ("a", (0, 1, 2)) in arrow_rule_violations(g)
    with pytest.raises(InternalInconsistency):
        check_arrow_rules(g)


def test_dot_output(a2):
    m = std(a2)
    g = build(ExceptionalSequence.of(m["S1"], m["P2"]))
    text = emit_dot(g)
    assert text == ('digraph {\n  v1 [label="S1"];\n  v2 [label="P2"];\n'
                    '  v1 -> v2 [label="m"];\n}\n')
    assert emit_dot(build(ExceptionalSequence.of(m["S1"], m["P2"]))) == text
