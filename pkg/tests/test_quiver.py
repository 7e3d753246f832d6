import pytest
from hypothesis import given
from hypothesis import strategies as st

from excmut.errors import BadIndex, CyclicQuiver, ParseError, RepInfinite
from excmut.quiver import (
    Quiver,
    d4,
    dynkin_type,
    euler_form,
    kronecker,
    linear_a,
    parse_quiver,
    positive_root_count,
    triangle_quiver,
)


def test_validation():
    q = Quiver.from_one_based(2, [(2, 1)])
    assert q.n == 2 and q.arrows == ((1, 0),)
    assert Quiver.from_one_based(1, []).n == 1
    with pytest.raises(CyclicQuiver):
        Quiver.from_one_based(1, [(1, 1)])
    with pytest.raises(CyclicQuiver):
        Quiver.from_one_based(2, [(1, 2), (2, 1)])
    with pytest.raises(BadIndex):
        Quiver.from_one_based(2, [(3, 1)])


def test_euler_form_examples():
    q = linear_a(2)
    assert euler_form(q, (1, 1), (1, 0)) == 0
    assert euler_form(q, (0, 1), (1, 0)) == -1
    for i in range(2):
        for j in range(2):
            e_i = tuple(int(k == i) for k in range(2))
            e_j = tuple(int(k == j) for k in range(2))
            arrows = sum(1 for a in q.arrows if a == (i, j))
            assert euler_form(q, e_i, e_j) == int(i == j) - arrows


def test_dynkin_types():
    assert dynkin_type(linear_a(2)) == "A2"
    assert dynkin_type(d4()) == "D4"
    assert dynkin_type(triangle_quiver()) == "RepInfinite"
    assert dynkin_type(kronecker()) == "RepInfinite"
    assert positive_root_count(d4()) == 12
    with pytest.raises(RepInfinite):
        positive_root_count(kronecker())


def test_parse_quiver():
    assert parse_quiver('{"vertices":2,"arrows":[[2,1]]}') == linear_a(2)
    assert parse_quiver('{"vertices":3,"arrows":[[2,1],[3,1],[3,2]]}') == triangle_quiver()
    with pytest.raises(ParseError):
        parse_quiver('{"vertices":2}')
    with pytest.raises(ParseError, match="line 1"):
        parse_quiver('{"vertices":2,')


vec = st.lists(st.integers(-4, 4), min_size=3, max_size=3).map(tuple)


@given(vec, vec, vec, st.integers(-3, 3))
def test_euler_form_bilinear(d, d2, e, c):
    q = triangle_quiver()
    add = tuple(a + b for a, b in zip(d, d2))
    assert euler_form(q, add, e) == euler_form(q, d, e) + euler_form(q, d2, e)
    assert euler_form(q, e, add) == euler_form(q, e, d) + euler_form(q, e, d2)
    assert euler_form(q, tuple(c * x for x in d), e) == c * euler_form(q, d, e)
