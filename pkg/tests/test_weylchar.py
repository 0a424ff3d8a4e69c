import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modchar.charring import Character, dim
from modchar.errors import NotGoodFiltrationError
from modchar.rootsystem import build_root_system
from modchar.weylchar import nabla_character, nabla_combination, nabla_decompose, weyl_dim

A1 = build_root_system("A1")
A2 = build_root_system("A2")


def test_nabla_examples():
    assert nabla_character((4,), A1) == Character(A1, {(4,): 1, (2,): 1, (0,): 1})
    assert nabla_character((0,), A1) == Character.trivial(A1)
    adj = nabla_character((1, 1), A2)
    assert adj.mults == {(1, 1): 1, (0, 0): 2}
    assert dim(adj) == 8


def test_a1_weight_strings():
    for m in range(51):
        expected = {(k,): 1 for k in range(m, -1, -2)}
        assert nabla_character((m,), A1).mults == expected


def test_weyl_dim_examples():
    for m in range(10):
        assert weyl_dim((m,), A1) == m + 1
    assert weyl_dim((1, 0), A2) == 3
    assert weyl_dim((1, 1), A2) == 8


@pytest.mark.parametrize("label,box", [
    ("A2", 5), ("B2", 5), ("C2", 5), ("G2", 4), ("A3", 3), ("B3", 2), ("C3", 2),
    ("D4", 1), ("F4", 1), ("A1xB2", 2),
])
def test_freudenthal_matches_weyl_dimension(label, box):
    rs = build_root_system(label)
    for lam in itertools.product(range(box + 1), repeat=rs.rank):
        ch = nabla_character(lam, rs)
        assert ch[lam] == 1
        assert dim(ch) == weyl_dim(lam, rs)


def test_known_a2_tensor_products():
    # 3 x 3* = 8 + 1, 3 x 3 = 6 + 3*
    assert nabla_decompose(nabla_character((1, 0), A2) * nabla_character((0, 1), A2)) == {
        (1, 1): 1, (0, 0): 1}
    assert nabla_decompose(nabla_character((1, 0), A2) * nabla_character((1, 0), A2)) == {
        (2, 0): 1, (0, 1): 1}


def test_decompose_examples():
    # character of T(2) for p = 2
    assert nabla_decompose(Character(A1, {(2,): 1, (0,): 2})) == {(2,): 1, (0,): 1}
    assert nabla_decompose(nabla_character((3, 2), A2)) == {(3, 2): 1}
    both = nabla_character((4,), A1) + nabla_character((2,), A1)
    assert both.mults == {(4,): 1, (2,): 2, (0,): 2}
    assert nabla_decompose(both) == {(4,): 1, (2,): 1}


def test_decompose_rejects_negative():
    with pytest.raises(NotGoodFiltrationError) as info:
        nabla_decompose(Character(A1, {(2,): 1}))
    assert info.value.weight == (0,)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.data())
def test_decompose_recovers_combination(label, data):
    rs = build_root_system(label)
    weights = data.draw(st.lists(st.tuples(*[st.integers(0, 3)] * rs.rank), max_size=4, unique=True))
    coeffs = {w: data.draw(st.integers(1, 4)) for w in weights}
    assert nabla_decompose(nabla_combination(rs, coeffs)) == coeffs
