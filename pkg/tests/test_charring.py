from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modchar.charring import (
    Character,
    char_add,
    char_mul,
    char_scale,
    dim,
    frobenius_twist,
    highest_weight,
)
from modchar.errors import CharacterError
from modchar.rootsystem import build_root_system
from modchar.weylchar import nabla_character

A1 = build_root_system("A1")
A2 = build_root_system("A2")


def ch(rs, d):
    return Character(rs, d)


def test_add_and_scale():
    e0 = Character.trivial(A1)
    assert e0 + e0 == ch(A1, {(0,): 2})
    a = ch(A1, {(3,): 1, (1,): 4})
    assert a + Character.zero(A1) == a
    assert char_add(char_scale(-1, a), a) == Character.zero(A1)
    assert not (a - a)


def test_mismatched_root_systems():
    with pytest.raises(CharacterError):
        char_add(Character.trivial(A1), Character.trivial(A2))
    with pytest.raises(CharacterError):
        char_mul(Character.trivial(A1), Character.trivial(A2))


def test_mul_examples():
    e1 = ch(A1, {(1,): 1})
    assert char_mul(e1, e1) == ch(A1, {(2,): 1, (0,): 2})
    # (e1 + e-1)(e2 + e-2) = e3 + e1 + e-1 + e-3
    assert char_mul(e1, frobenius_twist(e1, 2, 1)) == ch(A1, {(3,): 1, (1,): 1})
    a = ch(A2, {(1, 1): 1, (0, 0): 2})
    assert a * Character.trivial(A2) == a


def test_twist_examples():
    assert frobenius_twist(ch(A1, {(1,): 1}), 2, 1) == ch(A1, {(2,): 1})
    a = ch(A1, {(1,): 1, (0,): 2})
    assert frobenius_twist(a, 5, 0) == a
    assert frobenius_twist(a, 3, 2) == ch(A1, {(9,): 1, (0,): 2})


def test_highest_weight():
    assert highest_weight(ch(A1, {(4,): 1, (2,): 1, (0,): 1})) == (4,)
    assert highest_weight(ch(A2, {(1, 1): 1, (0, 0): 2})) == (1, 1)
    with pytest.raises(CharacterError):
        highest_weight(ch(A1, {(2,): 1, (1,): 1}))
    with pytest.raises(CharacterError):
        highest_weight(Character.zero(A1))


def test_dim():
    assert dim(ch(A1, {(5,): 1})) == 2
    assert dim(ch(A1, {(0,): 1})) == 1
    assert dim(nabla_character((4,), A1)) == 5
    assert dim(nabla_character((1, 1), A2)) == 8


def test_keys_must_be_dominant():
    with pytest.raises(CharacterError):
        ch(A1, {(-1,): 1})


def test_serialization_round_trip():
    a = nabla_character((2, 1), A2)
    data = a.to_json()
    assert data[0] == {"weight": [2, 1], "mult": 1}
    assert Character.from_json(A2, data) == a


# -- brute force: expand orbits independently, convolve with Counter --------


def _orbit_brute(w, rs):
    seen = {w}
    todo = [w]
    while todo:
        v = todo.pop()
        for i in range(rs.rank):
            u = tuple(x - v[i] * a for x, a in zip(v, rs.cartan[i]))
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def _expand(a):
    full = Counter()
    for w, m in a.mults.items():
        for v in _orbit_brute(w, a.rs):
            full[v] += m
    return full


def _brute_mul(a, b):
    fa, fb = _expand(a), _expand(b)
    out = Counter()
    for u, m in fa.items():
        for v, n in fb.items():
            out[tuple(x + y for x, y in zip(u, v))] += m * n
    return {w: m for w, m in out.items() if m and all(x >= 0 for x in w)}


def characters(labels=("A1", "A2", "B2", "G2")):
    @st.composite
    def build(draw, label=None):
        rs = build_root_system(label or draw(st.sampled_from(labels)))
        keys = draw(st.lists(st.tuples(*[st.integers(0, 3)] * rs.rank), max_size=5, unique=True))
        vals = draw(st.lists(st.integers(-3, 3), min_size=len(keys), max_size=len(keys)))
        return Character(rs, dict(zip(keys, vals)))
    return build


@st.composite
def triples(draw):
    label = draw(st.sampled_from(["A1", "A2", "B2", "G2"]))
    make = characters()
    return draw(make(label)), draw(make(label)), draw(make(label))


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(triples())
def test_mul_matches_brute_force(abc):
    a, b, _ = abc
    assert (a * b).mults == _brute_mul(a, b)


@settings(max_examples=40, deadline=None)
@given(triples(), st.sampled_from([2, 3, 5]), st.integers(0, 2))
def test_dim_and_twist(abc, p, r):
    a, b, _ = abc
    assert dim(a * b) == dim(a) * dim(b)
    assert dim(frobenius_twist(a, p, r)) == dim(a)
    assert frobenius_twist(a * b, p, r) == frobenius_twist(a, p, r) * frobenius_twist(b, p, r)
