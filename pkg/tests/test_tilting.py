import json

import pytest

from modchar.errors import TiltingDataError, UnsupportedWeightError
from modchar.oracle import sl2_tilting_check
from modchar.rootsystem import build_root_system, dominance_leq
from modchar.tilting import (
    FileProvider,
    a1_tilting_provider,
    composite_provider,
    file_provider_load,
    lowest_alcove_provider,
    parse_tilting_data,
)
from modchar.weylchar import nabla_combination

A1 = build_root_system("A1")
A2 = build_root_system("A2")


def write(tmp_path, data, name="t.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def entry(hw, nabla=None, character=None):
    out = {"highest_weight": hw}
    if nabla is not None:
        out["nabla_multiplicities"] = [{"weight": w, "mult": m} for w, m in nabla]
    if character is not None:
        out["character"] = [{"weight": w, "mult": m} for w, m in character]
    return out


def test_file_provider_answers(tmp_path):
    path = write(tmp_path, {"type": "A", "rank": 1, "p": 2,
                            "entries": [entry([2], nabla=[([2], 1), ([0], 1)])]})
    prov = file_provider_load(path)
    assert prov.tilting_nabla_mults((2,)) == {(2,): 1, (0,): 1}
    with pytest.raises(UnsupportedWeightError):
        prov.tilting_nabla_mults((4,))


def test_file_provider_accepts_characters(tmp_path):
    # T(2) for p=2 has character e2 + 2e0 + e-2
    path = write(tmp_path, {"type": "A1", "p": 2,
                            "entries": [entry([2], character=[([2], 1), ([0], 2)])]})
    assert file_provider_load(path).tilting_nabla_mults((2,)) == {(2,): 1, (0,): 1}


@pytest.mark.parametrize("bad,reason", [
    (entry([2], nabla=[([2], 2), ([0], 1)]), "expected 1"),
    (entry([2], nabla=[([0], 1)]), "expected 1"),
    (entry([2], nabla=[([2], 1), ([4], 1)]), "not below"),
    (entry([2], nabla=[([2], 1), ([0], -1)]), "negative"),
    (entry([2], character=[([2], 1)]), "negative"),
    (entry([2]), "exactly one"),
    (entry([2], nabla=[([2], 1)], character=[([2], 1)]), "exactly one"),
    (entry([2, 0], nabla=[([2, 0], 1)]), "coordinates"),
])
def test_file_provider_rejects(tmp_path, bad, reason):
    path = write(tmp_path, {"type": "A1", "p": 2, "entries": [bad]})
    with pytest.raises(TiltingDataError, match=reason):
        file_provider_load(path)


def test_duplicate_entries_rejected():
    data = {"type": "A1", "p": 2, "entries": [entry([1], nabla=[([1], 1)])] * 2}
    with pytest.raises(TiltingDataError, match="duplicate"):
        parse_tilting_data(data)


def test_bad_json_rejected(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    with pytest.raises(TiltingDataError):
        file_provider_load(path)
    with pytest.raises(TiltingDataError):
        parse_tilting_data({"entries": []})


def test_file_round_trip(tmp_path):
    prov = a1_tilting_provider(3)
    entries = {(m,): prov.tilting_nabla_mults((m,)) for m in range(12)}
    data = FileProvider(A1, 3, entries).to_json()
    again = file_provider_load(write(tmp_path, data))
    assert again.entries == entries


def test_a1_examples():
    prov = a1_tilting_provider(2)
    assert prov.tilting_nabla_mults((2,)) == {(2,): 1, (0,): 1}
    assert prov.tilting_nabla_mults((3,)) == {(3,): 1}
    assert prov.tilting_nabla_mults((4,)) == {(4,): 1, (2,): 1}


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_a1_provider_properties(p):
    prov = a1_tilting_provider(p)
    for m in range(p):
        assert prov.tilting_nabla_mults((m,)) == {(m,): 1}
    for m in range(p, 2 * p - 1):
        assert prov.tilting_nabla_mults((m,)) == {(m,): 1, (2 * p - 2 - m,): 1}
    for m in range(8 * p):
        mults = prov.tilting_nabla_mults((m,))
        ok, reason = sl2_tilting_check(m, p, prov)
        assert ok, reason
        # linkage: every factor lies in the dot-orbit of m under the affine Weyl group
        for (k,), c in mults.items():
            assert c == 1
            assert (k - m) % (2 * p) == 0 or (k + m + 2) % (2 * p) == 0
        top = nabla_combination(A1, mults)
        assert max(top.mults) == (m,) and top[(m,)] == 1


def test_lowest_alcove_provider():
    prov = lowest_alcove_provider(A2, 7)
    assert prov.tilting_nabla_mults((1, 1)) == {(1, 1): 1}
    assert prov.tilting_nabla_mults((0, 0)) == {(0, 0): 1}
    assert lowest_alcove_provider(build_root_system("G2"), 5).tilting_nabla_mults((0, 0)) == {(0, 0): 1}
    with pytest.raises(UnsupportedWeightError):
        lowest_alcove_provider(A1, 2).tilting_nabla_mults((2,))


def test_composite_provider(tmp_path):
    a1 = a1_tilting_provider(2)
    bogus = parse_tilting_data({"type": "A1", "p": 2, "entries": [entry([1], nabla=[([1], 1)]),
                                                                   entry([0], nabla=[([0], 1)])]})
    comp = composite_provider(a1, bogus)
    assert comp.tilting_nabla_mults((4,)) == a1.tilting_nabla_mults((4,))

    alcove = lowest_alcove_provider(A1, 2)
    wrong = parse_tilting_data({"type": "A1", "p": 2,
                                "entries": [entry([1], character=[([1], 1), ([0], 0)]),
                                            entry([0], nabla=[([0], 1)])]})
    assert composite_provider(alcove, wrong, check=True).tilting_nabla_mults((1,)) == {(1,): 1}
    disagree = parse_tilting_data({"type": "A1", "p": 2,
                                   "entries": [entry([2], nabla=[([2], 1)])]})
    comp = composite_provider(a1, disagree, check=True)
    with pytest.raises(TiltingDataError, match="disagree"):
        comp.tilting_nabla_mults((2,))

    empty = composite_provider()
    assert not empty.supports((0,))
    with pytest.raises(UnsupportedWeightError):
        empty.tilting_nabla_mults((0,))


def test_composite_rejects_mismatched_providers():
    with pytest.raises(TiltingDataError):
        composite_provider(a1_tilting_provider(2), a1_tilting_provider(3))


def test_provider_invariants_hold_everywhere():
    providers = [a1_tilting_provider(3), lowest_alcove_provider(A1, 3)]
    for prov in providers:
        for m in range(30):
            if not prov.supports((m,)):
                continue
            mults = prov.tilting_nabla_mults((m,))
            assert mults[(m,)] == 1
            assert all(dominance_leq(mu, (m,), A1) for mu in mults)
