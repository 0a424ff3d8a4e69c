"""W-invariant characters, stored on dominant weights.

A :class:`Character` records the multiplicity of each dominant weight; the
multiplicity of any other weight is that of its dominant conjugate. Python
integers are unbounded, so products never overflow.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CharacterError
from .rootsystem import RootSystem, Weight, dominance_leq, orbit


@dataclass(frozen=True)
class Character:
    rs: RootSystem
    mults: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, m in self.mults.items():
            w = tuple(w)
            if m:
                if any(x < 0 for x in w):
                    raise CharacterError(f"character keys must be dominant, got {list(w)}")
                clean[w] = m
        object.__setattr__(self, "mults", clean)

    @classmethod
    def trivial(cls, rs: RootSystem) -> "Character":
        return cls(rs, {(0,) * rs.rank: 1})

    @classmethod
    def zero(cls, rs: RootSystem) -> "Character":
        return cls(rs, {})

    def __bool__(self):
        return bool(self.mults)

    def __getitem__(self, weight) -> int:
        return self.mults.get(tuple(weight), 0)

    def __len__(self):
        return len(self.mults)

    def items(self):
        """(weight, multiplicity) pairs in the deterministic weight order."""
        return [(w, self.mults[w]) for w in self.rs.sort_weights(self.mults)]

    def __add__(self, other):
        return char_add(self, other)

    def __sub__(self, other):
        return char_add(self, char_scale(-1, other))

    def __neg__(self):
        return char_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, int):
            return char_scale(other, self)
        return char_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return char_scale(other, self)
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"{list(w)}: {m}" for w, m in self.items())
        return f"Character({self.rs.type_label}, {{{body}}})"

    def to_json(self) -> list[dict]:
        return [{"weight": list(w), "mult": m} for w, m in self.items()]

    @classmethod
    def from_json(cls, rs: RootSystem, data: Iterable[Mapping]) -> "Character":
        return cls(rs, weight_map_from_json(rs, data))


def weight_map_from_json(rs: RootSystem, data: Iterable[Mapping]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for entry in data:
        w = rs.check_weight(entry["weight"])
        if w in out:
            raise CharacterError(f"weight {list(w)} listed twice")
        out[w] = int(entry["mult"])
    return out


def weight_map_to_json(rs: RootSystem, mults: Mapping[Weight, int]) -> list[dict]:
    return [{"weight": list(w), "mult": mults[w]} for w in rs.sort_weights(mults)]


def _same_rs(a: Character, b: Character):
    if a.rs != b.rs:
        raise CharacterError(f"root systems differ: {a.rs.type_label} vs {b.rs.type_label}")


def char_add(a: Character, b: Character) -> Character:
    _same_rs(a, b)
    out = dict(a.mults)
    for w, m in b.mults.items():
        out[w] = out.get(w, 0) + m
    return Character(a.rs, out)


def char_scale(n: int, a: Character) -> Character:
    return Character(a.rs, {w: n * m for w, m in a.mults.items()})


def full_weights(a: Character) -> dict[Weight, int]:
    """Expand to the full weight-multiplicity function on all of X."""
    out = {}
    for w, m in a.mults.items():
        for v in orbit(w, a.rs):
            out[v] = m
    return out


def char_mul(a: Character, b: Character) -> Character:
    _same_rs(a, b)
    if len(a) > len(b):
        a, b = b, a
    fa = full_weights(a)
    fb = full_weights(b)
    out: dict[Weight, int] = defaultdict(int)
    for u, m in fa.items():
        for v, n in fb.items():
            s = tuple(x + y for x, y in zip(u, v))
            if all(x >= 0 for x in s):
                out[s] += m * n
    return Character(a.rs, out)


def frobenius_twist(a: Character, p: int, r: int = 1) -> Character:
    if r < 0:
        raise CharacterError("twist exponent must be non-negative")
    q = p**r
    return Character(a.rs, {tuple(q * x for x in w): m for w, m in a.mults.items()})


def highest_weight(a: Character) -> Weight:
    if not a:
        raise CharacterError("zero character has no highest weight")
    rs = a.rs
    top = rs.sort_weights(a.mults)[0]
    for w in a.mults:
        if not dominance_leq(w, top, rs):
            raise CharacterError(
                f"no unique highest weight: {list(w)} and {list(top)} are incomparable"
            )
    return top


def dim(a: Character) -> int:
    return sum(m * len(orbit(w, a.rs)) for w, m in a.mults.items())
