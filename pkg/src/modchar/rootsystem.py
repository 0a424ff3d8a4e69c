"""Root systems and weight-lattice combinatorics.

Weights are plain tuples of integers in fundamental-weight coordinates,
i.e. the pairings against the simple coroots. Roots are converted into this
basis once, when the root system is built.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import NamedTuple, Sequence

from .errors import RootSystemError

Weight = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _cartan_irreducible(letter: str, n: int) -> list[list[int]]:
    # Bourbaki numbering; entry [i][j] is <alpha_i, alpha_j^vee>, so row i is
    # the simple root alpha_i written in fundamental weights.
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        c[i][j], c[j][i] = a, b

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, -2, -1)
        elif letter == "C":
            link(n - 2, n - 1, -1, -2)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -1, -3)
    return c


def parse_type(type_label, rank: int | None = None) -> tuple[tuple[str, int], ...]:
    """Normalise a type label into a tuple of irreducible factors.

    Accepts ``"A2"``, ``("A", 2)``, ``"A", 2``, ``"A1xG2"`` or a list of
    such factors.
    """
    if isinstance(type_label, str):
        label = type_label.strip().upper()
        if re.fullmatch(r"[A-G]", label):
            if rank is None:
                raise RootSystemError(f"type {label} needs a rank")
            factors = [(label, int(rank))]
            rank = None
        else:
            parts = [s for s in re.split(r"[X×+*, ]+", label) if s]
            factors = []
            for part in parts:
                m = re.fullmatch(r"([A-G])(\d+)", part)
                if not m:
                    raise RootSystemError(f"cannot parse type label {type_label!r}")
                factors.append((m.group(1), int(m.group(2))))
    elif isinstance(type_label, tuple) and len(type_label) == 2 and isinstance(type_label[0], str):
        factors = [(type_label[0].upper(), int(type_label[1]))]
    else:
        factors = []
        for f in type_label:
            factors.extend(parse_type(f))
    if not factors:
        raise RootSystemError("empty type label")
    for letter, n in factors:
        if letter not in _VALID_RANKS or not _VALID_RANKS[letter](n):
            raise RootSystemError(f"invalid type/rank combination {letter}{n}")
    if rank is not None and rank != sum(n for _, n in factors):
        raise RootSystemError(
            f"rank {rank} does not match type {type_label!r}"
        )
    return tuple(factors)


def _inverse(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _lcm(values) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y), values, 1)


def _symmetrizer(cartan: list[list[int]]) -> list[int]:
    # d_i = (alpha_i, alpha_i)/2 with cartan[i][j]*d_j symmetric, short roots d=1
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[j][i], cartan[i][j])
                    comp.append(j)
                    queue.append(j)
        smallest = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / smallest
    return [int(x) for x in d]


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by string closure."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # <beta, alpha_i^vee>
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                down = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        down += 1
                    else:
                        break
                if down - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
                        ordered.append(up)
        layer = sorted(nxt, reverse=True)
    return ordered


class DominantRep(NamedTuple):
    weight: Weight
    parity: int  # (-1)^(number of simple reflections used)
    singular: bool  # dominant representative lies on a wall


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root-system context. Build with :func:`build_root_system`."""

    factors: tuple[tuple[str, int], ...]
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Weight, ...]
    positive_roots_simple: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    rho: Weight
    coxeter_number: int
    alpha0_coroot: tuple[int, ...]
    factor_slices: tuple[tuple[int, int], ...]
    factor_alpha0: tuple[tuple[int, ...], ...]
    factor_coxeter: tuple[int, ...]
    w0_dual_permutation: tuple[int, ...]
    symmetrizer: tuple[int, ...]
    _adj: tuple[tuple[int, ...], ...] = field(repr=False)
    _det: int = field(repr=False)
    _gram: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def type_label(self) -> str:
        return "x".join(f"{a}{n}" for a, n in self.factors)

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return self.cartan

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"RootSystem({self.type_label})"

    def __reduce__(self):
        return build_root_system, (self.type_label,)

    # -- linear algebra on weights -------------------------------------------------

    def simple_coords_scaled(self, weight: Sequence[int]) -> list[int]:
        """Coordinates of ``weight`` over the simple roots, times ``det``."""
        return [sum(a * x for a, x in zip(row, weight)) for row in self._adj]

    def simple_coords(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._det) for c in self.simple_coords_scaled(weight))

    def height(self, weight: Sequence[int]) -> Fraction:
        return Fraction(sum(self.simple_coords_scaled(weight)), self._det)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        """W-invariant form, scaled to be integral on the weight lattice."""
        g = self._gram
        return sum(a[i] * g[i][j] * b[j]
                   for i in range(self.rank) if a[i]
                   for j in range(self.rank) if b[j])

    def weight_key(self, weight: Sequence[int]):
        """Deterministic sort key: higher weights first, then lexicographic."""
        return (-sum(self.simple_coords_scaled(weight)), tuple(-x for x in weight))

    def sort_weights(self, weights) -> list[Weight]:
        return sorted(weights, key=self.weight_key)

    def check_weight(self, weight) -> Weight:
        w = tuple(int(x) for x in weight)
        if len(w) != self.rank:
            raise RootSystemError(
                f"weight {list(w)} has {len(w)} coordinates, rank is {self.rank}"
            )
        return w

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(x >= 0 for x in weight)

    def reflect(self, weight: Sequence[int], i: int) -> Weight:
        c = weight[i]
        return tuple(x - c * a for x, a in zip(weight, self.cartan[i]))

    def factor_pairings_alpha0(self, weight: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(k * x for k, x in zip(coroot, weight[lo:hi]))
            for (lo, hi), coroot in zip(self.factor_slices, self.factor_alpha0)
        )

    def in_lowest_alcove(self, weight: Sequence[int], p: int) -> bool:
        shifted = [x + 1 for x in weight]
        return all(v <= p for v in self.factor_pairings_alpha0(shifted))


@lru_cache(maxsize=None)
def _build(factors: tuple[tuple[str, int], ...]) -> RootSystem:
    rank = sum(n for _, n in factors)
    cartan = [[0] * rank for _ in range(rank)]
    slices = []
    off = 0
    for letter, n in factors:
        block = _cartan_irreducible(letter, n)
        for i in range(n):
            for j in range(n):
                cartan[off + i][off + j] = block[i][j]
        slices.append((off, off + n))
        off += n

    d = _symmetrizer(cartan)
    pos_simple = _positive_roots(cartan)
    pos_simple.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
    pos_weights = [
        tuple(sum(c[j] * cartan[j][i] for j in range(rank)) for i in range(rank))
        for c in pos_simple
    ]
    coroots = []
    for c in pos_simple:
        support = [j for j in range(rank) if c[j]]
        # (alpha, alpha)/2 of the root, via any simple root it involves
        d_alpha = Fraction(
            sum(c[i] * c[j] * cartan[i][j] * d[j] for i in range(rank) for j in range(rank)), 2
        )
        assert support
        coroot = tuple(Fraction(c[j] * d[j]) / d_alpha for j in range(rank))
        assert all(x.denominator == 1 for x in coroot)
        coroots.append(tuple(int(x) for x in coroot))

    rho2 = [sum(w[i] for w in pos_weights) for i in range(rank)]
    rho = tuple(x // 2 for x in rho2)

    factor_alpha0 = []
    factor_h = []
    alpha0 = [0] * rank
    for lo, hi in slices:
        local = [cr for cr in coroots if all(x == 0 for k, x in enumerate(cr) if not lo <= k < hi)]
        top = max(local, key=sum)
        factor_alpha0.append(tuple(top[lo:hi]))
        factor_h.append(sum(top[lo:hi]) + 1)
        for k in range(lo, hi):
            alpha0[k] += top[k]

    inv = _inverse(cartan)
    inv_t = [[inv[j][i] for j in range(rank)] for i in range(rank)]
    det = _lcm(x.denominator for row in inv_t for x in row)
    adj = tuple(tuple(int(x * det) for x in row) for row in inv_t)

    # (omega_i, omega_k) = inv[k][i] * d_i
    gram_f = [[inv[k][i] * d[i] for k in range(rank)] for i in range(rank)]
    scale = _lcm(x.denominator for row in gram_f for x in row)
    gram = tuple(tuple(int(x * scale) for x in row) for row in gram_f)

    rs = RootSystem(
        factors=factors,
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        positive_roots=tuple(pos_weights),
        positive_roots_simple=tuple(pos_simple),
        positive_coroots=tuple(coroots),
        rho=rho,
        coxeter_number=max(factor_h),
        alpha0_coroot=tuple(alpha0),
        factor_slices=tuple(slices),
        factor_alpha0=tuple(factor_alpha0),
        factor_coxeter=tuple(factor_h),
        w0_dual_permutation=(),
        symmetrizer=tuple(d),
        _adj=adj,
        _det=det,
        _gram=gram,
    )
    perm = []
    for i in range(rank):
        omega = tuple(-int(i == j) for j in range(rank))
        image = make_dominant(omega, rs).weight
        assert sorted(image) == [0] * (rank - 1) + [1]
        perm.append(image.index(1))
    object.__setattr__(rs, "w0_dual_permutation", tuple(perm))
    return rs


def build_root_system(type_label, rank: int | None = None) -> RootSystem:
    """Build (or fetch the cached) root system of the given Dynkin type."""
    return _build(parse_type(type_label, rank))


def pairing_alpha0(weight: Sequence[int], rs: RootSystem) -> int:
    """``<weight, alpha_0^vee>``; summed over factors for products."""
    return sum(k * x for k, x in zip(rs.alpha0_coroot, weight))


def make_dominant(weight: Sequence[int], rs: RootSystem) -> DominantRep:
    w = list(weight)
    parity = 1
    cartan = rs.cartan
    while True:
        for i, c in enumerate(w):
            if c < 0:
                break
        else:
            break
        row = cartan[i]
        for j in range(len(w)):
            if row[j]:
                w[j] -= c * row[j]
        parity = -parity
    w = tuple(w)
    return DominantRep(w, parity, 0 in w)


def dual_weight(weight: Sequence[int], rs: RootSystem) -> Weight:
    """The dual weight ``-w0(weight)`` of a dominant weight."""
    if not rs.is_dominant(weight):
        raise RootSystemError(f"dual_weight needs a dominant weight, got {list(weight)}")
    out = [0] * rs.rank
    for i, x in enumerate(weight):
        out[rs.w0_dual_permutation[i]] = x
    return tuple(out)


def dominance_leq(mu: Sequence[int], lam: Sequence[int], rs: RootSystem) -> bool:
    """True iff ``lam - mu`` is a non-negative integral sum of positive roots."""
    diff = [a - b for a, b in zip(lam, mu)]
    det = rs._det
    for c in rs.simple_coords_scaled(diff):
        if c < 0 or c % det:
            return False
    return True


@lru_cache(maxsize=4096)
def _below(lam: Weight, rs: RootSystem) -> tuple[Weight, ...]:
    # Every dominant mu < lam is reachable from lam through a chain of dominant
    # weights, each obtained from the previous by subtracting one positive root.
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for root in rs.positive_roots:
                v = tuple(a - b for a, b in zip(w, root))
                if v not in seen and all(x >= 0 for x in v):
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return tuple(sorted(seen, key=rs.weight_key))


def dominant_weights_below(lam: Sequence[int], rs: RootSystem) -> list[Weight]:
    """All dominant ``sigma <= lam``, highest first."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise RootSystemError(f"expected a dominant weight, got {list(lam)}")
    return list(_below(lam, rs))


def decompose_pr(lam: Sequence[int], p: int, r: int) -> tuple[Weight, Weight]:
    """Split ``lam = lam0 + p**r * lam1`` with ``lam0`` r-restricted."""
    q = p**r
    lam0 = tuple(x % q for x in lam)
    lam1 = tuple(x // q for x in lam)
    return lam0, lam1


def is_restricted(lam: Sequence[int], p: int, r: int) -> bool:
    q = p**r
    return all(0 <= x < q for x in lam)


@lru_cache(maxsize=None)
def orbit(weight: Weight, rs: RootSystem) -> tuple[Weight, ...]:
    """The W-orbit of a weight, by breadth-first closure under simple reflections."""
    seen = {weight}
    queue = deque([weight])
    while queue:
        w = queue.popleft()
        for i in range(rs.rank):
            if w[i]:
                v = rs.reflect(w, i)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return tuple(sorted(seen, key=rs.weight_key))
