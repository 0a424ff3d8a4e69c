"""Costandard characters and good-filtration multiplicities."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .charring import Character
from .errors import NotGoodFiltrationError
from .rootsystem import RootSystem, Weight, _below, make_dominant


@lru_cache(maxsize=None)
def _freudenthal(lam: Weight, rs: RootSystem) -> tuple[tuple[Weight, int], ...]:
    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    top = rs.inner(lr, lr)
    mults: dict[Weight, int] = {}
    for mu in _below(lam, rs):
        if mu == lam:
            mults[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = top - rs.inner(mr, mr)
        total = 0
        for alpha in rs.positive_roots:
            k = 1
            while True:
                v = tuple(a + k * b for a, b in zip(mu, alpha))
                m = mults.get(make_dominant(v, rs).weight, 0)
                if not m:
                    break
                total += m * rs.inner(v, alpha)
                k += 1
        num = 2 * total
        assert denom > 0 and num % denom == 0, (lam, mu, num, denom)
        if num:
            mults[mu] = num // denom
    return tuple(mults.items())


def nabla_character(lam, rs: RootSystem) -> Character:
    """Character of the costandard module with highest weight ``lam``."""
    lam = rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise NotGoodFiltrationError(f"{list(lam)} is not dominant", lam)
    return Character(rs, dict(_freudenthal(lam, rs)))


def weyl_dim(lam, rs: RootSystem) -> int:
    """Weyl's dimension formula, a product over positive coroots."""
    num = Fraction(1)
    for coroot in rs.positive_coroots:
        num *= Fraction(
            sum(c * (x + 1) for c, x in zip(coroot, lam)), sum(coroot)
        )
    assert num.denominator == 1
    return int(num)


def nabla_decompose(a: Character) -> dict[Weight, int]:
    """Multiplicities ``[M : nabla(mu)]`` of a good-filtration character.

    Raises :class:`NotGoodFiltrationError` naming the weight at which a
    negative multiplicity would have to be recorded.
    """
    rs = a.rs
    rest = dict(a.mults)
    out: dict[Weight, int] = {}
    while rest:
        ordered = rs.sort_weights(rest)
        key = rs.weight_key(ordered[0])[0]
        # all weights of maximal height are pairwise incomparable maxima
        layer = [w for w in ordered if rs.weight_key(w)[0] == key]
        for mu in layer:
            c = rest.get(mu, 0)
            if c == 0:
                continue
            if c < 0:
                raise NotGoodFiltrationError(
                    f"negative costandard multiplicity {c} at {list(mu)}", mu
                )
            out[mu] = c
            for w, m in _freudenthal(mu, rs):
                v = rest.get(w, 0) - c * m
                if v:
                    rest[w] = v
                else:
                    rest.pop(w, None)
    return out


def nabla_combination(rs: RootSystem, coeffs) -> Character:
    """``sum coeffs[mu] * [nabla(mu)]``."""
    out: dict[Weight, int] = {}
    for mu, c in coeffs.items():
        if not c:
            continue
        for w, m in _freudenthal(tuple(mu), rs):
            out[w] = out.get(w, 0) + c * m
    return Character(rs, out)


def clear_caches():
    _freudenthal.cache_clear()
