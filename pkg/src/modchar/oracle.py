"""Ground truth for SL2, built from Steinberg's tensor product theorem alone.

Nothing here touches :mod:`modchar.pipeline`; the point of these functions
is to check it.
"""

from __future__ import annotations

from functools import lru_cache

from .charring import Character, char_mul, frobenius_twist
from .errors import ConsistencyError
from .rootsystem import build_root_system, dominance_leq
from .weylchar import nabla_character

A1 = build_root_system("A1")


def _digits(m: int, p: int) -> list[int]:
    out = []
    while m:
        m, d = divmod(m, p)
        out.append(d)
    return out


@lru_cache(maxsize=None)
def sl2_simple_char(m: int, p: int) -> Character:
    """``[L(m)]`` as the product of the twisted base-p digit characters."""
    ch = Character.trivial(A1)
    for i, d in enumerate(_digits(m, p)):
        if d:
            ch = char_mul(ch, frobenius_twist(nabla_character((d,), A1), p, i))
    return ch


@lru_cache(maxsize=None)
def sl2_decomp_row(m: int, p: int) -> dict[tuple[int], int]:
    """``[nabla(m) : L(k)]`` by peeling simple characters off the top."""
    rest = dict(nabla_character((m,), A1).mults)
    row = {}
    while rest:
        k = max(rest)
        c = rest[k]
        if c < 0:
            raise ConsistencyError(f"oracle produced {c} at {list(k)} for nabla({m}), p={p}", k)
        row[k] = c
        for w, n in sl2_simple_char(k[0], p).mults.items():
            v = rest.get(w, 0) - c * n
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return row


def sl2_tilting_check(m: int, p: int, provider) -> tuple[bool, str]:
    """Sanity checks on a provider's answer for ``T(m)``.

    Returns ``(ok, reason)``.
    """
    lam = (m,)
    mults = provider.tilting_nabla_mults(lam)
    if mults.get(lam, 0) != 1:
        return False, f"T({m}): top factor multiplicity {mults.get(lam, 0)}"
    for mu, c in mults.items():
        if c < 0:
            return False, f"T({m}): negative multiplicity at {list(mu)}"
        if not dominance_leq(mu, lam, A1):
            return False, f"T({m}): nabla({mu[0]}) is not below {m}"
    full: dict[int, int] = {}
    for (k,), c in mults.items():
        for j in range(-k, k + 1, 2):
            full[j] = full.get(j, 0) + c
    if any(full.get(-j) != v for j, v in full.items()):
        return False, f"T({m}): weight string is not symmetric"
    top = max(full)
    if top != m or full[top] != 1:
        return False, f"T({m}): highest weight is {top} with multiplicity {full[top]}"
    # non-negative expansion in simple characters
    rest = {(w,): v for w, v in full.items() if w >= 0}
    while rest:
        k = max(rest)
        c = rest[k]
        if c < 0:
            return False, f"T({m}): not a sum of simple characters (at {k[0]})"
        for w, n in sl2_simple_char(k[0], p).mults.items():
            v = rest.get(w, 0) - c * n
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return True, "ok"
