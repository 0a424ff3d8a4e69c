"""Simple characters from tilting characters via the (p, r)-basis.

For ``lam = lam0 + p**r * lam1`` with ``lam0`` r-restricted, the (p, r)-basis
element is ``L(lam0) (x) nabla(lam1)^(r)``. The pipeline

1. expands ``[nabla(mu)]`` in that basis, with coefficients read off tilting
   modules ``T(2(p^r - 1) rho - lam0^* + p^r lam1)`` (:meth:`a_coeff`),
2. turns the coefficients into composition multiplicities of ``nabla(mu)``
   using rows of much smaller weights (:meth:`decomp_row`),
3. back-substitutes to get ``[L(mu)]`` (:meth:`simple_character`).

The coefficient recursion is only valid under Donkin's tilting conjecture
(known for ``p >= 2h - 2``). Any violation of positivity or unitriangularity
is raised as :class:`ConsistencyError` rather than repaired.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .charring import Character, char_mul, frobenius_twist, weight_map_from_json, weight_map_to_json
from .errors import ConsistencyError, ModcharError, UnsupportedWeightError
from .rootsystem import (
    RootSystem,
    Weight,
    _below,
    decompose_pr,
    dominance_leq,
    dual_weight,
    is_restricted,
    pairing_alpha0,
)
from .tilting import TiltingProvider
from .weylchar import nabla_character

log = logging.getLogger(__name__)

CACHE_SCHEMA_VERSION = 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def gamma1_set(rs: RootSystem, p: int) -> list[Weight]:
    """Dominant weights with ``<lam, alpha_0^vee> <= (p-1)(h-1)``, per simple factor."""
    bounds = [(p - 1) * (h - 1) for h in rs.factor_coxeter]
    per_factor = []
    for (lo, hi), coroot, bound in zip(rs.factor_slices, rs.factor_alpha0, bounds):
        found = []

        def extend(prefix, used, i):
            if i == len(coroot):
                found.append(tuple(prefix))
                return
            x = 0
            while used + coroot[i] * x <= bound:
                extend(prefix + [x], used + coroot[i] * x, i + 1)
                x += 1

        extend([], 0, 0)
        per_factor.append(found)
    out = [()]
    for found in per_factor:
        out = [a + b for a in out for b in found]
    out = rs.sort_weights(out)
    members = set(out)
    for lam in out:
        for mu in _below(lam, rs):
            if mu not in members:
                raise ConsistencyError(f"Gamma_1 is not saturated at {list(lam)}", lam)
    return out


@dataclass(frozen=True)
class RChoice:
    r: int
    restricted_r: int  # least r making every target r-restricted
    gamma1_r: int  # least r with (p-1)(h-1) < p**r


def _least_r(bound: int, p: int) -> int:
    r = 1
    while p**r <= bound:
        r += 1
    return r


def choose_r(rs: RootSystem, p: int, targets: Iterable[Weight] = (), r: int | None = None) -> RChoice:
    """Pick r (the configured one, else 1) and report the collapsing choices.

    Large r is never selected automatically: what limits r in practice is
    which tilting modules the provider can describe.
    """
    top = max((max(t, default=0) for t in targets), default=0)
    return RChoice(
        r=r if r is not None else 1,
        restricted_r=_least_r(top, p),
        gamma1_r=_least_r((p - 1) * (rs.coxeter_number - 1), p),
    )


class PipelineContext:
    def __init__(
        self,
        rs: RootSystem,
        p: int,
        provider: TiltingProvider,
        r: int = 1,
        *,
        cache_dir=None,
        lowest_alcove_shortcut: bool = True,
    ):
        if not is_prime(p):
            raise ModcharError(f"p={p} is not prime")
        if r < 1:
            raise ModcharError(f"r must be at least 1, got {r}")
        if provider.rs is not None and provider.rs != rs:
            raise ModcharError(f"provider is for {provider.rs.type_label}, not {rs.type_label}")
        if provider.p is not None and provider.p != p:
            raise ModcharError(f"provider is for p={provider.p}, not p={p}")
        self.rs = rs
        self.p = p
        self.r = r
        self.q = p**r
        self.provider = provider
        self.lowest_alcove_shortcut = lowest_alcove_shortcut
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        # Memo tables only ever receive fully computed values.
        self._a: dict[tuple[Weight, Weight], int] = {}
        self._coeffs: dict[Weight, dict[Weight, int]] = {}
        self._rows: dict[Weight, dict[Weight, int]] = {}
        self._simple: dict[Weight, Character] = {}
        self._chi: dict[Weight, dict[Weight, int]] = {}
        self.stats = Counter()
        if self.cache_dir is not None:
            self.load_cache()

    def __repr__(self):
        return f"PipelineContext({self.rs.type_label}, p={self.p}, r={self.r}, {self.provider.identity})"

    # -- (p, r)-basis coefficients --------------------------------------------------

    def steinberg_shift(self, lam0, lam1) -> Weight:
        """``2(p^r - 1) rho - lam0^* + p^r lam1``."""
        if not is_restricted(lam0, self.p, self.r):
            raise ModcharError(f"{list(lam0)} is not {self.r}-restricted for p={self.p}")
        dual = dual_weight(lam0, self.rs)
        q = self.q
        return tuple(2 * (q - 1) * h - d + q * x for h, d, x in zip(self.rs.rho, dual, lam1))

    def _tilting(self, lam) -> dict[Weight, int]:
        return self.provider.tilting_nabla_mults(lam)

    def a_coeff(self, mu, lam) -> int:
        """Coefficient of ``[nabla^(p,r)(lam)]`` in ``[nabla(mu)]``."""
        mu, lam = tuple(mu), tuple(lam)
        table = self._coeffs.get(mu)
        if table is not None:
            return table.get(lam, 0)
        key = (mu, lam)
        hit = self._a.get(key)
        if hit is not None:
            return hit
        if not dominance_leq(lam, mu, self.rs):
            return 0
        lam0, lam1 = decompose_pr(lam, self.p, self.r)
        value = self._tilting(self.steinberg_shift(lam0, lam1)).get(mu, 0)
        if len(_below(lam1, self.rs)) > 1:
            q = self.q
            for sigma, m in self._tilting(lam1).items():
                if sigma == lam1 or not m:
                    continue
                lower = tuple(a + q * b for a, b in zip(lam0, sigma))
                value -= self.a_coeff(mu, lower) * m
        self._a[key] = value
        return value

    def pr_coeffs(self, mu) -> dict[Weight, int]:
        """All non-zero ``a_coeff(mu, sigma)``, keyed by ``sigma``."""
        mu = tuple(mu)
        table = self._coeffs.get(mu)
        if table is not None:
            self.stats["hits"] += 1
            return table
        table = {}
        # lowest first, so the recursion inside a_coeff always hits the memo
        for sigma in reversed(_below(mu, self.rs)):
            a = self.a_coeff(mu, sigma)
            if a:
                table[sigma] = a
        if table.get(mu) != 1:
            raise ConsistencyError(
                f"coefficient of the top basis element in nabla({list(mu)}) is {table.get(mu, 0)}", mu
            )
        table = dict(sorted(table.items(), key=lambda kv: self.rs.weight_key(kv[0])))
        return self._coeffs.setdefault(mu, table)

    def pr_basis_character(self, lam) -> Character:
        """``[L(lam0) (x) nabla(lam1)^(r)]``."""
        lam0, lam1 = decompose_pr(tuple(lam), self.p, self.r)
        return char_mul(
            self.simple_character(lam0),
            frobenius_twist(nabla_character(lam1, self.rs), self.p, self.r),
        )

    def verify_pr_expansion(self, mu, coeffs: Mapping[Weight, int] | None = None) -> bool:
        mu = tuple(mu)
        if coeffs is None:
            coeffs = self.pr_coeffs(mu)
        total = Character.zero(self.rs)
        for sigma, a in coeffs.items():
            total = total + a * self.pr_basis_character(sigma)
        return total == nabla_character(mu, self.rs)

    # -- composition multiplicities -------------------------------------------------

    def _descend(self, sigma: Weight) -> tuple[Weight, Weight]:
        sigma0, sigma1 = decompose_pr(sigma, self.p, self.r)
        # strict descent in <-, alpha_0^vee> guarantees termination
        if pairing_alpha0(sigma1, self.rs) * self.q > pairing_alpha0(sigma, self.rs):
            raise ConsistencyError(f"recursion does not descend at {list(sigma)}", sigma)
        return sigma0, sigma1

    def comp_mult_pr(self, sigma, mu) -> int:
        """``[nabla^(p,r)(sigma) : L(mu)]``."""
        sigma0, sigma1 = self._descend(tuple(sigma))
        mu0, mu1 = decompose_pr(tuple(mu), self.p, self.r)
        if sigma0 != mu0:
            return 0
        return self._row(sigma1).get(mu1, 0)

    def _row(self, lam: Weight) -> dict[Weight, int]:
        row = self._rows.get(lam)
        if row is not None:
            self.stats["hits"] += 1
            return row
        rs = self.rs
        if not any(lam) or (self.lowest_alcove_shortcut and rs.in_lowest_alcove(lam, self.p)):
            row = {lam: 1}
        else:
            acc: dict[Weight, int] = defaultdict(int)
            q = self.q
            for sigma, a in self.pr_coeffs(lam).items():
                sigma0, sigma1 = self._descend(sigma)
                for mu1, m in self._row(sigma1).items():
                    acc[tuple(x + q * y for x, y in zip(sigma0, mu1))] += a * m
            row = {mu: c for mu, c in acc.items() if c}
            self._validate_row(lam, row)
            row = dict(sorted(row.items(), key=lambda kv: rs.weight_key(kv[0])))
        return self._rows.setdefault(lam, row)

    def _validate_row(self, lam, row):
        if row.get(lam) != 1:
            raise ConsistencyError(
                f"[nabla({list(lam)}) : L({list(lam)})] = {row.get(lam, 0)}, expected 1", lam
            )
        for mu, c in row.items():
            if c < 0:
                raise ConsistencyError(
                    f"[nabla({list(lam)}) : L({list(mu)})] = {c} is negative", lam
                )
            if not dominance_leq(mu, lam, self.rs):
                raise ConsistencyError(f"L({list(mu)}) in nabla({list(lam)}) is not below it", lam)

    def decomp_row(self, lam) -> dict[Weight, int]:
        """``mu -> [nabla(lam) : L(mu)]``."""
        lam = self.rs.check_weight(lam)
        return dict(self._row(lam))

    # -- simple characters --------------------------------------------------------------

    def _closure(self, lam: Weight) -> list[Weight]:
        """Weights whose simple characters ``lam`` depends on, lowest first."""
        seen = {lam}
        stack = [lam]
        while stack:
            w = stack.pop()
            if w in self._simple:
                continue
            for mu in self._row(w):
                if mu not in seen:
                    seen.add(mu)
                    stack.append(mu)
        return sorted(seen, key=self.rs.weight_key, reverse=True)

    def simple_character(self, lam) -> Character:
        """``[L(lam)] = [nabla(lam)] - sum_{mu < lam} [nabla(lam) : L(mu)] [L(mu)]``."""
        lam = self.rs.check_weight(lam)
        hit = self._simple.get(lam)
        if hit is not None:
            self.stats["hits"] += 1
            return hit
        for w in self._closure(lam):
            if w in self._simple:
                continue
            mults = dict(nabla_character(w, self.rs).mults)
            for mu, c in self._row(w).items():
                if mu == w:
                    continue
                for v, m in self._simple[mu].mults.items():
                    mults[v] = mults.get(v, 0) - c * m
            bad = [v for v, m in mults.items() if m < 0]
            if bad:
                raise ConsistencyError(
                    f"L({list(w)}) would have negative multiplicity at {list(bad[0])}", w
                )
            self._simple.setdefault(w, Character(self.rs, mults))
        return self._simple[lam]

    def nabla_form(self, lam) -> dict[Weight, int]:
        """``[L(lam)]`` as an integer combination of costandard characters."""
        lam = self.rs.check_weight(lam)
        hit = self._chi.get(lam)
        if hit is not None:
            return hit
        for w in sorted(self._closure_rows(lam), key=self.rs.weight_key, reverse=True):
            if w in self._chi:
                continue
            out = {w: 1}
            for mu, c in self._row(w).items():
                if mu == w:
                    continue
                for v, d in self._chi[mu].items():
                    out[v] = out.get(v, 0) - c * d
            out = {v: d for v, d in out.items() if d}
            self._chi.setdefault(w, dict(sorted(out.items(), key=lambda kv: self.rs.weight_key(kv[0]))))
        return self._chi[lam]

    def _closure_rows(self, lam):
        seen = {lam}
        stack = [lam]
        while stack:
            w = stack.pop()
            if w in self._chi:
                continue
            for mu in self._row(w):
                if mu not in seen:
                    seen.add(mu)
                    stack.append(mu)
        return seen

    def simple_character_steinberg(self, lam) -> Character:
        """``[L(lam)]`` as a product of twisted restricted simple characters."""
        lam = self.rs.check_weight(lam)
        ch = Character.trivial(self.rs)
        rest, i = lam, 0
        while any(rest):
            digit = tuple(x % self.p for x in rest)
            rest = tuple(x // self.p for x in rest)
            if any(digit):
                ch = char_mul(ch, frobenius_twist(self.simple_character(digit), self.p, i))
            i += 1
        return ch

    # -- planning -----------------------------------------------------------------------

    def gamma1_set(self) -> list[Weight]:
        return gamma1_set(self.rs, self.p)

    def choose_r(self, targets: Iterable[Weight] = ()) -> RChoice:
        return choose_r(self.rs, self.p, targets, self.r)

    def tilting_weights_needed(self, targets: Iterable[Weight]) -> list[Weight]:
        """Tilting highest weights the computation for ``targets`` may query.

        An over-approximation: every basis element below each target is
        counted, including those whose coefficient turns out to be zero.
        """
        needed = set()
        seen = set()
        stack = [tuple(t) for t in targets]
        while stack:
            lam = stack.pop()
            if lam in seen:
                continue
            seen.add(lam)
            if not any(lam) or (self.lowest_alcove_shortcut and self.rs.in_lowest_alcove(lam, self.p)):
                continue
            for sigma in _below(lam, self.rs):
                sigma0, sigma1 = decompose_pr(sigma, self.p, self.r)
                needed.add(self.steinberg_shift(sigma0, sigma1))
                if len(_below(sigma1, self.rs)) > 1:
                    needed.add(sigma1)
                stack.append(sigma1)
        return self.rs.sort_weights(needed)

    def missing_tilting_weights(self, targets: Iterable[Weight]) -> list[Weight]:
        return [w for w in self.tilting_weights_needed(targets) if not self.provider.supports(w)]

    # -- persistent cache -----------------------------------------------------------

    @property
    def cache_file(self) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"{self.rs.type_label}_p{self.p}_r{self.r}.json"

    def _cache_header(self) -> dict:
        return {
            "schema_version": CACHE_SCHEMA_VERSION,
            "type": self.rs.type_label,
            "rank": self.rs.rank,
            "p": self.p,
            "r": self.r,
            "provider": self.provider.identity,
            "lowest_alcove_shortcut": self.lowest_alcove_shortcut,
        }

    def load_cache(self) -> int:
        """Load memo tables from the cache file; returns the number of entries read."""
        path = self.cache_file
        if path is None or not path.exists():
            return 0
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            log.warning("ignoring unreadable cache %s: %s", path, exc)
            return 0
        header = self._cache_header()
        if any(data.get(k) != v for k, v in header.items()):
            log.info("cache %s was written for a different configuration; ignoring", path)
            return 0
        rs = self.rs
        n = 0
        for entry in data.get("pr_coeffs", []):
            self._coeffs[rs.check_weight(entry["weight"])] = weight_map_from_json(rs, entry["coeffs"])
            n += 1
        for entry in data.get("decomp_rows", []):
            self._rows[rs.check_weight(entry["weight"])] = weight_map_from_json(rs, entry["row"])
            n += 1
        for entry in data.get("simple_characters", []):
            self._simple[rs.check_weight(entry["weight"])] = Character.from_json(rs, entry["character"])
            n += 1
        self.stats["loaded"] += n
        return n

    def save_cache(self) -> Path | None:
        path = self.cache_file
        if path is None:
            return None
        rs = self.rs
        data = self._cache_header()
        data["pr_coeffs"] = [
            {"weight": list(w), "coeffs": weight_map_to_json(rs, self._coeffs[w])}
            for w in rs.sort_weights(self._coeffs)
        ]
        data["decomp_rows"] = [
            {"weight": list(w), "row": weight_map_to_json(rs, self._rows[w])}
            for w in rs.sort_weights(self._rows)
        ]
        data["simple_characters"] = [
            {"weight": list(w), "character": self._simple[w].to_json()}
            for w in rs.sort_weights(self._simple)
        ]
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, separators=(",", ":")))
        tmp.replace(path)
        return path


__all__ = [
    "PipelineContext",
    "RChoice",
    "UnsupportedWeightError",
    "choose_r",
    "gamma1_set",
    "is_prime",
]
