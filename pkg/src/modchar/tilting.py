"""Sources of tilting-module data: good-filtration multiplicities of T(lam).

Every provider answers ``tilting_nabla_mults(lam)`` with a dict
``mu -> [T(lam) : nabla(mu)]`` or raises :class:`UnsupportedWeightError`.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Mapping

from .charring import Character, char_mul, frobenius_twist, weight_map_from_json, weight_map_to_json
from .errors import NotGoodFiltrationError, TiltingDataError, UnsupportedWeightError
from .rootsystem import RootSystem, Weight, build_root_system, dominance_leq
from .weylchar import nabla_character, nabla_decompose


def validate_tilting_mults(lam: Weight, mults: Mapping[Weight, int], rs: RootSystem):
    """Check top factor and support of ``[T(lam):nabla(-)]``; raise on violation."""
    if mults.get(lam, 0) != 1:
        raise TiltingDataError(
            f"T({list(lam)}): multiplicity of nabla({list(lam)}) is "
            f"{mults.get(lam, 0)}, expected 1",
            lam,
        )
    for mu, m in mults.items():
        if m < 0:
            raise TiltingDataError(
                f"T({list(lam)}): negative multiplicity {m} at {list(mu)}", lam
            )
        if m and not dominance_leq(mu, lam, rs):
            raise TiltingDataError(
                f"T({list(lam)}): weight {list(mu)} is not below the highest weight", lam
            )


class TiltingProvider:
    """Base class; subclasses implement ``supports`` and ``_compute``."""

    name = "provider"

    def __init__(self, rs: RootSystem, p: int):
        self.rs = rs
        self.p = p
        self._memo: dict[Weight, dict[Weight, int]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<{self.identity}>"

    @property
    def identity(self) -> str:
        return f"{self.name}:{self.rs.type_label}:p={self.p}"

    def supports(self, lam) -> bool:
        raise NotImplementedError

    def _compute(self, lam: Weight) -> dict[Weight, int]:
        raise NotImplementedError

    def tilting_nabla_mults(self, lam) -> dict[Weight, int]:
        lam = tuple(lam)
        hit = self._memo.get(lam)
        if hit is not None:
            return hit
        if not self.supports(lam):
            raise UnsupportedWeightError(lam, self.identity)
        result = self._compute(lam)
        with self._lock:
            return self._memo.setdefault(lam, result)

    def tilting_character(self, lam) -> Character:
        out: dict[Weight, int] = {}
        for mu, c in self.tilting_nabla_mults(lam).items():
            for w, m in nabla_character(mu, self.rs).mults.items():
                out[w] = out.get(w, 0) + c * m
        return Character(self.rs, out)


class FileProvider(TiltingProvider):
    name = "file"

    def __init__(self, rs: RootSystem, p: int, entries: dict[Weight, dict[Weight, int]], path=None):
        super().__init__(rs, p)
        self.entries = entries
        self.path = str(path) if path is not None else None

    @property
    def identity(self) -> str:
        return f"file:{Path(self.path).name if self.path else '<memory>'}:{self.rs.type_label}:p={self.p}"

    def supports(self, lam) -> bool:
        return tuple(lam) in self.entries

    def _compute(self, lam):
        return self.entries[lam]

    def to_json(self) -> dict:
        return tilting_file_json(self.rs, self.p, self.entries)


def tilting_file_json(rs: RootSystem, p: int, entries: Mapping[Weight, Mapping[Weight, int]]) -> dict:
    return {
        "type": rs.type_label,
        "rank": rs.rank,
        "p": p,
        "entries": [
            {"highest_weight": list(lam), "nabla_multiplicities": weight_map_to_json(rs, entries[lam])}
            for lam in rs.sort_weights(entries)
        ],
    }


def parse_tilting_data(data: Mapping, path=None) -> FileProvider:
    try:
        rs = build_root_system(data["type"], data.get("rank"))
        p = int(data["p"])
        raw_entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise TiltingDataError(f"{path or 'tilting data'}: malformed header ({exc})") from exc
    entries: dict[Weight, dict[Weight, int]] = {}
    for raw in raw_entries:
        try:
            lam = rs.check_weight(raw["highest_weight"])
        except (KeyError, TypeError) as exc:
            raise TiltingDataError(f"entry without highest_weight: {raw!r}") from exc
        except ValueError as exc:
            raise TiltingDataError(str(exc)) from exc
        if not rs.is_dominant(lam):
            raise TiltingDataError(f"highest weight {list(lam)} is not dominant", lam)
        if lam in entries:
            raise TiltingDataError(f"duplicate entry for T({list(lam)})", lam)
        has_nabla = "nabla_multiplicities" in raw
        has_char = "character" in raw
        if has_nabla == has_char:
            raise TiltingDataError(
                f"T({list(lam)}): give exactly one of nabla_multiplicities or character", lam
            )
        try:
            if has_nabla:
                mults = weight_map_from_json(rs, raw["nabla_multiplicities"])
            else:
                mults = nabla_decompose(Character.from_json(rs, raw["character"]))
        except NotGoodFiltrationError as exc:
            raise TiltingDataError(f"T({list(lam)}): {exc}", lam) from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise TiltingDataError(f"T({list(lam)}): {exc}", lam) from exc
        mults = {w: m for w, m in mults.items() if m}
        validate_tilting_mults(lam, mults, rs)
        entries[lam] = mults
    return FileProvider(rs, p, entries, path)


def file_provider_load(path) -> FileProvider:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise TiltingDataError(f"{path}: not valid JSON ({exc})") from exc
    return parse_tilting_data(data, path)


class A1Provider(TiltingProvider):
    """Rank-one tilting modules from Donkin's tensor product formula."""

    name = "builtin-a1"

    def __init__(self, p: int):
        super().__init__(build_root_system("A1"), p)
        self._chars: dict[int, Character] = {}

    def supports(self, lam) -> bool:
        return len(lam) == 1 and lam[0] >= 0

    def _character(self, m: int) -> Character:
        hit = self._chars.get(m)
        if hit is not None:
            return hit
        p = self.p
        if m <= p - 1:
            ch = nabla_character((m,), self.rs)
        elif m <= 2 * p - 2:
            ch = nabla_character((m,), self.rs) + nabla_character((2 * p - 2 - m,), self.rs)
        else:
            s = (m - (p - 1)) % p
            rest = (m - (p - 1) - s) // p
            ch = char_mul(self._character(p - 1 + s), frobenius_twist(self._character(rest), p, 1))
        self._chars[m] = ch
        return ch

    def _compute(self, lam):
        return nabla_decompose(self._character(lam[0]))


def a1_tilting_provider(p: int) -> A1Provider:
    return A1Provider(p)


class LowestAlcoveProvider(TiltingProvider):
    """``T(lam) = nabla(lam)`` whenever ``<lam + rho, alpha_0^vee> <= p``."""

    name = "builtin-lowest-alcove"

    def supports(self, lam) -> bool:
        return len(lam) == self.rs.rank and self.rs.is_dominant(lam) and self.rs.in_lowest_alcove(lam, self.p)

    def _compute(self, lam):
        return {lam: 1}


def lowest_alcove_provider(rs: RootSystem, p: int) -> LowestAlcoveProvider:
    return LowestAlcoveProvider(rs, p)


class CompositeProvider(TiltingProvider):
    name = "composite"

    def __init__(self, providers, check: bool = False, rs: RootSystem | None = None, p: int | None = None):
        providers = list(providers)
        if providers:
            rs = rs or providers[0].rs
            p = p or providers[0].p
        super().__init__(rs, p)
        for prov in providers:
            if prov.rs != rs or prov.p != p:
                raise TiltingDataError(
                    f"provider {prov.identity} does not match {rs and rs.type_label}, p={p}"
                )
        self.providers = providers
        self.check = check

    @property
    def identity(self) -> str:
        return "[" + ", ".join(p.identity for p in self.providers) + "]"

    def supports(self, lam) -> bool:
        return any(p.supports(lam) for p in self.providers)

    def _compute(self, lam):
        answers = [(p, p.tilting_nabla_mults(lam)) for p in self.providers if p.supports(lam)]
        first_prov, first = answers[0]
        if self.check:
            for prov, other in answers[1:]:
                if other != first:
                    raise TiltingDataError(
                        f"T({list(lam)}): {first_prov.identity} and {prov.identity} disagree", lam
                    )
        return first


def composite_provider(*providers, check: bool = False, rs=None, p=None) -> CompositeProvider:
    return CompositeProvider(providers, check=check, rs=rs, p=p)
