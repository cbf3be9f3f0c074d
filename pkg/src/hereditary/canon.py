"""Canonical representatives of H-structures under relabelling of the carrier."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partitions import Surjection, all_perms
from .species import HereditarySpecies, HStructure


@dataclass(frozen=True, order=True)
class IsoClass:
    rep: HStructure
    aut: int


def canonical_form(H: HereditarySpecies, x: HStructure) -> IsoClass:
    """Orbit minimum of ``x`` under all carrier permutations, with its automorphism count."""
    return _canonical(H, x)


@lru_cache(maxsize=None)
def _canonical(H: HereditarySpecies, x: HStructure) -> IsoClass:
    best = None
    for p in all_perms(x.n):
        y = H.quotient(x, Surjection(p, x.n))
        if best is None or y < best:
            best = y
    aut = sum(1 for p in all_perms(x.n) if H.quotient(best, Surjection(p, x.n)) == best)
    return IsoClass(best, aut)


def canon(H: HereditarySpecies, x: HStructure) -> HStructure:
    return _canonical(H, x).rep


def isomorphic(H: HereditarySpecies, x: HStructure, y: HStructure) -> bool:
    return x.n == y.n and canon(H, x) == canon(H, y)


def canonical_relabelling(H: HereditarySpecies, x: HStructure) -> tuple[int, ...]:
    """A permutation ``p`` with ``H[p](x)`` equal to the canonical representative."""
    target = canon(H, x)
    for p in all_perms(x.n):
        if H.quotient(x, Surjection(p, x.n)) == target:
            return p
    raise AssertionError("canonical representative not reached")
