"""The incidence bialgebra B of a hereditary species.

Basis elements are *families*: sorted tuples of canonical representatives of
non-empty structures.  Tensor basis elements are tuples of families.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .canon import canon
from .linear import LinComb, on_factor
from .partitions import enumerate_partitions
from .report import Report
from .species import HereditarySpecies, HStructure, quotient, restrict_blocks

Family = tuple  # tuple[HStructure, ...], sorted canonical representatives

UNIT: Family = ()


def family(H: HereditarySpecies, members: Iterable[HStructure], allow_empty: bool = False) -> Family:
    out = []
    for m in members:
        if m.n == 0 and not allow_empty:
            raise ValueError("families in B have non-empty members")
        out.append(canon(H, m))
    return tuple(sorted(out))


def multiply(F: Family, G: Family) -> Family:
    """Concatenation; both arguments are already canonical."""
    return tuple(sorted(F + G))


def multiply_tensors(a: LinComb, b: LinComb) -> LinComb:
    """Factorwise product of two combinations of equal tensor length."""
    return a.bilinear(b, lambda k1, k2: tuple(multiply(x, y) for x, y in zip(k1, k2)))


def counit(F: Family) -> Fraction:
    return Fraction(int(all(m.n == 1 for m in F)))


def comultiply_structure(H: HereditarySpecies, G: HStructure) -> LinComb:
    """Sum over partitions ``pi`` of ``(G|pi) ⊗ (G/pi)``."""
    if G.n == 0:
        raise ValueError("B has no empty structures")
    out = LinComb()
    for pi in enumerate_partitions(G.n):
        left = family(H, restrict_blocks(H, G, pi))
        right = (canon(H, quotient(H, G, pi)),)
        out = out + LinComb.basis((left, right))
    return out


@lru_cache(maxsize=None)
def _delta_single(H: HereditarySpecies, G: HStructure) -> LinComb:
    return comultiply_structure(H, G)


def comultiply(H: HereditarySpecies, F: Family) -> LinComb:
    """Δ extended multiplicatively over the members of ``F``."""
    out = LinComb.basis((UNIT, UNIT))
    for m in F:
        out = multiply_tensors(out, _delta_single(H, m))
    return out


def comultiply_lin(H: HereditarySpecies, lc: LinComb) -> LinComb:
    """Δ on combinations of one-factor keys ``(F,)``."""
    return lc.map_linear(lambda key: comultiply(H, key[0]))


def enumerate_families(H: HereditarySpecies, n_max: int, min_size: int = 1, max_empty: int = 0) -> list[Family]:
    """All canonical families with total carrier size at most ``n_max``.

    Members have size at least ``min_size``; with ``min_size = 0`` at most
    ``max_empty`` empty members are included (their number is otherwise unbounded).
    """
    pool = []
    for n in range(max(min_size, 1), n_max + 1):
        pool.extend(sorted({canon(H, x) for x in H.structures(n)}))
    out = []

    def rec(start, total, acc):
        out.append(tuple(sorted(acc)))
        for idx in range(start, len(pool)):
            if total + pool[idx].n <= n_max:
                acc.append(pool[idx])
                rec(idx, total + pool[idx].n, acc)
                acc.pop()

    rec(0, 0, [])
    if min_size == 0:
        empty = canon(H, HStructure(0)) if H.structures(0) else None
        if empty is not None:
            base = list(out)
            for e in range(1, max_empty + 1):
                out.extend(tuple(sorted(F + (empty,) * e)) for F in base)
    return sorted(set(out), key=lambda F: (sum(m.n for m in F), len(F), F))


# ---------------------------------------------------------------------------
# groupoid-level comultiplication


def groupoid_comultiply(H: HereditarySpecies, G: HStructure) -> LinComb:
    """Cardinality of ``(d_2, d_0)_! d_1^*`` applied to the name of the one-member list ``(G)``."""
    from .groupoid import GroupoidMap, ProductGroupoid, homotopy_fibre, map_cardinality
    from .simplicial import build_H

    X = build_H(H, max(G.n, 1), 2)
    t = (((G.n,), (), G),)
    fib = homotopy_fibre(X.face(2, 1), t)
    P = ProductGroupoid(X[1], X[1])
    d2, d0 = X.face(2, 2), X.face(2, 0)
    pair = GroupoidMap(fib, P, lambda o: (d2(o[0]), d0(o[0])),
                       lambda a: P.pair(d2.mor(a.data[0]), d0.mor(a.data[0])), name="(d2,d0)")
    out = LinComb()
    for (left, right), c in map_cardinality(pair).items():
        key = (tuple(sorted(m[2] for m in left)), tuple(sorted(m[2] for m in right)))
        out = out + LinComb.basis(key, c)
    return out


# ---------------------------------------------------------------------------
# checks


def _mismatch(rep: Report, label: str, arg, lhs: LinComb, rhs: LinComb) -> None:
    rep.fail({"law": label, "argument": arg, "lhs - rhs": repr(lhs - rhs)}, lhs=repr(lhs), rhs=repr(rhs))


def check_coassociativity(H: HereditarySpecies, n_max: int) -> Report:
    rep = Report(f"coassociativity of B[{H.name}] (n<={n_max})")
    delta = lambda F: comultiply(H, F)
    for F in enumerate_families(H, n_max):
        rep.checked += 1
        d = delta(F)
        lhs = on_factor(d, 0, delta)
        rhs = on_factor(d, 1, delta)
        if lhs != rhs:
            _mismatch(rep, "(Δ⊗id)Δ = (id⊗Δ)Δ", F, lhs, rhs)
    return rep


def check_counit(H: HereditarySpecies, n_max: int) -> Report:
    rep = Report(f"counit laws of B[{H.name}] (n<={n_max})")
    eps = lambda F: LinComb.basis((), counit(F))
    for F in enumerate_families(H, n_max):
        rep.checked += 1
        d = comultiply(H, F)
        target = LinComb.basis((F,))
        for label, side in (("(ε⊗id)Δ = id", 0), ("(id⊗ε)Δ = id", 1)):
            got = on_factor(d, side, eps)
            if got != target:
                _mismatch(rep, label, F, got, target)
    return rep


def check_bialgebra(H: HereditarySpecies, n_max: int) -> Report:
    """Coassociativity, counit, and compatibility of Δ, ε with concatenation."""
    rep = Report(f"bialgebra B[{H.name}] (n<={n_max})")
    for sub in (check_coassociativity(H, n_max), check_counit(H, n_max)):
        rep.checked += sub.checked
        if not sub.passed:
            rep.fail(sub.witness)
    fams = enumerate_families(H, n_max)
    if comultiply(H, UNIT) != LinComb.basis((UNIT, UNIT)) or counit(UNIT) != 1:
        rep.fail({"law": "unit is grouplike"})
    for F in fams:
        for G in fams:
            if sum(m.n for m in F + G) > n_max:
                continue
            rep.checked += 1
            lhs = comultiply(H, multiply(F, G))
            rhs = multiply_tensors(comultiply(H, F), comultiply(H, G))
            if lhs != rhs:
                _mismatch(rep, "Δ(FG) = Δ(F)Δ(G)", (F, G), lhs, rhs)
            if counit(multiply(F, G)) != counit(F) * counit(G):
                rep.fail({"law": "ε(FG) = ε(F)ε(G)", "argument": (F, G)})
    return rep


def check_schmitt_coincide(H: HereditarySpecies, n_max: int) -> Report:
    """The groupoid comultiplication equals the partition formula on single structures."""
    rep = Report(f"groupoid Δ = Schmitt Δ for {H.name} (n<={n_max})")
    for n in range(1, n_max + 1):
        for G in sorted({canon(H, x) for x in H.structures(n)}):
            rep.checked += 1
            lhs = groupoid_comultiply(H, G)
            rhs = comultiply(H, (G,))
            if lhs != rhs:
                _mismatch(rep, "groupoid Δ = Δ", G, lhs, rhs)
    return rep
