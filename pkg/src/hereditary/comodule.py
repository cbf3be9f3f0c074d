"""The restriction bialgebra A (empty structures allowed) and the coaction of B on it.

Keys of A are *A-families*: sorted tuples of canonical representatives,
members may be empty.  The coaction sends an A-family to a combination of
keys ``(B-family, A-family)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable

from .bialgebra import (
    Family,
    UNIT,
    comultiply,
    counit,
    enumerate_families,
    family,
    multiply,
    multiply_tensors,
)
from .canon import canon
from .linear import LinComb, on_factor
from .partitions import enumerate_partitions
from .report import Report
from .species import HereditarySpecies, HStructure, quotient, restrict, restrict_blocks

Coaction = Callable[[HereditarySpecies, HStructure], LinComb]


def a_family(H: HereditarySpecies, members) -> Family:
    return family(H, members, allow_empty=True)


def counit_A(F: Family) -> Fraction:
    return Fraction(int(all(m.n == 0 for m in F)))


def comultiply_A_structure(H: HereditarySpecies, G: HStructure) -> LinComb:
    """Sum over ordered pairs ``(U, V - U)`` of ``G|U ⊗ G|(V - U)``."""
    out = LinComb()
    for r in range(G.n + 1):
        for U in combinations(range(G.n), r):
            rest = [a for a in range(G.n) if a not in U]
            out = out + LinComb.basis(((canon(H, restrict(H, G, U)),), (canon(H, restrict(H, G, rest)),)))
    return out


def comultiply_A(H: HereditarySpecies, F: Family) -> LinComb:
    out = LinComb.basis((UNIT, UNIT))
    for m in F:
        out = multiply_tensors(out, comultiply_A_structure(H, m))
    return out


def coact(H: HereditarySpecies, G: HStructure) -> LinComb:
    """Sum over partitions ``pi`` of ``(G|pi) ⊗ G/pi``; the empty structure goes to ``1 ⊗ ∅``."""
    if G.n == 0:
        return LinComb.basis((UNIT, (canon(H, G),)))
    out = LinComb()
    for pi in enumerate_partitions(G.n):
        out = out + LinComb.basis((family(H, restrict_blocks(H, G, pi)), (canon(H, quotient(H, G, pi)),)))
    return out


def coact_unquotiented(H: HereditarySpecies, G: HStructure) -> LinComb:
    """Negative control: the A-factor is ``G`` itself instead of ``G/pi``."""
    if G.n == 0:
        return coact(H, G)
    out = LinComb()
    for pi in enumerate_partitions(G.n):
        out = out + LinComb.basis((family(H, restrict_blocks(H, G, pi)), (canon(H, G),)))
    return out


def coact_free(H: HereditarySpecies, F: Family, coaction: Coaction = coact) -> LinComb:
    """The coaction extended multiplicatively: B-parts concatenate and A-parts collect."""
    out = LinComb.basis((UNIT, UNIT))
    for m in F:
        out = multiply_tensors(out, coaction(H, m))
    return out


def omega(key) -> tuple:
    """``(b1, a1, b2, a2) -> (b1 b2, a1, a2)``: swap the middle factors and multiply in B."""
    b1, a1, b2, a2 = key
    return (multiply(b1, b2), a1, a2)


# ---------------------------------------------------------------------------
# checks


def _fail(rep: Report, law: str, arg, lhs: LinComb, rhs: LinComb):
    rep.fail({"law": law, "argument": arg, "lhs - rhs": repr(lhs - rhs)}, lhs=repr(lhs), rhs=repr(rhs))


def check_A_bialgebra(H: HereditarySpecies, n_max: int, max_empty: int = 1) -> Report:
    rep = Report(f"bialgebra A[{H.name}] (n<={n_max})")
    fams = enumerate_families(H, n_max, min_size=0, max_empty=max_empty)
    delta = lambda F: comultiply_A(H, F)
    eps = lambda F: LinComb.basis((), counit_A(F))
    for F in fams:
        rep.checked += 1
        d = delta(F)
        if on_factor(d, 0, delta) != on_factor(d, 1, delta):
            _fail(rep, "coassociativity", F, on_factor(d, 0, delta), on_factor(d, 1, delta))
        for side in (0, 1):
            if on_factor(d, side, eps) != LinComb.basis((F,)):
                _fail(rep, f"counit on factor {side}", F, on_factor(d, side, eps), LinComb.basis((F,)))
        for G in fams:
            if sum(m.n for m in F + G) > n_max:
                continue
            lhs, rhs = delta(multiply(F, G)), multiply_tensors(d, delta(G))
            if lhs != rhs:
                _fail(rep, "Δ(FG) = Δ(F)Δ(G)", (F, G), lhs, rhs)
            if counit_A(multiply(F, G)) != counit_A(F) * counit_A(G):
                rep.fail({"law": "ε(FG) = ε(F)ε(G)", "argument": (F, G)})
    return rep


def check_comodule(H: HereditarySpecies, n_max: int, coaction: Coaction = coact, max_empty: int = 1) -> Report:
    """Coassociativity and counitality of the left B-coaction on A."""
    rep = Report(f"B-comodule A[{H.name}] (n<={n_max})")
    gamma = lambda F: coact_free(H, F, coaction)
    delta_B = lambda F: comultiply(H, F)
    eps_B = lambda F: LinComb.basis((), counit(F))
    for F in enumerate_families(H, n_max, min_size=0, max_empty=max_empty):
        rep.checked += 1
        g = gamma(F)
        lhs, rhs = on_factor(g, 0, delta_B), on_factor(g, 1, gamma)
        if lhs != rhs:
            _fail(rep, "(Δ_B⊗id)γ = (id⊗γ)γ", F, lhs, rhs)
        got = on_factor(g, 0, eps_B)
        if got != LinComb.basis((F,)):
            _fail(rep, "(ε_B⊗id)γ = id", F, got, LinComb.basis((F,)))
    return rep


def check_comodule_bialgebra(H: HereditarySpecies, n_max: int, coaction: Coaction = coact,
                             max_empty: int = 1) -> Report:
    """Δ_A, ε_A, μ_A and η_A are maps of B-comodules."""
    rep = Report(f"comodule bialgebra A[{H.name}] over B (n<={n_max})")
    gamma = lambda F: coact_free(H, F, coaction)
    delta_A = lambda F: comultiply_A(H, F)
    fams = enumerate_families(H, n_max, min_size=0, max_empty=max_empty)
    if gamma(UNIT) != LinComb.basis((UNIT, UNIT)):
        rep.fail({"law": "γ(1_A) = 1_B ⊗ 1_A"})
    for F in fams:
        rep.checked += 1
        # ω (γ⊗γ) Δ_A = (id_B ⊗ Δ_A) γ
        lhs = delta_A(F).map_linear(lambda k: gamma(k[0]).tensor(gamma(k[1]))).map_keys(omega)
        rhs = on_factor(gamma(F), 1, delta_A)
        if lhs != rhs:
            _fail(rep, "ω(γ⊗γ)Δ_A = (id⊗Δ_A)γ", F, lhs, rhs)
        # counit square: (id_B ⊗ ε_A) γ = η_B ε_A
        got = on_factor(gamma(F), 1, lambda a: LinComb.basis((), counit_A(a)))
        want = LinComb.basis((UNIT,), counit_A(F))
        if got != want:
            _fail(rep, "(id⊗ε_A)γ = η_B ε_A", F, got, want)
        for G in fams:
            if sum(m.n for m in F + G) > n_max:
                continue
            lhs = gamma(multiply(F, G))
            rhs = gamma(F).tensor(gamma(G)).map_keys(lambda k: (multiply(k[0], k[2]), multiply(k[1], k[3])))
            if lhs != rhs:
                _fail(rep, "γ(FG) = γ(F)γ(G)", (F, G), lhs, rhs)
    return rep
