"""The operadic category of a simple hereditary species.

Objects are structures ``(n, x)`` with ``n >= 1``; a morphism ``(m, y) -> (n, x)``
is a surjection ``s: m -> n`` with ``H[s](y) = x``.  The fibre of ``f`` at ``i``
is the preimage of ``i`` relabelled monotonically, carrying the restricted
structure.  All comparisons are strict equalities of labelled structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .partitions import Injection, Surjection, enumerate_injections, enumerate_surjections, fibre_map
from .report import Report, combine
from .species import HereditarySpecies, HStructure, Transformation


@dataclass(frozen=True, order=True)
class OpMorphism:
    source: HStructure
    target: HStructure
    s: Surjection

    def __repr__(self):
        return f"{self.source!r} -[{self.s.values}]-> {self.target!r}"


class OperadicCategory:
    """``fibre_order="reversed"`` lists each fibre backwards (a deliberately broken variant)."""

    def __init__(self, H: HereditarySpecies, n_max: int, fibre_order: str = "monotone"):
        if not H.is_simple():
            raise ValueError(f"species {H.name} is not simple: H[1] has {len(H.structures(1))} elements")
        if fibre_order not in ("monotone", "reversed"):
            raise ValueError(f"unknown fibre order {fibre_order!r}")
        self.H, self.n_max, self.fibre_order = H, n_max, fibre_order
        self.terminal = H.point()

    # -- category ---------------------------------------------------------------
    def objects(self) -> list[HStructure]:
        return [x for n in range(1, self.n_max + 1) for x in self.H.structures(n)]

    def morphism(self, y: HStructure, s: Surjection) -> OpMorphism:
        """The unique lift of ``s`` starting at ``y``."""
        if s.source != y.n or s.target < 1:
            raise ValueError(f"surjection {s} does not start at a carrier of size {y.n}")
        return OpMorphism(y, self.H.quotient(y, s), s)

    def is_morphism(self, f: OpMorphism) -> bool:
        return f.s.source == f.source.n and f.s.target == f.target.n and self.H.quotient(f.source, f.s) == f.target

    def morphisms_from(self, y: HStructure) -> Iterator[OpMorphism]:
        for n in range(1, y.n + 1):
            for s in enumerate_surjections(y.n, n):
                yield self.morphism(y, s)

    def morphisms(self) -> Iterator[OpMorphism]:
        for y in self.objects():
            yield from self.morphisms_from(y)

    def identity(self, x: HStructure) -> OpMorphism:
        return OpMorphism(x, x, Surjection.identity(x.n))

    def compose(self, f: OpMorphism, g: OpMorphism) -> OpMorphism:
        """``f . g``."""
        if g.target != f.source:
            raise ValueError("morphisms are not composable")
        return OpMorphism(g.source, f.target, f.s.after(g.s))

    def tau(self, y: HStructure) -> OpMorphism:
        """The unique morphism to the chosen terminal."""
        return self.morphism(y, Surjection.terminal(y.n))

    def cardinality(self, x: HStructure) -> int:
        return x.n

    # -- fibres -----------------------------------------------------------------
    def eps(self, s: Surjection, i: int) -> tuple[int, ...]:
        if not 0 <= i < s.target:
            raise ValueError(f"{i} is not in the target {s.target}")
        pre = s.preimage(i)
        return pre if self.fibre_order == "monotone" else tuple(reversed(pre))

    def fibre(self, f: OpMorphism, i: int) -> HStructure:
        """``f^{-1}(i) = (m_i, H[eps_i](y))``."""
        e = self.eps(f.s, i)
        return self.H.restrict(f.source, Injection(e, f.source.n))

    def fibre_map(self, g: OpMorphism, f: OpMorphism, i: int) -> OpMorphism:
        """``g^f_i: (fg)^{-1}(i) -> f^{-1}(i)``."""
        fg = self.compose(f, g)
        e_src, e_tgt = self.eps(fg.s, i), self.eps(f.s, i)
        pos = {b: p for p, b in enumerate(e_tgt)}
        s = Surjection(tuple(pos[g.s.values[a]] for a in e_src), len(e_tgt))
        out = OpMorphism(self.fibre(fg, i), self.fibre(f, i), s)
        if not self.is_morphism(out):
            raise AssertionError(f"fibre map {out} does not preserve structure")
        return out

    def chains(self, length: int) -> Iterator[tuple[OpMorphism, ...]]:
        """Composable chains ``(h, g, f)`` (first map first) of the given length."""
        def rec(acc):
            if len(acc) == length:
                yield tuple(acc)
                return
            for nxt in self.morphisms_from(acc[-1].target):
                yield from rec(acc + [nxt])
        for first in self.morphisms():
            yield from rec([first])


# ---------------------------------------------------------------------------
# axioms


def check_axioms(C: OperadicCategory, chain_len: int = 3) -> Report:
    H = C.H
    objs = C.objects()
    morphs = list(C.morphisms())
    U = C.terminal

    d1 = Report("D1 chosen terminal is terminal")
    for y in objs:
        d1.checked += 1
        into = [f for f in C.morphisms_from(y) if f.target == U]
        if len(into) != 1:
            d1.fail({"object": y, "morphisms_to_terminal": len(into)})

    opfib = Report("discrete opfibration over surjections")
    for y in objs:
        opfib.checked += 1
        lifts = list(C.morphisms_from(y))
        expected = sum(1 for n in range(1, y.n + 1) for _ in enumerate_surjections(y.n, n))
        if len(lifts) != expected or not all(C.is_morphism(f) for f in lifts):
            opfib.fail({"object": y})

    a1 = Report("A1 local terminal has cardinality 1")
    a1.checked = 1
    if C.cardinality(U) != 1:
        a1.fail({"terminal": U})

    a2 = Report("A2 fibres of identities are the chosen terminal")
    for x in objs:
        for i in range(x.n):
            a2.checked += 1
            fib = C.fibre(C.identity(x), i)
            if fib != U:
                a2.fail({"object": x, "i": i, "fibre": fib})

    a3 = Report("A3 fibres and fibre maps lie over those of finite sets")
    for f in morphs:
        for i in range(f.target.n):
            a3.checked += 1
            if C.cardinality(C.fibre(f, i)) != len(f.s.preimage(i)):
                a3.fail({"morphism": f, "i": i, "clause": "cardinality of fibre"})

    a4 = Report("A4 fibres over the terminal")
    for y in objs:
        a4.checked += 1
        if C.fibre(C.tau(y), 0) != y:
            a4.fail({"object": y, "clause": "tau^-1(1) = Y"})

    a5 = Report("A5 fibres of fibre maps")
    functorial = Report("fibre functor respects identities and composition")

    for g, f in C.chains(2):
        a4.checked += 1
        tau = C.tau(f.source)
        if C.fibre_map(g, tau, 0) != g:
            a4.fail({"morphism": g, "clause": "g^tau_1 = g", "got": C.fibre_map(g, tau, 0)})
        for i in range(f.target.n):
            a3.checked += 1
            gi = C.fibre_map(g, f, i)
            if gi.s != fibre_map(g.s, f.s, i):
                a3.fail({"chain": (g, f), "i": i, "clause": "underlying fibre map", "got": gi.s.values,
                         "expected": fibre_map(g.s, f.s, i).values})
            functorial.checked += 1
            ident = C.identity(f.source)
            if C.fibre_map(ident, f, i) != C.identity(C.fibre(f, i)):
                functorial.fail({"morphism": f, "i": i, "clause": "identity"})
            e = C.eps(f.s, i)
            for j in range(len(e)):
                a5.checked += 1
                if C.fibre(gi, j) != C.fibre(g, e[j]):
                    a5.fail({"chain": (g, f), "i": i, "j": j, "clause": "(g^f_i)^-1(j) = g^-1(eps j)"})

    if chain_len >= 3:
        for h, g, f in C.chains(3):
            fg = C.compose(f, g)
            for i in range(f.target.n):
                functorial.checked += 1
                if C.fibre_map(C.compose(g, h), f, i) != C.compose(C.fibre_map(g, f, i), C.fibre_map(h, fg, i)):
                    functorial.fail({"chain": (h, g, f), "i": i, "clause": "composition"})
                gi = C.fibre_map(g, f, i)
                hi = C.fibre_map(h, fg, i)
                e = C.eps(f.s, i)
                for j in range(len(e)):
                    a5.checked += 1
                    lhs = C.fibre_map(hi, gi, j)
                    rhs = C.fibre_map(h, g, e[j])
                    if lhs != rhs:
                        a5.fail({"chain": (h, g, f), "i": i, "j": j,
                                 "clause": "(h^fg_i)^(g^f_i)_j = h^g_(eps j)", "lhs": lhs, "rhs": rhs})

    out = combine(f"operadic category of {H.name} (n<={C.n_max}, chains<={chain_len}, fibres {C.fibre_order})",
                  [d1, opfib, a1, a2, a3, a4, a5, functorial])
    return out


def check_naturality(F: Transformation, source: HereditarySpecies, target: HereditarySpecies, n_max: int) -> Report:
    """``F`` commutes with restriction along all injections and quotient along all surjections."""
    rep = Report(f"naturality {source.name} -> {target.name} (n<={n_max})")
    for n in range(n_max + 1):
        for x in source.structures(n):
            Fx = F(x)
            if Fx.n != n:
                rep.fail({"structure": x, "reason": "carrier changed"})
            for m in range(n + 1):
                for i in enumerate_injections(m, n):
                    rep.checked += 1
                    if F(source.restrict(x, i)) != target.restrict(Fx, i):
                        rep.fail({"structure": x, "injection": i.values, "kind": "restriction"})
            for m in range(n + 1):
                for s in enumerate_surjections(n, m):
                    rep.checked += 1
                    lhs, rhs = F(source.quotient(x, s)), target.quotient(Fx, s)
                    if lhs != rhs:
                        rep.fail({"structure": x, "surjection": s.values, "kind": "quotient",
                                  "F_of_quotient": lhs, "quotient_of_F": rhs})
    return rep


def check_operadic_functor(F: Transformation, source: HereditarySpecies, target: HereditarySpecies,
                           n_max: int, expected: str = "pass") -> Report:
    """The functor induced by a natural transformation is operadic (after a naturality precheck)."""
    name = f"operadic functor {source.name} -> {target.name} (n<={n_max})"
    nat = check_naturality(F, source, target, n_max)
    if not nat.passed:
        out = combine(name, [nat], expected=expected)
        out.details["rejected"] = "not natural"
        return out
    C, D = OperadicCategory(source, n_max), OperadicCategory(target, n_max)
    Fm = lambda f: OpMorphism(F(f.source), F(f.target), f.s)
    rep = Report("preserves terminal, cardinality, fibres and fibre maps")
    rep.checked += 1
    if F(C.terminal) != D.terminal:
        rep.fail({"clause": "terminal", "image": F(C.terminal)})
    for f in C.morphisms():
        rep.checked += 1
        if not D.is_morphism(Fm(f)):
            rep.fail({"clause": "functor", "morphism": f})
        if F(f.source).n != f.source.n:
            rep.fail({"clause": "cardinality", "morphism": f})
        for i in range(f.target.n):
            if F(C.fibre(f, i)) != D.fibre(Fm(f), i):
                rep.fail({"clause": "fibre", "morphism": f, "i": i})
    for g, f in C.chains(2):
        for i in range(f.target.n):
            rep.checked += 1
            if Fm(C.fibre_map(g, f, i)) != D.fibre_map(Fm(g), Fm(f), i):
                rep.fail({"clause": "fibre map", "chain": (g, f), "i": i})
    return combine(name, [nat, rep], expected=expected)


# -- standard transformations ---------------------------------------------------------


def identity_transformation(x: HStructure) -> HStructure:
    return x


def collapse_to_sets(x: HStructure) -> HStructure:
    """Graphs (or anything) to the one-structure species of sets."""
    return HStructure(x.n)


def edge_complement(x: HStructure) -> HStructure:
    edges = set(x.payload)
    return HStructure(x.n, tuple((a, b) for a in range(x.n) for b in range(a + 1, x.n) if (a, b) not in edges))
