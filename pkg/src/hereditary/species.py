"""Hereditary species: functors on partial surjections.

A species here is set-valued.  Structures live on ordinals; restriction along
an injection ``i: m -> n`` turns a structure on ``n`` into one on ``m``, and
quotient along a surjection ``s: m -> n`` turns a structure on ``m`` into one
on ``n``.  Payloads must be hashable and totally ordered so that canonical
forms are well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from .partitions import (
    Injection,
    Partition,
    Surjection,
    canonical_surjection,
    enumerate_injections,
    enumerate_partitions,
    enumerate_surjections,
    identity_map,
    refines,
    induced_partition,
    restrict_partition,
)
from .report import Report


@dataclass(frozen=True, order=True)
class HStructure:
    n: int
    payload: Any = ()

    def __repr__(self):
        return f"HStructure({self.n}, {self.payload!r})"


class HereditarySpecies:
    """Base class; subclasses provide the three operations below."""

    name = "abstract"

    def structures(self, n: int) -> list[HStructure]:
        raise NotImplementedError

    def restrict(self, x: HStructure, i: Injection) -> HStructure:
        raise NotImplementedError

    def quotient(self, x: HStructure, s: Surjection) -> HStructure:
        raise NotImplementedError

    def validate(self, x: HStructure) -> None:
        if x not in set(self.structures(x.n)):
            raise ValueError(f"invalid {self.name}-structure {x!r}")

    # serialisation hooks (1-based vertex labels on the outside)
    def to_json(self, x: HStructure) -> dict:
        return {"species": self.name, "n": x.n}

    def from_json(self, d: dict) -> HStructure:
        x = HStructure(int(d["n"]))
        self.validate(x)
        return x

    def to_text(self, x: HStructure) -> str:
        return f"{x.n}:"

    def from_text(self, s: str) -> HStructure:
        n, _, rest = s.strip().partition(":")
        if rest.strip():
            raise ValueError(f"unexpected payload {rest!r} for species {self.name}")
        return self.from_json({"n": int(n)})

    def is_simple(self) -> bool:
        return len(self.structures(1)) == 1

    def point(self) -> HStructure:
        """The unique structure on a singleton (simple species only)."""
        structs = self.structures(1)
        if len(structs) != 1:
            raise ValueError(f"species {self.name} is not simple")
        return structs[0]

    def __repr__(self):
        return f"<species {self.name}>"


class SetsSpecies(HereditarySpecies):
    """Exactly one structure on every finite set."""

    name = "sets"

    def structures(self, n):
        return [HStructure(n)]

    def restrict(self, x, i):
        _check_carrier(x, i.target)
        return HStructure(i.source)

    def quotient(self, x, s):
        _check_carrier(x, s.source)
        return HStructure(s.target)

    def validate(self, x):
        if x.payload != ():
            raise ValueError("sets-structures carry no payload")


class GraphsSpecies(HereditarySpecies):
    """Simple graphs: payload is the sorted tuple of edges ``(a, b)`` with ``a < b``.

    Restriction takes induced subgraphs; quotient joins two blocks when some
    edge runs between them and drops edges inside a block.
    """

    name = "graphs"

    def structures(self, n):
        pairs = list(combinations(range(n), 2))
        out = []
        for mask in range(1 << len(pairs)):
            out.append(HStructure(n, tuple(p for k, p in enumerate(pairs) if mask >> k & 1)))
        return out

    def validate(self, x):
        edges = x.payload
        if not isinstance(edges, tuple) or list(edges) != sorted(set(edges)):
            raise ValueError(f"edges must be a sorted duplicate-free tuple: {edges!r}")
        for a, b in edges:
            if not 0 <= a < b < x.n:
                raise ValueError(f"bad edge {(a, b)} on {x.n} vertices")

    def restrict(self, x, i):
        _check_carrier(x, i.target)
        pos = {v: k for k, v in enumerate(i.values)}
        edges = {tuple(sorted((pos[a], pos[b]))) for a, b in x.payload if a in pos and b in pos}
        return HStructure(i.source, tuple(sorted(edges)))

    def quotient(self, x, s):
        _check_carrier(x, s.source)
        return HStructure(s.target, self._contract(x.payload, s))

    @staticmethod
    def _contract(edges, s):
        out = set()
        for a, b in edges:
            u, v = s.values[a], s.values[b]
            if u != v:
                out.add((min(u, v), max(u, v)))
        return tuple(sorted(out))

    def to_json(self, x):
        return {"species": self.name, "n": x.n, "edges": [[a + 1, b + 1] for a, b in x.payload]}

    def from_json(self, d):
        n = int(d["n"])
        edges = set()
        for e in d.get("edges", []):
            a, b = (int(v) - 1 for v in e)
            if a == b:
                raise ValueError(f"loop at vertex {a + 1}")
            edges.add((min(a, b), max(a, b)))
        x = HStructure(n, tuple(sorted(edges)))
        self.validate(x)
        return x

    def to_text(self, x):
        return f"{x.n}:" + ",".join(f"{a + 1}-{b + 1}" for a, b in x.payload)

    def from_text(self, s):
        n, _, rest = s.strip().partition(":")
        edges = [tuple(e.split("-")) for e in rest.split(",") if e.strip()]
        return self.from_json({"n": int(n), "edges": edges})


class EdgeDroppingGraphs(GraphsSpecies):
    """Negative control: contraction along a non-bijective surjection forgets every edge.

    Identities and relabellings still act correctly, so the unit laws hold while
    Beck-Chevalley and coassociativity break.
    """

    name = "graphs-broken"

    def quotient(self, x, s):
        if s.is_bijective():
            return super().quotient(x, s)
        _check_carrier(x, s.source)
        return HStructure(s.target, ())


def _check_carrier(x: HStructure, n: int) -> None:
    if x.n != n:
        raise ValueError(f"structure carried by {x.n}, map expects {n}")


SPECIES: dict[str, HereditarySpecies] = {}


def register(H: HereditarySpecies) -> HereditarySpecies:
    SPECIES[H.name] = H
    return H


SETS = register(SetsSpecies())
GRAPHS = register(GraphsSpecies())
BROKEN_GRAPHS = register(EdgeDroppingGraphs())


def get_species(name: str) -> HereditarySpecies:
    try:
        return SPECIES[name]
    except KeyError:
        raise KeyError(f"unknown species {name!r}; registered: {sorted(SPECIES)}") from None


# ---------------------------------------------------------------------------
# partial surjections


@dataclass(frozen=True, order=True)
class PartialSurjection:
    """A span ``V <- U -> W`` stored with ``U`` a monotone subset of ``V``."""

    source: int
    subset: tuple[int, ...]
    map: Surjection

    def __post_init__(self):
        subset = tuple(self.subset)
        object.__setattr__(self, "subset", subset)
        if list(subset) != sorted(set(subset)) or any(not 0 <= a < self.source for a in subset):
            raise ValueError(f"subset {subset} is not a sorted subset of {self.source}")
        if self.map.source != len(subset):
            raise ValueError("surjection leg does not start at the subset")

    @classmethod
    def from_span(cls, leg_in: Injection, leg_out: Surjection) -> PartialSurjection:
        """Canonical representative of the span class of ``(leg_in, leg_out)``."""
        if leg_in.source != leg_out.source:
            raise ValueError("span legs have different sources")
        order = sorted(range(leg_in.source), key=lambda u: leg_in.values[u])
        subset = tuple(leg_in.values[u] for u in order)
        values = tuple(leg_out.values[u] for u in order)
        return cls(leg_in.target, subset, Surjection(values, leg_out.target))

    @classmethod
    def identity(cls, n: int) -> PartialSurjection:
        return cls(n, identity_map(n), Surjection.identity(n))

    @classmethod
    def of_injection(cls, i: Injection) -> PartialSurjection:
        return cls.from_span(i, Surjection.identity(i.source))

    @classmethod
    def of_surjection(cls, s: Surjection) -> PartialSurjection:
        return cls(s.source, identity_map(s.source), s)

    @property
    def target(self) -> int:
        return self.map.target

    @property
    def leg_in(self) -> Injection:
        return Injection(self.subset, self.source)

    @property
    def leg_out(self) -> Surjection:
        return self.map


def compose_partial_surjections(a: PartialSurjection, b: PartialSurjection) -> PartialSurjection:
    """``b . a`` by pullback of ``a``'s surjection leg against ``b``'s injection leg."""
    if a.target != b.source:
        raise ValueError(f"cannot compose: {a.target} != {b.source}")
    pos_b = {w: k for k, w in enumerate(b.subset)}
    keep = [u for u in range(len(a.subset)) if a.map.values[u] in pos_b]
    subset = tuple(a.subset[u] for u in keep)
    values = tuple(b.map.values[pos_b[a.map.values[u]]] for u in keep)
    return PartialSurjection(a.source, subset, Surjection(values, b.target))


def enumerate_partial_surjections(v: int, w: int | None = None) -> Iterable[PartialSurjection]:
    """All partial surjections out of ``v`` (into ``w`` when given)."""
    for k in range(v + 1):
        for subset in combinations(range(v), k):
            targets = range(k + 1) if w is None else [w]
            for t in targets:
                for s in enumerate_surjections(k, t):
                    yield PartialSurjection(v, subset, s)


def act(H: HereditarySpecies, a: PartialSurjection, x: HStructure) -> HStructure:
    """Restrict along the injection leg, then push along the surjection leg."""
    if x.n != a.source:
        raise ValueError(f"structure on {x.n} but span starts at {a.source}")
    return H.quotient(H.restrict(x, a.leg_in), a.leg_out)


def restrict(H: HereditarySpecies, x: HStructure, subset: Iterable[int]) -> HStructure:
    """``x`` restricted to ``subset``, relabelled monotonically."""
    subset = sorted(set(subset))
    if any(not 0 <= a < x.n for a in subset):
        raise ValueError(f"{subset} is not a subset of {x.n}")
    return H.restrict(x, Injection(tuple(subset), x.n))


def quotient(H: HereditarySpecies, x: HStructure, pi: Partition) -> HStructure:
    """``x / pi``: structure on the blocks of ``pi``, blocks ordered by least element."""
    if pi.n != x.n:
        raise ValueError(f"partition of {pi.n} does not partition carrier {x.n}")
    return H.quotient(x, canonical_surjection(pi))


def restrict_blocks(H: HereditarySpecies, x: HStructure, pi: Partition) -> list[HStructure]:
    """``x | pi``: the family of restrictions to each block, in block order."""
    if pi.n != x.n:
        raise ValueError(f"partition of {pi.n} does not partition carrier {x.n}")
    return [restrict(H, x, b) for b in pi.blocks]


# ---------------------------------------------------------------------------
# law checkers


def check_functoriality(H: HereditarySpecies, n_max: int) -> Report:
    """Identity and composition laws for the action of partial surjections."""
    rep = Report(f"functoriality[{H.name}, n<={n_max}]", details={"n_max": n_max})
    spans_from = {v: list(enumerate_partial_surjections(v)) for v in range(n_max + 1)}
    for v in range(n_max + 1):
        ident = PartialSurjection.identity(v)
        for x in H.structures(v):
            rep.checked += 1
            if act(H, ident, x) != x:
                return rep.fail({"law": "identity", "structure": x})
            for a in spans_from[v]:
                ax = act(H, a, x)
                for b in spans_from[a.target]:
                    rep.checked += 1
                    lhs = act(H, compose_partial_surjections(a, b), x)
                    rhs = act(H, b, ax)
                    if lhs != rhs:
                        return rep.fail({"law": "composition", "structure": x, "first": a, "second": b,
                                         "composite": lhs, "stepwise": rhs})
    return rep


def beck_chevalley_squares(n_max: int):
    """Every pullback of a surjection ``p: U -> V`` against an injection ``j: V' -> V``.

    Yields ``(p, j, i, p2)`` with ``i: U' -> U`` the monotone fibre inclusion
    and ``p2: U' -> V'`` the pulled-back surjection.
    """
    for u in range(n_max + 1):
        for v in range(u + 1):
            for p in enumerate_surjections(u, v):
                for v2 in range(v + 1):
                    for j in enumerate_injections(v2, v):
                        pos = {w: k for k, w in enumerate(j.values)}
                        pre = tuple(a for a in range(u) if p.values[a] in pos)
                        i = Injection(pre, u)
                        p2 = Surjection(tuple(pos[p.values[a]] for a in pre), v2)
                        yield p, j, i, p2


def check_beck_chevalley(H: HereditarySpecies, n_max: int) -> Report:
    """``H[p'] H[i] = H[j]^* H[p]`` on every pullback square with ``|U| <= n_max``."""
    rep = Report(f"beck-chevalley[{H.name}, n<={n_max}]", details={"n_max": n_max})
    for p, j, i, p2 in beck_chevalley_squares(n_max):
        for x in H.structures(p.source):
            rep.checked += 1
            lhs = H.quotient(H.restrict(x, i), p2)
            rhs = H.restrict(H.quotient(x, p), j)
            if lhs != rhs:
                return rep.fail({"surjection": p.values, "injection": j.values, "fibre_inclusion": i.values,
                                 "pulled_back": p2.values, "structure": x,
                                 "restrict_then_quotient": lhs, "quotient_then_restrict": rhs})
    return rep


def check_schmitt_identities(H: HereditarySpecies, n_max: int) -> Report:
    """The three restriction/quotient identities for all ``tau <= sigma``, up to iso."""
    from .canon import canon

    rep = Report(f"schmitt-identities[{H.name}, n<={n_max}]", details={"n_max": n_max})

    def classes(structs: Sequence[HStructure]) -> list[HStructure]:
        return [canon(H, s) for s in structs]

    for n in range(n_max + 1):
        parts = enumerate_partitions(n)
        for x in H.structures(n):
            for sigma in parts:
                x_sigma = restrict_blocks(H, x, sigma)
                for tau in parts:
                    if not refines(tau, sigma):
                        continue
                    rep.checked += 1
                    st = induced_partition(sigma, tau)
                    x_tau = quotient(H, x, tau)
                    # (G|sigma)|tau = G|tau, compared block by block of tau
                    lhs1 = []
                    for b, xb in zip(sigma.blocks, x_sigma):
                        lhs1.extend(restrict_blocks(H, xb, restrict_partition(tau, b)))
                    rhs1 = restrict_blocks(H, x, tau)
                    if sorted(classes(lhs1)) != sorted(classes(rhs1)):
                        return rep.fail({"identity": 1, "structure": x, "sigma": sigma.blocks, "tau": tau.blocks})
                    # (G/tau)|(sigma/tau) = (G|sigma)/tau, aligned by sigma-blocks
                    lhs2 = restrict_blocks(H, x_tau, st)
                    rhs2 = [quotient(H, xb, restrict_partition(tau, b)) for b, xb in zip(sigma.blocks, x_sigma)]
                    if classes(lhs2) != classes(rhs2):
                        return rep.fail({"identity": 2, "structure": x, "sigma": sigma.blocks, "tau": tau.blocks})
                    # (G/tau)/(sigma/tau) = G/sigma
                    lhs3 = quotient(H, x_tau, st)
                    rhs3 = quotient(H, x, sigma)
                    if canon(H, lhs3) != canon(H, rhs3):
                        return rep.fail({"identity": 3, "structure": x, "sigma": sigma.blocks, "tau": tau.blocks})
    return rep


Transformation = Callable[[HStructure], HStructure]
