"""Finite groupoids, maps between them, homotopy fibres and pullbacks, cardinality.

A groupoid is described by its object list and, for every object, a
normalisation: the representative of its component together with an arrow
into it.  Together with the automorphism groups of the representatives this
determines every hom-set, so fibres, iso-comma pullbacks and equivalence tests
are computed exactly without ever listing all arrows.  Arrows carry hashable,
groupoid-specific ``data``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable, Hashable, Iterable, Sequence

from .partitions import compose_maps, invert_perm


@dataclass(frozen=True)
class Arrow:
    src: Hashable
    tgt: Hashable
    data: Hashable

    def __repr__(self):
        return f"Arrow({self.src!r} -> {self.tgt!r} | {self.data!r})"


def _key(a: Arrow) -> str:
    return repr(a.data)


class FiniteGroupoid:
    """Abstract finite groupoid; subclasses implement the five hooks marked below."""

    name = "groupoid"

    def __init__(self):
        self._norm: dict[Hashable, tuple[Hashable, Arrow]] = {}
        self._auts: dict[Hashable, list[Arrow]] = {}
        self._components: dict[Hashable, list[Hashable]] | None = None
        self._object_set: frozenset | None = None

    # -- hooks -------------------------------------------------------------
    @property
    def objects(self) -> Sequence[Hashable]:
        raise NotImplementedError

    def _normalize(self, x) -> tuple[Hashable, Arrow]:
        raise NotImplementedError

    def _automorphisms(self, rep) -> list[Arrow]:
        raise NotImplementedError

    def _compose(self, g: Arrow, f: Arrow) -> Hashable:
        """Data of ``g . f``."""
        raise NotImplementedError

    def _inverse(self, f: Arrow) -> Hashable:
        raise NotImplementedError

    def _identity(self, x) -> Hashable:
        raise NotImplementedError

    # -- derived structure ---------------------------------------------------
    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        if f.tgt != g.src:
            raise ValueError(f"{self.name}: arrows not composable: {f} then {g}")
        return Arrow(f.src, g.tgt, self._compose(g, f))

    def compose_all(self, *arrows: Arrow) -> Arrow:
        """``compose_all(h, g, f) = h . g . f``."""
        out = arrows[-1]
        for a in reversed(arrows[:-1]):
            out = self.compose(a, out)
        return out

    def inverse(self, f: Arrow) -> Arrow:
        return Arrow(f.tgt, f.src, self._inverse(f))

    def identity(self, x) -> Arrow:
        return Arrow(x, x, self._identity(x))

    def has_object(self, x) -> bool:
        if self._object_set is None:
            self._object_set = frozenset(self.objects)
        return x in self._object_set

    def normalize(self, x) -> tuple[Hashable, Arrow]:
        """``(rep, t)`` with ``t: x -> rep`` and ``rep`` the chosen object of ``x``'s component."""
        hit = self._norm.get(x)
        if hit is None:
            hit = self._normalize(x)
            self._norm[x] = hit
        return hit

    def rep(self, x):
        return self.normalize(x)[0]

    def automorphisms(self, x) -> list[Arrow]:
        rep, t = self.normalize(x)
        if rep not in self._auts:
            self._auts[rep] = self._automorphisms(rep)
        auts = self._auts[rep]
        if x == rep:
            return auts
        ti = self.inverse(t)
        return [self.compose_all(ti, g, t) for g in auts]

    def aut_order(self, x) -> int:
        rep = self.rep(x)
        return len(self.automorphisms(rep))

    def hom(self, a, b) -> list[Arrow]:
        ra, ta = self.normalize(a)
        rb, tb = self.normalize(b)
        if ra != rb:
            return []
        tbi = self.inverse(tb)
        return [self.compose_all(tbi, g, ta) for g in self.automorphisms(ra)]

    def one_hom(self, a, b) -> Arrow | None:
        ra, ta = self.normalize(a)
        rb, tb = self.normalize(b)
        if ra != rb:
            return None
        return self.compose(self.inverse(tb), ta)

    def isomorphic(self, a, b) -> bool:
        return self.rep(a) == self.rep(b)

    def components(self) -> dict[Hashable, list[Hashable]]:
        if self._components is None:
            comps: dict[Hashable, list[Hashable]] = {}
            for x in self.objects:
                comps.setdefault(self.rep(x), []).append(x)
            self._components = comps
        return self._components

    def reps(self) -> list[Hashable]:
        return list(self.components())

    def generators(self) -> Iterable[Arrow]:
        """Arrows generating the groupoid: transversal arrows and automorphisms of representatives."""
        for rep, objs in self.components().items():
            yield from self.automorphisms(rep)
            for x in objs:
                if x != rep:
                    yield self.normalize(x)[1]

    def arrows(self) -> Iterable[Arrow]:
        """Every arrow (quadratic in component sizes; meant for small groupoids)."""
        for objs in self.components().values():
            for a in objs:
                for b in objs:
                    yield from self.hom(a, b)

    def __len__(self):
        return len(self.objects)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {len(self.objects)} objects, {len(self.components())} classes>"


# ---------------------------------------------------------------------------
# concrete groupoids


class ExplicitGroupoid(FiniteGroupoid):
    """Groupoid given by tables: arrows ``(id, src, tgt)`` and a total composition table.

    Arrow data are the arrow identifiers.
    """

    def __init__(self, objects, arrows, composition, identities, name="explicit"):
        super().__init__()
        self.name = name
        self._objects = tuple(objects)
        self._arrows = {aid: (s, t) for aid, s, t in arrows}
        self._table = dict(composition)
        self._ids = dict(identities)
        self._inv: dict[Hashable, Hashable] = {}
        for aid, (s, t) in self._arrows.items():
            for bid, (s2, t2) in self._arrows.items():
                if s2 == t and t2 == s and self._table.get((bid, aid)) == self._ids[s] \
                        and self._table.get((aid, bid)) == self._ids[t]:
                    self._inv[aid] = bid
                    break
        self._out: dict[Hashable, list[Hashable]] = {x: [] for x in self._objects}
        for aid, (s, _t) in self._arrows.items():
            self._out[s].append(aid)

    @property
    def objects(self):
        return self._objects

    def _normalize(self, x):
        # breadth-first search from the first object of the component in list order
        seen = {x: self._ids[x]}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for aid in self._out[y]:
                    z = self._arrows[aid][1]
                    if z not in seen:
                        seen[z] = self._table[(aid, seen[y])]
                        nxt.append(z)
            frontier = nxt
        rep = min(seen, key=self._objects.index)
        return rep, Arrow(x, rep, seen[rep])

    def _automorphisms(self, rep):
        return [Arrow(rep, rep, aid) for aid in self._out[rep] if self._arrows[aid][1] == rep]

    def _compose(self, g, f):
        return self._table[(g.data, f.data)]

    def _inverse(self, f):
        if f.data not in self._inv:
            raise ValueError(f"arrow {f.data} has no inverse")
        return self._inv[f.data]

    def _identity(self, x):
        return self._ids[x]

    def arrow(self, aid) -> Arrow:
        s, t = self._arrows[aid]
        return Arrow(s, t, aid)

    def check_axioms(self) -> list[str]:
        """Exhaustive scan of the tables; returns a list of violations."""
        problems = []
        ids = self._ids
        for x in self._objects:
            if self._arrows.get(ids[x]) != (x, x):
                problems.append(f"identity of {x} is not an endo-arrow")
        for aid, (s, t) in self._arrows.items():
            if aid not in self._inv:
                problems.append(f"{aid} has no inverse")
            if self._table.get((aid, ids[s])) != aid or self._table.get((ids[t], aid)) != aid:
                problems.append(f"unit law fails at {aid}")
        comp = [(f, g) for f, (_, t) in self._arrows.items() for g, (s2, _) in self._arrows.items() if s2 == t]
        for f, g in comp:
            gf = self._table.get((g, f))
            if gf is None:
                problems.append(f"composite {g}.{f} missing")
                continue
            if self._arrows[gf] != (self._arrows[f][0], self._arrows[g][1]):
                problems.append(f"composite {g}.{f} has wrong endpoints")
            for h, (s3, _) in self._arrows.items():
                if s3 == self._arrows[g][1]:
                    if self._table.get((h, gf)) != self._table.get((self._table.get((h, g)), f)):
                        problems.append(f"associativity fails at {h},{g},{f}")
        return problems

    @classmethod
    def from_group(cls, elements: Sequence[Hashable], mult: Callable[[Any, Any], Any], obj="*", name="BG"):
        """One-object groupoid of a finite group; ``mult(g, h)`` is ``g . h``."""
        unit = next(e for e in elements if all(mult(e, g) == g for g in elements))
        arrows = [(e, obj, obj) for e in elements]
        table = {(g, h): mult(g, h) for g in elements for h in elements}
        return cls([obj], arrows, table, {obj: unit}, name=name)

    @classmethod
    def discrete(cls, objects, name="discrete"):
        objects = list(objects)
        arrows = [(("id", x), x, x) for x in objects]
        table = {(("id", x), ("id", x)): ("id", x) for x in objects}
        return cls(objects, arrows, table, {x: ("id", x) for x in objects}, name=name)

    @classmethod
    def codiscrete(cls, objects, name="codiscrete"):
        """Exactly one arrow between any two objects."""
        objects = list(objects)
        arrows = [((a, b), a, b) for a in objects for b in objects]
        table = {((b, c), (a, b)): (a, c) for a in objects for b in objects for c in objects}
        return cls(objects, arrows, table, {x: (x, x) for x in objects}, name=name)

    @classmethod
    def from_groupoid(cls, G: FiniteGroupoid) -> ExplicitGroupoid:
        """Materialise all arrows and the composition table (small groupoids only)."""
        arrows = list(G.arrows())
        ident = {a: f"m{k}" for k, a in enumerate(arrows)}
        objs = list(G.objects)
        oname = {x: str(x) for x in objs}
        rows = [(ident[a], oname[a.src], oname[a.tgt]) for a in arrows]
        table = {}
        by_src: dict[Hashable, list[Arrow]] = {}
        for a in arrows:
            by_src.setdefault(a.src, []).append(a)
        for f in arrows:
            for g in by_src.get(f.tgt, []):
                table[(ident[g], ident[f])] = ident[G.compose(g, f)]
        ids = {oname[x]: ident[G.identity(x)] for x in objs}
        return cls([oname[x] for x in objs], rows, table, ids, name=G.name)


def terminal_groupoid() -> ExplicitGroupoid:
    return ExplicitGroupoid(["*"], [("id", "*", "*")], {("id", "id"): "id"}, {"*": "id"}, name="1")


# shared so that maps out of the point can be pasted into squares
TERMINAL = terminal_groupoid()


class SymmetricGroupoid(FiniteGroupoid):
    """Finite sets of the given sizes and bijections; object ``n`` stands for ``range(n)``."""

    def __init__(self, sizes: Iterable[int], name="B"):
        super().__init__()
        self.name = name
        self._objects = tuple(sizes)

    @property
    def objects(self):
        return self._objects

    def _normalize(self, x):
        return x, self.identity(x)

    def _automorphisms(self, rep):
        return [Arrow(rep, rep, p) for p in permutations(range(rep))]

    def _compose(self, g, f):
        return compose_maps(g.data, f.data)

    def _inverse(self, f):
        return invert_perm(f.data)

    def _identity(self, x):
        return tuple(range(x))


class ProductGroupoid(FiniteGroupoid):
    def __init__(self, X: FiniteGroupoid, Y: FiniteGroupoid):
        super().__init__()
        self.X, self.Y = X, Y
        self.name = f"{X.name}x{Y.name}"
        self._objects_cache = None

    @property
    def objects(self):
        if self._objects_cache is None:
            self._objects_cache = tuple((x, y) for x in self.X.objects for y in self.Y.objects)
        return self._objects_cache

    def has_object(self, xy):
        return self.X.has_object(xy[0]) and self.Y.has_object(xy[1])

    def _normalize(self, xy):
        rx, tx = self.X.normalize(xy[0])
        ry, ty = self.Y.normalize(xy[1])
        return (rx, ry), Arrow(xy, (rx, ry), (tx, ty))

    def _automorphisms(self, rep):
        return [Arrow(rep, rep, (u, v)) for u in self.X.automorphisms(rep[0]) for v in self.Y.automorphisms(rep[1])]

    def _compose(self, g, f):
        return (self.X.compose(g.data[0], f.data[0]), self.Y.compose(g.data[1], f.data[1]))

    def _inverse(self, f):
        return (self.X.inverse(f.data[0]), self.Y.inverse(f.data[1]))

    def _identity(self, xy):
        return (self.X.identity(xy[0]), self.Y.identity(xy[1]))

    def pair(self, u: Arrow, v: Arrow) -> Arrow:
        return Arrow((u.src, v.src), (u.tgt, v.tgt), (u, v))


# ---------------------------------------------------------------------------
# maps


class GroupoidMap:
    """A functor given by an object function and an arrow function."""

    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid,
                 on_obj: Callable[[Hashable], Hashable], on_mor: Callable[[Arrow], Arrow], name="F"):
        self.source, self.target = source, target
        self._on_obj, self._on_mor = on_obj, on_mor
        self.name = name
        self._cache: dict[Hashable, Hashable] = {}

    def __call__(self, x):
        hit = self._cache.get(x)
        if hit is None:
            hit = self._on_obj(x)
            self._cache[x] = hit
        return hit

    def mor(self, a: Arrow) -> Arrow:
        return self._on_mor(a)

    def then(self, G: GroupoidMap, name=None) -> GroupoidMap:
        """``G . self``."""
        if G.source is not self.target:
            raise ValueError(f"cannot compose {self.name} with {G.name}")
        return GroupoidMap(self.source, G.target, lambda x: G(self(x)), lambda a: G.mor(self.mor(a)),
                           name=name or f"{G.name}.{self.name}")

    def __repr__(self):
        return f"<map {self.name}: {self.source.name} -> {self.target.name}>"

    @classmethod
    def identity(cls, X: FiniteGroupoid) -> GroupoidMap:
        return cls(X, X, lambda x: x, lambda a: a, name=f"id_{X.name}")

    @classmethod
    def name_of(cls, S: FiniteGroupoid, s) -> GroupoidMap:
        """The map ``1 -> S`` picking out ``s``."""
        if not S.has_object(s):
            raise KeyError(f"{s!r} is not an object of {S.name}")
        return cls(TERMINAL, S, lambda _x: s, lambda _a: S.identity(s), name=f"<{s}>")

    def pairing(self, other: GroupoidMap) -> GroupoidMap:
        """``(self, other): X -> A x B``."""
        if other.source is not self.source:
            raise ValueError("pairing needs a common source")
        P = ProductGroupoid(self.target, other.target)
        return GroupoidMap(self.source, P, lambda x: (self(x), other(x)),
                           lambda a: P.pair(self.mor(a), other.mor(a)), name=f"({self.name},{other.name})")


def check_functor(F: GroupoidMap, exhaustive: bool = False) -> list[str]:
    """Endpoint, identity and composition checks; on generators unless ``exhaustive``."""
    X, Y = F.source, F.target
    problems = []
    for x in X.objects:
        if not Y.has_object(F(x)):
            problems.append(f"{x!r} maps outside the target")
            return problems
        if F.mor(X.identity(x)) != Y.identity(F(x)):
            problems.append(f"identity of {x!r} not preserved")
    arrows = list(X.arrows() if exhaustive else X.generators())
    for a in arrows:
        b = F.mor(a)
        if (b.src, b.tgt) != (F(a.src), F(a.tgt)):
            problems.append(f"endpoints of {a!r} not preserved")
    if exhaustive:
        by_src: dict[Hashable, list[Arrow]] = {}
        for a in arrows:
            by_src.setdefault(a.src, []).append(a)
        for f in arrows:
            for g in by_src.get(f.tgt, []):
                if F.mor(X.compose(g, f)) != Y.compose(F.mor(g), F.mor(f)):
                    problems.append(f"composition {g!r} . {f!r} not preserved")
    return problems


# ---------------------------------------------------------------------------
# iso-comma (homotopy pullback) and fibres


class IsoComma(FiniteGroupoid):
    """Homotopy pullback of ``f: X -> S <- Y :g``.

    Objects are ``(x, y, alpha)`` with ``alpha: f(x) -> g(y)``; arrows are pairs
    ``(u, v)`` with ``alpha' . f(u) = g(v) . alpha``.
    """

    def __init__(self, f: GroupoidMap, g: GroupoidMap, name=None):
        super().__init__()
        if f.target is not g.target:
            raise ValueError(f"cospan legs {f.name}, {g.name} have different targets")
        self.f, self.g = f, g
        self.X, self.Y, self.S = f.source, g.source, f.target
        self.name = name or f"{self.X.name}x_{self.S.name}{self.Y.name}"
        self._objects_cache = None
        self._orbits: dict[tuple, dict[Arrow, tuple[Arrow, Arrow, Arrow]]] = {}

    @property
    def objects(self):
        if self._objects_cache is None:
            S = self.S
            by_rep_x: dict[Hashable, list] = {}
            for x in self.X.objects:
                by_rep_x.setdefault(S.rep(self.f(x)), []).append(x)
            by_rep_y: dict[Hashable, list] = {}
            for y in self.Y.objects:
                by_rep_y.setdefault(S.rep(self.g(y)), []).append(y)
            out = []
            for s, xs in by_rep_x.items():
                ys = by_rep_y.get(s, [])
                if not ys:
                    continue
                auts = S.automorphisms(s)
                for x in xs:
                    tx = S.normalize(self.f(x))[1]
                    for y in ys:
                        tyi = S.inverse(S.normalize(self.g(y))[1])
                        for a in auts:
                            out.append((x, y, S.compose_all(tyi, a, tx)))
            self._objects_cache = tuple(out)
        return self._objects_cache

    def has_object(self, obj):
        x, y, alpha = obj
        return (self.X.has_object(x) and self.Y.has_object(y)
                and alpha.src == self.f(x) and alpha.tgt == self.g(y))

    def _act(self, u: Arrow, v: Arrow, alpha: Arrow) -> Arrow:
        S = self.S
        return S.compose_all(self.g.mor(v), alpha, S.inverse(self.f.mor(u)))

    def _orbit_table(self, rx, ry, alpha):
        key = (rx, ry)
        table = self._orbits.setdefault(key, {})
        if alpha in table:
            return table[alpha]
        X, Y = self.X, self.Y
        group = [(u, v) for u in X.automorphisms(rx) for v in Y.automorphisms(ry)]
        images = [(self._act(u, v, alpha), u, v) for u, v in group]
        best = min(images, key=lambda t: _key(t[0]))
        rep_alpha, bu, bv = best
        for beta, u, v in images:
            if beta in table:
                continue
            # (bu, bv) . alpha = rep ; (u, v) . alpha = beta  =>  (bu u^-1, bv v^-1) . beta = rep
            table[beta] = (rep_alpha, X.compose(bu, X.inverse(u)), Y.compose(bv, Y.inverse(v)))
        return table[alpha]

    def _normalize(self, obj):
        x, y, alpha = obj
        rx, tx = self.X.normalize(x)
        ry, ty = self.Y.normalize(y)
        alpha0 = self._act(tx, ty, alpha)
        rep_alpha, u, v = self._orbit_table(rx, ry, alpha0)
        rep = (rx, ry, rep_alpha)
        return rep, Arrow(obj, rep, (self.X.compose(u, tx), self.Y.compose(v, ty)))

    def _automorphisms(self, rep):
        rx, ry, alpha = rep
        return [Arrow(rep, rep, (u, v)) for u in self.X.automorphisms(rx) for v in self.Y.automorphisms(ry)
                if self._act(u, v, alpha) == alpha]

    def _compose(self, g, f):
        return (self.X.compose(g.data[0], f.data[0]), self.Y.compose(g.data[1], f.data[1]))

    def _inverse(self, f):
        return (self.X.inverse(f.data[0]), self.Y.inverse(f.data[1]))

    def _identity(self, obj):
        return (self.X.identity(obj[0]), self.Y.identity(obj[1]))

    def arrow(self, src, u: Arrow, v: Arrow) -> Arrow:
        """The arrow out of ``src`` with components ``(u, v)``; its target is forced."""
        x, y, alpha = src
        return Arrow(src, (u.tgt, v.tgt, self._act(u, v, alpha)), (u, v))

    def projections(self) -> tuple[GroupoidMap, GroupoidMap]:
        p1 = GroupoidMap(self, self.X, lambda o: o[0], lambda a: a.data[0], name="pr1")
        p2 = GroupoidMap(self, self.Y, lambda o: o[1], lambda a: a.data[1], name="pr2")
        return p1, p2


def homotopy_pullback(f: GroupoidMap, g: GroupoidMap):
    """``(P, pr1, pr2, witness)``; ``witness(p)`` is the arrow ``f(pr1 p) -> g(pr2 p)``."""
    P = IsoComma(f, g)
    p1, p2 = P.projections()
    return P, p1, p2, (lambda obj: obj[2])


def homotopy_fibre(p: GroupoidMap, s) -> IsoComma:
    """Objects ``(x, '*', alpha: p(x) -> s)``; arrows ``u: x -> x'`` with ``alpha' . p(u) = alpha``."""
    name = GroupoidMap.name_of(p.target, s)
    return IsoComma(p, name, name=f"fib_{p.name}({s})")


def fibre_projection(F: IsoComma) -> GroupoidMap:
    return F.projections()[0]


# ---------------------------------------------------------------------------
# equivalences, squares, cardinality


def is_fully_faithful(F: GroupoidMap) -> tuple[bool, dict | None]:
    X, Y = F.source, F.target
    seen: dict[Hashable, Hashable] = {}
    for r in X.reps():
        s, t = Y.normalize(F(r))
        if s in seen:
            return False, {"kind": "not full", "pair": [seen[s], r], "source_hom": 0,
                           "target_hom": len(Y.automorphisms(s))}
        seen[s] = r
        auts = X.automorphisms(r)
        ti = Y.inverse(t)
        images = {Y.compose_all(t, F.mor(u), ti) for u in auts}
        if len(images) < len(auts):
            return False, {"kind": "not faithful", "object": r, "source_hom": len(auts),
                           "image_size": len(images)}
        target_auts = len(Y.automorphisms(s))
        if len(images) < target_auts:
            return False, {"kind": "not full", "pair": [r, r], "source_hom": len(auts),
                           "target_hom": target_auts}
    return True, None


def is_equivalence(F: GroupoidMap) -> tuple[bool, dict | None]:
    """Fully faithful and essentially surjective; otherwise a certificate of failure."""
    ok, cert = is_fully_faithful(F)
    if not ok:
        return ok, cert
    hit = {F.target.rep(F(r)) for r in F.source.reps()}
    for s in F.target.reps():
        if s not in hit:
            return False, {"kind": "not essentially surjective", "object": s}
    return True, None


class SquareWithWitness:
    """A square ``P -top-> Y, P -left-> X, Y -right-> S, X -bottom-> S``.

    ``witness(p)`` is an arrow ``bottom(left p) -> right(top p)``; ``None``
    means the square commutes strictly and the witness is the identity.
    """

    def __init__(self, top: GroupoidMap, left: GroupoidMap, right: GroupoidMap, bottom: GroupoidMap,
                 witness: Callable[[Hashable], Arrow] | None = None, name="square"):
        if top.source is not left.source or right.source is not top.target \
                or bottom.source is not left.target or right.target is not bottom.target:
            raise ValueError(f"{name}: maps do not form a square")
        self.top, self.left, self.right, self.bottom = top, left, right, bottom
        self.name = name
        S = bottom.target
        self.witness = witness or (lambda p: S.identity(bottom(left(p))))

    @property
    def corner(self) -> FiniteGroupoid:
        return self.top.source

    def check_witness(self) -> list[str]:
        """Endpoints of the witness and its naturality on a generating set of arrows."""
        S = self.bottom.target
        problems = []
        for p in self.corner.objects:
            w = self.witness(p)
            if (w.src, w.tgt) != (self.bottom(self.left(p)), self.right(self.top(p))):
                problems.append(f"witness at {p!r} has wrong endpoints")
                return problems
        for phi in self.corner.generators():
            lhs = S.compose(self.witness(phi.tgt), self.bottom.mor(self.left.mor(phi)))
            rhs = S.compose(self.right.mor(self.top.mor(phi)), self.witness(phi.src))
            if lhs != rhs:
                problems.append(f"witness not natural at {phi!r}")
                return problems
        return problems

    def comparison(self) -> tuple[IsoComma, GroupoidMap]:
        P = IsoComma(self.bottom, self.right)
        c = GroupoidMap(self.corner, P, lambda p: (self.left(p), self.top(p), self.witness(p)),
                        lambda a: Arrow((self.left(a.src), self.top(a.src), self.witness(a.src)),
                                        (self.left(a.tgt), self.top(a.tgt), self.witness(a.tgt)),
                                        (self.left.mor(a), self.top.mor(a))),
                        name=f"cmp[{self.name}]")
        return P, c


def is_pullback_square(sq: SquareWithWitness) -> tuple[bool, dict | None]:
    """Compare the corner with the iso-comma of the cospan."""
    problems = sq.check_witness()
    if problems:
        raise ValueError(f"{sq.name}: {problems[0]}")
    P, c = sq.comparison()
    ok, cert = is_equivalence(c)
    if not ok:
        cert = dict(cert)
        cert["corner_cardinality"] = str(homotopy_cardinality(sq.corner))
        cert["pullback_cardinality"] = str(homotopy_cardinality(P))
    return ok, cert


def fibre_comparison(sq: SquareWithWitness, x) -> GroupoidMap:
    """The induced map from the fibre of ``left`` over ``x`` to the fibre of ``right`` over ``bottom(x)``."""
    S = sq.bottom.target
    Px = homotopy_fibre(sq.left, x)
    Yfx = homotopy_fibre(sq.right, sq.bottom(x))

    def on_obj(o):
        p, star, beta = o
        w = sq.witness(p)
        return (sq.top(p), star, S.compose(sq.bottom.mor(beta), S.inverse(w)))

    def on_mor(a):
        u = a.data[0]
        return Arrow(on_obj(a.src), on_obj(a.tgt), (sq.top.mor(u), a.data[1]))

    return GroupoidMap(Px, Yfx, on_obj, on_mor, name=f"fibcmp[{sq.name}]({x})")


def is_pullback_fibrewise(sq: SquareWithWitness) -> tuple[bool, dict | None]:
    """Pullback test through fibres over each component of the bottom-left corner."""
    for x in sq.left.target.reps():
        ok, cert = is_equivalence(fibre_comparison(sq, x))
        if not ok:
            return False, {"object": x, "fibre": cert}
    return True, None


def homotopy_cardinality(X: FiniteGroupoid) -> Fraction:
    """Sum over components of ``1/|Aut|``."""
    return sum((Fraction(1, len(X.automorphisms(r))) for r in X.reps()), Fraction(0))


def map_cardinality(p: GroupoidMap) -> dict[Hashable, Fraction]:
    """Coefficient ``|X_s| / |Aut(s)|`` at every component representative ``s`` of the target."""
    T = p.target
    hit = {T.rep(p(x)) for x in p.source.objects}
    out = {}
    for s in T.reps() if not isinstance(T, ProductGroupoid) else sorted(hit, key=repr):
        if s not in hit:
            out[s] = Fraction(0)
            continue
        fib = homotopy_fibre(p, s)
        out[s] = homotopy_cardinality(fib) / len(T.automorphisms(s))
    return out


# ---------------------------------------------------------------------------
# serialisation


def groupoid_to_json(G: FiniteGroupoid) -> dict:
    E = G if isinstance(G, ExplicitGroupoid) else ExplicitGroupoid.from_groupoid(G)
    morphisms = [{"id": str(aid), "source": str(s), "target": str(t)} for aid, (s, t) in E._arrows.items()]
    comp = [[str(g), str(f), str(gf)] for (g, f), gf in E._table.items()]
    return {"name": G.name, "objects": [str(x) for x in E.objects], "morphisms": morphisms,
            "composition": comp, "identities": {str(x): str(a) for x, a in E._ids.items()}}


def groupoid_from_json(d: dict) -> ExplicitGroupoid:
    arrows = [(m["id"], m["source"], m["target"]) for m in d["morphisms"]]
    table = {(g, f): gf for g, f, gf in d["composition"]}
    return ExplicitGroupoid(d["objects"], arrows, table, d["identities"], name=d.get("name", "explicit"))


def map_to_json(F: GroupoidMap) -> dict:
    src = F.source
    return {"name": F.name, "source": src.name, "target": F.target.name,
            "objects": {str(x): str(F(x)) for x in src.objects},
            "morphisms": [{"arrow": repr(a), "image": repr(F.mor(a))} for a in src.generators()]}
