"""Truncated simplicial groupoids of surjection chains and their checkers.

A *member* is a chain of sets ``V_0 -> V_1 -> ... -> V_{j-1}`` of ordinals and
surjections, optionally decorated by a species structure on ``V_0``; it is
stored as ``(sizes, maps, payload)`` with ``payload`` ``None`` when there is
no decoration.  The point (chain of no sets) is ``((), (), None)``.

* ``N Sur_n``: single chains of ``n + 1`` sets, empty sets allowed.
* ``S_j``: finite lists of chains of ``j`` non-empty sets; ``S_0`` is lists of points.
* ``H_j``: as ``S_j`` with a decoration on every source set; ``H_0 = S_0``.
* ``M_n``: ``N Sur_n`` decorated on the source set (empty structures allowed).

Faces ``d_i`` with ``i < j`` on ``S_j`` delete set ``i`` (deleting ``V_0`` pushes
the decoration along ``V_0 -> V_1``), and the top face ``d_j`` replaces each
member by its fibres over the elements of its last set.  Degeneracies
``s_i`` with ``i < j`` repeat set ``i``; the top degeneracy ``s_j`` appends the
map to a one-element set.

Morphisms of a list are ``(sigma, betas)``: ``sigma[k]`` is where member ``k``
goes, and ``betas[k]`` holds one bijection per set of member ``k``.  Arrows of
single chains carry ``betas`` only.  Every groupoid lists canonical
representatives as its objects; any valid labelled object may still be
passed to ``normalize``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from .groupoid import (
    Arrow,
    FiniteGroupoid,
    GroupoidMap,
    IsoComma,
    SquareWithWitness,
    homotopy_cardinality,
    homotopy_fibre,
    is_equivalence,
    is_fully_faithful,
    is_pullback_square,
)
from .partitions import (
    Injection,
    Surjection,
    compose_maps,
    enumerate_partitions,
    first_occurrence_relabel,
    identity_map,
    invert_perm,
)
from .report import Report, combine
from .species import HereditarySpecies

POINT = ((), (), None)


def _pkey(m):
    return (m[0], m[1], () if m[2] is None else m[2])


# ---------------------------------------------------------------------------
# members


def _transport(m, betas, H):
    sizes, maps, payload = m
    new_maps = tuple(compose_maps(betas[i + 1], compose_maps(f, invert_perm(betas[i]))) for i, f in enumerate(maps))
    if payload is not None:
        payload = H.quotient(payload, Surjection(betas[0], sizes[0]))
    return (sizes, new_maps, payload)


def _forced(m, b0, H):
    """Transport along ``b0`` on ``V_0``, numbering later sets by first occurrence."""
    sizes, maps, payload = m
    betas = [b0]
    prev_inv = invert_perm(b0)
    new_maps = []
    for f, t in zip(maps, sizes[1:]):
        g = compose_maps(f, prev_inv)
        b = first_occurrence_relabel(g, t)
        new_maps.append(compose_maps(b, g))
        betas.append(b)
        prev_inv = invert_perm(b)
    if payload is not None:
        payload = H.quotient(payload, Surjection(b0, sizes[0]))
    return (sizes, tuple(new_maps), payload), tuple(betas)


@lru_cache(maxsize=None)
def canonical_member(m, H=None):
    """``(rep, betas)`` with ``betas`` an isomorphism from ``m`` to its canonical representative."""
    if not m[0]:
        return m, ()
    best = None
    for b0 in permutations(range(m[0][0])):
        cand, betas = _forced(m, b0, H)
        if best is None or _pkey(cand) < _pkey(best[0]):
            best = (cand, betas)
    return best


@lru_cache(maxsize=None)
def member_automorphisms(rep, H=None) -> tuple:
    if not rep[0]:
        return ((),)
    out = []
    for b0 in permutations(range(rep[0][0])):
        cand, betas = _forced(rep, b0, H)
        if cand == rep:
            out.append(betas)
    return tuple(out)


def _remove_set(m, i, H):
    sizes, maps, payload = m
    j = len(sizes)
    if i == 0:
        if j == 1:
            return POINT
        if payload is not None:
            payload = H.quotient(payload, Surjection(maps[0], sizes[1]))
        return (sizes[1:], maps[1:], payload)
    if i == j - 1:
        return (sizes[:-1], maps[:-1], payload)
    merged = compose_maps(maps[i], maps[i - 1])
    return (sizes[:i] + sizes[i + 1:], maps[:i - 1] + (merged,) + maps[i + 1:], payload)


def _repeat_set(m, i):
    sizes, maps, payload = m
    return (sizes[:i + 1] + sizes[i:], maps[:i] + (identity_map(sizes[i]),) + maps[i:], payload)


def _append_terminal(m, H):
    sizes, maps, payload = m
    if not sizes:
        return ((1,), (), H.point() if H is not None else None)
    return (sizes + (1,), maps + ((0,) * sizes[-1],), payload)


@lru_cache(maxsize=None)
def member_fibres(m, H=None) -> tuple:
    """Fibres over each element ``e`` of the last set: ``(fibre member, (W_0, ..., W_{j-2}))``.

    ``W_i`` lists the elements of ``V_i`` lying over ``e``; the fibre chain is
    relabelled monotonically and the decoration restricted to ``W_0``.
    """
    sizes, maps, payload = m
    j = len(sizes)
    if j == 0:
        raise ValueError("a point has no fibres")
    if j == 1:
        return tuple((POINT, ()) for _ in range(sizes[0]))
    comps = [None] * j
    comps[j - 1] = identity_map(sizes[-1])
    for i in range(j - 2, -1, -1):
        comps[i] = compose_maps(comps[i + 1], maps[i])
    out = []
    for e in range(sizes[-1]):
        W = tuple(tuple(a for a in range(sizes[i]) if comps[i][a] == e) for i in range(j - 1))
        pos = [{a: p for p, a in enumerate(w)} for w in W]
        new_maps = tuple(tuple(pos[i + 1][maps[i][a]] for a in W[i]) for i in range(j - 2))
        pl = H.restrict(payload, Injection(W[0], sizes[0])) if payload is not None else None
        out.append(((tuple(len(w) for w in W), new_maps, pl), W))
    return tuple(out)


def _valid_member(m, level, H, allow_empty) -> bool:
    sizes, maps, payload = m
    if len(sizes) != level or len(maps) != max(level - 1, 0):
        return False
    if not allow_empty and any(s < 1 for s in sizes):
        return False
    for f, a, b in zip(maps, sizes, sizes[1:]):
        if len(f) != a or set(f) != set(range(b)):
            return False
    if level == 0 or H is None:
        return payload is None
    return payload is not None and payload.n == sizes[0] and payload in set(H.structures(sizes[0]))


@lru_cache(maxsize=None)
def canonical_members(level: int, size: int, H=None, allow_empty=False) -> tuple:
    """Canonical chains of ``level`` sets with ``|V_0| = size``."""
    if level == 0:
        return (POINT,) if size == 1 else ()
    found = set()

    def chains(sizes, maps):
        if len(sizes) == level:
            yield sizes, maps
            return
        n = sizes[-1]
        for p in enumerate_partitions(n):
            if not allow_empty and n == 0:
                continue
            yield from chains(sizes + (len(p),), maps + (p.rgs(),))

    payloads = H.structures(size) if H is not None else [None]
    for sizes, maps in chains((size,), ()):
        for pl in payloads:
            found.add(canonical_member((sizes, maps, pl), H)[0])
    return tuple(sorted(found, key=_pkey))


def _member_size(m) -> int:
    return m[0][0] if m[0] else 1


# ---------------------------------------------------------------------------
# groupoids


class FamilyGroupoid(FiniteGroupoid):
    """Lists of chains of ``level`` non-empty sets, total source size at most ``k``."""

    def __init__(self, level: int, k: int, H: HereditarySpecies | None = None, name=None):
        super().__init__()
        self.level, self.k = level, k
        self.H = H if level > 0 else None
        self.name = name or f"{'S' if H is None else 'H'}_{level}"
        self._objects_cache = None

    @property
    def objects(self):
        if self._objects_cache is None:
            pool = [m for size in range(1, self.k + 1) for m in canonical_members(self.level, size, self.H)]
            out = []

            def rec(start, total, acc):
                out.append(tuple(acc))
                for idx in range(start, len(pool)):
                    s = _member_size(pool[idx])
                    if total + s <= self.k:
                        acc.append(pool[idx])
                        rec(idx, total + s, acc)
                        acc.pop()

            rec(0, 0, [])
            self._objects_cache = tuple(out)
        return self._objects_cache

    def has_object(self, F):
        return (isinstance(F, tuple) and sum(_member_size(m) for m in F) <= self.k
                and all(_valid_member(m, self.level, self.H, False) for m in F))

    def _normalize(self, F):
        canon = [canonical_member(m, self.H) for m in F]
        order = sorted(range(len(F)), key=lambda k: _pkey(canon[k][0]))
        sigma = [0] * len(F)
        for pos, k in enumerate(order):
            sigma[k] = pos
        rep = tuple(canon[k][0] for k in order)
        return rep, Arrow(F, rep, (tuple(sigma), tuple(c[1] for c in canon)))

    def _automorphisms(self, rep):
        runs, start = [], 0
        for idx in range(1, len(rep) + 1):
            if idx == len(rep) or rep[idx] != rep[start]:
                runs.append(range(start, idx))
                start = idx
        perm_choices = [list(permutations(r)) for r in runs]
        aut_choices = [member_automorphisms(m, self.H) for m in rep]
        out = []
        for perms in product(*perm_choices):
            sigma = [0] * len(rep)
            for r, p in zip(runs, perms):
                for a, b in zip(r, p):
                    sigma[a] = b
            for betas in product(*aut_choices):
                out.append(Arrow(rep, rep, (tuple(sigma), tuple(betas))))
        return out

    def _compose(self, g, f):
        sf, bf = f.data
        sg, bg = g.data
        betas = tuple(tuple(compose_maps(x, y) for x, y in zip(bg[sf[k]], bf[k])) for k in range(len(sf)))
        return (compose_maps(sg, sf), betas)

    def _inverse(self, f):
        sigma, betas = f.data
        inv = [None] * len(sigma)
        for k, t in enumerate(sigma):
            inv[t] = tuple(invert_perm(b) for b in betas[k])
        return (invert_perm(sigma), tuple(inv))

    def _identity(self, F):
        return (identity_map(len(F)), tuple(tuple(identity_map(s) for s in m[0]) for m in F))


class ChainGroupoid(FiniteGroupoid):
    """Single chains of ``level + 1`` sets (empty sets allowed), ``|V_0| <= k``."""

    def __init__(self, level: int, k: int, H: HereditarySpecies | None = None, name=None):
        super().__init__()
        self.level, self.k, self.H = level, k, H
        self.name = name or f"{'NSur' if H is None else 'M'}_{level}"
        self._objects_cache = None

    @property
    def objects(self):
        if self._objects_cache is None:
            self._objects_cache = tuple(m for size in range(self.k + 1)
                                        for m in canonical_members(self.level + 1, size, self.H, True))
        return self._objects_cache

    def has_object(self, c):
        return _valid_member(c, self.level + 1, self.H, True) and c[0][0] <= self.k

    def _normalize(self, c):
        rep, betas = canonical_member(c, self.H)
        return rep, Arrow(c, rep, betas)

    def _automorphisms(self, rep):
        return [Arrow(rep, rep, b) for b in member_automorphisms(rep, self.H)]

    def _compose(self, g, f):
        return tuple(compose_maps(x, y) for x, y in zip(g.data, f.data))

    def _inverse(self, f):
        return tuple(invert_perm(b) for b in f.data)

    def _identity(self, c):
        return tuple(identity_map(s) for s in c[0])


# ---------------------------------------------------------------------------
# maps on lists and chains


def _family_top(F, H):
    return tuple(fm for m in F for fm, _W in member_fibres(m, H))


def _family_top_arrow(src, tgt, data, H):
    sigma, betas = data
    offsets, acc = [], 0
    for m in tgt:
        offsets.append(acc)
        acc += m[0][-1]
    new_sigma, new_betas = [], []
    for k, m in enumerate(src):
        fib_t = member_fibres(tgt[sigma[k]], H)
        last = betas[k][-1]
        for e, (_fm, W) in enumerate(member_fibres(m, H)):
            e2 = last[e]
            W2 = fib_t[e2][1]
            new_sigma.append(offsets[sigma[k]] + e2)
            pos2 = [{a: p for p, a in enumerate(w)} for w in W2]
            new_betas.append(tuple(tuple(pos2[i][betas[k][i][a]] for a in W[i]) for i in range(len(W))))
    return (tuple(new_sigma), tuple(new_betas))


def family_face(X: FamilyGroupoid, Y: FamilyGroupoid, i: int) -> GroupoidMap:
    j, H = X.level, X.H
    if i == j:
        obj = lambda F: _family_top(F, H)
        mor = lambda a: Arrow(obj(a.src), obj(a.tgt), _family_top_arrow(a.src, a.tgt, a.data, H))
    else:
        obj = lambda F: tuple(_remove_set(m, i, H) for m in F)
        mor = lambda a: Arrow(obj(a.src), obj(a.tgt),
                              (a.data[0], tuple(b[:i] + b[i + 1:] for b in a.data[1])))
    return GroupoidMap(X, Y, obj, mor, name=f"d{i}")


def family_degeneracy(X: FamilyGroupoid, Y: FamilyGroupoid, i: int) -> GroupoidMap:
    j, H = X.level, Y.H
    if i == j:
        obj = lambda F: tuple(_append_terminal(m, H) for m in F)
        mor = lambda a: Arrow(obj(a.src), obj(a.tgt), (a.data[0], tuple(b + ((0,),) for b in a.data[1])))
    else:
        obj = lambda F: tuple(_repeat_set(m, i) for m in F)
        mor = lambda a: Arrow(obj(a.src), obj(a.tgt),
                              (a.data[0], tuple(b[:i + 1] + b[i:] for b in a.data[1])))
    return GroupoidMap(X, Y, obj, mor, name=f"s{i}")


def chain_face(X: ChainGroupoid, Y: ChainGroupoid, i: int) -> GroupoidMap:
    H = X.H
    obj = lambda c: _remove_set(c, i, H)
    mor = lambda a: Arrow(obj(a.src), obj(a.tgt), a.data[:i] + a.data[i + 1:])
    return GroupoidMap(X, Y, obj, mor, name=f"d{i}")


def chain_degeneracy(X: ChainGroupoid, Y: ChainGroupoid, i: int) -> GroupoidMap:
    obj = lambda c: _repeat_set(c, i)
    mor = lambda a: Arrow(obj(a.src), obj(a.tgt), a.data[:i + 1] + a.data[i:])
    return GroupoidMap(X, Y, obj, mor, name=f"s{i}")


# ---------------------------------------------------------------------------
# truncated simplicial groupoids


class TruncatedSimplicialGroupoid:
    """Levels ``0..N`` with faces ``d_i`` (``0 <= i <= n``) and degeneracies ``s_i`` within the truncation.

    ``pseudo`` lists the face identities that hold only up to a natural
    isomorphism, as triples ``(n, i, j)`` meaning ``d_i d_j = d_{j-1} d_i`` on level ``n``.
    ``base``/``projections`` give an optional levelwise map to another object.
    """

    def __init__(self, name: str, levels: Sequence[FiniteGroupoid],
                 face: Callable[[int, int], GroupoidMap], degeneracy: Callable[[int, int], GroupoidMap],
                 pseudo: Iterable[tuple[int, int, int]] = (), k: int | None = None):
        self.name = name
        self.levels = list(levels)
        self._face_fn, self._degen_fn = face, degeneracy
        self._faces: dict[tuple[int, int], GroupoidMap] = {}
        self._degens: dict[tuple[int, int], GroupoidMap] = {}
        self.pseudo = set(pseudo)
        self.k = k
        self.base: TruncatedSimplicialGroupoid | None = None
        self.projections: list[GroupoidMap] | None = None

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n) -> FiniteGroupoid:
        return self.levels[n]

    def face(self, n: int, i: int) -> GroupoidMap:
        """``d_i: X_n -> X_{n-1}``."""
        if not (1 <= n <= self.N and 0 <= i <= n):
            raise IndexError(f"no face d{i} on level {n} of {self.name} (N={self.N})")
        if (n, i) not in self._faces:
            self._faces[(n, i)] = self._face_fn(n, i)
        return self._faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> GroupoidMap:
        """``s_i: X_n -> X_{n+1}``."""
        if not (0 <= n < self.N and 0 <= i <= n):
            raise IndexError(f"no degeneracy s{i} on level {n} of {self.name} (N={self.N})")
        if (n, i) not in self._degens:
            self._degens[(n, i)] = self._degen_fn(n, i)
        return self._degens[(n, i)]

    def top(self, n: int) -> GroupoidMap:
        return self.face(n, n)

    def bottom(self, n: int) -> GroupoidMap:
        return self.face(n, 0)

    def __repr__(self):
        return f"<{self.name}: levels 0..{self.N}, k={self.k}>"


def build_S(k: int, N: int = 3) -> TruncatedSimplicialGroupoid:
    levels = [FamilyGroupoid(j, k) for j in range(N + 1)]
    pseudo = {(n, n - 1, n) for n in range(2, N + 1)}
    X = TruncatedSimplicialGroupoid(
        "S", levels, lambda n, i: family_face(levels[n], levels[n - 1], i),
        lambda n, i: family_degeneracy(levels[n], levels[n + 1], i), pseudo, k)
    return X


def _strip(F):
    return tuple((m[0], m[1], None) for m in F)


def build_H(H: HereditarySpecies, k: int, N: int = 3, base: TruncatedSimplicialGroupoid | None = None
            ) -> TruncatedSimplicialGroupoid:
    """Decorated lists; level 0 is shared with ``S``.  Requires a simple species (for ``s_0`` on level 0)."""
    if not H.is_simple():
        raise ValueError(f"species {H.name} is not simple: the degeneracy on level 0 needs a unique point structure")
    base = base or build_S(k, N)
    if base.k != k or base.N != N:
        raise ValueError("base bounds do not match")
    levels = [base[0]] + [FamilyGroupoid(j, k, H) for j in range(1, N + 1)]
    X = TruncatedSimplicialGroupoid(
        f"H[{H.name}]", levels, lambda n, i: family_face(levels[n], levels[n - 1], i),
        lambda n, i: family_degeneracy(levels[n], levels[n + 1], i), base.pseudo, k)
    X.base = base
    X.projections = [GroupoidMap.identity(levels[0])] + [
        GroupoidMap(levels[n], base[n], _strip, lambda a: Arrow(_strip(a.src), _strip(a.tgt), a.data), name=f"U{n}")
        for n in range(1, N + 1)]
    X.species = H
    return X


def build_NSur(k: int, N: int = 3) -> TruncatedSimplicialGroupoid:
    levels = [ChainGroupoid(n, k) for n in range(N + 1)]
    return TruncatedSimplicialGroupoid(
        "NSur", levels, lambda n, i: chain_face(levels[n], levels[n - 1], i),
        lambda n, i: chain_degeneracy(levels[n], levels[n + 1], i), (), k)


def build_M(H: HereditarySpecies, k: int, N: int = 3, base: TruncatedSimplicialGroupoid | None = None
            ) -> TruncatedSimplicialGroupoid:
    base = base or build_NSur(k, N)
    levels = [ChainGroupoid(n, k, H) for n in range(N + 1)]
    X = TruncatedSimplicialGroupoid(
        f"M[{H.name}]", levels, lambda n, i: chain_face(levels[n], levels[n - 1], i),
        lambda n, i: chain_degeneracy(levels[n], levels[n + 1], i), (), k)
    X.base = base
    X.projections = [
        GroupoidMap(levels[n], base[n], lambda c: (c[0], c[1], None),
                    lambda a: Arrow((a.src[0], a.src[1], None), (a.tgt[0], a.tgt[1], None), a.data), name=f"U{n}")
        for n in range(N + 1)]
    X.species = H
    return X


# -- fibres and disjoint union ------------------------------------------------


def fibres_map(C: ChainGroupoid, F: FamilyGroupoid) -> GroupoidMap:
    """A chain ``V_0 -> ... -> V_n`` goes to the list of its fibre chains over ``V_n``."""
    H = C.H

    def obj(c):
        return _family_top((c,), H)

    def mor(a):
        return Arrow(obj(a.src), obj(a.tgt), _family_top_arrow((a.src,), (a.tgt,), ((0,), (a.data,)), H))

    return GroupoidMap(C, F, obj, mor, name=f"fib{C.level}")


def union_map(F: FamilyGroupoid, C: ChainGroupoid) -> GroupoidMap:
    """A list of chains goes to the chain of disjoint unions, ending in the set of members."""
    n = F.level

    def offsets(fam, i):
        out, acc = [], 0
        for m in fam:
            out.append(acc)
            acc += m[0][i]
        return out, acc

    def obj(fam):
        if n == 0:
            return ((len(fam),), (), None)
        sizes, maps = [], []
        for i in range(n):
            offs, total = offsets(fam, i)
            sizes.append(total)
            if i < n - 1:
                nxt, _ = offsets(fam, i + 1)
                maps.append(tuple(nxt[k] + v for k, m in enumerate(fam) for v in m[1][i]))
        maps.append(tuple(k for k, m in enumerate(fam) for _ in range(m[0][n - 1])))
        sizes.append(len(fam))
        return (tuple(sizes), tuple(maps), None)

    def mor(a):
        sigma, betas = a.data
        if n == 0:
            return Arrow(obj(a.src), obj(a.tgt), (sigma,))
        data = []
        for i in range(n):
            offs_s, _ = offsets(a.src, i)
            offs_t, _ = offsets(a.tgt, i)
            b = []
            for k, m in enumerate(a.src):
                b.extend(offs_t[sigma[k]] + betas[k][i][x] for x in range(m[0][i]))
            data.append(tuple(b))
        data.append(sigma)
        return Arrow(obj(a.src), obj(a.tgt), tuple(data))

    return GroupoidMap(F, C, obj, mor, name=f"union{n}")


def union_fibres_iso(c) -> Arrow:
    """The reordering isomorphism from ``union(fibres(c))`` to the chain ``c``."""
    fibres = member_fibres(c, None)
    n = len(c[0]) - 1
    data = []
    for i in range(n):
        data.append(tuple(W[i][p] for _fm, W in fibres for p in range(len(W[i]))))
    data.append(identity_map(c[0][-1]))
    fam = tuple(fm for fm, _ in fibres)
    return fam, tuple(data)


# ---------------------------------------------------------------------------
# checkers


def maps_agree(F: GroupoidMap, G: GroupoidMap):
    """First object or generating arrow where two parallel maps differ, else ``None``."""
    for x in F.source.objects:
        if F(x) != G(x):
            return {"object": x, "left": F(x), "right": G(x)}
    for a in F.source.generators():
        if F.mor(a) != G.mor(a):
            return {"arrow": a}
    return None


def check_simplicial_identities(X: TruncatedSimplicialGroupoid) -> Report:
    """All simplicial identities within the truncation; declared pseudo identities are skipped here."""
    rep = Report(f"simplicial identities {X.name}")
    N = X.N
    checks = []
    for n in range(2, N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                if (n, i, j) in X.pseudo:
                    continue
                checks.append((f"d{i}d{j}=d{j - 1}d{i} on X{n}",
                               X.face(n, j).then(X.face(n - 1, i)), X.face(n, i).then(X.face(n - 1, j - 1))))
    for n in range(0, N):
        for j in range(n + 1):
            ident = GroupoidMap.identity(X[n])
            checks.append((f"d{j}s{j}=id on X{n}", X.degeneracy(n, j).then(X.face(n + 1, j)), ident))
            checks.append((f"d{j + 1}s{j}=id on X{n}", X.degeneracy(n, j).then(X.face(n + 1, j + 1)), ident))
            if n >= 1:
                for i in range(n + 2):
                    if i < j:
                        checks.append((f"d{i}s{j}=s{j - 1}d{i} on X{n}", X.degeneracy(n, j).then(X.face(n + 1, i)),
                                       X.face(n, i).then(X.degeneracy(n - 1, j - 1))))
                    elif i > j + 1:
                        checks.append((f"d{i}s{j}=s{j}d{i - 1} on X{n}", X.degeneracy(n, j).then(X.face(n + 1, i)),
                                       X.face(n, i - 1).then(X.degeneracy(n - 1, j))))
            if n + 2 <= N:
                for i in range(j + 1):
                    checks.append((f"s{i}s{j}=s{j + 1}s{i} on X{n}", X.degeneracy(n, j).then(X.degeneracy(n + 1, i)),
                                   X.degeneracy(n, i).then(X.degeneracy(n + 1, j + 1))))
    names = []
    for label, F, G in checks:
        rep.checked += 1
        names.append(label)
        bad = maps_agree(F, G)
        if bad is not None:
            rep.fail({"identity": label, **bad})
    rep.details["identities"] = names
    rep.details["pseudo_skipped"] = sorted(X.pseudo)
    return rep


def decomposition_squares(X: TruncatedSimplicialGroupoid) -> list[SquareWithWitness]:
    """The four families of squares ``d_bot``/``s_{k+1}``, ``d_bot``/``d_{k+2}``, ``d_top``/``s_k``, ``d_top``/``d_{k+1}``."""
    N = X.N
    out = []
    for n in range(N + 1):
        for k in range(n + 1):
            if n + 2 <= N:
                out.append(SquareWithWitness(X.degeneracy(n + 1, k + 1), X.bottom(n + 1), X.bottom(n + 2),
                                             X.degeneracy(n, k), name=f"bot/s{k + 1} n={n}"))
                out.append(SquareWithWitness(X.degeneracy(n + 1, k), X.top(n + 1), X.top(n + 2),
                                             X.degeneracy(n, k), name=f"top/s{k} n={n}"))
            if n + 3 <= N:
                out.append(SquareWithWitness(X.face(n + 3, k + 2), X.bottom(n + 3), X.bottom(n + 2),
                                             X.face(n + 2, k + 1), name=f"bot/d{k + 2} n={n}"))
                out.append(SquareWithWitness(X.face(n + 3, k + 1), X.top(n + 3), X.top(n + 2),
                                             X.face(n + 2, k + 1), name=f"top/d{k + 1} n={n}"))
    return out


def _square_report(sq: SquareWithWitness, label: str) -> Report:
    r = Report(label)
    r.checked = len(sq.corner.objects)
    try:
        ok, cert = is_pullback_square(sq)
    except ValueError as exc:
        return r.fail({"square": sq.name, "reason": str(exc)})
    r.details["square"] = sq.name
    if not ok:
        r.fail({"square": sq.name, "certificate": cert})
    return r


def check_decomposition(X: TruncatedSimplicialGroupoid) -> Report:
    parts = [_square_report(sq, f"{X.name} {sq.name}") for sq in decomposition_squares(X)]
    out = combine(f"decomposition {X.name} (k={X.k}, N={X.N})", parts)
    out.details["squares"] = [p.details.get("square") for p in parts]
    return out


def segal_squares(X: TruncatedSimplicialGroupoid) -> list[SquareWithWitness]:
    """``X_{n+1} = X_n x_{X_{n-1}} X_n`` via ``d_{n+1}`` (top) and ``d_0`` (left), ``1 <= n < N``."""
    return [SquareWithWitness(X.face(n + 1, n + 1), X.face(n + 1, 0), X.face(n, 0), X.face(n, n), name=f"segal n={n}")
            for n in range(1, X.N)]


SEGAL_BASE = (((3, 2), ((0, 0, 1),), None),)


def segal_fibre_counts(X: TruncatedSimplicialGroupoid, s) -> dict:
    """Over a base 2-simplex ``s``: cardinality of decorated 2-simplices vs decorated pullback pairs."""
    if X.base is None:
        raise ValueError(f"{X.name} has no base to count over")
    B = X.base
    sq_X = segal_squares(X)[0]
    sq_B = segal_squares(B)[0]
    PX, _ = sq_X.comparison()
    PB, cB = sq_B.comparison()
    U = X.projections
    pull = GroupoidMap(PX, PB, lambda o: (U[1](o[0]), U[1](o[1]), o[2]),
                       lambda a: Arrow((U[1](a.src[0]), U[1](a.src[1]), a.src[2]),
                                       (U[1](a.tgt[0]), U[1](a.tgt[1]), a.tgt[2]),
                                       (U[1].mor(a.data[0]), U[1].mor(a.data[1]))), name="U")
    over = homotopy_cardinality(homotopy_fibre(U[2], s))
    pb = homotopy_cardinality(homotopy_fibre(pull, cB(s)))
    return {"base": s, "simplices_over_base": over, "pullback_over_base": pb}


def check_segal(X: TruncatedSimplicialGroupoid, expected: str = "pass") -> Report:
    parts = [_square_report(sq, f"{X.name} {sq.name}") for sq in segal_squares(X)]
    out = combine(f"segal {X.name} (k={X.k}, N={X.N})", parts, expected=expected)
    if not out.passed and X.base is not None and X.N >= 2:
        bases = [SEGAL_BASE] if X.base[2].has_object(SEGAL_BASE) else []
        bases += list(X.base[2].objects)
        for s in bases:
            counts = segal_fibre_counts(X, s)
            if counts["simplices_over_base"] != counts["pullback_over_base"]:
                out.details["fibre_counts"] = {key: str(v) if isinstance(v, Fraction) else v
                                               for key, v in counts.items()}
                out.witness = {"first_failure": out.witness, "fibre_counts": out.details["fibre_counts"]}
                break
    return out


def check_culf(f: Sequence[GroupoidMap], X: TruncatedSimplicialGroupoid, Y: TruncatedSimplicialGroupoid,
               name: str | None = None, expected: str = "pass") -> Report:
    """Naturality squares of ``f`` against inner faces and all degeneracies must be strict pullbacks."""
    name = name or f"culf {X.name} -> {Y.name}"
    N = min(X.N, Y.N)
    parts = []
    for n in range(N + 1):
        for i in range(1, n):
            sq = SquareWithWitness(f[n], X.face(n, i), Y.face(n, i), f[n - 1], name=f"d{i} on level {n}")
            parts.append(_square_report(sq, f"{name} {sq.name}"))
        if n < N:
            for i in range(n + 1):
                sq = SquareWithWitness(f[n], X.degeneracy(n, i), Y.degeneracy(n, i), f[n + 1],
                                       name=f"s{i} on level {n}")
                parts.append(_square_report(sq, f"{name} {sq.name}"))
    out = combine(name, parts, expected=expected)
    out.details["squares"] = [p.details.get("square") for p in parts]
    return out


def _discrete(G: FiniteGroupoid) -> bool:
    return all(len(G.automorphisms(r)) == 1 for r in G.reps())


def check_finiteness(X: TruncatedSimplicialGroupoid) -> Report:
    """Completeness, local finiteness/discreteness of ``s_0`` and ``d_1``, and the length bound."""
    s0 = X.degeneracy(0, 0)
    d1 = X.face(2, 1)

    complete = Report(f"{X.name} s0 fully faithful with empty or contractible fibres")
    ok, cert = is_fully_faithful(s0)
    if not ok:
        complete.fail(cert)
    for t in X[1].objects:
        complete.checked += 1
        fib = homotopy_fibre(s0, t)
        comps = fib.reps()
        if len(comps) > 1 or (comps and len(fib.automorphisms(comps[0])) != 1):
            complete.fail({"object": t, "components": len(comps)})

    discrete = Report(f"{X.name} fibres of s0 and d1 finite and discrete")
    sizes = {}
    for t in X[1].objects:
        for label, p in (("s0", s0), ("d1", d1)):
            discrete.checked += 1
            fib = homotopy_fibre(p, t)
            if not _discrete(fib):
                discrete.fail({"map": label, "object": t})
            if label == "d1":
                sizes[t] = len(fib.reps())
    discrete.details["d1_fibre_points"] = {repr(t): v for t, v in sizes.items()}

    length = Report(f"{X.name} locally finite length")
    for n in range(1, X.N + 1):
        degenerate = {X[n].rep(X.degeneracy(n - 1, i)(y)) for i in range(n) for y in X[n - 1].objects}
        long_edge = GroupoidMap.identity(X[n])
        for m in range(n, 1, -1):
            long_edge = long_edge.then(X.face(m, 1))
        for x in X[n].objects:
            length.checked += 1
            if x in degenerate:
                continue
            e = long_edge(x)
            t = _member_size(e) if isinstance(X[1], ChainGroupoid) else total_size(e)
            if n > t:
                length.fail({"simplex": x, "level": n, "long_edge_size": t})
    return combine(f"finiteness {X.name} (k={X.k}, N={X.N})", [complete, discrete, length])


def total_size(F) -> int:
    """Total source size of a list of chains."""
    return sum(_member_size(m) for m in F)


def check_equivalence_NSur_S(k: int, N: int = 2) -> Report:
    """Fibres and disjoint union are levelwise inverse equivalences between ``N Sur`` and ``S``."""
    C, S = build_NSur(k, N), build_S(k, N)
    parts = []
    for n in range(N + 1):
        phi, psi = fibres_map(C[n], S[n]), union_map(S[n], C[n])
        for label, F in (("fibres", phi), ("union", psi)):
            r = Report(f"{label} level {n} is an equivalence")
            r.checked = len(F.source.objects)
            ok, cert = is_equivalence(F)
            if not ok:
                r.fail(cert)
            parts.append(r)
        r = Report(f"fibres . union = id on level {n}")
        r.checked = len(S[n].objects)
        bad = maps_agree(psi.then(phi), GroupoidMap.identity(S[n]))
        if bad is not None:
            r.fail(bad)
        parts.append(r)
        r = Report(f"union . fibres = id up to natural iso on level {n}")
        r.checked = len(C[n].objects)

        def witness(c, phi=phi, psi=psi):
            fam, data = union_fibres_iso(c)
            assert fam == phi(c)
            return C[n].inverse(Arrow(psi(fam), c, data))

        ident = GroupoidMap.identity(C[n])
        sq = SquareWithWitness(phi.then(psi), ident, ident, ident, witness=witness, name=f"round trip {n}")
        problems = sq.check_witness()
        if problems:
            r.fail(problems[0])
        parts.append(r)
    empty = ((0,) * 2, ((),), None)
    r = Report("empty surjection goes to the empty list")
    r.checked = 1
    if N >= 1 and fibres_map(C[1], S[1])(empty) != ():
        r.fail({"image": fibres_map(C[1], S[1])(empty)})
    parts.append(r)
    return combine(f"N Sur ~ S (k={k}, N={N})", parts)


def pseudo_identity_witness(x, H=None):
    """For a list of chains of three sets: the permutation from ``d_2 d_3 x`` to ``d_2 d_2 x``.

    Member ``(a, e, l)`` of ``d_2 d_3 x`` (fibre over ``l`` of the fibre over ``e``)
    corresponds to member ``(a, W_1(e)[l])`` of ``d_2 d_2 x``.  Returns
    ``(perm, lhs, rhs, lhs_subsets, rhs_subsets)`` where the subsets record the
    source elements of each member inside ``V_0`` of member ``a``.
    """
    rhs, rhs_sub, rhs_index = [], [], {}
    for a, m in enumerate(x):
        for l, (fm, W) in enumerate(member_fibres(_remove_set(m, 2, H), H)):
            rhs_index[(a, l)] = len(rhs)
            rhs.append(fm)
            rhs_sub.append((a, W[0]))
    lhs, lhs_sub, perm = [], [], []
    for a, m in enumerate(x):
        for _e, (fm, W) in enumerate(member_fibres(m, H)):
            for l, (ffm, W2) in enumerate(member_fibres(fm, H)):
                lhs.append(ffm)
                lhs_sub.append((a, tuple(W[0][p] for p in W2[0])))
                perm.append(rhs_index[(a, W[1][l])])
    return tuple(perm), tuple(lhs), tuple(rhs), lhs_sub, rhs_sub


def check_pseudo_identity(k: int = 4, H: HereditarySpecies | None = None) -> Report:
    """``d_top d_top = d_top d_{top-1}`` up to the fibre-of-fibre reordering, on every list of length-2 chains."""
    X = build_S(k, 3) if H is None else build_H(H, k, 3)
    rep = Report(f"pseudo identity on {X.name} level 3 (k={k})")
    strict_equal = 0
    for x in X[3].objects:
        rep.checked += 1
        perm, lhs, rhs, lsub, rsub = pseudo_identity_witness(x, X[3].H)
        if lhs != X.top(2)(X.top(3)(x)) or rhs != X.top(2)(X.face(3, 2)(x)):
            rep.fail({"object": x, "reason": "sides differ from the face maps"})
            continue
        strict_equal += lhs == rhs
        if sorted(perm) != list(range(len(rhs))):
            rep.fail({"object": x, "reason": "not a bijection of members"})
            continue
        for p, q in enumerate(perm):
            if lhs[p] != rhs[q] or lsub[p] != rsub[q]:
                rep.fail({"object": x, "member": p, "reason": "members or their inclusions disagree"})
                break
    # naturality of the witness on generators of level 3
    L = X.face(3, 3).then(X.top(2))
    R = X.face(3, 2).then(X.top(2))

    def witness(x):
        perm, lhs, rhs, _, _ = pseudo_identity_witness(x, X[3].H)
        return Arrow(rhs, lhs, (invert_perm(perm), tuple(tuple(identity_map(s) for s in m[0]) for m in rhs)))

    sq = SquareWithWitness(L, GroupoidMap.identity(X[3]), GroupoidMap.identity(X[1]), R, witness=witness,
                           name="pseudo identity")
    problems = sq.check_witness()
    if problems:
        rep.fail({"naturality": problems[0]})
    rep.details["strictly_equal_objects"] = strict_equal
    return rep


# -- standard culf maps ---------------------------------------------------------


def forgetful_culf(H: HereditarySpecies, k: int, N: int = 3) -> Report:
    X = build_H(H, k, N)
    return check_culf(X.projections, X, X.base, name=f"culf H[{H.name}] -> S")


def fibres_culf(k: int, N: int = 3) -> Report:
    C, S = build_NSur(k, N), build_S(k, N)
    return check_culf([fibres_map(C[n], S[n]) for n in range(N + 1)], C, S, name="culf NSur -> S (fibres)")


def decorated_fibres_culf(H: HereditarySpecies, k: int, N: int = 3) -> Report:
    M, X = build_M(H, k, N), build_H(H, k, N)
    maps = [fibres_map(M[0], X[0])] + [fibres_map(M[n], X[n]) for n in range(1, N + 1)]
    return check_culf(maps, M, X, name=f"culf M[{H.name}] -> H[{H.name}] (fibres)")


def forgetful_M_culf(H: HereditarySpecies, k: int, N: int = 3) -> Report:
    M = build_M(H, k, N)
    return check_culf(M.projections, M, M.base, name=f"culf M[{H.name}] -> NSur (forget)")
