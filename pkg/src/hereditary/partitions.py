"""Finite ordinals, injections, surjections and set partitions.

Everything is 0-based internally: the ordinal ``n`` is ``range(n)``.  A map
between ordinals is a tuple of values; ``values[a]`` is the image of ``a``.
Blocks of a partition are ordered by their least element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence


def compose_maps(g: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """``g . f`` as a tuple (apply ``f`` first)."""
    return tuple(g[x] for x in f)


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for a, b in enumerate(p):
        inv[b] = a
    return tuple(inv)


def identity_map(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def all_perms(n: int) -> Iterator[tuple[int, ...]]:
    return permutations(range(n))


def first_occurrence_relabel(values: Sequence[int], n: int) -> tuple[int, ...]:
    """The bijection ``b`` of ``range(n)`` numbering targets by first occurrence in ``values``.

    Requires ``values`` to hit every element of ``range(n)``.
    """
    b = [-1] * n
    nxt = 0
    for v in values:
        if b[v] < 0:
            b[v] = nxt
            nxt += 1
    if nxt != n:
        raise ValueError("values are not surjective onto the target")
    return tuple(b)


@dataclass(frozen=True, order=True)
class Injection:
    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(set(vals)) != len(vals) or any(not 0 <= v < self.target for v in vals):
            raise ValueError(f"not an injection into {self.target}: {vals}")

    @property
    def source(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> Injection:
        return cls(identity_map(n), n)

    @classmethod
    def of_subset(cls, subset: Sequence[int], n: int) -> Injection:
        """The monotone injection with image ``subset``."""
        return cls(tuple(sorted(subset)), n)

    def is_monotone(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def after(self, other: Injection) -> Injection:
        """``self . other``."""
        if other.target != self.source:
            raise ValueError("injections are not composable")
        return Injection(compose_maps(self.values, other.values), self.target)

    def image(self) -> frozenset[int]:
        return frozenset(self.values)


@dataclass(frozen=True, order=True)
class Surjection:
    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if any(not 0 <= v < self.target for v in vals) or len(set(vals)) != self.target:
            raise ValueError(f"not a surjection onto {self.target}: {vals}")

    @property
    def source(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> Surjection:
        return cls(identity_map(n), n)

    @classmethod
    def terminal(cls, n: int) -> Surjection:
        """The map ``n -> 1`` (requires ``n >= 1``)."""
        return cls((0,) * n, 1)

    def is_bijective(self) -> bool:
        return self.source == self.target

    def after(self, other: Surjection) -> Surjection:
        """``self . other``."""
        if other.target != self.source:
            raise ValueError("surjections are not composable")
        return Surjection(compose_maps(self.values, other.values), self.target)

    def preimage(self, i: int) -> tuple[int, ...]:
        return tuple(a for a, v in enumerate(self.values) if v == i)


def enumerate_surjections(m: int, n: int) -> Iterator[Surjection]:
    """All surjections ``m -> n``, in lexicographic order of their value tuples."""
    if n > m or (n == 0 and m > 0):
        return

    def rec(prefix: list[int], seen: set[int]):
        pos = len(prefix)
        if pos == m:
            if len(seen) == n:
                yield Surjection(tuple(prefix), n)
            return
        for v in range(n):
            new_seen = seen | {v}
            # the remaining positions must still cover the unseen targets
            if n - len(new_seen) > m - pos - 1:
                continue
            prefix.append(v)
            yield from rec(prefix, new_seen)
            prefix.pop()

    yield from rec([], set())


def enumerate_injections(m: int, n: int) -> Iterator[Injection]:
    for vals in permutations(range(n), m):
        yield Injection(vals, n)


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of ``range(n)``; blocks are sorted tuples ordered by least element."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        object.__setattr__(self, "blocks", blocks)
        seen: list[int] = [x for b in blocks for x in b]
        if any(len(b) == 0 for b in blocks):
            raise ValueError("partition blocks must be non-empty")
        if sorted(seen) != list(range(self.n)):
            raise ValueError(f"blocks {blocks} do not partition {self.n}")

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(n, tuple((a,) for a in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> Partition:
        return cls(n, (tuple(range(n)),) if n else ())

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> Partition:
        k = max(rgs) + 1 if rgs else 0
        blocks: list[list[int]] = [[] for _ in range(k)]
        for a, b in enumerate(rgs):
            blocks[b].append(a)
        return cls(len(rgs), tuple(tuple(b) for b in blocks))

    @classmethod
    def from_surjection(cls, s: Surjection) -> Partition:
        """The partition into preimages of ``s``."""
        return cls(s.source, tuple(s.preimage(i) for i in range(s.target)))

    def block_of(self) -> tuple[int, ...]:
        """``block_of()[a]`` is the index of the block containing ``a``."""
        out = [0] * self.n
        for idx, b in enumerate(self.blocks):
            for a in b:
                out[a] = idx
        return tuple(out)

    def rgs(self) -> tuple[int, ...]:
        return self.block_of()


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``range(n)`` via restricted-growth strings, in RGS lexicographic order."""
    out: list[Partition] = []

    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            out.append(Partition.from_rgs(prefix))
            return
        for v in range(top + 2):
            prefix.append(v)
            rec(prefix, max(top, v))
            prefix.pop()

    rec([], -1)
    return out


def canonical_surjection(pi: Partition) -> Surjection:
    """Element to the index of its block."""
    return Surjection(pi.block_of(), len(pi.blocks))


def refines(tau: Partition, sigma: Partition) -> bool:
    """True iff every block of ``tau`` lies inside a block of ``sigma``."""
    if tau.n != sigma.n:
        raise ValueError("partitions of different carriers")
    where = sigma.block_of()
    return all(len({where[a] for a in b}) == 1 for b in tau.blocks)


def induced_partition(sigma: Partition, tau: Partition) -> Partition:
    """``sigma/tau``: the partition of the block indices of ``tau`` induced by ``sigma``."""
    if not refines(tau, sigma):
        raise ValueError("tau does not refine sigma")
    where = sigma.block_of()
    groups: dict[int, list[int]] = {}
    for idx, b in enumerate(tau.blocks):
        groups.setdefault(where[b[0]], []).append(idx)
    return Partition(len(tau.blocks), tuple(tuple(g) for g in groups.values()))


def restrict_partition(pi: Partition, subset: Sequence[int]) -> Partition:
    """The partition ``pi`` induces on ``subset``, relabelled monotonically."""
    subset = sorted(subset)
    pos = {a: k for k, a in enumerate(subset)}
    blocks = [tuple(pos[a] for a in b if a in pos) for b in pi.blocks]
    return Partition(len(subset), tuple(b for b in blocks if b))


def fibres(s: Surjection) -> list[tuple[int, Injection]]:
    """For each target element, the fibre ordinal and its monotone injection into the source."""
    out = []
    for i in range(s.target):
        pre = s.preimage(i)
        out.append((len(pre), Injection(pre, s.source)))
    return out


def fibre_inclusion(s: Surjection, i: int) -> Injection:
    if not 0 <= i < s.target:
        raise ValueError(f"{i} is not in the target {s.target}")
    return Injection(s.preimage(i), s.source)


def fibre_map(psi: Surjection, phi: Surjection, i: int) -> Surjection:
    """The surjection between the fibres of ``phi . psi`` and ``phi`` over ``i``."""
    if psi.target != phi.source:
        raise ValueError("maps are not composable")
    if not 0 <= i < phi.target:
        raise ValueError(f"{i} is not in the target {phi.target}")
    outer = phi.after(psi).preimage(i)
    inner = phi.preimage(i)
    pos = {b: k for k, b in enumerate(inner)}
    return Surjection(tuple(pos[psi.values[a]] for a in outer), len(inner))
