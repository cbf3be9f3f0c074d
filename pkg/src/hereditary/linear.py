"""Finitely supported linear combinations with exact rational coefficients.

Keys are hashable basis labels.  Tensors are represented by tuple keys, one
entry per tensor factor, so ``a ⊗ b`` has key ``(a, b)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterator


class LinComb:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms: dict[Hashable, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                self._add(k, Fraction(c))

    def _add(self, key, c: Fraction):
        if c == 0:
            return
        v = self._terms.get(key, Fraction(0)) + c
        if v == 0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = v

    @classmethod
    def basis(cls, key, coeff=1) -> LinComb:
        return cls({key: coeff})

    @classmethod
    def zero(cls) -> LinComb:
        return cls()

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def items(self) -> Iterator[tuple[Hashable, Fraction]]:
        """Terms in a deterministic order."""
        return iter(sorted(self._terms.items(), key=lambda kv: repr(kv[0])))

    def keys(self):
        return self._terms.keys()

    def support(self) -> set:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: LinComb) -> LinComb:
        out = LinComb(self._terms)
        for k, c in other._terms.items():
            out._add(k, c)
        return out

    def __neg__(self) -> LinComb:
        return LinComb({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        return self + (-other)

    def __rmul__(self, scalar) -> LinComb:
        s = Fraction(scalar)
        return LinComb({k: s * c for k, c in self._terms.items()})

    def map_linear(self, f: Callable[[Hashable], LinComb]) -> LinComb:
        """Extend ``f`` from basis keys to the whole combination."""
        out = LinComb()
        for k, c in self._terms.items():
            for k2, c2 in f(k)._terms.items():
                out._add(k2, c * c2)
        return out

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> LinComb:
        out = LinComb()
        for k, c in self._terms.items():
            out._add(f(k), c)
        return out

    def tensor(self, other: LinComb) -> LinComb:
        """Tuple keys are concatenated."""
        out = LinComb()
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out._add(tuple(k1) + tuple(k2), c1 * c2)
        return out

    def bilinear(self, other: LinComb, f: Callable[[Hashable, Hashable], Hashable]) -> LinComb:
        """``Σ c1 c2 [f(k1, k2)]`` (e.g. a product of basis elements)."""
        out = LinComb()
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out._add(f(k1, k2), c1 * c2)
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{k!r}" for k, c in self.items())


def on_factor(lc: LinComb, i: int, f: Callable[[Hashable], LinComb]) -> LinComb:
    """Apply a linear map to tensor factor ``i``.

    ``f`` sends one factor to a combination of tuples, which are spliced in
    place of that factor (a tuple of length 0 contracts the factor away).
    """
    def g(key):
        pre, mid, post = key[:i], key[i], key[i + 1:]
        return f(mid).map_keys(lambda t: pre + tuple(t) + post)
    return lc.map_linear(g)


def format_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
