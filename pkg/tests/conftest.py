from __future__ import annotations

import pytest

from hereditary.groupoid import Arrow, ExplicitGroupoid, GroupoidMap


def cyclic(m: int, name: str | None = None) -> ExplicitGroupoid:
    """B(Z/m)."""
    return ExplicitGroupoid.from_group(list(range(m)), lambda a, b: (a + b) % m, name=name or f"BZ{m}")


def cyclic_hom(X: ExplicitGroupoid, Y: ExplicitGroupoid, a: int) -> GroupoidMap:
    """``k -> a k`` from B(Z/m) to B(Z/n); needs ``n | a m``."""
    m, n = X.aut_order("*"), Y.aut_order("*")
    assert (a * m) % n == 0
    return GroupoidMap(X, Y, lambda o: "*", lambda u: Arrow("*", "*", (a * u.data) % n), name=f"x{a}")


@pytest.fixture
def bz2():
    return cyclic(2)
