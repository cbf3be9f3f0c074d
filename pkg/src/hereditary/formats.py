"""JSON and text encodings of structures, families and linear combinations.

Vertex labels are 1-based on the outside.  A term of a combination is a tuple
of families (one per tensor factor); each factor carries a ``side`` tag, ``"B"``
for the incidence bialgebra and ``"A"`` for the restriction bialgebra.

Text form of a combination::

    1/1 B[1:; 1:] ⊗ B[2:1-2] + 1/1 B[2:1-2] ⊗ B[1:]

Members inside brackets are separated by ``"; "`` and written with the
species' own text encoding.  The zero combination is written ``0``.
"""

from __future__ import annotations

import json
import re
from typing import Any, Sequence

from .bialgebra import Family
from .canon import canon
from .linear import LinComb, format_fraction, parse_fraction
from .species import HereditarySpecies, HStructure

TENSOR = " ⊗ "


# -- structures ---------------------------------------------------------------


def structure_to_json(H: HereditarySpecies, x: HStructure) -> dict:
    return H.to_json(x)


def structure_from_json(H: HereditarySpecies, d: Any) -> HStructure:
    if not isinstance(d, dict) or "n" not in d:
        raise ValueError(f"a structure needs an object with key 'n', got {d!r}")
    if d.get("species", H.name) != H.name:
        raise ValueError(f"structure is for species {d['species']!r}, expected {H.name!r}")
    return H.from_json(d)


def family_from_json(H: HereditarySpecies, d: Any) -> list[HStructure]:
    """A single structure object or a list of them."""
    if isinstance(d, list):
        return [structure_from_json(H, e) for e in d]
    return [structure_from_json(H, d)]


# -- combinations ---------------------------------------------------------------


def lincomb_to_json(H: HereditarySpecies, lc: LinComb, sides: Sequence[str]) -> list[dict]:
    out = []
    for key, c in lc.items():
        if len(key) != len(sides):
            raise ValueError(f"term {key!r} has {len(key)} factors, expected {len(sides)}")
        out.append({"coefficient": format_fraction(c),
                    "factors": [{"side": s, "family": [H.to_json(m) for m in fam]}
                                for s, fam in zip(sides, key)]})
    return out


def lincomb_from_json(H: HereditarySpecies, data: list[dict]) -> tuple[LinComb, tuple[str, ...]]:
    out, sides = LinComb(), None
    for term in data:
        fs = term["factors"]
        these = tuple(f["side"] for f in fs)
        if sides is not None and these != sides:
            raise ValueError("terms disagree on their factor sides")
        sides = these
        key = tuple(tuple(sorted(canon(H, H.from_json(m)) for m in f["family"])) for f in fs)
        out = out + LinComb.basis(key, parse_fraction(term["coefficient"]))
    return out, sides or ()


def family_to_text(H: HereditarySpecies, fam: Family) -> str:
    return "[" + "; ".join(H.to_text(m) for m in fam) + "]"


def lincomb_to_text(H: HereditarySpecies, lc: LinComb, sides: Sequence[str]) -> str:
    if lc.is_zero():
        return "0"
    terms = []
    for key, c in lc.items():
        terms.append(format_fraction(c) + " " + TENSOR.join(s + family_to_text(H, fam) for s, fam in zip(sides, key)))
    return " + ".join(terms)


_FACTOR = re.compile(r"([AB])\[([^\]]*)\]")


def lincomb_from_text(H: HereditarySpecies, text: str) -> tuple[LinComb, tuple[str, ...]]:
    text = text.strip()
    out, sides = LinComb(), None
    if text == "0":
        return out, ()
    for term in re.split(r"\s\+\s", text):
        coeff, _, rest = term.strip().partition(" ")
        factors = _FACTOR.findall(rest)
        if not factors or TENSOR.join(f"{s}[{body}]" for s, body in factors) != rest.strip():
            raise ValueError(f"cannot parse term {term!r}")
        these = tuple(s for s, _ in factors)
        if sides is not None and these != sides:
            raise ValueError("terms disagree on their factor sides")
        sides = these
        key = tuple(tuple(sorted(canon(H, H.from_text(m)) for m in body.split("; "))) if body.strip() else ()
                    for _, body in factors)
        out = out + LinComb.basis(key, parse_fraction(coeff))
    return out, sides or ()


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, default=str, ensure_ascii=False)
