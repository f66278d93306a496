"""Built-in demonstration maps.

Three stock maps exercise most of the toolkit:

* ``w-flat``: a quadratic map from the signature-2 quadric in C^5 to
  the signature-3 quadric in C^7 whose last component is identically
  zero, so the whole image lies in the hyperplane w = 0.  Its
  multiplier is 16 |z2|^2, which vanishes on z2 = 0; the map is
  non-transversal at the origin.
* ``real-part``: a quadratic map from the signature-1 quadric in C^3 to
  the signature-2 quadric in C^5 with multiplier z1 + conj(z1); it is
  transversal exactly off the trace of Re z1 = 0 and its image spans
  all five components.
* ``linear``: the linear embedding of the signature-1 quadric in C^3
  into the signature-2 quadric in C^5, with multiplier 1.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .expressions import parse_expression
from .maps import QuadricMap
from .quadrics import Hyperquadric

_GALLERY: Dict[str, dict] = {
    "w-flat": {
        "source": {"n": 5, "ell": 2},
        "target": {"n": 7, "ell": 3},
        "f": [
            "4*z1*z2",
            "4*z2^2",
            "2*z2*(i+w)",
            "2*z2*(i-w)",
            "4*z2*z3",
            "4*z2*z4",
        ],
        "g": "0",
        "metadata": {
            "name": "w-flat",
            "notes": "last component identically zero; multiplier 16*z2*conj(z2); "
            "non-transversal at the origin",
        },
    },
    "real-part": {
        "source": {"n": 3, "ell": 1},
        "target": {"n": 5, "ell": 2},
        "f": [
            "z1 + 1/2*z1^2 - 1/4*i*w",
            "z2 - 1/2*z1*z2",
            "z1 - 1/2*z1^2 + 1/4*i*w",
            "z2 + 1/2*z1*z2",
        ],
        "g": "z1*w",
        "metadata": {
            "name": "real-part",
            "notes": "multiplier z1 + conj(z1); transversality fails exactly on "
            "Re z1 = 0; image spans every component",
        },
    },
    "linear": {
        "source": {"n": 3, "ell": 1},
        "target": {"n": 5, "ell": 2},
        "f": ["z1", "0", "z2", "0"],
        "g": "w",
        "metadata": {"name": "linear", "notes": "linear embedding; multiplier 1"},
    },
}


def gallery_ids() -> Tuple[str, ...]:
    return tuple(_GALLERY)


def gallery_entry(name: str) -> dict:
    """The raw map-file dictionary of a gallery entry."""
    if name not in _GALLERY:
        raise KeyError(f"unknown gallery map {name!r}; known: {', '.join(_GALLERY)}")
    entry = _GALLERY[name]
    return {
        "source": dict(entry["source"]),
        "target": dict(entry["target"]),
        "f": list(entry["f"]),
        "g": entry["g"],
        "metadata": dict(entry["metadata"]),
    }


def gallery_map(name: str) -> QuadricMap:
    entry = gallery_entry(name)
    source = Hyperquadric.standard(entry["source"]["n"], entry["source"]["ell"])
    target = Hyperquadric.standard(entry["target"]["n"], entry["target"]["ell"])
    sp = source.space
    comps = tuple(
        parse_expression(text, sp) for text in entry["f"] + [entry["g"]]
    )
    return QuadricMap(source, target, comps)
