"""Embedded input documents for the CLI (`--input fixture:NAME`).

These cover each subcommand without any file I/O: two broken-fibration
descriptors with known formal dimensions, a product descriptor
parametrized through the Taubes map, three small Morse cycles, and a
sampled rotation path for the Conley-Zehnder command.
"""

from __future__ import annotations

import math
from typing import Any

from .schema import SCHEMA_VERSION


def _rotation_samples(theta: float, count: int) -> list[list[list[float]]]:
    out = []
    for i in range(count):
        t = theta * i / (count - 1)
        out.append([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    return out


FIXTURES: dict[str, dict[str, Any]] = {
    # A once-broken fibration glued from a torus-fiber disc, a torus-fiber
    # annulus, one round handle, and a sphere-fiber disc: chi = 2, sigma = 0,
    # c_1 = (2, 2) gives formal dimension 1.
    "torus-section-sum": {
        "schema": SCHEMA_VERSION,
        "fibration": {
            "regions": [
                {"chi_base": 1, "fibers": [{"genus": 1, "class": [1, 0]}]},
                {"chi_base": 0, "fibers": [{"genus": 1, "class": [1, 0]}]},
                {"chi_base": 1, "fibers": [{"genus": 0, "class": [0, 1]}]},
            ],
            "round_circles": [{"orientable": True}],
            "lefschetz_points": 0,
            "signature": 0,
            "h2": {"form": [[0, 1], [1, 0]], "canonical": [0, 2]},
        },
        "spinc": [{"c1": [2, 2]}],
    },
    # Two sphere-fiber caps and a two-component equatorial annulus joined
    # along two non-orientable round handles: chi = 4, sigma = 0,
    # c_1 = (10, 2) has square 24 and formal dimension 4.
    "sphere-double-section": {
        "schema": SCHEMA_VERSION,
        "fibration": {
            "regions": [
                {"chi_base": 1, "fibers": [{"genus": 0, "class": [0, 2]}]},
                {"chi_base": 1, "fibers": [{"genus": 0, "class": [0, 2]}]},
                {
                    "chi_base": 0,
                    "fibers": [
                        {"genus": 0, "class": [0, 1]},
                        {"genus": 0, "class": [0, 1]},
                    ],
                },
            ],
            "round_circles": [{"orientable": False}, {"orientable": False}],
            "lefschetz_points": 0,
            "signature": 0,
            "h2": {"form": [[4, 1], [1, 0]], "canonical": [4, 2]},
        },
        "spinc": [{"c1": [10, 2]}],
    },
    # The product sphere bundle; the spin-c structure is given through the
    # Taubes map at beta = (1, 1), so c_1 = (4, 4) and the dimension is 6.
    "s2xs2-product": {
        "schema": SCHEMA_VERSION,
        "fibration": {
            "regions": [{"chi_base": 2, "fibers": [{"genus": 0, "class": [0, 1]}]}],
            "round_circles": [],
            "lefschetz_points": 0,
            "signature": 0,
            "h2": {"form": [[0, 1], [1, 0]], "canonical": [2, 2]},
        },
        "spinc": [{"beta": [1, 1]}],
    },
    # Torus bundle with Anosov monodromy, evaluated at n = 1.
    "anosov-cycle": {
        "schema": SCHEMA_VERSION,
        "morse_cycle": {
            "n0": 1,
            "fibers": [1],
            "moves": [{"kind": "twist", "matrix": [[2, 1], [1, 1]]}],
        },
    },
    # Trivial sphere bundle at n = 2 (the 0x0 twist matrix is the identity
    # of the empty lattice); the supertrace is 3.
    "sphere-cycle": {
        "schema": SCHEMA_VERSION,
        "morse_cycle": {
            "n0": 2,
            "fibers": [0],
            "moves": [{"kind": "twist", "matrix": []}],
        },
    },
    # A down/up pair along a nullhomologous circle: the evaluation vanishes
    # because the separating surgery induces the zero map.
    "separating-surgery": {
        "schema": SCHEMA_VERSION,
        "morse_cycle": {
            "n0": 1,
            "fibers": [1, 0],
            "moves": [
                {"kind": "down", "circle": [0, 0]},
                {"kind": "up", "circle": [0, 0]},
            ],
        },
    },
    # Half rotation of the plane, sampled: index 1, parity 0.
    "rotation-path": {
        "schema": SCHEMA_VERSION,
        "cz": {"paths": [_rotation_samples(math.pi, 41)]},
    },
}
