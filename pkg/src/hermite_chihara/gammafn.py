"""Lanczos approximation of the Gamma function (g = 7, 9 coefficients).

Accurate to ~1e-14 relative for real arguments in (0, 60), which covers every
normalization and moment this package computes.  No half-integer special
casing; arguments below 1/2 go through the reflection formula.
"""

from __future__ import annotations

import math

__all__ = ["gamma"]

_G = 7.0
_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z: float) -> float:
    z = float(z)
    if z <= 0.0 and z == math.floor(z):
        raise ValueError(f"gamma undefined at non-positive integer {z}")
    if z < 0.5:
        return math.pi / (math.sin(math.pi * z) * gamma(1.0 - z))
    z -= 1.0
    acc = _COEFFS[0]
    for i, c in enumerate(_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc
