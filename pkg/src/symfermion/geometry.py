"""Simply connected domains via conformal charts and Dirichlet Green's functions.

A domain is represented by a closed-form conformal map phi onto the unit
disk together with its derivative.  The Dirichlet Green's function is then
the disk kernel transported through the chart,

    G(z, w) = (1/2pi) log |1 - phi(z) conj(phi(w))| / |phi(z) - phi(w)|,

which splits as (1/2pi) log 1/|z-w| plus a part g(z, w) that stays regular
on the diagonal.  All evaluators accept numpy arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

TWO_PI = 2.0 * np.pi
FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class Domain:
    """A conformal chart phi: Omega -> unit disk with its derivative."""

    chart: Callable
    chart_derivative: Callable
    descriptor: str

    def __str__(self) -> str:
        return self.descriptor


@dataclass(frozen=True)
class GreenValue:
    total: float
    regular: float
    singular: float


def _disk() -> Domain:
    return Domain(lambda z: z, lambda z: np.ones_like(np.asarray(z)), "disk")


def _half_plane() -> Domain:
    # Cayley map of the upper half-plane
    return Domain(
        lambda z: (z - 1j) / (z + 1j),
        lambda z: 2j / (z + 1j) ** 2,
        "halfplane",
    )


def _power2_quadrant() -> Domain:
    # first quadrant, z -> z^2 onto the upper half-plane, then Cayley
    return Domain(
        lambda z: (z * z - 1j) / (z * z + 1j),
        lambda z: 4j * z / (z * z + 1j) ** 2,
        "power2_quadrant",
    )


_BUILTINS = {
    "disk": _disk,
    "half_plane": _half_plane,
    "halfplane": _half_plane,
    "power2_quadrant": _power2_quadrant,
}


def mobius_of(base: Domain, a: complex, b: complex, c: complex, d: complex) -> Domain:
    """Precompose the chart with the Möbius map z -> (az+b)/(cz+d)."""
    if a * d - b * c == 0:
        raise ValueError("degenerate Möbius map: ad - bc = 0")
    det = a * d - b * c

    def chart(z):
        return base.chart((a * z + b) / (c * z + d))

    def chart_derivative(z):
        m = (a * z + b) / (c * z + d)
        return base.chart_derivative(m) * det / (c * z + d) ** 2

    desc = f"mobius:{base.descriptor}:{a},{b},{c},{d}"
    return Domain(chart, chart_derivative, desc)


def make_domain(spec: str) -> Domain:
    """Build a domain from a spec string.

    Accepts the built-in names and ``mobius:<base>:a,b,c,d`` with complex
    coefficients in Python literal syntax (e.g. ``mobius:disk:1,0.5,0.5,1``).
    """
    if spec in _BUILTINS:
        return _BUILTINS[spec]()
    if spec.startswith("mobius:"):
        parts = spec.split(":", 2)
        if len(parts) != 3:
            raise ValueError(f"malformed domain spec {spec!r}")
        base = make_domain(parts[1])
        coeffs = [complex(t.strip().replace("i", "j")) for t in parts[2].split(",")]
        if len(coeffs) != 4:
            raise ValueError("mobius spec needs exactly four coefficients a,b,c,d")
        return mobius_of(base, *coeffs)
    raise ValueError(f"unknown domain spec {spec!r}")


def green(d: Domain, z, w) -> GreenValue:
    """Green's function value split into total / regular / singular parts."""
    u = d.chart(z)
    v = d.chart(w)
    dist = np.abs(np.asarray(z) - np.asarray(w))
    if np.any(dist == 0):
        raise ValueError("Green's function evaluated at coincident points")
    total = np.log(np.abs(1.0 - u * np.conj(v)) / np.abs(u - v)) / TWO_PI
    singular = np.log(1.0 / dist) / TWO_PI
    return GreenValue(total, total - singular, singular)


def green_total(d: Domain, z, w):
    """Array-friendly shorthand for green(...).total."""
    u = d.chart(z)
    v = d.chart(w)
    return np.log(np.abs(1.0 - u * np.conj(v)) / np.abs(u - v)) / TWO_PI


def green_dz(d: Domain, z, w):
    """Holomorphic Wirtinger derivative of G in the first argument."""
    u = d.chart(z)
    v = d.chart(w)
    disk_du = (-np.conj(v) / (1.0 - u * np.conj(v)) - 1.0 / (u - v)) / FOUR_PI
    return d.chart_derivative(z) * disk_du


def green_dzbar(d: Domain, z, w):
    """Antiholomorphic derivative in the first argument (G is real)."""
    return np.conj(green_dz(d, z, w))


def green_dz_dw(d: Domain, z, w):
    """Second mixed derivative d_z d_w G (holomorphic in both slots)."""
    u = d.chart(z)
    v = d.chart(w)
    return d.chart_derivative(z) * d.chart_derivative(w) * (-1.0 / (u - v) ** 2) / FOUR_PI


def green_dz_dwbar(d: Domain, z, w):
    """Second mixed derivative d_z dbar_w G."""
    u = d.chart(z)
    v = d.chart(w)
    kern = -1.0 / (1.0 - u * np.conj(v)) ** 2
    return d.chart_derivative(z) * np.conj(d.chart_derivative(w)) * kern / FOUR_PI


def green_regular_diagonal(d: Domain, z):
    """g(z, z) = (1/2pi) log[(1 - |phi|^2) / |phi'|]."""
    u = d.chart(z)
    du = d.chart_derivative(z)
    if np.any(np.abs(du) == 0):
        raise ValueError("chart derivative vanishes: degenerate chart point")
    return np.log((1.0 - np.abs(u) ** 2) / np.abs(du)) / TWO_PI


def conformal_radius(d: Domain, z):
    return np.exp(TWO_PI * green_regular_diagonal(d, z))


def boundary_clearance(d: Domain, z):
    """Koebe-quarter lower bound on the distance from z to the boundary."""
    u = d.chart(z)
    du = d.chart_derivative(z)
    return 0.25 * (1.0 - np.abs(u) ** 2) / np.abs(du)


def contains(d: Domain, z) -> bool:
    """Interior test through the chart."""
    try:
        u = d.chart(z)
    except ZeroDivisionError:  # chart pole, e.g. the Cayley map at -i
        return False
    return bool(np.all(np.isfinite(u)) and np.all(np.abs(u) < 1.0))
