"""Conformal charts and Dirichlet Green's functions."""

import cmath
import math
import random

import numpy as np
import pytest

from symfermion.geometry import (
    boundary_clearance,
    conformal_radius,
    contains,
    green,
    green_dz,
    green_dz_dw,
    green_dz_dwbar,
    green_dzbar,
    green_regular_diagonal,
    green_total,
    make_domain,
    mobius_of,
)

DISK = make_domain("disk")
HP = make_domain("half_plane")
QUAD = make_domain("power2_quadrant")


def _fd_derivative(f, z, h=1e-5):
    """Central-difference Wirtinger derivative (d/dx - i d/dy)/2."""
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return 0.5 * (fx - 1j * fy)


# ---------------------------------------------------------------------------
# charts


def test_disk_chart_is_identity():
    assert DISK.chart(0.0) == 0.0
    assert DISK.chart_derivative(0.3 + 0.1j) == 1.0


def test_half_plane_chart_values():
    assert abs(HP.chart(1j)) < 1e-15
    assert abs(HP.chart_derivative(1j) - (-0.5j)) < 1e-15


@pytest.mark.parametrize(
    "dom,pts",
    [
        (DISK, [0.1 + 0.2j, -0.4 + 0.3j]),
        (HP, [1j, 0.5 + 2j, -1 + 0.7j]),
        (QUAD, [1 + 1j, 0.5 + 0.25j, 2 + 0.5j]),
    ],
)
def test_chart_derivative_matches_finite_differences(dom, pts):
    for z in pts:
        fd = _fd_derivative(dom.chart, z)
        assert abs(fd - dom.chart_derivative(z)) / abs(fd) < 1e-8


def test_mobius_degenerate_rejected():
    with pytest.raises(ValueError):
        mobius_of(DISK, 1, 2, 2, 4)


def test_make_domain_specs():
    d = make_domain("mobius:disk:1,0,0,2")  # z -> z/2 precomposition
    assert abs(d.chart(1.0) - 0.5) < 1e-15
    with pytest.raises(ValueError):
        make_domain("pacman")


# ---------------------------------------------------------------------------
# Green's function values


def test_disk_green_closed_form():
    gv = green(DISK, 0.0, 0.5)
    assert abs(gv.total - math.log(2) / (2 * math.pi)) < 1e-15
    assert abs(gv.total - gv.regular - gv.singular) < 1e-15


def test_half_plane_reflection_value():
    gv = green(HP, 1j, 2j)
    assert abs(gv.total - math.log(3) / (2 * math.pi)) < 1e-12


def test_symmetry_positivity_and_coincident_error():
    rng = random.Random(5)
    for _ in range(20):
        z = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        w = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        if z == w:
            continue
        a, b = green(DISK, z, w).total, green(DISK, w, z).total
        assert abs(a - b) < 1e-14
        assert a > 0
    with pytest.raises(ValueError):
        green(DISK, 0.2, 0.2)


def test_boundary_vanishing():
    for theta in np.linspace(0, 2 * np.pi, 17):
        assert green(DISK, 0.999 * cmath.exp(1j * theta), 0.3).total < 1e-2


def test_harmonicity_five_point_laplacian():
    h = 1e-3
    w = 0.4 + 0.1j
    for z in (0.1 + 0.2j, -0.3 - 0.3j, 0.0 + 0.55j):
        lap = (
            green_total(DISK, z + h, w)
            + green_total(DISK, z - h, w)
            + green_total(DISK, z + 1j * h, w)
            + green_total(DISK, z - 1j * h, w)
            - 4 * green_total(DISK, z, w)
        ) / h**2
        assert abs(lap) < 1e-5


def test_conformal_invariance_under_disk_automorphisms():
    rng = random.Random(11)
    for _ in range(10):
        a = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        phase = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        # phi(z) = phase * (z - a) / (1 - conj(a) z): disk automorphism
        dom = mobius_of(DISK, phase, -phase * a, -a.conjugate(), 1.0)
        z, w = 0.3 + 0.2j, -0.1 - 0.4j
        assert abs(green(dom, z, w).total - green(DISK, dom.chart(z), dom.chart(w)).total) < 1e-12


# ---------------------------------------------------------------------------
# derivatives


def test_green_dz_closed_form_value():
    got = green_dz(DISK, 0.0, 0.5)
    assert abs(got - 1.5 / (4 * math.pi)) < 1e-15


@pytest.mark.parametrize("dom", [DISK, HP])
def test_green_dz_matches_finite_differences(dom):
    z = (0.1 + 0.2j) if dom is DISK else (0.2 + 1.1j)
    w = (-0.3 + 0.1j) if dom is DISK else (-0.4 + 0.8j)
    fd = _fd_derivative(lambda p: green_total(dom, p, w), z)
    got = green_dz(dom, z, w)
    assert abs(fd - got) / abs(fd) < 1e-8
    assert green_dzbar(dom, z, w) == np.conj(got)


def test_second_derivatives_match_finite_differences():
    z, w = 0.1 + 0.2j, -0.3 + 0.15j
    fd = _fd_derivative(lambda q: green_dz(DISK, z, q), w)
    assert abs(fd - green_dz_dw(DISK, z, w)) / abs(fd) < 1e-7
    fdbar = np.conj(_fd_derivative(lambda q: np.conj(green_dz(DISK, z, q)), w))
    assert abs(fdbar - green_dz_dwbar(DISK, z, w)) / abs(fdbar) < 1e-7


# ---------------------------------------------------------------------------
# regular part, conformal radius, clearance


def test_regular_diagonal_disk_center():
    assert green_regular_diagonal(DISK, 0.0) == 0.0
    assert conformal_radius(DISK, 0.0) == 1.0


def test_half_plane_conformal_radius():
    assert abs(conformal_radius(HP, 1j) - 2.0) < 1e-12


def test_regular_part_diagonal_limit():
    for dom, z in ((DISK, 0.2 + 0.3j), (HP, 0.4 + 1.2j)):
        gv = green(dom, z, z + 1e-4)
        assert abs(gv.regular - green_regular_diagonal(dom, z)) < 1e-3


def test_koebe_clearance_is_a_lower_bound_on_disk():
    for z in (0.0, 0.5, 0.3 + 0.4j, -0.8j):
        true_dist = 1.0 - abs(z)
        assert 0 < boundary_clearance(DISK, z) <= true_dist + 1e-15


def test_contains():
    assert contains(DISK, 0.5j) and not contains(DISK, 1.5)
    assert contains(HP, 1j) and not contains(HP, -1j)
