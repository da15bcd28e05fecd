"""Numeric correlation functions of symplectic fermions on charted domains.

Ground-sector correlators of the fields xi, theta, omega and the identity
are evaluated from the Dirichlet Green's function by a signed sum over
bijections (a determinant when no omega insertions are present).  General
basis-field insertions are reduced to the ground sector by repeated contour
extraction of current modes,

    [chi_k phi](z) = (1/2pi i) oint (zeta - z)^k <chi(zeta) phi(z) ...> dzeta,

with the current correlator obtained as a Wirtinger derivative of a fermion
insertion (chi = d xi, eta = d theta, barred versions with dbar and a
conjugated contour measure carrying an extra minus sign).

The reduction is purely symbolic: each extraction contributes a fresh
fermion insertion living on a discrete contour (node and weight vectors),
and only the final bijection sum touches numbers.  Every contour insertion
appears in exactly one pair factor of any bijection, so each factor is
contracted independently against its weights and no tensor grids arise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

import numpy as np

from .fockspace import BasisWord, Generator, Species, State
from .geometry import (
    FOUR_PI,
    Domain,
    boundary_clearance,
    contains,
    green_dz,
    green_dz_dw,
    green_dz_dwbar,
    green_regular_diagonal,
    green_total,
)

DEFAULT_NODES = 128


class Kind(Enum):
    XI = "xi"
    THETA = "theta"
    OMEGA = "omega"
    ONE = "one"


@dataclass(frozen=True)
class GroundInsertion:
    """A ground-field insertion with pending first-order derivatives."""

    kind: Kind
    point: complex
    d_holo: int = 0
    d_anti: int = 0

    def __post_init__(self) -> None:
        if self.d_holo + self.d_anti > 1:
            # each contour extraction differentiates its fresh fermion once
            raise ValueError("at most one pending derivative per insertion")


@dataclass(frozen=True)
class CorrelatorQuery:
    domain: Domain
    alpha: complex
    insertions: tuple[tuple[State, complex], ...]


@dataclass
class _Leaf:
    """Internal ground insertion; ``nodes``/``weights`` are set for the
    fresh fermions produced by contour extraction (1-D arrays), None for
    ordinary point insertions."""

    kind: Kind
    point: complex
    d_holo: int = 0
    d_anti: int = 0
    nodes: np.ndarray | None = None
    weights: np.ndarray | None = None


def fer_correlator(d: Domain, points_xi, points_theta) -> float:
    """<xi(z_1) theta(w_1) ... xi(z_n) theta(w_n)> = (4pi)^n det G(z_i, w_j).

    Returns exactly 0.0 for unequal species counts.
    """
    if len(points_xi) != len(points_theta):
        return 0.0
    n = len(points_xi)
    if n == 0:
        return 1.0
    _check_distinct(list(points_xi) + list(points_theta))
    z = np.asarray(points_xi, dtype=complex).reshape(n, 1)
    w = np.asarray(points_theta, dtype=complex).reshape(1, n)
    mat = FOUR_PI * green_total(d, z, w)
    return float(np.linalg.det(mat))


def _check_distinct(points) -> None:
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise ValueError(f"coincident insertion points at {pts[i]}")


def _pair_factor(d: Domain, src: _Leaf, tgt: _Leaf):
    """4 pi G with the pending derivatives routed to the right slots."""
    p = src.nodes if src.nodes is not None else src.point
    q = tgt.nodes if tgt.nodes is not None else tgt.point
    if src.nodes is not None and tgt.nodes is not None:
        p = p[:, None]
        q = q[None, :]
    h1, a1 = src.d_holo, src.d_anti
    h2, a2 = tgt.d_holo, tgt.d_anti
    if (h1, a1, h2, a2) == (0, 0, 0, 0):
        val = green_total(d, p, q)
    elif (h2, a2) == (0, 0):
        g = green_dz(d, p, q)
        val = g if h1 else np.conj(g)
    elif (h1, a1) == (0, 0):
        g = green_dz(d, q, p)  # derivative in the second slot, via symmetry
        val = g if h2 else np.conj(g)
    elif (h1, h2) == (1, 1):
        val = green_dz_dw(d, p, q)
    elif (h1, a2) == (1, 1):
        val = green_dz_dwbar(d, p, q)
    elif (a1, h2) == (1, 1):
        val = np.conj(green_dz_dwbar(d, p, q))
    else:  # (a1, a2) == (1, 1)
        val = np.conj(green_dz_dw(d, p, q))
    return FOUR_PI * val


def _contract(d: Domain, src: _Leaf, tgt: _Leaf) -> complex:
    """Pair factor summed against the contour weights of its endpoints."""
    f = _pair_factor(d, src, tgt)
    if src.nodes is not None and tgt.nodes is not None:
        return complex(src.weights @ f @ tgt.weights)
    if src.nodes is not None:
        return complex(src.weights @ f)
    if tgt.nodes is not None:
        return complex(f @ tgt.weights)
    return complex(f)


def _fixed_factor(d: Domain, alpha: complex, leaf: _Leaf) -> complex:
    return -(FOUR_PI * green_regular_diagonal(d, leaf.point) + alpha)


def _reorder_sign(kinds: list[Kind]) -> int:
    """Sign for bringing the fermionic insertions into xi-theta alternating
    order; omega insertions are bosonic and commute freely."""
    ranks = []
    n_xi = n_theta = 0
    for k in kinds:
        if k is Kind.XI:
            ranks.append(2 * n_xi)
            n_xi += 1
        elif k is Kind.THETA:
            ranks.append(2 * n_theta + 1)
            n_theta += 1
    inversions = sum(
        1 for i in range(len(ranks)) for j in range(i + 1, len(ranks)) if ranks[i] > ranks[j]
    )
    return -1 if inversions % 2 else 1


def _eval_leaves(d: Domain, alpha: complex, leaves: list[_Leaf]) -> complex:
    """Signed bijection sum over ground insertions.

    Sources are the xi and omega insertions, targets the theta and omega
    insertions (omegas in matching order, so a fixed point is an omega
    mapped to itself and contributes -(4 pi g(x,x) + alpha)).
    """
    leaves = [l for l in leaves if l.kind is not Kind.ONE]
    for l in leaves:
        if l.kind is Kind.OMEGA and (l.d_holo or l.d_anti):
            raise ValueError("derivative decorations on omega are not supported")

    sign0 = _reorder_sign([l.kind for l in leaves])
    xis = [l for l in leaves if l.kind is Kind.XI]
    thetas = [l for l in leaves if l.kind is Kind.THETA]
    omegas = [l for l in leaves if l.kind is Kind.OMEGA]
    n, k = len(xis), len(omegas)
    if n != len(thetas):
        return 0.0

    sources = xis + omegas
    targets = thetas + omegas
    total = 0.0 + 0.0j
    for perm in permutations(range(n + k)):
        sgn = _perm_sign(perm)
        fixed = 0
        term = 1.0 + 0.0j
        for i, j in enumerate(perm):
            if i >= n and i == j:
                fixed += 1
                term *= _fixed_factor(d, alpha, sources[i])
            else:
                term *= _contract(d, sources[i], targets[j])
        total += sgn * (-1) ** fixed * term
    return sign0 * (-1) ** k * total


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def ground_correlator(d: Domain, alpha: complex, ins: list[GroundInsertion]) -> complex:
    """Correlator of ground insertions (with pending derivatives)."""
    _check_distinct([g.point for g in ins])
    leaves = [_Leaf(g.kind, g.point, g.d_holo, g.d_anti) for g in ins]
    return _eval_leaves(d, alpha, leaves)


# ---------------------------------------------------------------------------
# contour extraction


def _contour(
    d: Domain, z: complex, g: Generator, depth: int, centers: list[complex], nodes: int
) -> _Leaf:
    """Fresh fermion insertion on a discrete extraction contour around z.

    Weight j is (zeta_j - z)^k dzeta_j / (2 pi i); the antiholomorphic
    variant conjugates the monomial and the measure and flips the sign,
    which amounts to conjugating the holomorphic weights.
    """
    others = [c for c in centers if c != z]
    clearance = boundary_clearance(d, z)
    if others:
        sep = 0.5 * min(abs(z - c) for c in others)
        base = min(sep, clearance)
    else:
        base = clearance
    r = 0.5 * base * 0.5**depth
    if r <= 0 or not math.isfinite(r):
        raise ValueError(f"contour radius underflow at {z}")
    phase = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    pts = z + r * phase
    weights = (r * phase) ** (g.index + 1) / nodes
    if g.barred:
        weights = np.conj(weights)
    kind = Kind.XI if g.species is Species.CHI else Kind.THETA
    dh, da = (0, 1) if g.barred else (1, 0)
    return _Leaf(kind, z, dh, da, nodes=pts, weights=weights)


_ZERO_MODE_GROUND = {
    (): (Kind.OMEGA, 1),
    ("eta",): (Kind.THETA, -1),
    ("chi",): (Kind.XI, -1),
    ("eta", "chi"): (Kind.ONE, -1),
}


def _zero_mode_leaf(ops, z: complex) -> tuple[_Leaf, int]:
    """Rewrite a residual zero-mode word at z as a single ground insertion."""
    key = tuple(g.species.value for g in ops)
    kind, sign = _ZERO_MODE_GROUND[key]
    return _Leaf(kind, z), sign


def _peel_word(
    d: Domain,
    word: BasisWord,
    z: complex,
    depth: int,
    centers: list[complex],
    nodes: int,
    prefix: Generator | None = None,
) -> tuple[int, list[_Leaf], int]:
    """Reduce one basis-word insertion to ground leaves.

    Negative modes are extracted leftmost-first; zero modes sitting in front
    of a negative mode anticommute past it with a sign (they never contract,
    their index sums with a negative one are nonzero).  Returns
    (sign, leaves, depth after the extractions).
    """
    ops = list(word.generators())
    sign = 1
    leaves: list[_Leaf] = []
    if prefix is not None:
        # an explicit prefix generator is extracted by contour unconditionally
        leaves.append(_contour(d, z, prefix, depth, centers, nodes))
        depth += 1
    while True:
        i = next((j for j, g in enumerate(ops) if g.index < 0), None)
        if i is None:
            break
        g = ops.pop(i)
        if i % 2:  # anticommute past the zero modes standing in front
            sign = -sign
        leaves.append(_contour(d, z, g, depth, centers, nodes))
        depth += 1
    ground, s = _zero_mode_leaf(ops, z)
    return sign * s, leaves + [ground], depth


def _peel_insertions(
    d: Domain,
    words: list[tuple[BasisWord, complex]],
    nodes: int,
) -> tuple[int, list[_Leaf]]:
    centers = [z for _, z in words]
    sign = 1
    leaves: list[_Leaf] = []
    depth = 0
    for word, z in words:
        s, ls, depth = _peel_word(d, word, z, depth, centers, nodes)
        sign *= s
        leaves.extend(ls)
    return sign, leaves


_CACHE: dict = {}


def _eval_words(
    d: Domain, alpha: complex, words: tuple[tuple[BasisWord, complex], ...], nodes: int
) -> complex:
    key = (d.descriptor, complex(alpha), nodes, words)
    if key not in _CACHE:
        sign, leaves = _peel_insertions(d, list(words), nodes)
        _CACHE[key] = sign * _eval_leaves(d, alpha, leaves)
    return _CACHE[key]


def general_correlator(q: CorrelatorQuery, nodes: int = DEFAULT_NODES) -> complex:
    """Correlator of arbitrary states, multilinear in each insertion."""
    points = [z for _, z in q.insertions]
    _check_distinct(points)
    for z in points:
        if not contains(q.domain, z):
            raise ValueError(f"insertion point {z} lies outside the domain")

    total = 0.0 + 0.0j
    combos: list[tuple[complex, tuple[tuple[BasisWord, complex], ...]]] = [(1.0, ())]
    for state, z in q.insertions:
        combos = [
            (coeff * complex(c), picked + ((w, z),))
            for coeff, picked in combos
            for w, c in state.items()
        ]
    for coeff, picked in combos:
        if sum(w.length() for w, _ in picked) % 2:
            continue  # odd total parity vanishes identically
        total += coeff * _eval_words(q.domain, complex(q.alpha), picked, nodes)
    return total


def mode_extract(
    d: Domain,
    alpha: complex,
    outer: Generator,
    inner: tuple[State, complex],
    others: list[tuple[State, complex]],
    nodes: int = DEFAULT_NODES,
) -> complex:
    """Correlator of [outer * inner] at inner's point, times the others.

    The outer generator is extracted by contour quadrature regardless of its
    index (zero and positive modes included), which is the raw form of the
    recursion step and the basis of the algebra/analysis consistency tests.
    """
    state, z = inner
    points = [z] + [p for _, p in others]
    _check_distinct(points)

    total = 0.0 + 0.0j
    other_combos: list[tuple[complex, tuple[tuple[BasisWord, complex], ...]]] = [(1.0, ())]
    for s, p in others:
        other_combos = [
            (coeff * complex(c), picked + ((w, p),))
            for coeff, picked in other_combos
            for w, c in s.items()
        ]
    for w_in, c_in in state.items():
        for coeff, picked in other_combos:
            centers = points
            sign, leaves, depth = _peel_word(d, w_in, z, 0, centers, nodes, prefix=outer)
            for w, p in picked:
                s2, ls, depth = _peel_word(d, w, p, depth, centers, nodes)
                sign *= s2
                leaves.extend(ls)
            total += complex(c_in) * coeff * sign * _eval_leaves(d, alpha, leaves)
    return total


def covariance_check(
    q: CorrelatorQuery, a: complex, b: complex, c: complex, dd: complex, nodes: int = DEFAULT_NODES
) -> tuple[complex, complex]:
    """Transformation law of the one-point logarithmic partner.

    For a Möbius map phi(z) = (az+b)/(cz+d) carrying the query's domain to
    phi(Omega): returns (<omega(phi z)> on phi(Omega), <omega(z)> on Omega
    minus 2 log |phi'(z)|).  The two agree: the regular part of the Green's
    function gains (1/2pi) log |phi'| on the diagonal.
    """
    from .geometry import mobius_of

    (state, z0), = q.insertions
    det = a * dd - b * c
    if det == 0:
        raise ValueError("degenerate Möbius map")
    phi_z = (a * z0 + b) / (c * z0 + dd)
    dphi = det / (c * z0 + dd) ** 2
    # chart of phi(Omega): pull back through the inverse map
    target = mobius_of(q.domain, dd, -b, -c, a)
    lhs = general_correlator(
        CorrelatorQuery(target, q.alpha, ((state, phi_z),)), nodes=nodes
    )
    rhs = (
        general_correlator(CorrelatorQuery(q.domain, q.alpha, ((state, z0),)), nodes=nodes)
        - 2.0 * math.log(abs(dphi))
    )
    return lhs, rhs
