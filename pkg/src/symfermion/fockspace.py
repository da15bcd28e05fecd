"""Exact mode algebra of symplectic fermions on logarithmic Fock spaces.

The algebra is generated by fermionic modes ``eta_k`` and ``chi_k`` (and an
anticommuting barred copy in the non-chiral space) subject to

    {eta_k, chi_l} = k * delta_{k+l},    {eta_k, eta_l} = {chi_k, chi_l} = 0,

acting on a cyclic vector ``omega`` that is annihilated by every mode of
positive index.  States are finite rational linear combinations of canonically
ordered mode monomials (a PBW-type basis); all arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class Species(Enum):
    ETA = "eta"
    CHI = "chi"


class Parity(Enum):
    BOS = 1
    FER = -1


class ChiralityError(ValueError):
    """A barred generator was used in a chiral-only context."""


# Block order of the canonical monomials: unbarred eta, unbarred chi,
# barred eta, barred chi.  Within each block the most negative index
# stands leftmost.
_BLOCK = {
    (Species.ETA, False): 0,
    (Species.CHI, False): 1,
    (Species.ETA, True): 2,
    (Species.CHI, True): 3,
}


@dataclass(frozen=True)
class Generator:
    """A single mode symbol: species, integer index, and chirality."""

    species: Species
    index: int
    barred: bool = False

    def __str__(self) -> str:
        bar = "bar" if self.barred else ""
        return f"{self.species.value}{bar}({self.index})"


def eta(k: int) -> Generator:
    return Generator(Species.ETA, k)


def chi(k: int) -> Generator:
    return Generator(Species.CHI, k)


def etabar(k: int) -> Generator:
    return Generator(Species.ETA, k, barred=True)


def chibar(k: int) -> Generator:
    return Generator(Species.CHI, k, barred=True)


@dataclass(frozen=True)
class Bidegree:
    delta: int
    deltabar: int


@dataclass(frozen=True, order=True)
class BasisWord:
    """Canonically ordered monomial applied to omega.

    Each tuple stores the values ``k`` of the modes ``*_{-k}`` present, in
    strictly increasing order.  Unbarred entries are >= 0 (index-0 modes are
    genuine zero modes); barred entries are >= 1, since barred zero modes are
    identified with the unbarred ones and never stored.
    """

    eta: tuple[int, ...] = ()
    chi: tuple[int, ...] = ()
    etabar: tuple[int, ...] = ()
    chibar: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for ks in (self.eta, self.chi):
            assert all(a < b for a, b in zip(ks, ks[1:])) and all(k >= 0 for k in ks)
        for ks in (self.etabar, self.chibar):
            assert all(a < b for a, b in zip(ks, ks[1:])) and all(k >= 1 for k in ks)

    def generators(self) -> tuple[Generator, ...]:
        """The monomial as an explicit operator sequence, leftmost first."""
        ops: list[Generator] = []
        for ks in reversed(self.eta):
            ops.append(eta(-ks))
        for ks in reversed(self.chi):
            ops.append(chi(-ks))
        for ks in reversed(self.etabar):
            ops.append(etabar(-ks))
        for ks in reversed(self.chibar):
            ops.append(chibar(-ks))
        return tuple(ops)

    def length(self) -> int:
        return len(self.eta) + len(self.chi) + len(self.etabar) + len(self.chibar)

    def max_index(self) -> int:
        """Largest stored mode value across all blocks (0 for omega itself)."""
        return max((*self.eta, *self.chi, *self.etabar, *self.chibar, 0))

    def is_barred_free(self) -> bool:
        return not self.etabar and not self.chibar

    def __str__(self) -> str:
        ops = self.generators()
        if not ops:
            return "|omega>"
        return "*".join(str(g) for g in ops) + "|omega>"


OMEGA_WORD = BasisWord()


def parity_of(w: BasisWord) -> Parity:
    return Parity.BOS if w.length() % 2 == 0 else Parity.FER


def bidegree_of(w: BasisWord) -> Bidegree:
    return Bidegree(sum(w.eta) + sum(w.chi), sum(w.etabar) + sum(w.chibar))


def _word_from_ops(ops: Sequence[Generator]) -> BasisWord:
    blocks: dict[int, list[int]] = {0: [], 1: [], 2: [], 3: []}
    for g in ops:
        blocks[_BLOCK[g.species, g.barred]].append(-g.index)
    return BasisWord(
        eta=tuple(sorted(blocks[0])),
        chi=tuple(sorted(blocks[1])),
        etabar=tuple(sorted(blocks[2])),
        chibar=tuple(sorted(blocks[3])),
    )


def _contraction(g: Generator, h: Generator) -> int:
    """Scalar part of {g, h}: nonzero only for eta/chi pairs of equal
    chirality with opposite indices."""
    if g.barred != h.barred or g.species == h.species:
        return 0
    if g.index + h.index != 0:
        return 0
    return g.index if g.species == Species.ETA else h.index


def _sort_key(g: Generator) -> tuple[int, int]:
    return (_BLOCK[g.species, g.barred], g.index)


def _apply_to_word(g: Generator, w: BasisWord) -> list[tuple[BasisWord, Fraction]]:
    # Barred zero modes are identified with the unbarred ones on sight.
    if g.barred and g.index == 0:
        g = Generator(g.species, 0, barred=False)

    ops = list(w.generators())

    if g.index > 0:
        # Annihilation mode: walk it to the right until it hits omega,
        # collecting one contraction term per matching partner.
        out: list[tuple[BasisWord, Fraction]] = []
        sign = 1
        for i, h in enumerate(ops):
            c = _contraction(g, h)
            if c != 0:
                rest = ops[:i] + ops[i + 1 :]
                out.append((_word_from_ops(rest), Fraction(sign * c)))
            sign = -sign
        return out

    # Creation mode: swap it rightwards into canonical position.  Creation
    # modes never contract with each other (the only index-matched pair is
    # eta_0/chi_0, whose anticommutator is 0 * delta = 0).
    key = _sort_key(g)
    sign = 1
    pos = 0
    while pos < len(ops) and _sort_key(ops[pos]) < key:
        sign = -sign
        pos += 1
    if pos < len(ops) and _sort_key(ops[pos]) == key:
        return []  # repeated fermionic mode squares to zero
    ops.insert(pos, g)
    return [(_word_from_ops(ops), Fraction(sign))]


class State:
    """Finite rational linear combination of basis words.

    Immutable by convention; all operations return fresh states.  The empty
    combination is the zero state.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BasisWord, Fraction] | None = None):
        self.terms: dict[BasisWord, Fraction] = dict(terms or {})

    @staticmethod
    def zero() -> "State":
        return State()

    @staticmethod
    def basis(w: BasisWord, coeff: Fraction | int = 1) -> "State":
        c = Fraction(coeff)
        return State({w: c}) if c != 0 else State()

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[BasisWord, Fraction]]:
        return iter(self.terms.items())

    def coeff(self, w: BasisWord) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def max_index(self) -> int:
        return max((w.max_index() for w in self.terms), default=0)

    def __add__(self, other: "State") -> "State":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            s = acc.get(w, Fraction(0)) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return State(acc)

    def __sub__(self, other: "State") -> "State":
        return self + (-1) * other

    def __neg__(self) -> "State":
        return (-1) * self

    def __rmul__(self, scalar: Fraction | int) -> "State":
        c = Fraction(scalar)
        if c == 0:
            return State()
        return State({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{c}*{w}" for w, c in sorted(self.terms.items())]
        return " + ".join(parts)


def apply_generator(g: Generator, v: State, *, chiral: bool = False) -> State:
    """Left-multiply the state by one mode and renormal-order the result."""
    if chiral and g.barred:
        raise ChiralityError(f"barred generator {g} is not allowed in chiral mode")
    acc: dict[BasisWord, Fraction] = {}
    for w, c in v.terms.items():
        for w2, c2 in _apply_to_word(g, w):
            s = acc.get(w2, Fraction(0)) + c * c2
            if s:
                acc[w2] = s
            else:
                acc.pop(w2, None)
    return State(acc)


def normal_order(raw: Iterable[Generator], *, chiral: bool = False) -> State:
    """Normal-order an arbitrary operator sequence applied to omega.

    The sequence is read as operators acting leftmost-last on omega, so the
    rightmost generator acts first.
    """
    state = State.basis(OMEGA_WORD)
    for g in reversed(list(raw)):
        state = apply_generator(g, state, chiral=chiral)
    return state


_GROUND_NAMES = (
    "omega",
    "one",
    "xi",
    "theta",
    "chi_cur",
    "eta_cur",
    "chibar_cur",
    "etabar_cur",
)


def ground_state(name: str, *, chiral: bool = False) -> State:
    """The named ground state or current as a canonical state.

    Conventions: ``one = [chi_0 eta_0]``, ``xi = -[chi_0]``,
    ``theta = -[eta_0]``, and the currents are ``chi_{-1} one`` etc.
    """
    if name == "omega":
        return State.basis(OMEGA_WORD)
    if name == "one":
        return normal_order([chi(0), eta(0)], chiral=chiral)
    if name == "xi":
        return -1 * normal_order([chi(0)], chiral=chiral)
    if name == "theta":
        return -1 * normal_order([eta(0)], chiral=chiral)
    if name == "chi_cur":
        return normal_order([chi(-1), chi(0), eta(0)], chiral=chiral)
    if name == "eta_cur":
        return normal_order([eta(-1), chi(0), eta(0)], chiral=chiral)
    if name == "chibar_cur":
        return normal_order([chibar(-1), chi(0), eta(0)], chiral=chiral)
    if name == "etabar_cur":
        return normal_order([etabar(-1), chi(0), eta(0)], chiral=chiral)
    raise ValueError(f"unknown ground state {name!r}; expected one of {_GROUND_NAMES}")


def _strict_tuples(total: int, min_part: int) -> list[tuple[int, ...]]:
    """Strictly increasing tuples of integers >= min_part with the given sum.

    A part equal to 0 is admissible (once) when min_part == 0; it models a
    zero mode attached to the monomial.
    """
    positive: list[tuple[int, ...]] = []

    def build(remaining: int, start: int, acc: tuple[int, ...]) -> None:
        if remaining == 0:
            positive.append(acc)
            return
        for p in range(start, remaining + 1):
            build(remaining - p, p + 1, acc + (p,))

    build(total, 1, ())
    if min_part == 0:
        results = [t for t in positive] + [(0,) + t for t in positive]
    else:
        results = positive
    return sorted(results)


def enumerate_basis(d: Bidegree, mode: str = "nonchiral") -> list[BasisWord]:
    """All canonical basis words of the given bidegree.

    ``mode`` is ``"chiral"`` or ``"nonchiral"``; in chiral mode the barred
    bidegree must be zero.
    """
    if mode not in ("chiral", "nonchiral"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "chiral" and d.deltabar != 0:
        raise ValueError("chiral basis words carry no barred grading")

    words: list[BasisWord] = []
    for de in range(d.delta + 1):
        etas = _strict_tuples(de, 0)
        chis = _strict_tuples(d.delta - de, 0)
        unbarred = [(a, b) for a in etas for b in chis]
        if mode == "chiral":
            words.extend(BasisWord(eta=a, chi=b) for a, b in unbarred)
            continue
        for debar in range(d.deltabar + 1):
            etabars = [t for t in _strict_tuples(debar, 1)]
            chibars = [t for t in _strict_tuples(d.deltabar - debar, 1)]
            for a, b in unbarred:
                for ab in etabars:
                    for bb in chibars:
                        words.append(BasisWord(eta=a, chi=b, etabar=ab, chibar=bb))
    return sorted(set(words))


def automorphism_alpha(a: Fraction | int, v: State, *, chiral: bool = False) -> State:
    """The module automorphism determined by omega -> omega + a * one.

    Each basis word ``W omega`` maps to ``W omega + a * W(chi_0 eta_0 omega)``,
    extended linearly.
    """
    a = Fraction(a)
    result = State(dict(v.terms))
    if a == 0:
        return result
    for w, c in v.terms.items():
        extra = normal_order(list(w.generators()) + [chi(0), eta(0)], chiral=chiral)
        result = result + (c * a) * extra
    return result
