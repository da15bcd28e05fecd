"""Expression language for states and correlator queries.

Grammar (whitespace-insensitive)::

    query       := "corr(" domain ";" alpha ";" "[" insertion ("," insertion)* "]" ")"
    insertion   := state "@" complex
    state       := ["-"] term (("+" | "-") term)*
    term        := [rational "*"] factorchain
    factorchain := factor ("*" factor)*
    factor      := name | gen "(" int ")"
    rational    := int ["/" int]
    complex     := real ("+" | "-") real "i"
    alpha       := complex | real

Names denote ground states (omega, one, xi, theta) or currents
(chi, eta, chibar, etabar); a name followed by "(" is a generator
application instead.  The last factor of a chain must be a name; the
generators to its left are applied right-to-left.  Points require an
explicit imaginary part; the correlator parameter alpha may be a bare real.
Every rejection carries the byte offset of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .correlators import CorrelatorQuery
from .fockspace import Generator, Species, State, apply_generator, ground_state
from .geometry import make_domain


class ExprError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


_GEN_NAMES = {
    "eta": (Species.ETA, False),
    "chi": (Species.CHI, False),
    "etabar": (Species.ETA, True),
    "chibar": (Species.CHI, True),
}

_STATE_NAMES = {
    "omega": "omega",
    "one": "one",
    "xi": "xi",
    "theta": "theta",
    "chi": "chi_cur",
    "eta": "eta_cur",
    "chibar": "chibar_cur",
    "etabar": "etabar_cur",
}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()\[\];:,@*/+-]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | name | punct | end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        for kind in ("number", "name", "punct"):
            if m.group(kind) is not None:
                tokens.append(_Token(kind, m.group(kind), m.start(kind)))
                break
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chiral: bool = False):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.chiral = chiral

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ExprError(f"expected {text!r}, found {tok.text!r}", tok.offset)
        return tok

    # -- numbers ---------------------------------------------------------

    def int_literal(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        elif self.peek().text == "+":
            self.next()
        tok = self.next()
        if tok.kind != "number" or not re.fullmatch(r"\d+", tok.text):
            raise ExprError(f"expected an integer, found {tok.text!r}", tok.offset)
        return sign * int(tok.text)

    def rational(self, *, signed: bool) -> Fraction:
        sign = 1
        if signed and self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.next()
        if tok.kind != "number" or not re.fullmatch(r"\d+", tok.text):
            raise ExprError(f"expected a rational, found {tok.text!r}", tok.offset)
        num = int(tok.text)
        den = 1
        if self.peek().text == "/":
            self.next()
            dtok = self.next()
            if dtok.kind != "number" or not re.fullmatch(r"\d+", dtok.text):
                raise ExprError(f"expected a denominator, found {dtok.text!r}", dtok.offset)
            den = int(dtok.text)
            if den == 0:
                raise ExprError("zero denominator", dtok.offset)
        return Fraction(sign * num, den)

    def real(self) -> float:
        sign = 1.0
        if self.peek().text == "-":
            self.next()
            sign = -1.0
        tok = self.next()
        if tok.kind != "number":
            raise ExprError(f"expected a number, found {tok.text!r}", tok.offset)
        return sign * float(tok.text)

    def complex_literal(self, *, allow_bare_real: bool) -> complex:
        start = self.peek().offset
        re_part = self.real()
        if self.peek().text in ("+", "-"):
            sign = 1.0 if self.next().text == "+" else -1.0
            tok = self.next()
            if tok.kind != "number":
                raise ExprError(f"expected imaginary part, found {tok.text!r}", tok.offset)
            im_part = sign * float(tok.text)
            itok = self.next()
            if itok.text != "i":
                raise ExprError(f"expected 'i', found {itok.text!r}", itok.offset)
            return complex(re_part, im_part)
        if allow_bare_real:
            return complex(re_part, 0.0)
        raise ExprError("points need an explicit imaginary part (a+bi)", start)

    # -- states ----------------------------------------------------------

    def factorchain(self) -> State:
        gens: list[Generator] = []
        while True:
            tok = self.next()
            if tok.kind != "name":
                raise ExprError(f"expected a state or generator name, found {tok.text!r}", tok.offset)
            if self.peek().text == "(":
                if tok.text not in _GEN_NAMES:
                    raise ExprError(f"unknown generator {tok.text!r}", tok.offset)
                species, barred = _GEN_NAMES[tok.text]
                if barred and self.chiral:
                    raise ExprError(f"barred generator {tok.text!r} in chiral mode", tok.offset)
                self.expect("(")
                idx = self.int_literal()
                self.expect(")")
                gens.append(Generator(species, idx, barred))
                self.expect("*")
                continue
            if tok.text not in _STATE_NAMES:
                raise ExprError(f"unknown state {tok.text!r}", tok.offset)
            if self.chiral and tok.text in ("chibar", "etabar"):
                raise ExprError(f"barred current {tok.text!r} in chiral mode", tok.offset)
            base = ground_state(_STATE_NAMES[tok.text], chiral=self.chiral)
            break
        for g in reversed(gens):
            base = apply_generator(g, base, chiral=self.chiral)
        return base

    def term(self) -> State:
        coeff = Fraction(1)
        if self.peek().kind == "number":
            coeff = self.rational(signed=False)
            self.expect("*")
        return coeff * self.factorchain()

    def state(self) -> State:
        negate = False
        if self.peek().text == "-":
            self.next()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek().text in ("+", "-"):
            op = self.next().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    # -- queries ---------------------------------------------------------

    def query(self) -> CorrelatorQuery:
        self.expect("corr")
        self.expect("(")
        # domain spec: raw text up to the first ';'
        start = self.peek().offset
        semi = self.text.find(";", start)
        if semi < 0:
            raise ExprError("missing ';' after domain spec", start)
        spec = self.text[start:semi].strip()
        try:
            domain = make_domain(spec)
        except ValueError as exc:
            raise ExprError(str(exc), start) from None
        while self.peek().offset < semi:
            self.next()
        self.expect(";")
        alpha = self.complex_literal(allow_bare_real=True)
        self.expect(";")
        self.expect("[")
        insertions = []
        offsets = []
        while True:
            st = self.state()
            self.expect("@")
            off = self.peek().offset
            pt = self.complex_literal(allow_bare_real=False)
            insertions.append((st, pt))
            offsets.append(off)
            if self.peek().text == ",":
                self.next()
                continue
            break
        self.expect("]")
        self.expect(")")
        pts = [p for _, p in insertions]
        for j, p in enumerate(pts):
            if p in pts[:j]:
                raise ExprError(f"coincident insertion points at {p}", offsets[j])
        return CorrelatorQuery(domain, alpha, tuple(insertions))

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"trailing input {tok.text!r}", tok.offset)


def parse_state(text: str, *, chiral: bool = False) -> State:
    p = _Parser(text, chiral=chiral)
    st = p.state()
    p.finish()
    return st


def parse_query(text: str) -> CorrelatorQuery:
    p = _Parser(text)
    q = p.query()
    p.finish()
    return q


# ---------------------------------------------------------------------------
# rendering


def _render_word(word) -> str:
    gens = word.generators()
    if not gens:
        return "omega"
    parts = [f"{g.species.value}{'bar' if g.barred else ''}({g.index})" for g in gens]
    return "*".join(parts) + "*omega"


def render_state(v: State) -> str:
    if v.is_zero():
        return "0*omega"
    parts = []
    for word, coeff in sorted(v.items()):
        body = _render_word(word)
        mag = abs(coeff)
        chunk = body if mag == 1 else f"{mag}*{body}"
        if not parts:
            parts.append(chunk if coeff > 0 else f"-{chunk}")
        else:
            parts.append(f"{' + ' if coeff > 0 else ' - '}{chunk}")
    return "".join(parts)


def _render_complex(z: complex) -> str:
    im = z.imag
    sign = "+" if im >= 0 else "-"
    return f"{z.real!r}{sign}{abs(im)!r}i"


def render_query(q: CorrelatorQuery) -> str:
    ins = ", ".join(f"{render_state(s)}@{_render_complex(p)}" for s, p in q.insertions)
    return f"corr({q.domain.descriptor}; {_render_complex(complex(q.alpha))}; [{ins}])"


def render(x) -> str:
    if isinstance(x, State):
        return render_state(x)
    if isinstance(x, CorrelatorQuery):
        return render_query(x)
    raise TypeError(f"cannot render {type(x).__name__}")
