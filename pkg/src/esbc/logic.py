"""Finite propositional semantics over small signatures.

Interpretations are integers in ``[0, 2**n)``.  They are numbered in
truth-table order with the all-true row first: bit ``i`` of an
interpretation is *clear* when atom ``i`` is true.  For ``{a, b}`` this
gives ``ab, ~ab, a~b, ~a~b`` as interpretations ``0, 1, 2, 3``.

Model sets are plain ``int`` bitmasks over interpretations (bit ``w`` set
iff interpretation ``w`` is a member).  On the document side an
interpretation is written as a bitstring over the atoms in declaration
order, ``"10"`` meaning ``a`` true and ``b`` false.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

MAX_ATOMS = 4

ModelSet = int

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_KEYWORDS = {"true", "false"}


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


class UnknownAtom(ValueError):
    def __init__(self, name: str, pos: int | None = None):
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"unknown atom {name!r}{where}")
        self.name = name
        self.pos = pos


# --------------------------------------------------------------------------
# signature and interpretations


@dataclass(frozen=True)
class Signature:
    atoms: tuple[str, ...]
    max_atoms: int = field(default=MAX_ATOMS, compare=False, repr=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not 1 <= len(atoms) <= self.max_atoms:
            raise ValueError(f"signature needs 1..{self.max_atoms} atoms, got {len(atoms)}")
        for name in atoms:
            if not isinstance(name, str) or not _ATOM_RE.match(name) or name in _KEYWORDS:
                raise ValueError(f"invalid atom name {name!r}")
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atom names in {atoms}")

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        """Number of interpretations."""
        return 1 << self.n

    @property
    def full(self) -> ModelSet:
        return (1 << self.size) - 1

    @property
    def num_model_sets(self) -> int:
        return 1 << self.size

    def interpretations(self) -> range:
        return range(self.size)

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise UnknownAtom(atom) from None

    def is_true(self, w: int, i: int) -> bool:
        return not (w >> i) & 1

    def atom_models(self, i: int) -> ModelSet:
        return sum(1 << w for w in range(self.size) if self.is_true(w, i))

    def interp_str(self, w: int) -> str:
        return "".join("1" if self.is_true(w, i) else "0" for i in range(self.n))

    def parse_interp(self, s: str) -> int:
        s = s.strip()
        if len(s) != self.n or any(c not in "01" for c in s):
            raise ValueError(f"bad interpretation {s!r} for atoms {list(self.atoms)}")
        return sum(1 << i for i, c in enumerate(s) if c == "0")

    def model_strs(self, m: ModelSet) -> list[str]:
        """Sorted bitstrings of the members of ``m``."""
        return sorted(self.interp_str(w) for w in members(m))

    def parse_models(self, strs: Iterable[str]) -> ModelSet:
        m = 0
        for s in strs:
            m |= 1 << self.parse_interp(s)
        return m

    def show(self, m: ModelSet) -> str:
        return "{" + ", ".join(self.model_strs(m)) + "}"


def members(m: ModelSet) -> Iterator[int]:
    w = 0
    while m:
        if m & 1:
            yield w
        m >>= 1
        w += 1


def popcount(m: ModelSet) -> int:
    return bin(m).count("1")


def subsets(m: ModelSet) -> Iterator[ModelSet]:
    """All subsets of ``m`` in ascending bitmask order."""
    out = []
    s = m
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & m
    return reversed(out)


def supersets(m: ModelSet, full: ModelSet) -> Iterator[ModelSet]:
    rest = full & ~m
    for s in subsets(rest):
        yield m | s


def is_subset(a: ModelSet, b: ModelSet) -> bool:
    return a & ~b == 0


# --------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Const, Not, And, Or, Implies, Iff]

TOP = Const(True)
BOTTOM = Const(False)

# binding strength, loosest first
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return atoms_of(f.arg)
    return atoms_of(f.left) | atoms_of(f.right)


def format_formula(f: Formula) -> str:
    """Render with ASCII operators and only the parentheses the grammar needs."""

    def go(g: Formula, ctx: int) -> str:
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Const):
            return "true" if g.value else "false"
        if isinstance(g, Not):
            return "~" + go(g.arg, 5)
        p = _PREC[type(g)]
        # -> is right-associative, the others left-associative
        right_assoc = type(g) is Implies
        lp = p + 1 if right_assoc else p
        rp = p if right_assoc else p + 1
        s = f"{go(g.left, lp)} {_SYMBOL[type(g)]} {go(g.right, rp)}"
        return f"({s})" if p < ctx else s

    return go(f, 0)


# --------------------------------------------------------------------------
# parser

_TOKEN_RE = re.compile(r"\s*(?:(<->)|(->)|([~!&|()])|([a-z][a-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN_RE.match(text, pos)
        if not mt:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        start = mt.start(mt.lastindex)
        tok = mt.group(mt.lastindex)
        tokens.append(("!" if tok == "~" else tok, start))
        pos = mt.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise FormulaSyntaxError(msg, self.pos(), self.text)

    def parse(self) -> Formula:
        if self.peek() == "":
            self.fail("empty formula")
        f = self.iff()
        if self.peek() != "":
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TOP
        if tok == "false":
            self.take()
            return BOTTOM
        if tok and tok[0].isalpha():
            pos = self.pos()
            self.take()
            if self.sig is not None and tok not in self.sig.atoms:
                raise UnknownAtom(tok, pos)
            return Atom(tok)
        self.fail("expected a formula" if tok == "" else f"unexpected token {tok!r}")


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    """Parse ``text``; when ``sig`` is given every atom must belong to it.

    Precedence, tightest first: ``~``/``!``, ``&``, ``|``, ``->`` (right
    associative), ``<->``.
    """
    return _Parser(text, sig).parse()


# --------------------------------------------------------------------------
# semantics


def models_of(f: Formula, sig: Signature) -> ModelSet:
    """Model set of ``f``, computed bit-parallel over all interpretations."""
    full = sig.full
    cache = {i: sig.atom_models(i) for i in range(sig.n)}

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            return cache[sig.index(g.name)]
        if isinstance(g, Const):
            return full if g.value else 0
        if isinstance(g, Not):
            return full & ~go(g.arg)
        a, b = go(g.left), go(g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        if isinstance(g, Implies):
            return (full & ~a) | b
        return full & ~(a ^ b)

    return go(f)


def holds(belief: ModelSet, f: Formula, sig: Signature) -> bool:
    """Whether ``f`` belongs to the belief set with model set ``belief``."""
    return is_subset(belief, models_of(f, sig))


def expand(belief: ModelSet, f: Formula, sig: Signature) -> ModelSet:
    return belief & models_of(f, sig)


def formula_with_models(m: ModelSet, sig: Signature) -> Formula:
    """Canonical DNF with exactly the models ``m``; minterms by ascending index."""
    terms = []
    for w in members(m):
        lits = [Atom(a) if sig.is_true(w, i) else Not(Atom(a)) for i, a in enumerate(sig.atoms)]
        term = lits[0]
        for lit in lits[1:]:
            term = And(term, lit)
        terms.append(term)
    if not terms:
        return BOTTOM
    out = terms[0]
    for t in terms[1:]:
        out = Or(out, t)
    return out


def canonical_text(m: ModelSet, sig: Signature) -> str:
    return format_formula(formula_with_models(m, sig))


# --------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class TotalPreorder:
    """Ranks per interpretation; smaller rank is more plausible."""

    level: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "level", tuple(self.level))
        if any(r < 0 for r in self.level):
            raise ValueError("ranks must be non-negative")

    @classmethod
    def flat(cls, sig: Signature) -> "TotalPreorder":
        return cls((0,) * sig.size)

    def leq(self, w: int, v: int) -> bool:
        return self.level[w] <= self.level[v]


@dataclass(frozen=True)
class LinearOrder:
    """Interpretations listed from smallest (most preferred) to largest."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"not a permutation of the interpretations: {self.ranking}")

    @classmethod
    def parse(cls, text: str, sig: Signature) -> "LinearOrder":
        """Comma-separated bitstrings, e.g. ``"11,10,01,00"``."""
        parts = [p for p in text.split(",") if p.strip()]
        ranking = tuple(sig.parse_interp(p) for p in parts)
        if sorted(ranking) != list(sig.interpretations()):
            raise ValueError(f"order {text!r} must list each of the {sig.size} interpretations once")
        return cls(ranking)

    @classmethod
    def identity(cls, sig: Signature) -> "LinearOrder":
        return cls(tuple(sig.interpretations()))

    def text(self, sig: Signature) -> str:
        return ",".join(sig.interp_str(w) for w in self.ranking)

    def position(self, w: int) -> int:
        return self.ranking.index(w)

    def less(self, w: int, v: int) -> bool:
        return self.position(w) < self.position(v)

    def as_preorder(self) -> TotalPreorder:
        level = [0] * len(self.ranking)
        for pos, w in enumerate(self.ranking):
            level[w] = pos
        return TotalPreorder(tuple(level))


def min_of(m: ModelSet, order: LinearOrder | TotalPreorder) -> ModelSet:
    """Members of ``m`` that are minimal under ``order``."""
    if m == 0:
        return 0
    if isinstance(order, LinearOrder):
        for w in order.ranking:
            if (m >> w) & 1:
                return 1 << w
        raise ValueError("model set has members outside the order")
    ws = list(members(m))
    best = min(order.level[w] for w in ws)
    return sum(1 << w for w in ws if order.level[w] == best)
