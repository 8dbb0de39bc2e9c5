"""Seeded generators: random formulas, equivalent rewrites, spaces and tables."""
from __future__ import annotations

import random
from itertools import combinations

from .logic import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Const,
    Formula,
    Iff,
    Implies,
    LinearOrder,
    ModelSet,
    Not,
    Or,
    Signature,
    subsets,
    supersets,
)
from .operators import OperatorTable
from .space import EpistemicSpace


def random_formula(sig: Signature, rng: random.Random, depth: int = 3) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.1:
            return TOP if rng.random() < 0.5 else BOTTOM
        return Atom(rng.choice(sig.atoms))
    op = rng.choice([Not, And, Or, Implies, Iff])
    if op is Not:
        return Not(random_formula(sig, rng, depth - 1))
    return op(random_formula(sig, rng, depth - 1), random_formula(sig, rng, depth - 1))


def random_variant(f: Formula, rng: random.Random, steps: int = 3) -> Formula:
    """A syntactically different but classically equivalent formula."""
    for _ in range(steps):
        f = _rewrite(f, rng)
    return f


def _rewrite(f: Formula, rng: random.Random) -> Formula:
    # descend into a random subterm half of the time
    if rng.random() < 0.5:
        if isinstance(f, Not):
            return Not(_rewrite(f.arg, rng))
        if isinstance(f, (And, Or, Implies, Iff)):
            if rng.random() < 0.5:
                return type(f)(_rewrite(f.left, rng), f.right)
            return type(f)(f.left, _rewrite(f.right, rng))
    if isinstance(f, And):
        choice = rng.randrange(3)
        if choice == 0:
            return And(f.right, f.left)
        if choice == 1:
            return Not(Or(Not(f.left), Not(f.right)))
        return Not(Implies(f.left, Not(f.right)))
    if isinstance(f, Or):
        choice = rng.randrange(3)
        if choice == 0:
            return Or(f.right, f.left)
        if choice == 1:
            return Not(And(Not(f.left), Not(f.right)))
        return Implies(Not(f.left), f.right)
    if isinstance(f, Implies):
        return Or(Not(f.left), f.right) if rng.random() < 0.5 else Implies(Not(f.right), Not(f.left))
    if isinstance(f, Iff):
        return And(Implies(f.left, f.right), Implies(f.right, f.left)) if rng.random() < 0.5 else Iff(f.right, f.left)
    if isinstance(f, Not) and isinstance(f.arg, Not) and rng.random() < 0.5:
        return f.arg.arg
    if isinstance(f, Const):
        return Not(Const(not f.value))
    choice = rng.randrange(3)
    if choice == 0:
        return Not(Not(f))
    if choice == 1:
        return And(f, TOP)
    return Or(f, BOTTOM)


def random_order(sig: Signature, rng: random.Random) -> LinearOrder:
    ranking = list(sig.interpretations())
    rng.shuffle(ranking)
    return LinearOrder(tuple(ranking))


# --------------------------------------------------------------------------
# spaces


def state_name(m: ModelSet, sig: Signature) -> str:
    strs = sig.model_strs(m)
    return "psi_" + "_".join(strs) if strs else "psi_bot"


def space_of_family(family, sig: Signature) -> EpistemicSpace:
    """One state per model set, in ascending bitmask order."""
    ms = sorted(set(family))
    return EpistemicSpace(sig, tuple(state_name(m, sig) for m in ms), {state_name(m, sig): m for m in ms})


def all_families(sig: Signature) -> list[tuple[ModelSet, ...]]:
    """Every non-empty family of model sets, by size then lexicographically."""
    universe = range(sig.num_model_sets)
    return [c for r in range(1, len(universe) + 1) for c in combinations(universe, r)]


def random_family(sig: Signature, rng: random.Random, style: int | None = None) -> frozenset[ModelSet]:
    """Mixture of shapes so that every realizability verdict shows up."""
    k = sig.num_model_sets
    full = sig.full
    style = rng.randrange(5) if style is None else style
    fam: set[ModelSet] = set()
    if style == 0:
        fam = {m for m in range(k) if rng.random() < 0.5}
    elif style == 1:
        # upward closed
        for seed in rng.sample(range(k), rng.randint(1, 3)):
            fam.update(supersets(seed, full))
    elif style == 2:
        # downward closed plus all singletons
        for seed in rng.sample(range(k), rng.randint(1, 3)):
            fam.update(subsets(seed))
        fam.update(1 << w for w in sig.interpretations())
    elif style == 3:
        fam = set(range(k)) - set(rng.sample(range(k), rng.randint(0, 3)))
    else:
        for seed in rng.sample(range(k), rng.randint(1, 2)):
            fam.update(supersets(seed, full) if rng.random() < 0.5 else subsets(seed))
        if rng.random() < 0.5:
            fam.update(1 << w for w in sig.interpretations())
        if rng.random() < 0.5:
            fam.discard(rng.choice(sorted(fam)))
    if not fam:
        fam = {rng.randrange(k)}
    return frozenset(fam)


def random_space(sig: Signature, rng: random.Random, max_states: int = 5) -> EpistemicSpace:
    """Named states with possibly repeated beliefs."""
    n_states = rng.randint(1, max_states)
    ids = [f"s{i}" for i in range(n_states)]
    return EpistemicSpace(sig, tuple(ids), {s: rng.randrange(sig.num_model_sets) for s in ids})


def random_table(space: EpistemicSpace, kind: str, rng: random.Random) -> OperatorTable:
    k = space.sig.num_model_sets
    rows = tuple(tuple(rng.choice(space.states) for _ in range(k)) for _ in space.states)
    return OperatorTable(space, kind, rows)
