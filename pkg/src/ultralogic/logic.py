"""The deductive system S: conjunction axioms, Modus Ponens, closure.

The system has four axiom schemata
    (1) (A & B) -> A
    (2) (A & B) -> B
    (3) A & (B & C) -> (A & B) & C
    (4) (A & B) & C -> A & (B & C)
and Modus Ponens as the only inference rule.  Everything here is about the
finite consequence sets this machinery generates over conjunction-heavy
premise sets, plus sanity checks against classical truth-table consequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .formula import (
    Atom,
    Conj,
    Formula,
    Impl,
    atoms,
    conj_atoms_in_order,
    is_conjunctive,
    left_assoc_conj,
)


class LogicError(Exception):
    pass


class TooFewAtoms(LogicError):
    pass


class DuplicateAtom(LogicError):
    pass


class NotAnUltraword(LogicError):
    pass


def is_axiom(f: Formula) -> Optional[int]:
    """Schema id 1-4 if f instantiates an axiom schema, else None."""
    if not isinstance(f, Impl):
        return None
    left, right = f.left, f.right
    if isinstance(left, Conj):
        if left.left == right:
            return 1
        if left.right == right:
            return 2
    # A & (B & C) -> (A & B) & C
    if (
        isinstance(left, Conj)
        and isinstance(left.right, Conj)
        and isinstance(right, Conj)
        and isinstance(right.left, Conj)
        and right.left.left == left.left
        and right.left.right == left.right.left
        and right.right == left.right.right
    ):
        return 3
    # (A & B) & C -> A & (B & C)
    if (
        isinstance(left, Conj)
        and isinstance(left.left, Conj)
        and isinstance(right, Conj)
        and isinstance(right.right, Conj)
        and right.left == left.left.left
        and right.right.left == left.left.right
        and right.right.right == left.right
    ):
        return 4
    return None


def closure(gamma: Iterable[Formula]) -> FrozenSet[Formula]:
    """Least superset of gamma closed under the derivable moves of S.

    Moves: split a conjunction into its halves (schemata 1,2 + MP),
    reassociate (schemata 3,4 + MP), and MP between two members.  Pure
    axiom instances are not included; `member` accounts for them.
    """
    derived: Set[Formula] = set(gamma)
    frontier: List[Formula] = sorted(derived, key=str)
    while frontier:
        new: Set[Formula] = set()
        for f in frontier:
            for g in _one_step(f, derived):
                if g not in derived:
                    new.add(g)
        # MP between members: antecedent may itself be newly derived
        for f in list(derived):
            if isinstance(f, Impl) and f.left in derived and f.right not in derived:
                new.add(f.right)
        derived |= new
        frontier = sorted(new, key=str)
    return frozenset(derived)


def _one_step(f: Formula, have: Set[Formula]) -> Iterable[Formula]:
    if isinstance(f, Conj):
        yield f.left
        yield f.right
        if isinstance(f.right, Conj):
            yield Conj(Conj(f.left, f.right.left), f.right.right)
        if isinstance(f.left, Conj):
            yield Conj(f.left.left, Conj(f.left.right, f.right))
    if isinstance(f, Impl):
        if f.left in have or is_axiom(f.left) is not None:
            yield f.right


def member(x: Formula, gamma: Iterable[Formula]) -> bool:
    """Membership in the full consequence set: closure plus axiom instances."""
    return is_axiom(x) is not None or x in closure(gamma)


def make_ultraword(atom_list: List[Atom], n: Optional[int] = None) -> Formula:
    """Left-ordered conjunction (((F0 & F1) & F2) & ...) of distinct atoms."""
    if n is not None:
        atom_list = atom_list[:n]
    if len(atom_list) < 2:
        raise TooFewAtoms("an ultraword needs at least 2 atoms")
    if len(set(atom_list)) != len(atom_list):
        raise DuplicateAtom("ultraword atoms must be distinct")
    return left_assoc_conj(atom_list)


def ultimate_witness(witnesses: List[Formula]) -> Formula:
    """Left-ordered conjunction of whole witness formulas.

    The closure of the result contains every witness and, transitively,
    every consequence of every witness.
    """
    if len(witnesses) < 2:
        raise TooFewAtoms("need at least 2 witnesses")
    return left_assoc_conj(witnesses)


# -- proof traces -----------------------------------------------------------


@dataclass(frozen=True)
class Step:
    formula: Formula
    justification: Tuple  # ("hypothesis",) | ("axiom", id) | ("mp", i, j)


@dataclass(frozen=True)
class ProofTrace:
    steps: Tuple[Step, ...]

    def conclusions(self) -> List[Formula]:
        return [s.formula for s in self.steps]


def validate_trace(trace: ProofTrace, hypotheses: Set[Formula]) -> bool:
    for k, step in enumerate(trace.steps):
        kind = step.justification[0]
        if kind == "hypothesis":
            if step.formula not in hypotheses:
                return False
        elif kind == "axiom":
            if is_axiom(step.formula) != step.justification[1]:
                return False
        elif kind == "mp":
            i, j = step.justification[1], step.justification[2]
            if not (i < k and j < k):
                return False
            major = trace.steps[j].formula
            if not isinstance(major, Impl):
                return False
            if major.left != trace.steps[i].formula or major.right != step.formula:
                return False
        else:
            return False
    return True


def _require_ultraword(w: Formula) -> Tuple[Atom, ...]:
    if isinstance(w, Atom) or not is_conjunctive(w):
        raise NotAnUltraword(f"not a left-ordered conjunction of atoms: {w}")
    seq = conj_atoms_in_order(w)
    if len(set(seq)) != len(seq):
        raise NotAnUltraword("atoms must be distinct")
    if w != left_assoc_conj(seq):
        raise NotAnUltraword("conjunction is not left-ordered")
    return seq


def unfold(w: Formula) -> ProofTrace:
    """Derive each atom of a left-ordered ultraword, in list order.

    Pattern per conjunction layer: axiom (1), MP to peel the left part,
    axiom (2), MP to emit the rightmost atom; recursion on the left part
    keeps atom conclusions in increasing order.
    """
    seq = _require_ultraword(w)
    steps: List[Step] = [Step(w, ("hypothesis",))]
    index_of: Dict[Formula, int] = {w: 0}

    def peel(f: Formula):
        # reduce f = g & last to g, emitting atoms of g first
        if isinstance(f, Atom):
            return
        ax1 = Impl(f, f.left)
        steps.append(Step(ax1, ("axiom", 1)))
        steps.append(Step(f.left, ("mp", index_of[f], len(steps) - 1)))
        index_of[f.left] = len(steps) - 1
        peel(f.left)
        ax2 = Impl(f, f.right)
        steps.append(Step(ax2, ("axiom", 2)))
        steps.append(Step(f.right, ("mp", index_of[f], len(steps) - 1)))
        index_of[f.right] = len(steps) - 1

    peel(w)
    trace = ProofTrace(tuple(steps))
    emitted = [s.formula for s in trace.steps if isinstance(s.formula, Atom)]
    assert emitted == list(seq)
    return trace


# -- characterization -------------------------------------------------------


@dataclass(frozen=True)
class Characterization:
    q_set: FrozenSet[Formula]
    d_prime: FrozenSet[Atom]

    def __post_init__(self):
        q_atoms = set()
        for f in self.q_set:
            q_atoms |= atoms(f)
        assert q_atoms == set(self.d_prime)
        assert not (self.q_set & self.d_prime)
        for f in self.q_set | self.d_prime:
            assert is_axiom(f) is None


def characterize(w: Formula) -> Characterization:
    """Split closure({w}) into conjunctions (Q) and atoms (d')."""
    _require_ultraword(w)
    derived = closure([w])
    d_prime = frozenset(f for f in derived if isinstance(f, Atom))
    q_set = frozenset(f for f in derived if isinstance(f, Conj))
    assert w in q_set
    return Characterization(q_set=q_set, d_prime=d_prime)


# -- consequence-operator axioms -------------------------------------------


@dataclass
class OperatorReport:
    extensive: bool = True
    idempotent: bool = True
    monotone: bool = True
    finitary: bool = True
    counterexamples: Dict[str, tuple] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return self.extensive and self.idempotent and self.monotone and self.finitary


def verify_operator_axioms(op, universe: Iterable[Formula]) -> OperatorReport:
    """Check the consequence-operator axioms of op over all subsets of universe.

    op maps a frozenset of formulas to a set of formulas.  Results that
    escape the universe are ignored for the subset enumeration but kept in
    the containment comparisons.
    """
    universe = sorted(set(universe), key=str)
    report = OperatorReport()
    subsets = [frozenset(c) for n in range(len(universe) + 1) for c in itertools.combinations(universe, n)]
    values = {g: frozenset(op(g)) for g in subsets}
    for g in subsets:
        cg = values[g]
        if not g <= cg and report.extensive:
            report.extensive = False
            report.counterexamples["extensive"] = (g,)
        inner = frozenset(op(cg))
        if inner != cg and report.idempotent:
            report.idempotent = False
            report.counterexamples["idempotent"] = (g,)
        fin = frozenset().union(*(values[frozenset(c)] for n in range(len(g) + 1) for c in itertools.combinations(sorted(g, key=str), n))) if g else values[g]
        if fin != cg and report.finitary:
            report.finitary = False
            report.counterexamples["finitary"] = (g,)
    for g in subsets:
        for h in subsets:
            if g <= h and not values[g] <= values[h]:
                if report.monotone:
                    report.monotone = False
                    report.counterexamples["monotone"] = (g, h)
    return report


def continuity_shadow(op, x_set: Iterable[Formula]):
    """Monotone-image check: for all B <= A <= X, op(B) <= op(A).

    Returns (True, None) or (False, (B, A)) with the first witness pair.
    """
    elems = sorted(set(x_set), key=str)
    subsets = [frozenset(c) for n in range(len(elems) + 1) for c in itertools.combinations(elems, n)]
    values = {g: frozenset(op(g)) for g in subsets}
    for a in subsets:
        for b in subsets:
            if b <= a and not values[b] <= values[a]:
                return False, (b, a)
    return True, None


# -- classical comparison ---------------------------------------------------


def _eval_formula(f: Formula, assignment: Dict[Atom, bool]) -> bool:
    if isinstance(f, Atom):
        return assignment[f]
    if isinstance(f, Conj):
        return _eval_formula(f.left, assignment) and _eval_formula(f.right, assignment)
    return (not _eval_formula(f.left, assignment)) or _eval_formula(f.right, assignment)


def classical_consequence(gamma: Iterable[Formula], x: Formula, atom_universe=None) -> bool:
    """Truth-table entailment gamma |= x."""
    gamma = list(gamma)
    base = set()
    for f in gamma:
        base |= atoms(f)
    base |= atoms(x)
    if atom_universe:
        base |= set(atom_universe)
    base = sorted(base, key=str)
    for bits in itertools.product([False, True], repeat=len(base)):
        assignment = dict(zip(base, bits))
        if all(_eval_formula(f, assignment) for f in gamma):
            if not _eval_formula(x, assignment):
                return False
    return True


@dataclass(frozen=True)
class ClassicalReport:
    sound: bool
    unsound_witness: Optional[Formula]
    strict_witness: Optional[Formula]


def classical_compare(gamma: Iterable[Formula], atom_universe: Iterable[Atom]) -> ClassicalReport:
    """Soundness of S against truth tables, plus a strictness witness.

    Every member of closure(gamma) must be a classical consequence of
    gamma; strictness is shown by a classical consequence outside S, here
    the reflexivity tautology a -> a (never an axiom instance and never
    produced by the closure moves).
    """
    gamma = list(gamma)
    derived = closure(gamma)
    unsound = None
    for f in derived:
        if not classical_consequence(gamma, f, atom_universe):
            unsound = f
            break
    a = sorted(set(atom_universe), key=str)[0]
    candidate = Impl(a, a)
    strict = None
    if classical_consequence(gamma, candidate) and not member(candidate, gamma):
        strict = candidate
    return ClassicalReport(sound=unsound is None, unsound_witness=unsound, strict_witness=strict)
