"""Direct implementation of the satisfaction relation.

This is the slow, trusted oracle the rest of the package is checked
against: positions are enumerated exhaustively, set quantifiers range over
all subsets of positions.  Sugared nodes are evaluated by their meaning
directly, independently of abbreviation expansion, so the two paths
cross-check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from . import syntax as S
from .errors import EmptyWordRejected, UnboundVariable
from .syntax import Alphabet, Formula, free_vars, is_sentence


class EpsilonMode(Enum):
    """Whether the empty word belongs to the domain of discourse.

    EXCLUDE follows the primary semantics (words have at least one
    position); INCLUDE follows the variant in which quantifiers over an
    empty position set make existentials false and universals true.
    """

    EXCLUDE = "exclude"
    INCLUDE = "include"


@dataclass(frozen=True)
class Assignment:
    """Bindings for free variables: positions and sets of positions."""

    nu1: Mapping[str, int] = field(default_factory=dict)
    nu2: Mapping[str, frozenset[int]] = field(default_factory=dict)


def _epsilon_value(phi: Formula) -> bool:
    """Truth value of ``phi`` on the empty word under the INCLUDE semantics.

    No position exists: existentials are false, universals true, atoms
    mentioning position variables false, and sugared atoms take the value
    of their definitional expansion.
    """
    match phi:
        case S.TrueAtom() | S.ConstLessLast(_) | S.ConstGreaterLast(_):
            return True
        case S.FalseAtom() | S.Letter() | S.Less() | S.SetMember() | S.Succ() \
                | S.PlusOffset() | S.MinusOffset() | S.LessOffset() | S.GreaterOffset() \
                | S.LessConst() | S.SetNeq() | S.Neq() | S.Gt():
            return False
        case S.EqConst(_, k):
            return k == 0  # x = 0 is a vacuous universal; k > 0 an existential chain
        case S.GreaterConst(_, k):
            return k < 0  # x > negative constant expands to a tautology
        case S.First(_) | S.Last(_) | S.Eq(_, _) | S.Leq(_, _) | S.Geq(_, _) \
                | S.Subset(_, _) | S.SetEq(_, _):
            return True  # negated existentials, vacuously true on epsilon
        case S.Not(b):
            return not _epsilon_value(b)
        case S.Or(a, b):
            return _epsilon_value(a) or _epsilon_value(b)
        case S.And(a, b):
            return _epsilon_value(a) and _epsilon_value(b)
        case S.Implies(a, b):
            return (not _epsilon_value(a)) or _epsilon_value(b)
        case S.Iff(a, b):
            return _epsilon_value(a) == _epsilon_value(b)
        case S.ExistsFO() | S.ExistsSO():
            return False
        case S.ForallFO() | S.ForallSO():
            return True
        case _:
            raise TypeError(f"unknown formula node {phi!r}")


def _subsets(n: int) -> Iterable[frozenset[int]]:
    """Subsets of range(n) by increasing cardinality, lexicographic within."""
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            yield frozenset(combo)


def evaluate(word: Sequence[str], phi: Formula, assignment: Assignment | None = None,
             mode: EpsilonMode = EpsilonMode.EXCLUDE) -> bool:
    """Decide whether ``word`` satisfies ``phi`` under ``assignment``."""
    w = tuple(word)
    n = len(w)
    if assignment is None:
        assignment = Assignment()
    fv = free_vars(phi)
    missing = (fv.fo - set(assignment.nu1)) | (fv.so - set(assignment.nu2))
    if missing and n > 0:
        raise UnboundVariable(f"unassigned free variables: {sorted(missing)}")
    if n == 0:
        if mode is EpsilonMode.EXCLUDE:
            raise EmptyWordRejected("the empty word is outside the domain")
        return _epsilon_value(phi)
    for x, i in assignment.nu1.items():
        if not 0 <= i < n:
            raise UnboundVariable(f"position {i} of {x!r} outside word of length {n}")
    for X, sset in assignment.nu2.items():
        if any(not 0 <= i < n for i in sset):
            raise UnboundVariable(f"set {X!r} contains positions outside the word")

    env1: dict[str, int] = dict(assignment.nu1)
    env2: dict[str, frozenset[int]] = {k: frozenset(v) for k, v in assignment.nu2.items()}

    def pos(x: str) -> int:
        try:
            return env1[x]
        except KeyError:
            raise UnboundVariable(f"position variable {x!r} is unbound") from None

    def sset(X: str) -> frozenset[int]:
        try:
            return env2[X]
        except KeyError:
            raise UnboundVariable(f"set variable {X!r} is unbound") from None

    def rec(f: Formula) -> bool:
        match f:
            case S.Letter(a, x):
                return w[pos(x)] == a
            case S.Less(x, y):
                return pos(x) < pos(y)
            case S.SetMember(X, x):
                return pos(x) in sset(X)
            case S.Not(b):
                return not rec(b)
            case S.Or(a, b):
                return rec(a) or rec(b)
            case S.ExistsFO(x, b):
                saved = env1.get(x)
                had = x in env1
                for i in range(n):
                    env1[x] = i
                    if rec(b):
                        env1.pop(x)
                        if had:
                            env1[x] = saved
                        return True
                env1.pop(x, None)
                if had:
                    env1[x] = saved
                return False
            case S.ExistsSO(X, b):
                saved = env2.get(X)
                had = X in env2
                for sub in _subsets(n):
                    env2[X] = sub
                    if rec(b):
                        env2.pop(X)
                        if had:
                            env2[X] = saved
                        return True
                env2.pop(X, None)
                if had:
                    env2[X] = saved
                return False
            # sugar, evaluated directly by its meaning
            case S.And(a, b):
                return rec(a) and rec(b)
            case S.Implies(a, b):
                return (not rec(a)) or rec(b)
            case S.Iff(a, b):
                return rec(a) == rec(b)
            case S.ForallFO(x, b):
                return not rec(S.ExistsFO(x, S.Not(b)))
            case S.ForallSO(X, b):
                return not rec(S.ExistsSO(X, S.Not(b)))
            case S.Eq(x, y):
                return pos(x) == pos(y)
            case S.Neq(x, y):
                return pos(x) != pos(y)
            case S.Leq(x, y):
                return pos(x) <= pos(y)
            case S.Geq(x, y):
                return pos(x) >= pos(y)
            case S.Gt(x, y):
                return pos(x) > pos(y)
            case S.EqConst(x, k):
                return pos(x) == k
            case S.PlusOffset(y, x, k):
                return pos(y) == pos(x) + k
            case S.MinusOffset(y, x, k):
                return pos(y) == pos(x) - k
            case S.Succ(x, y):
                return pos(y) == pos(x) + 1
            case S.First(x):
                return pos(x) == 0
            case S.Last(x):
                return pos(x) == n - 1
            case S.LessOffset(x, y, k):
                return pos(x) < pos(y) + k
            case S.GreaterOffset(x, y, k):
                return pos(x) > pos(y) + k
            case S.LessConst(x, k):
                return pos(x) < k
            case S.GreaterConst(x, k):
                return pos(x) > k
            case S.ConstLessLast(k):
                return k < n - 1
            case S.ConstGreaterLast(k):
                return k > n - 1
            case S.Subset(X, Y):
                return sset(X) <= sset(Y)
            case S.SetEq(X, Y):
                return sset(X) == sset(Y)
            case S.SetNeq(X, Y):
                return sset(X) != sset(Y)
            case S.TrueAtom():
                return True
            case S.FalseAtom():
                return False
            case _:
                raise TypeError(f"unknown formula node {f!r}")

    return rec(phi)


def words_over(alphabet: Alphabet, length: int) -> Iterable[str]:
    """All words of exactly ``length`` letters, lexicographic in alphabet order."""
    for combo in itertools.product(alphabet.symbols, repeat=length):
        yield "".join(combo)


def language_sample(phi: Formula, alphabet: Alphabet, max_len: int,
                    mode: EpsilonMode = EpsilonMode.EXCLUDE) -> list[str]:
    """All words up to ``max_len`` satisfying the sentence ``phi``, shortlex.

    Exhaustive enumeration; the caller bounds ``max_len``.
    """
    if not is_sentence(phi):
        raise ValueError("language_sample requires a sentence")
    lo = 0 if mode is EpsilonMode.INCLUDE else 1
    out = []
    for length in range(lo, max_len + 1):
        for word in words_over(alphabet, length):
            if evaluate(word, phi, None, mode):
                out.append(word)
    return out
