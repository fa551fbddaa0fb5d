"""Finite automata over track alphabets.

Symbols pair a letter with a vector of k membership bits, one per free set
variable; k = 0 gives ordinary automata over the alphabet.  All automata
are immutable; every operation returns a new value.  Witnesses and
counterexamples are always the shortlex-least word, so output is stable.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from .errors import BadTrack, TrackMismatch
from .syntax import Alphabet


class TrackSymbol(NamedTuple):
    """One input symbol: a letter plus one bit per track."""

    letter: str
    bits: tuple[int, ...]

    def drop(self, i: int) -> "TrackSymbol":
        return TrackSymbol(self.letter, self.bits[:i] + self.bits[i + 1:])


Word = tuple[TrackSymbol, ...]
Transition = tuple[int, TrackSymbol, int]


@lru_cache(maxsize=None)
def all_symbols(alphabet: Alphabet, tracks: int) -> tuple[TrackSymbol, ...]:
    """Every symbol of the track alphabet, in canonical order."""
    return tuple(TrackSymbol(a, bits)
                 for a in alphabet.symbols
                 for bits in itertools.product((0, 1), repeat=tracks))


def sym(letter: str, *bits: int) -> TrackSymbol:
    return TrackSymbol(letter, tuple(bits))


def _coerce_word(word, tracks: int) -> Word:
    out = []
    for s in word:
        if isinstance(s, TrackSymbol):
            out.append(s)
        elif isinstance(s, str):
            out.append(TrackSymbol(s, ()))
        else:
            letter, bits = s
            out.append(TrackSymbol(letter, tuple(bits)))
    for s in out:
        if len(s.bits) != tracks:
            raise TrackMismatch(f"symbol {s} does not have {tracks} tracks")
    return tuple(out)


def word_str(word: Word) -> str:
    """Compact printable form; plain letters concatenate when k = 0."""
    if all(not s.bits for s in word):
        return "".join(s.letter for s in word)
    return " ".join(f"({s.letter},{','.join(map(str, s.bits))})" for s in word)


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic finite automaton without epsilon transitions."""

    alphabet: Alphabet
    tracks: int
    n_states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    transitions: frozenset[Transition]

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(
            (p, TrackSymbol(s[0], tuple(s[1])), q) for (p, s, q) in self.transitions))
        if self.n_states < 1:
            raise ValueError("automaton needs at least one state")
        for q in self.initial | self.accepting:
            if not 0 <= q < self.n_states:
                raise ValueError(f"state {q} out of range")
        for (p, s, q) in self.transitions:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states):
                raise ValueError(f"transition endpoint out of range: {(p, s, q)}")
            if len(s.bits) != self.tracks:
                raise TrackMismatch(f"symbol {s} does not have {self.tracks} tracks")
            if s.letter not in self.alphabet:
                raise ValueError(f"letter {s.letter!r} not in alphabet")

    # -- derived lookup tables -------------------------------------------

    @cached_property
    def _out(self) -> dict[tuple[int, TrackSymbol], frozenset[int]]:
        table: dict[tuple[int, TrackSymbol], set[int]] = {}
        for (p, s, q) in self.transitions:
            table.setdefault((p, s), set()).add(q)
        return {k: frozenset(v) for k, v in table.items()}

    @cached_property
    def symbols(self) -> tuple[TrackSymbol, ...]:
        return all_symbols(self.alphabet, self.tracks)

    def _step(self, states: frozenset[int], s: TrackSymbol) -> frozenset[int]:
        nxt: set[int] = set()
        for p in states:
            nxt |= self._out.get((p, s), frozenset())
        return frozenset(nxt)

    def _check_compatible(self, other: "Nfa") -> None:
        if self.alphabet != other.alphabet or self.tracks != other.tracks:
            raise TrackMismatch("automata differ in alphabet or track count")

    # -- basic queries ----------------------------------------------------

    def accepts(self, word) -> bool:
        """True iff some run over ``word`` leads from initial to accepting."""
        current = frozenset(self.initial)
        for s in _coerce_word(word, self.tracks):
            if s.letter not in self.alphabet:
                raise TrackMismatch(f"letter {s.letter!r} not in alphabet")
            current = self._step(current, s)
            if not current:
                return False
        return bool(current & self.accepting)

    def is_deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        return all(len(v) <= 1 for v in self._out.values())

    def is_complete(self) -> bool:
        return all((q, s) in self._out
                   for q in range(self.n_states) for s in self.symbols)

    # -- constructions ----------------------------------------------------

    def totalize(self) -> "Nfa":
        """Add a non-accepting sink so every (state, symbol) has a successor."""
        missing = [(q, s) for q in range(self.n_states) for s in self.symbols
                   if (q, s) not in self._out]
        if not missing:
            return self
        sink = self.n_states
        extra = {(q, s, sink) for (q, s) in missing}
        extra |= {(sink, s, sink) for s in self.symbols}
        return Nfa(self.alphabet, self.tracks, sink + 1, self.initial,
                   self.accepting, self.transitions | extra)

    def determinize(self) -> "Dfa":
        """Subset construction; the result is total and deterministic."""
        start = frozenset(self.initial)
        index: dict[frozenset[int], int] = {start: 0}
        queue: deque[frozenset[int]] = deque([start])
        transitions: set[Transition] = set()
        accepting: set[int] = set()
        while queue:
            subset = queue.popleft()
            i = index[subset]
            if subset & self.accepting:
                accepting.add(i)
            for s in self.symbols:
                target = self._step(subset, s)
                if target not in index:
                    index[target] = len(index)
                    queue.append(target)
                transitions.add((i, s, index[target]))
        return Dfa(self.alphabet, self.tracks, len(index), frozenset({0}),
                   frozenset(accepting), frozenset(transitions))

    def product(self, other: "Nfa", combine: str) -> "Nfa":
        """Synchronous product: ``and`` intersects, ``or`` unites languages.

        Union requires complete inputs, so both are totalized first.
        """
        self._check_compatible(other)
        if combine not in ("and", "or"):
            raise ValueError(f"combine must be 'and' or 'or', got {combine!r}")
        a, b = (self.totalize(), other.totalize()) if combine == "or" else (self, other)
        index: dict[tuple[int, int], int] = {}
        queue: deque[tuple[int, int]] = deque()
        for p in sorted(a.initial):
            for q in sorted(b.initial):
                if (p, q) not in index:
                    index[(p, q)] = len(index)
                    queue.append((p, q))
        transitions: set[Transition] = set()
        accepting: set[int] = set()
        while queue:
            p, q = queue.popleft()
            i = index[(p, q)]
            in_a = p in a.accepting
            in_b = q in b.accepting
            if (in_a and in_b) if combine == "and" else (in_a or in_b):
                accepting.add(i)
            for s in a.symbols:
                for p2 in sorted(a._out.get((p, s), frozenset())):
                    for q2 in sorted(b._out.get((q, s), frozenset())):
                        if (p2, q2) not in index:
                            index[(p2, q2)] = len(index)
                            queue.append((p2, q2))
                        transitions.add((i, s, index[(p2, q2)]))
        if not index:
            return Nfa(self.alphabet, self.tracks, 1, frozenset({0}),
                       frozenset(), frozenset())
        return Nfa(self.alphabet, self.tracks, len(index),
                   frozenset({index[k] for k in index if k[0] in a.initial and k[1] in b.initial}),
                   frozenset(accepting), frozenset(transitions))

    def complement(self) -> "Dfa":
        """Determinize, then flip acceptance; exact within the track alphabet."""
        det = self.determinize()
        return Dfa(det.alphabet, det.tracks, det.n_states, det.initial,
                   frozenset(range(det.n_states)) - det.accepting, det.transitions)

    def project(self, track: int) -> "Nfa":
        """Erase one track; implements existential quantification over it."""
        if not 0 <= track < self.tracks:
            raise BadTrack(f"track {track} out of range 0..{self.tracks - 1}")
        return Nfa(self.alphabet, self.tracks - 1, self.n_states, self.initial,
                   self.accepting,
                   frozenset((p, s.drop(track), q) for (p, s, q) in self.transitions))

    def trim(self) -> "Nfa":
        """Keep states both reachable and co-reachable, renumbered by BFS."""
        reach: set[int] = set()
        queue = deque(sorted(self.initial))
        reach.update(queue)
        while queue:
            p = queue.popleft()
            for s in self.symbols:
                for q in self._out.get((p, s), frozenset()):
                    if q not in reach:
                        reach.add(q)
                        queue.append(q)
        back: dict[int, set[int]] = {}
        for (p, _, q) in self.transitions:
            back.setdefault(q, set()).add(p)
        co: set[int] = set(self.accepting)
        queue = deque(sorted(self.accepting))
        while queue:
            q = queue.popleft()
            for p in back.get(q, ()):
                if p not in co:
                    co.add(p)
                    queue.append(p)
        live = reach & co
        if not live:
            return Nfa(self.alphabet, self.tracks, 1, frozenset({0}),
                       frozenset(), frozenset())
        order: list[int] = []
        seen: set[int] = set()
        queue = deque(sorted(self.initial & live))
        seen.update(queue)
        while queue:
            p = queue.popleft()
            order.append(p)
            for s in self.symbols:
                for q in sorted(self._out.get((p, s), frozenset())):
                    if q in live and q not in seen:
                        seen.add(q)
                        queue.append(q)
        renum = {p: i for i, p in enumerate(order)}
        return Nfa(self.alphabet, self.tracks, len(order),
                   frozenset(renum[p] for p in self.initial & live),
                   frozenset(renum[p] for p in self.accepting & live),
                   frozenset((renum[p], s, renum[q]) for (p, s, q) in self.transitions
                             if p in live and q in live))

    def star(self) -> "Nfa":
        """Kleene star; used to witness non-closure results, not by compile."""
        fresh = self.n_states
        transitions = set(self.transitions)
        for p in sorted(self.initial):
            for s in self.symbols:
                for q in self._out.get((p, s), frozenset()):
                    transitions.add((fresh, s, q))
        for (p, s, q) in list(transitions):
            if q in self.accepting:
                for i in self.initial:
                    transitions.add((p, s, i))
        return Nfa(self.alphabet, self.tracks, fresh + 1,
                   frozenset({fresh}), self.accepting | {fresh},
                   frozenset(transitions))

    def concat(self, other: "Nfa") -> "Nfa":
        """Language concatenation via the standard epsilon-free construction."""
        self._check_compatible(other)
        shift = self.n_states
        transitions: set[Transition] = set(self.transitions)
        transitions |= {(p + shift, s, q + shift) for (p, s, q) in other.transitions}
        for (p, s, q) in self.transitions:
            if q in self.accepting:
                for i in other.initial:
                    transitions.add((p, s, i + shift))
        initial = set(self.initial)
        if self.initial & self.accepting:
            initial |= {i + shift for i in other.initial}
        accepting = {q + shift for q in other.accepting}
        if other.initial & other.accepting:
            accepting |= set(self.accepting)
        return Nfa(self.alphabet, self.tracks, shift + other.n_states,
                   frozenset(initial), frozenset(accepting), frozenset(transitions))

    def with_epsilon(self, want: bool) -> "Nfa":
        """Force membership of the empty word without touching other words."""
        has = bool(self.initial & self.accepting)
        if has == want:
            return self
        fresh = self.n_states
        transitions = set(self.transitions)
        for p in sorted(self.initial):
            for s in self.symbols:
                for q in self._out.get((p, s), frozenset()):
                    transitions.add((fresh, s, q))
        accepting = self.accepting | {fresh} if want else self.accepting
        return Nfa(self.alphabet, self.tracks, fresh + 1, frozenset({fresh}),
                   frozenset(accepting), frozenset(transitions))

    # -- decision procedures ----------------------------------------------

    def shortest_word(self) -> Word | None:
        """Shortlex-least accepted word, or None if the language is empty."""
        if self.initial & self.accepting:
            return ()
        start = frozenset(self.initial)
        words: dict[frozenset[int], Word] = {start: ()}
        queue: deque[frozenset[int]] = deque([start])
        while queue:
            subset = queue.popleft()
            base = words[subset]
            for s in self.symbols:
                target = self._step(subset, s)
                if not target or target in words:
                    continue
                words[target] = base + (s,)
                if target & self.accepting:
                    return words[target]
                queue.append(target)
        return None

    def is_empty(self) -> bool:
        return self.shortest_word() is None

    def counterexample(self, other: "Nfa") -> Word | None:
        """Shortlex-least word on which the two languages differ."""
        self._check_compatible(other)
        a = self.determinize()
        b = other.determinize()
        ia = next(iter(a.initial))
        ib = next(iter(b.initial))
        pair = (ia, ib)
        if (ia in a.accepting) != (ib in b.accepting):
            return ()
        words: dict[tuple[int, int], Word] = {pair: ()}
        queue: deque[tuple[int, int]] = deque([pair])
        while queue:
            p, q = queue.popleft()
            base = words[(p, q)]
            for s in a.symbols:
                p2 = next(iter(a._out[(p, s)]))
                q2 = next(iter(b._out[(q, s)]))
                if (p2, q2) in words:
                    continue
                words[(p2, q2)] = base + (s,)
                if (p2 in a.accepting) != (q2 in b.accepting):
                    return words[(p2, q2)]
                queue.append((p2, q2))
        return None

    def equivalent(self, other: "Nfa") -> bool:
        return self.counterexample(other) is None

    def containment_counterexample(self, other: "Nfa") -> Word | None:
        """Shortlex-least word accepted here but not by ``other``."""
        return self.product(other.complement(), "and").shortest_word()

    def contained_in(self, other: "Nfa") -> bool:
        """True iff every word accepted here is accepted by ``other``."""
        return self.containment_counterexample(other) is None

    def enumerate_words(self, max_len: int) -> list:
        """Accepted words of length <= max_len, shortlex; strings when k = 0."""
        out: list[Word] = []
        if self.initial & self.accepting:
            out.append(())
        frontier: list[tuple[Word, frozenset[int]]] = [((), frozenset(self.initial))]
        for _ in range(max_len):
            nxt: list[tuple[Word, frozenset[int]]] = []
            for word, states in frontier:
                for s in self.symbols:
                    target = self._step(states, s)
                    if not target:
                        continue
                    grown = word + (s,)
                    if target & self.accepting:
                        out.append(grown)
                    nxt.append((grown, target))
            frontier = nxt
        if self.tracks == 0:
            return ["".join(s.letter for s in w) for w in out]
        return out


class Dfa(Nfa):
    """Total deterministic automaton: one initial state, one successor per
    (state, symbol) pair; checked structurally at construction."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.initial) != 1:
            raise ValueError("DFA needs exactly one initial state")
        seen: set[tuple[int, TrackSymbol]] = set()
        for (p, s, _) in self.transitions:
            if (p, s) in seen:
                raise ValueError(f"nondeterministic on {(p, s)}")
            seen.add((p, s))
        want = self.n_states * len(self.symbols)
        if len(seen) != want:
            raise ValueError("transition function is not total")

    def delta(self, state: int, s: TrackSymbol) -> int:
        return next(iter(self._out[(state, s)]))

    def determinize(self) -> "Dfa":
        return self

    def minimize(self) -> "Dfa":
        """Unique minimal complete DFA via Hopcroft partition refinement."""
        # restrict to reachable states first
        reach: list[int] = []
        seen: set[int] = set(self.initial)
        queue = deque(self.initial)
        while queue:
            p = queue.popleft()
            reach.append(p)
            for s in self.symbols:
                q = self.delta(p, s)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        states = sorted(seen)
        pred: dict[TrackSymbol, dict[int, set[int]]] = {s: {} for s in self.symbols}
        for p in states:
            for s in self.symbols:
                pred[s].setdefault(self.delta(p, s), set()).add(p)

        acc = frozenset(q for q in states if q in self.accepting)
        rej = frozenset(states) - acc
        partition: set[frozenset[int]] = {b for b in (acc, rej) if b}
        work: deque[frozenset[int]] = deque(partition)
        while work:
            splitter = work.popleft()
            for s in self.symbols:
                x = set()
                for q in splitter:
                    x |= pred[s].get(q, set())
                if not x:
                    continue
                for block in list(partition):
                    inside = block & x
                    outside = block - x
                    if inside and outside:
                        partition.remove(block)
                        partition.update((frozenset(inside), frozenset(outside)))
                        if block in work:
                            work.remove(block)
                            work.append(frozenset(inside))
                            work.append(frozenset(outside))
                        else:
                            work.append(frozenset(inside) if len(inside) <= len(outside)
                                        else frozenset(outside))

        block_of = {q: block for block in partition for q in block}
        init_block = block_of[next(iter(self.initial))]
        order: list[frozenset[int]] = [init_block]
        index = {init_block: 0}
        queue2 = deque([init_block])
        while queue2:
            block = queue2.popleft()
            rep = min(block)
            for s in self.symbols:
                target = block_of[self.delta(rep, s)]
                if target not in index:
                    index[target] = len(index)
                    order.append(target)
                    queue2.append(target)
        transitions = frozenset((index[b], s, index[block_of[self.delta(min(b), s)]])
                                for b in order for s in self.symbols)
        accepting = frozenset(index[b] for b in order if min(b) in self.accepting)
        return Dfa(self.alphabet, self.tracks, len(order), frozenset({0}),
                   accepting, transitions)

    def isomorphic(self, other: "Dfa") -> bool:
        """State-renaming equality of two total DFAs; both must be fully
        reachable (as minimize() outputs are) for the renaming to exist."""
        self._check_compatible(other)
        if self.n_states != other.n_states:
            return False
        return _canonical(self) == _canonical(other)


def _canonical(d: Dfa):
    order = [next(iter(d.initial))]
    index = {order[0]: 0}
    queue = deque(order)
    while queue:
        p = queue.popleft()
        for s in d.symbols:
            q = d.delta(p, s)
            if q not in index:
                index[q] = len(index)
                order.append(q)
                queue.append(q)
    if len(index) != d.n_states:
        raise ValueError("isomorphism check requires all states reachable")
    return (d.n_states,
            frozenset(index[q] for q in d.accepting),
            frozenset((index[p], s, index[d.delta(p, s)]) for p in order for s in d.symbols))


def live_and_dead_states(d: Dfa) -> tuple[set[int], set[int]]:
    """Split reachable states into live (can reach acceptance) and dead."""
    reach: set[int] = set(d.initial)
    queue = deque(d.initial)
    while queue:
        p = queue.popleft()
        for s in d.symbols:
            q = d.delta(p, s)
            if q not in reach:
                reach.add(q)
                queue.append(q)
    back: dict[int, set[int]] = {}
    for (p, _, q) in d.transitions:
        back.setdefault(q, set()).add(p)
    co: set[int] = set(d.accepting)
    queue = deque(d.accepting)
    while queue:
        q = queue.popleft()
        for p in back.get(q, ()):
            if p not in co:
                co.add(p)
                queue.append(p)
    live = reach & co
    return live, reach - live
