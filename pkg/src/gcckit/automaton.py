"""Deterministic generators over attributed event alphabets.

A generator is a finite deterministic automaton ``(Q, Sigma, delta, q0, Qm)``
with states as dense integers ``0..n-1`` and events as string labels carrying
a controllability flag and a default-observability flag.  Its closed language
is the set of defined strings from the initial state; its marked language is
the subset ending in a marked state.

Everything here is immutable and every operation is a pure function, so
concurrent use on shared values is safe.  The canonical empty generator has
``n_states == 0`` and denotes the empty closed and marked languages.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from .errors import AttributeClash, ValidationError

_LABEL_RE = re.compile(r"[A-Za-z0-9_]+\Z")

Word = tuple[str, ...]


@dataclass(frozen=True, order=True)
class EventAttr:
    """An event label with its control and observation attributes.

    ``observable`` is only a convenience default recorded in files; the
    authoritative observable set is always passed explicitly to the
    projection-dependent operations.
    """

    label: str
    controllable: bool = False
    observable: bool = True

    def __post_init__(self):
        if not _LABEL_RE.match(self.label):
            raise ValidationError(
                "event label must be a nonempty [A-Za-z0-9_]+ token, got %r"
                % (self.label,)
            )


class Alphabet:
    """An ordered collection of events; iteration follows sorted label order."""

    __slots__ = ("events", "_index")

    def __init__(self, events: Iterable[EventAttr]):
        evs = tuple(sorted(events, key=lambda e: e.label))
        labels = [e.label for e in evs]
        if len(set(labels)) != len(labels):
            dups = sorted({l for l in labels if labels.count(l) > 1})
            raise ValidationError("duplicate event labels: %s" % " ".join(dups))
        object.__setattr__(self, "events", evs)
        object.__setattr__(self, "_index", {e.label: i for i, e in enumerate(evs)})

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[EventAttr]:
        return iter(self.events)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.events == other.events

    def __hash__(self) -> int:
        return hash(self.events)

    def __repr__(self) -> str:
        return "Alphabet(%s)" % ", ".join(
            "%s%s%s" % (e.label, "!" if e.controllable else "", "" if e.observable else "?")
            for e in self.events
        )

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError("unknown event label %r" % (label,)) from None

    def attr(self, label: str) -> EventAttr:
        return self.events[self.index(label)]

    @property
    def controllable_labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.events if e.controllable)

    @property
    def uncontrollable_labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.events if not e.controllable)

    def restrict(self, labels: Iterable[str]) -> "Alphabet":
        """Sub-alphabet keeping the given labels with their attributes."""
        keep = set(labels)
        unknown = keep - set(self.labels)
        if unknown:
            raise ValidationError(
                "labels not in alphabet: %s" % " ".join(sorted(unknown))
            )
        return Alphabet(e for e in self.events if e.label in keep)


def merge_alphabets(a: Alphabet, b: Alphabet, *, strict: bool) -> Alphabet:
    """Union of two alphabets.

    Shared labels must agree on controllability (AttributeClash otherwise).
    With ``strict`` the default-observability flag must agree too; otherwise
    the merged default is the conjunction of the two defaults.
    """
    merged: dict[str, EventAttr] = {e.label: e for e in a.events}
    for e in b.events:
        prev = merged.get(e.label)
        if prev is None:
            merged[e.label] = e
        else:
            if prev.controllable != e.controllable:
                raise AttributeClash(
                    "label %r is controllable in one alphabet and not the other"
                    % (e.label,)
                )
            if strict and prev.observable != e.observable:
                raise AttributeClash(
                    "label %r differs in default observability" % (e.label,)
                )
            if prev.observable != e.observable:
                merged[e.label] = EventAttr(e.label, e.controllable, False)
    return Alphabet(merged.values())


@dataclass(frozen=True)
class Witness:
    """A structured counterexample.

    ``kind`` says how to read the payload:

    - ``string``       one separating string in ``strings[0]``
    - ``string-pair``  two strings (e.g. lookalikes, or an observed string
                       and an unmatchable projected continuation)
    - ``path``         a replayable path in ``strings[0]``, endpoint state
                       in ``states`` when known
    - ``event``        a string ``strings[0]`` plus the offending event
                       ``events[0]``
    - ``state-pair``   two states in ``states``, usually with their
                       witnessing strings and an offending event or a
                       ``both marked`` note
    - ``marking``      a state pair violating a marking clause
    """

    kind: str
    strings: tuple[Word, ...] = ()
    states: tuple[int, ...] = ()
    events: tuple[str, ...] = ()
    note: str = ""

    def describe(self) -> str:
        parts = []
        for i, w in enumerate(self.strings):
            parts.append("string%d=%s" % (i, " ".join(w) if w else "<empty>"))
        if self.states:
            parts.append("states=%s" % ",".join(str(s) for s in self.states))
        if self.events:
            parts.append("events=%s" % ",".join(self.events))
        if self.note:
            parts.append(self.note)
        return "%s: %s" % (self.kind, "; ".join(parts))


@dataclass(frozen=True)
class Generator:
    """A deterministic generator; the carrier for plants, specs, supervisors."""

    alphabet: Alphabet
    n_states: int
    initial: int
    marked: frozenset[int]
    transitions: tuple[tuple[int, str, int], ...]
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(self.marked))
        trans = tuple(sorted(set((int(s), l, int(t)) for s, l, t in self.transitions)))
        object.__setattr__(self, "transitions", trans)
        n = self.n_states
        if n < 0:
            raise ValidationError("negative state count")
        if n == 0:
            if self.initial != 0 or self.marked or trans:
                raise ValidationError(
                    "the empty generator has initial=0, no marked states, "
                    "and no transitions"
                )
            return
        if not 0 <= self.initial < n:
            raise ValidationError("initial state %d out of range" % self.initial)
        for q in self.marked:
            if not 0 <= q < n:
                raise ValidationError("marked state %d out of range" % q)
        seen = set()
        for s, l, t in trans:
            if not (0 <= s < n and 0 <= t < n):
                raise ValidationError("transition (%d,%s,%d) out of range" % (s, l, t))
            if l not in self.alphabet:
                raise ValidationError("transition uses unknown label %r" % (l,))
            if (s, l) in seen:
                raise ValidationError(
                    "nondeterministic: two transitions from state %d on %r" % (s, l)
                )
            seen.add((s, l))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def build(
        cls,
        alphabet: Alphabet,
        n_states: int,
        initial: int = 0,
        marked: Iterable[int] = (),
        transitions: Mapping[tuple[int, str], int] | Iterable[tuple[int, str, int]] = (),
        name: str = "G",
    ) -> "Generator":
        if isinstance(transitions, Mapping):
            triples = tuple((s, l, t) for (s, l), t in transitions.items())
        else:
            triples = tuple(transitions)
        return cls(alphabet, n_states, initial, frozenset(marked), triples, name)

    @classmethod
    def empty(cls, alphabet: Alphabet, name: str = "empty") -> "Generator":
        return cls(alphabet, 0, 0, frozenset(), (), name)

    @classmethod
    def universal(cls, alphabet: Alphabet, name: str = "universal") -> "Generator":
        """One marked state with every event self-looped: recognizes Sigma*."""
        trans = tuple((0, l, 0) for l in alphabet.labels)
        return cls(alphabet, 1, 0, frozenset({0}), trans, name)

    # -- cached views ----------------------------------------------------------

    @cached_property
    def _delta(self) -> dict[tuple[int, str], int]:
        return {(s, l): t for s, l, t in self.transitions}

    @cached_property
    def table(self) -> np.ndarray:
        """Dense transition table (n, m) with -1 for undefined."""
        m = len(self.alphabet)
        tbl = np.full((self.n_states, m), -1, dtype=np.int32)
        for s, l, t in self.transitions:
            tbl[s, self.alphabet.index(l)] = t
        return tbl

    @property
    def is_empty(self) -> bool:
        return self.n_states == 0

    # -- elementary semantics --------------------------------------------------

    def step(self, state: int, label: str) -> int | None:
        return self._delta.get((state, label))

    def run(self, word: Iterable[str], start: int | None = None) -> int | None:
        """Endpoint of ``word`` from ``start`` (default: initial), or None."""
        if self.is_empty:
            return None
        q = self.initial if start is None else start
        for l in word:
            nxt = self._delta.get((q, l))
            if nxt is None:
                return None
            q = nxt
        return q

    def in_closed(self, word: Iterable[str]) -> bool:
        return self.run(word) is not None

    def accepts(self, word: Iterable[str]) -> bool:
        q = self.run(word)
        return q is not None and q in self.marked

    def enabled(self, state: int) -> tuple[str, ...]:
        return tuple(l for l in self.alphabet.labels if (state, l) in self._delta)


# -- table alignment helpers used across modules --------------------------------


def aligned_table(g: Generator, labels: tuple[str, ...], foreign: str) -> np.ndarray:
    """Transition table of ``g`` re-indexed to the event axis ``labels``.

    Columns for labels outside ``g``'s alphabet are filled per ``foreign``:
    ``"undef"`` leaves them undefined, ``"selfloop"`` self-loops every state
    (inverse-projection semantics used by the synchronous product).
    """
    n = g.n_states
    tbl = np.full((n, len(labels)), -1, dtype=np.int32)
    own = g.table
    for j, lab in enumerate(labels):
        if lab in g.alphabet:
            tbl[:, j] = own[:, g.alphabet.index(lab)]
        elif foreign == "selfloop":
            tbl[:, j] = np.arange(n, dtype=np.int32)
        elif foreign != "undef":
            raise ValueError("unknown foreign-column mode %r" % (foreign,))
    return tbl


def completed_table(g: Generator, labels: tuple[str, ...]) -> tuple[np.ndarray, int, int]:
    """Dead-state completion of ``g`` over ``labels``.

    Returns ``(table, initial, dead)`` where the table is total: undefined
    moves (including every move of a label foreign to ``g``) go to the dead
    state, which self-loops.  The empty generator completes to just the dead
    state.
    """
    n = g.n_states
    dead = n
    base = aligned_table(g, labels, "undef")
    tbl = np.vstack([base, np.full((1, len(labels)), dead, dtype=np.int32)])
    tbl[tbl < 0] = dead
    init = g.initial if n > 0 else dead
    return tbl, init, dead


def _bfs_paths(parent: np.ndarray, pevent: np.ndarray, labels: tuple[str, ...], idx: int) -> Word:
    """Reconstruct the discovery path of product/BFS node ``idx``."""
    out = []
    i = int(idx)
    while parent[i] >= 0:
        out.append(labels[int(pevent[i])])
        i = int(parent[i])
    out.reverse()
    return tuple(out)


# -- reachability, trimming, nonblocking ----------------------------------------


def reachable(g: Generator) -> frozenset[int]:
    """States reachable from the initial state."""
    if g.is_empty:
        return frozenset()
    mask = _kernels.reach(g.table, [g.initial], np.ones(len(g.alphabet), dtype=np.uint8))
    return frozenset(int(i) for i in np.nonzero(mask)[0])


def coreachable(g: Generator) -> frozenset[int]:
    """States from which some marked state is reachable."""
    if g.is_empty:
        return frozenset()
    mask = _kernels.coreach(
        g.table, sorted(g.marked), np.ones(len(g.alphabet), dtype=np.uint8)
    )
    return frozenset(int(i) for i in np.nonzero(mask)[0])


def trim(g: Generator) -> Generator:
    """Restriction to reachable-and-coreachable states.

    Surviving states are renumbered in ascending original order.  The closed
    language of the result is the prefix closure of the marked language; when
    the initial state is cut the canonical empty generator is returned.
    """
    if g.is_empty:
        return Generator.empty(g.alphabet, name=g.name)
    keep = sorted(reachable(g) & coreachable(g))
    if g.initial not in keep:
        return Generator.empty(g.alphabet, name="trim(%s)" % g.name)
    remap = {old: new for new, old in enumerate(keep)}
    kset = set(keep)
    trans = tuple(
        (remap[s], l, remap[t]) for s, l, t in g.transitions if s in kset and t in kset
    )
    return Generator(
        g.alphabet,
        len(keep),
        remap[g.initial],
        frozenset(remap[q] for q in g.marked if q in kset),
        trans,
        name="trim(%s)" % g.name,
    )


def shortest_path_to(g: Generator, target: int) -> Word | None:
    """Shortest (lexicographically least) path from the initial state."""
    if g.is_empty:
        return None
    n = g.n_states
    parent = np.full(n, -1, dtype=np.int64)
    pevent = np.full(n, -1, dtype=np.int64)
    seen = [False] * n
    seen[g.initial] = True
    queue = [g.initial]
    labels = g.alphabet.labels
    rows = g.table.tolist()
    for q in queue:
        if q == target:
            break
        for e, t in enumerate(rows[q]):
            if t >= 0 and not seen[t]:
                seen[t] = True
                parent[t] = q
                pevent[t] = e
                queue.append(t)
    if not seen[target]:
        return None
    out = []
    i = target
    while parent[i] >= 0:
        out.append(labels[int(pevent[i])])
        i = int(parent[i])
    out.reverse()
    return tuple(out)


def is_nonblocking(g: Generator) -> tuple[bool, Witness | None]:
    """True iff every reachable state is coreachable.

    The witness, when blocking, is a shortest path to a reachable state from
    which no marked state can be reached.
    """
    if g.is_empty:
        return True, None
    reach_set = reachable(g)
    co = coreachable(g)
    bad = sorted(reach_set - co)
    if not bad:
        return True, None
    best: tuple[int, Word, int] | None = None
    for q in bad:
        path = shortest_path_to(g, q)
        assert path is not None
        key = (len(path), path, q)
        if best is None or key < best:
            best = key
    assert best is not None
    return False, Witness(kind="path", strings=(best[1],), states=(best[2],))


# -- language comparison ---------------------------------------------------------


@dataclass(frozen=True)
class CompareResult:
    """Decision of a language comparison plus separating witnesses.

    ``in_left_only`` is a shortest string in L1 minus L2 and symmetrically for
    ``in_right_only``; both are None exactly when the languages are equal.
    """

    verdict: str  # equal | left-proper-subset | right-proper-subset | incomparable
    in_left_only: Witness | None
    in_right_only: Witness | None

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"


def language_compare(g1: Generator, g2: Generator, which: str = "marked") -> CompareResult:
    """Compare closed or marked languages over the union alphabet.

    A label absent from one generator's alphabet is undefined everywhere in
    it.  Witnesses are shortest separating strings with lexicographic
    tie-break on sorted labels.
    """
    if which not in ("closed", "marked"):
        raise ValidationError("which must be 'closed' or 'marked', got %r" % (which,))
    labels = tuple(sorted(set(g1.alphabet.labels) | set(g2.alphabet.labels)))
    t1, i1, dead1 = completed_table(g1, labels)
    t2, i2, dead2 = completed_table(g2, labels)
    comp1, comp2, _, parent, pevent = _kernels.product(t1, t2, i1, i2)

    if which == "closed":
        in1 = comp1 != dead1
        in2 = comp2 != dead2
    else:
        m1 = np.zeros(dead1 + 1, dtype=bool)
        for q in g1.marked:
            m1[q] = True
        m2 = np.zeros(dead2 + 1, dtype=bool)
        for q in g2.marked:
            m2[q] = True
        in1 = m1[comp1]
        in2 = m2[comp2]

    wl = wr = None
    for p in range(len(comp1)):
        if wl is None and in1[p] and not in2[p]:
            wl = Witness(kind="string", strings=(_bfs_paths(parent, pevent, labels, p),))
        if wr is None and in2[p] and not in1[p]:
            wr = Witness(kind="string", strings=(_bfs_paths(parent, pevent, labels, p),))
        if wl is not None and wr is not None:
            break

    if wl is None and wr is None:
        verdict = "equal"
    elif wl is None:
        verdict = "left-proper-subset"
    elif wr is None:
        verdict = "right-proper-subset"
    else:
        verdict = "incomparable"
    return CompareResult(verdict, wl, wr)
