"""Language operators in automaton form.

Synchronous product, meet over a common alphabet, natural projection by
unobservable-closure subset construction, and inverse projection by
self-looping absent events.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .automaton import Alphabet, Generator, aligned_table, merge_alphabets
from .errors import AlphabetMismatch, AttributeClash, ValidationError


class ObservableSet:
    """A set of labels designated observable for projection-based operations."""

    __slots__ = ("labels",)

    def __init__(self, labels: Iterable[str]):
        object.__setattr__(self, "labels", frozenset(labels))

    def __setattr__(self, name, value):
        raise AttributeError("ObservableSet is immutable")

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, ObservableSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return "ObservableSet({%s})" % ", ".join(sorted(self.labels))

    def validate_for(self, alphabet: Alphabet) -> None:
        unknown = self.labels - set(alphabet.labels)
        if unknown:
            raise ValidationError(
                "observable labels not in alphabet: %s" % " ".join(sorted(unknown))
            )

    def project_word(self, word: Iterable[str]) -> tuple[str, ...]:
        """Erase unobservable events from a string."""
        return tuple(l for l in word if l in self.labels)


def _product_generator(
    g1: Generator,
    g2: Generator,
    alphabet: Alphabet,
    t1: np.ndarray,
    t2: np.ndarray,
    name: str,
) -> Generator:
    """Reachable product of two aligned tables; marks pairs marked on both sides."""
    comp1, comp2, ptrans, _, _ = _kernels.product(t1, t2, g1.initial, g2.initial)
    labels = alphabet.labels
    k = len(comp1)
    marked = frozenset(
        p
        for p in range(k)
        if int(comp1[p]) in g1.marked and int(comp2[p]) in g2.marked
    )
    trans = []
    rows = ptrans.tolist()
    for p in range(k):
        for e, t in enumerate(rows[p]):
            if t >= 0:
                trans.append((p, labels[e], t))
    return Generator(alphabet, k, 0, marked, tuple(trans), name=name)


def sync(g1: Generator, g2: Generator) -> Generator:
    """Synchronous product: shared events move both sides, private events one.

    Shared labels must agree on controllability.  A pair state is marked iff
    both components are marked.  The result is reachable-restricted but not
    trimmed.
    """
    alphabet = merge_alphabets(g1.alphabet, g2.alphabet, strict=False)
    name = "sync(%s,%s)" % (g1.name, g2.name)
    if g1.is_empty or g2.is_empty:
        return Generator.empty(alphabet, name=name)
    labels = alphabet.labels
    t1 = aligned_table(g1, labels, "selfloop")
    t2 = aligned_table(g2, labels, "selfloop")
    return _product_generator(g1, g2, alphabet, t1, t2, name)


def meet(g1: Generator, g2: Generator) -> Generator:
    """Product over one common alphabet: language intersection on both levels."""
    if g1.alphabet != g2.alphabet:
        raise AlphabetMismatch(
            "meet requires identical alphabets: %r vs %r" % (g1.alphabet, g2.alphabet)
        )
    name = "meet(%s,%s)" % (g1.name, g2.name)
    if g1.is_empty or g2.is_empty:
        return Generator.empty(g1.alphabet, name=name)
    return _product_generator(g1, g2, g1.alphabet, g1.table, g2.table, name)


def subset_construction(
    g: Generator, observable: ObservableSet
) -> tuple[list[tuple[int, ...]], dict[tuple[int, str], int], set[int]]:
    """Unobservable-closure subset construction.

    Returns ``(cells, transitions, marked)`` where each cell is the sorted
    tuple of member states, cell 0 is the closure of the initial state, a
    cell moves under an observable label to the closure of its step image,
    and a cell is marked iff it contains a marked state.  Cells are numbered
    by first discovery in breadth-first order over sorted labels.
    """
    observable.validate_for(g.alphabet)
    if g.is_empty:
        return [], {}, set()
    m = len(g.alphabet)
    unobs_ok = np.array(
        [lab not in observable for lab in g.alphabet.labels], dtype=np.uint8
    )
    table = g.table
    rows = table.tolist()

    def closure(states: Iterable[int]) -> tuple[int, ...]:
        mask = _kernels.reach(table, list(states), unobs_ok)
        return tuple(int(i) for i in np.nonzero(mask)[0])

    obs_labels = [lab for lab in g.alphabet.labels if lab in observable]
    obs_idx = [g.alphabet.index(lab) for lab in obs_labels]
    cells: list[tuple[int, ...]] = [closure([g.initial])]
    index = {cells[0]: 0}
    trans: dict[tuple[int, str], int] = {}
    queue = [0]
    for ci in queue:
        cell = cells[ci]
        for lab, e in zip(obs_labels, obs_idx):
            image = sorted({rows[q][e] for q in cell if rows[q][e] >= 0})
            if not image:
                continue
            target = closure(image)
            ti = index.get(target)
            if ti is None:
                ti = len(cells)
                index[target] = ti
                cells.append(target)
                queue.append(ti)
            trans[(ci, lab)] = ti
    marked = {ci for ci, cell in enumerate(cells) if any(q in g.marked for q in cell)}
    return cells, trans, marked


def project(g: Generator, observable: ObservableSet) -> Generator:
    """Natural projection: erase unobservable events, then determinize.

    The result is over the observable sub-alphabet; its closed and marked
    languages are the projections of the source's.
    """
    observable.validate_for(g.alphabet)
    sub = g.alphabet.restrict(set(observable.labels))
    name = "project(%s)" % g.name
    if g.is_empty:
        return Generator.empty(sub, name=name)
    cells, trans, marked = subset_construction(g, observable)
    return Generator.build(
        sub,
        len(cells),
        0,
        marked,
        {(s, l): t for (s, l), t in trans.items()},
        name=name,
    )


def inverse_project(g0: Generator, full: Alphabet) -> Generator:
    """Lift a generator to a larger alphabet by self-looping absent events.

    The result recognizes the inverse projection of the source languages.
    Shared labels must carry identical attribute flags.
    """
    own = set(g0.alphabet.labels)
    if not own <= set(full.labels):
        raise AlphabetMismatch(
            "source alphabet is not contained in the target alphabet: extra %s"
            % " ".join(sorted(own - set(full.labels)))
        )
    for e in g0.alphabet:
        fe = full.attr(e.label)
        if fe.controllable != e.controllable or fe.observable != e.observable:
            raise AttributeClash(
                "label %r changes attributes under the lift" % (e.label,)
            )
    name = "invproject(%s)" % g0.name
    if g0.is_empty:
        return Generator.empty(full, name=name)
    extra = [lab for lab in full.labels if lab not in own]
    trans = list(g0.transitions)
    for q in range(g0.n_states):
        for lab in extra:
            trans.append((q, lab, q))
    return Generator(full, g0.n_states, g0.initial, g0.marked, tuple(trans), name=name)


def extend_alphabet(g: Generator, full: Alphabet) -> Generator:
    """Re-declare a generator over a larger alphabet without new transitions.

    Unlike inverse projection this preserves the languages exactly; the added
    labels are simply never enabled.  Shared labels must keep their flags.
    """
    own = set(g.alphabet.labels)
    if not own <= set(full.labels):
        raise AlphabetMismatch(
            "source alphabet is not contained in the target alphabet: extra %s"
            % " ".join(sorted(own - set(full.labels)))
        )
    for e in g.alphabet:
        fe = full.attr(e.label)
        if fe.controllable != e.controllable or fe.observable != e.observable:
            raise AttributeClash(
                "label %r changes attributes under the extension" % (e.label,)
            )
    if g.is_empty:
        return Generator.empty(full, name=g.name)
    return Generator(full, g.n_states, g.initial, g.marked, g.transitions, name=g.name)
