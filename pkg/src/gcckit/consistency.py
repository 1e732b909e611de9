"""Control-consistency and observation-property checkers.

The checkers decide, for a plant and an observable event set: per-state-pair
intrinsic control consistency, projection-wide control consistency over all
lookalike state pairs, output control consistency of the closed language, the
observer property of the closed or marked language, normality and
paranormality of a sublanguage, and the erasure search that grows an
observable set whose projection is control consistent by construction.

Two intrinsic-consistency semantics are supported.  ``literal`` (the
default) forbids a controllable event enabled at both states of a pair and
forbids both states being marked.  ``agreement`` instead requires the two
states to agree: every controllable event enabled at one must be enabled at
the other, and marking must coincide.  The replication harness compares the
two.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .automaton import (
    Generator,
    Witness,
    Word,
    _bfs_paths,
    is_nonblocking,
    language_compare,
    trim,
)
from .errors import (
    ControllableUnobservable,
    NotNonblocking,
    SameState,
    SpecNotSublanguage,
    ValidationError,
)
from .langops import (
    ObservableSet,
    extend_alphabet,
    inverse_project,
    meet,
    project,
    subset_construction,
)

MODES = ("literal", "agreement")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValidationError("mode must be one of %s, got %r" % (MODES, mode))


def _icc_violation(g: Generator, qi: int, qj: int, mode: str) -> Witness | None:
    """The offending event or marking clause for a state pair, or None.

    Assumes 0 <= qi, qj < n and qi != qj; performs no nonblocking check.
    """
    delta = g._delta
    if mode == "literal":
        for lab in g.alphabet.controllable_labels:
            if (qi, lab) in delta and (qj, lab) in delta:
                return Witness(kind="event", states=(qi, qj), events=(lab,))
        if qi in g.marked and qj in g.marked:
            return Witness(kind="marking", states=(qi, qj), note="both marked")
    else:
        for lab in g.alphabet.controllable_labels:
            if ((qi, lab) in delta) != ((qj, lab) in delta):
                return Witness(
                    kind="event",
                    states=(qi, qj),
                    events=(lab,),
                    note="enablement disagrees",
                )
        if (qi in g.marked) != (qj in g.marked):
            return Witness(kind="marking", states=(qi, qj), note="marking disagrees")
    return None


def is_icc(
    g: Generator, qi: int, qj: int, mode: str = "literal"
) -> tuple[bool, Witness | None]:
    """Are two distinct states of a nonblocking plant control consistent?"""
    _check_mode(mode)
    for q in (qi, qj):
        if not 0 <= q < g.n_states:
            raise ValidationError("state %d out of range" % q)
    if qi == qj:
        raise SameState("intrinsic consistency is a property of distinct states")
    ok, wit = is_nonblocking(g)
    if not ok:
        raise NotNonblocking("plant is blocking: %s" % wit.describe())
    v = _icc_violation(g, qi, qj, mode)
    return (v is None), v


@dataclass(frozen=True)
class LookalikePairs:
    """State pairs reachable by strings with equal projections.

    ``pairs`` lists unordered pairs (qi <= qj) in first-discovery order of the
    breadth-first pair construction; ``witnesses`` maps each pair to one
    witnessing string pair, oriented to match (qi, qj).  The diagonal pair of
    the initial state is always present on nonempty generators.
    """

    pairs: tuple[tuple[int, int], ...]
    witnesses: Mapping[tuple[int, int], tuple[Word, Word]]

    def off_diagonal(self) -> Iterable[tuple[int, int]]:
        return (p for p in self.pairs if p[0] != p[1])


def lookalike_pairs(g: Generator, observable: ObservableSet) -> LookalikePairs:
    """All unordered state pairs reachable by lookalike strings.

    Fixpoint of: start at the initial diagonal pair; follow observable events
    jointly when defined at both states, and unobservable events on one side
    at a time.
    """
    observable.validate_for(g.alphabet)
    if g.is_empty:
        return LookalikePairs((), {})
    obs_ok = np.array([lab in observable for lab in g.alphabet.labels], dtype=np.uint8)
    left, right, parent, pevent, pkind = _kernels.pair_bfs(g.table, obs_ok, g.initial)
    labels = g.alphabet.labels

    def strings_for(i: int) -> tuple[Word, Word]:
        s: list[str] = []
        s2: list[str] = []
        j = int(i)
        while parent[j] >= 0:
            lab = labels[int(pevent[j])]
            kind = int(pkind[j])
            if kind in (1, 2):
                s.append(lab)
            if kind in (1, 3):
                s2.append(lab)
            j = int(parent[j])
        s.reverse()
        s2.reverse()
        return tuple(s), tuple(s2)

    pairs: list[tuple[int, int]] = []
    witnesses: dict[tuple[int, int], tuple[Word, Word]] = {}
    for i in range(len(left)):
        a, b = int(left[i]), int(right[i])
        key = (a, b) if a <= b else (b, a)
        if key in witnesses:
            continue
        sa, sb = strings_for(i)
        if a > b:
            sa, sb = sb, sa
        pairs.append(key)
        witnesses[key] = (sa, sb)
    return LookalikePairs(tuple(pairs), witnesses)


def check_gcc(
    g: Generator, observable: ObservableSet, mode: str = "literal"
) -> tuple[bool, Witness | None]:
    """Is the projection control consistent for the plant?

    Every off-diagonal lookalike pair must be intrinsically control
    consistent.  All controllable events must be observable (error, not a
    verdict, otherwise), and the plant must be nonblocking.
    """
    _check_mode(mode)
    observable.validate_for(g.alphabet)
    hidden = [
        lab for lab in g.alphabet.controllable_labels if lab not in observable
    ]
    if hidden:
        raise ControllableUnobservable(hidden)
    ok, wit = is_nonblocking(g)
    if not ok:
        raise NotNonblocking("plant is blocking: %s" % wit.describe())
    pairs = lookalike_pairs(g, observable)
    for qi, qj in pairs.off_diagonal():
        v = _icc_violation(g, qi, qj, mode)
        if v is not None:
            return False, Witness(
                kind="state-pair",
                states=(qi, qj),
                strings=pairs.witnesses[(qi, qj)],
                events=v.events,
                note=v.note,
            )
    return True, None


def check_occ(g: Generator, observable: ObservableSet) -> tuple[bool, Witness | None]:
    """Output control consistency of the closed language.

    Whenever an observable uncontrollable event occurs, the maximal run of
    unobservable events immediately before it must be entirely uncontrollable.
    Decided on the product of the plant with a two-state taint tracker:
    a controllable unobservable event taints, any observable event clears.
    The witness is a shortest violating path ending in the observable
    uncontrollable event.
    """
    observable.validate_for(g.alphabet)
    if g.is_empty:
        return True, None
    labels = g.alphabet.labels
    m = len(labels)
    taint = np.zeros((2, m), dtype=np.int32)
    for e, lab in enumerate(labels):
        a = g.alphabet.attr(lab)
        if lab in observable:
            taint[0, e] = 0
            taint[1, e] = 0
        elif a.controllable:
            taint[0, e] = 1
            taint[1, e] = 1
        else:
            taint[0, e] = 0
            taint[1, e] = 1
    comp_g, comp_t, _, parent, pevent = _kernels.product(
        g.table, taint, g.initial, 0
    )
    rows = g.table.tolist()
    danger = [
        e
        for e, lab in enumerate(labels)
        if lab in observable and not g.alphabet.attr(lab).controllable
    ]
    for p in range(len(comp_g)):
        if int(comp_t[p]) != 1:
            continue
        q = int(comp_g[p])
        for e in danger:
            if rows[q][e] >= 0:
                word = _bfs_paths(parent, pevent, labels, p) + (labels[e],)
                return False, Witness(kind="path", strings=(word,))
    return True, None


def check_observer(
    g: Generator, observable: ObservableSet, which: str = "marked"
) -> tuple[bool, Witness | None]:
    """Observer property of the closed or marked language.

    For every string s in the prefix closure of the language and every
    projected continuation t of P(s) inside the projected language, some
    actual continuation u must satisfy su in the language with P(su) = t.
    Decided exactly by a determinized matching search: track the set of
    plant states that can still realize the observed continuation; a
    violation is a projected continuation reaching a (marked, for the marked
    variant) projection state with no surviving realization.  The witness is
    a shortest (s, t) pair.
    """
    if which not in ("closed", "marked"):
        raise ValidationError("which must be 'closed' or 'marked', got %r" % (which,))
    observable.validate_for(g.alphabet)
    if g.is_empty:
        return True, None

    labels = g.alphabet.labels
    m = len(labels)
    cells, ptrans, pmarked_cells = subset_construction(g, observable)
    n_cells = len(cells)
    obs_labels = [lab for lab in labels if lab in observable]
    xi = {(x, lab): t for (x, lab), t in ptrans.items()}

    # pair construction: projection table aligned to the full axis with
    # self-loops on unobservable columns makes the product follow (q, x)
    # along equally-projecting strings
    ptable = np.full((n_cells, m), -1, dtype=np.int32)
    for e, lab in enumerate(labels):
        if lab in observable:
            for x in range(n_cells):
                ptable[x, e] = xi.get((x, lab), -1)
        else:
            ptable[:, e] = np.arange(n_cells, dtype=np.int32)
    comp_q, comp_x, _, parent, pevent = _kernels.product(
        g.table, ptable, g.initial, 0
    )

    unobs_ok = np.array([lab not in observable for lab in labels], dtype=np.uint8)
    all_ok = np.ones(m, dtype=np.uint8)
    if which == "marked":
        realizable = _kernels.coreach(g.table, sorted(g.marked), unobs_ok)
        s_admissible = _kernels.coreach(g.table, sorted(g.marked), all_ok)
        x_accepting = [x in pmarked_cells for x in range(n_cells)]
    else:
        realizable = np.ones(g.n_states, dtype=np.uint8)
        s_admissible = np.ones(g.n_states, dtype=np.uint8)
        x_accepting = [True] * n_cells

    rows = g.table.tolist()
    obs_idx = [(lab, g.alphabet.index(lab)) for lab in obs_labels]

    # unified shortest-first search over (frontier, projection-state) nodes,
    # seeded from every admissible pair at its own string depth
    heap: list[tuple[int, int]] = []
    nodes: list[tuple[frozenset[int], int, int, int, str]] = []
    visited: set[tuple[frozenset[int], int]] = set()
    counter = 0

    def push(frontier, x, depth, seed_pair, parent_node, lab):
        nonlocal counter
        key = (frontier, x)
        if key in visited:
            return
        visited.add(key)
        nodes.append((frontier, x, seed_pair, parent_node, lab))
        heapq.heappush(heap, (depth, counter))
        counter += 1

    for p in range(len(comp_q)):
        q = int(comp_q[p])
        if not s_admissible[q]:
            continue
        d = 0
        j = p
        while parent[j] >= 0:
            d += 1
            j = int(parent[j])
        push(frozenset([q]), int(comp_x[p]), d, p, -1, "")

    def witness_for(node_idx: int) -> Witness:
        w: list[str] = []
        i = node_idx
        while nodes[i][3] >= 0:
            w.append(nodes[i][4])
            i = nodes[i][3]
        w.reverse()
        s = _bfs_paths(parent, pevent, labels, nodes[i][2])
        t = tuple(lab for lab in s if lab in observable) + tuple(w)
        return Witness(
            kind="string-pair",
            strings=(s, t),
            note="projected continuation cannot be realized",
        )

    while heap:
        depth, idx = heapq.heappop(heap)
        frontier, x, seed_pair, parent_node, _ = nodes[idx]
        if x_accepting[x] and not any(realizable[q] for q in frontier):
            return False, witness_for(idx)
        if frontier:
            closure_mask = _kernels.reach(g.table, sorted(frontier), unobs_ok)
            closure = [q for q in range(g.n_states) if closure_mask[q]]
        else:
            closure = []
        for lab, e in obs_idx:
            x2 = xi.get((x, lab))
            if x2 is None:
                continue
            f2 = frozenset(rows[q][e] for q in closure if rows[q][e] >= 0)
            push(f2, x2, depth + 1, seed_pair, idx, lab)
    return True, None


def _require_sublanguage(k: Generator, g: Generator) -> Generator:
    """Extend K to the plant alphabet and require L(K) within L(G)."""
    k_ext = extend_alphabet(k, g.alphabet)
    res = language_compare(k_ext, g, "closed")
    if res.verdict not in ("equal", "left-proper-subset"):
        w = res.in_left_only
        raise SpecNotSublanguage(
            "candidate closed language leaves the plant: %s"
            % (w.describe() if w else res.verdict)
        )
    return k_ext


def check_normal(
    k: Generator, g: Generator, observable: ObservableSet
) -> tuple[bool, Witness | None]:
    """Normality: observation-equivalent plant strings never leave the closure.

    Compares the inverse projection of the projected closure, intersected
    with the plant, against the closure itself.  The witness is a shortest
    string in the difference.
    """
    observable.validate_for(g.alphabet)
    k_ext = _require_sublanguage(k, g)
    blurred = meet(inverse_project(project(k_ext, observable), g.alphabet), g)
    res = language_compare(blurred, k_ext, "closed")
    if res.equal:
        return True, None
    w = res.in_left_only
    assert w is not None, "the blurred language always contains the closure"
    return False, Witness(kind="string", strings=w.strings, note="outside the closure")


def check_paranormal(
    k: Generator, g: Generator, observable: ObservableSet
) -> tuple[bool, Witness | None]:
    """Paranormality: unobservable plant events never exit the closure.

    The witness is a shortest closure string plus the offending unobservable
    event.
    """
    observable.validate_for(g.alphabet)
    k_ext = _require_sublanguage(k, g)
    if k_ext.is_empty or g.is_empty:
        return True, None
    labels = g.alphabet.labels
    comp_k, comp_g, _, parent, pevent = _kernels.product(
        k_ext.table, g.table, k_ext.initial, g.initial
    )
    unobs = [
        (g.alphabet.index(lab), lab) for lab in labels if lab not in observable
    ]
    rows_k = k_ext.table.tolist()
    rows_g = g.table.tolist()
    for p in range(len(comp_k)):
        x = int(comp_k[p])
        q = int(comp_g[p])
        for e, lab in unobs:
            if rows_g[q][e] >= 0 and rows_k[x][e] < 0:
                word = _bfs_paths(parent, pevent, labels, p)
                return False, Witness(kind="event", strings=(word,), events=(lab,))
    return True, None


@dataclass(frozen=True)
class ErasureTrace:
    """Result of the erasure search for a control-consistent observable set.

    ``erased`` lists the uncontrollable labels accepted for erasure in trial
    order; ``rejected`` pairs each refused label with the violating state
    pair, in the state numbering of the intermediate generator current at
    trial time.  ``result`` is the observable set: the full alphabet minus
    the erased labels.
    """

    erased: tuple[str, ...]
    rejected: tuple[tuple[str, tuple[int, int]], ...]
    result: ObservableSet


def find_gcc_alphabet(g: Generator, mode: str = "literal") -> ErasureTrace:
    """Grow an unobservable set whose projection is control consistent.

    Uncontrollable labels are tried once each, in ascending label order, on
    the current intermediate generator.  A candidate is erased when, for
    every state with an outgoing candidate transition, that state together
    with all states reachable from it by nonempty candidate-only paths is
    pairwise intrinsically control consistent; erasure replaces the
    intermediate with its projection hiding the candidate.
    """
    _check_mode(mode)
    ok, wit = is_nonblocking(g)
    if not ok:
        raise NotNonblocking("plant is blocking: %s" % wit.describe())
    current = trim(g)  # nonblocking, so this is the reachable restriction
    erased: list[str] = []
    rejected: list[tuple[str, tuple[int, int]]] = []
    for lab in g.alphabet.uncontrollable_labels:
        ei = current.alphabet.index(lab)
        only_lab = np.zeros(len(current.alphabet), dtype=np.uint8)
        only_lab[ei] = 1
        rows = current.table.tolist()
        violation: tuple[int, int] | None = None
        for q in range(current.n_states):
            if rows[q][ei] < 0:
                continue
            mask = _kernels.reach(current.table, [rows[q][ei]], only_lab)
            group = sorted({q} | {s for s in range(current.n_states) if mask[s]})
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    if _icc_violation(current, group[i], group[j], mode) is not None:
                        violation = (group[i], group[j])
                        break
                if violation:
                    break
            if violation:
                break
        if violation is None:
            erased.append(lab)
            keep = ObservableSet(set(current.alphabet.labels) - {lab})
            current = project(current, keep)
        else:
            rejected.append((lab, violation))
    result = ObservableSet(set(g.alphabet.labels) - set(erased))
    return ErasureTrace(tuple(erased), tuple(rejected), result)
