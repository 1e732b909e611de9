"""Controllability checking and supremal-controllable-sublanguage synthesis.

``supcon`` computes the recognizer of the largest sublanguage of a marked
specification that is controllable with respect to the plant's closed
language and nonblocking, by iterated bad-state deletion and trimming on the
spec-plant product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .automaton import (
    CompareResult,
    Generator,
    Witness,
    _bfs_paths,
    language_compare,
    trim,
)
from .errors import AlphabetMismatch
from .langops import inverse_project, sync


@dataclass(frozen=True)
class SynthesisResult:
    """Outcome of a synthesis run.

    ``supervisor`` is a trim recognizer of the synthesized language (the
    canonical empty generator when nothing survives).  ``disabled`` lists the
    (supervisor state, controllable label) pairs the supervisor disables
    relative to what the plant enables there.
    """

    supervisor: Generator
    disabled: tuple[tuple[int, str], ...]
    empty: bool


def _lift_spec(e: Generator, g: Generator) -> Generator:
    """Inverse-project a specification onto the plant alphabet when proper."""
    extra = set(e.alphabet.labels) - set(g.alphabet.labels)
    if extra:
        raise AlphabetMismatch(
            "specification uses labels outside the plant alphabet: %s"
            % " ".join(sorted(extra))
        )
    if e.alphabet == g.alphabet:
        return e
    return inverse_project(e, g.alphabet)


def is_controllable(k: Generator, g: Generator) -> tuple[bool, Witness | None]:
    """Is the closure of K's marked language controllable w.r.t. the plant?

    True iff no string in the closure can be extended inside the plant by an
    uncontrollable event that leaves the closure.  The empty language is
    controllable by convention.  The witness is a shortest such string plus
    the uncontrollable event.
    """
    k = trim(_lift_spec(k, g))
    if k.is_empty or g.is_empty:
        return True, None
    labels = g.alphabet.labels
    comp_k, comp_g, ptrans, parent, pevent = _kernels.product(
        k.table, g.table, k.initial, g.initial
    )
    unctrl = [
        g.alphabet.index(lab) for lab in labels if not g.alphabet.attr(lab).controllable
    ]
    rows_k = k.table.tolist()
    rows_g = g.table.tolist()
    for p in range(len(comp_k)):
        x = int(comp_k[p])
        q = int(comp_g[p])
        for e in unctrl:
            if rows_g[q][e] >= 0 and rows_k[x][e] < 0:
                word = _bfs_paths(parent, pevent, labels, p)
                return False, Witness(kind="event", strings=(word,), events=(labels[e],))
    return True, None


def supcon(g: Generator, e: Generator) -> SynthesisResult:
    """Supremal controllable nonblocking sublanguage of spec ∩ plant.

    The spec is lifted to the plant alphabet, the marked-language product is
    formed with the plant-state component retained, and states where the
    plant enables an uncontrollable event the product does not are deleted,
    alternating with trimming, until a fixpoint.
    """
    e = _lift_spec(e, g)
    name = "supcon(%s,%s)" % (g.name, e.name)
    if g.is_empty or e.is_empty:
        return SynthesisResult(Generator.empty(g.alphabet, name=name), (), True)

    labels = g.alphabet.labels
    comp_e, comp_g, ptrans, _, _ = _kernels.product(
        e.table, g.table, e.initial, g.initial
    )
    k = len(comp_e)
    pmarked = [
        p
        for p in range(k)
        if int(comp_e[p]) in e.marked and int(comp_g[p]) in g.marked
    ]
    unctrl_ok = np.array(
        [not g.alphabet.attr(lab).controllable for lab in labels], dtype=np.uint8
    )
    alive = _kernels.supcon_prune(
        ptrans, comp_g, g.table, unctrl_ok, np.array(pmarked, dtype=np.int32), 0
    )
    keep = [p for p in range(k) if alive[p]]
    if not keep or not alive[0]:
        return SynthesisResult(Generator.empty(g.alphabet, name=name), (), True)

    remap = {old: new for new, old in enumerate(keep)}
    rows = ptrans.tolist()
    trans = []
    for old in keep:
        for ei, t in enumerate(rows[old]):
            if t >= 0 and alive[t]:
                trans.append((remap[old], labels[ei], remap[t]))
    sup = Generator(
        g.alphabet,
        len(keep),
        remap[0],
        frozenset(remap[p] for p in pmarked if alive[p]),
        tuple(trans),
        name=name,
    )
    ctrl = [
        (g.alphabet.index(lab), lab)
        for lab in labels
        if g.alphabet.attr(lab).controllable
    ]
    rows_g = g.table.tolist()
    disabled = []
    for old in keep:
        q = int(comp_g[old])
        for ei, lab in ctrl:
            t = rows[old][ei]
            if rows_g[q][ei] >= 0 and (t < 0 or not alive[t]):
                disabled.append((remap[old], lab))
    return SynthesisResult(sup, tuple(sorted(disabled)), False)


def control_equivalent(
    rsup: Generator, sup: Generator, g: Generator
) -> tuple[bool, Witness | None]:
    """Do RSUP and SUP enforce the same behavior on the plant?

    Checks, on the marked and the closed level, that the plant constrained by
    RSUP equals SUP's language.  The witness carries the first separating
    string and notes which level failed.
    """
    for cand in (rsup, sup):
        extra = set(cand.alphabet.labels) - set(g.alphabet.labels)
        if extra:
            raise AlphabetMismatch(
                "supervisor uses labels outside the plant alphabet: %s"
                % " ".join(sorted(extra))
            )
    constrained = sync(g, rsup)
    for which in ("marked", "closed"):
        res: CompareResult = language_compare(constrained, sup, which)
        if not res.equal:
            w = res.in_left_only or res.in_right_only
            assert w is not None
            return False, Witness(
                kind="string",
                strings=w.strings,
                note="%s languages differ" % which,
            )
    return True, None
