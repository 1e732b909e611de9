"""Decentralized synthesis over a reduced plant.

A control-consistent projection induces a cover of the plant's state set by
lookalike cells (the subset-construction cells); the reduced plant is the
quotient generator over the observable alphabet.  Decentralized synthesis
runs the supremal-controllable fixpoint against the reduced plant, monolithic
synthesis against the full plant; the verifiers compare the two and check
nonblockingness of the composed closed loop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import (
    CompareResult,
    Generator,
    Witness,
    is_nonblocking,
    language_compare,
    reachable,
)
from .errors import AlphabetMismatch, NotGCC, ValidationError
from .consistency import check_gcc
from .langops import ObservableSet, subset_construction, sync
from .synthesis import SynthesisResult, supcon


@dataclass(frozen=True)
class Cover:
    """Cells of lookalike states covering the reachable state set."""

    cells: tuple[tuple[int, ...], ...]
    source: Generator
    observable: ObservableSet

    def check_invariants(self) -> None:
        """Totality, initial containment, and observable successor closure."""
        g = self.source
        if g.is_empty:
            if self.cells:
                raise ValidationError("empty generator admits no cover cells")
            return
        if not self.cells or any(not c for c in self.cells):
            raise ValidationError("cover cells must be nonempty")
        if g.initial not in self.cells[0]:
            raise ValidationError("cell 0 must contain the initial state")
        union = set()
        for c in self.cells:
            union.update(c)
        if not reachable(g) <= union:
            raise ValidationError("cover must contain every reachable state")
        member = {c: i for i, c in enumerate(self.cells)}
        unobs = [lab for lab in g.alphabet.labels if lab not in self.observable]
        for c in self.cells:
            for lab in g.alphabet.labels:
                if lab in self.observable:
                    image = sorted({g.step(q, lab) for q in c if g.step(q, lab) is not None})
                    if not image:
                        continue
                    closure = set(image)
                    stack = list(image)
                    while stack:
                        q = stack.pop()
                        for u in unobs:
                            t = g.step(q, u)
                            if t is not None and t not in closure:
                                closure.add(t)
                                stack.append(t)
                    if tuple(sorted(closure)) not in member:
                        raise ValidationError(
                            "observable successor image of a cell is not a cell"
                        )


@dataclass(frozen=True)
class ReducedPlant:
    """Quotient generator over the observable alphabet plus its cover.

    ``cell_map`` sends each source state to the lowest-index cell containing
    it (-1 for states in no cell, i.e. unreachable ones).
    """

    generator: Generator
    cover: Cover
    cell_map: tuple[int, ...]


def build_cover(
    g: Generator, observable: ObservableSet, mode: str = "literal"
) -> Cover:
    """Cells of the subset construction, admissible only under a
    control-consistent projection."""
    ok, wit = check_gcc(g, observable, mode)
    if not ok:
        raise NotGCC(wit)
    cells, _, _ = subset_construction(g, observable)
    cover = Cover(tuple(tuple(c) for c in cells), g, observable)
    cover.check_invariants()
    return cover


def reduce_plant(g: Generator, cover: Cover) -> ReducedPlant:
    """Quotient the plant by the cover's cells.

    One state per cell over the observable sub-alphabet; a cell moves under
    an observable label to the closure of its step image; a cell is marked
    iff it intersects the marked set.
    """
    if cover.source != g:
        raise ValidationError("cover was built from a different generator")
    cells, trans, marked = subset_construction(g, cover.observable)
    if tuple(tuple(c) for c in cells) != cover.cells:
        raise ValidationError("cover cells do not match the quotient cells")
    sub = g.alphabet.restrict(set(cover.observable.labels))
    gen = Generator.build(
        sub,
        len(cells),
        0,
        marked,
        {(s, l): t for (s, l), t in trans.items()},
        name="reduce(%s)" % g.name,
    )
    cell_map = []
    for q in range(g.n_states):
        home = -1
        for i, c in enumerate(cover.cells):
            if q in c:
                home = i
                break
        cell_map.append(home)
    return ReducedPlant(gen, cover, tuple(cell_map))


def _check_spec_alphabet(e: Generator, observable: ObservableSet) -> None:
    extra = set(e.alphabet.labels) - observable.labels
    if extra:
        raise AlphabetMismatch(
            "specification uses unobservable or unknown labels: %s"
            % " ".join(sorted(extra))
        )


def decentralized_supcon(
    g: Generator,
    e: Generator,
    observable: ObservableSet,
    mode: str = "literal",
) -> SynthesisResult:
    """Synthesize against the reduced plant: cover, quotient, then supcon.

    The specification must be over observable labels; the supervisor is over
    the observable alphabet.
    """
    _check_spec_alphabet(e, observable)
    cover = build_cover(g, observable, mode)
    reduced = reduce_plant(g, cover)
    return supcon(reduced.generator, e)


def monolithic_supcon(
    g: Generator, e: Generator, observable: ObservableSet
) -> SynthesisResult:
    """Synthesize against the full plant with the same observable-level spec."""
    observable.validate_for(g.alphabet)
    _check_spec_alphabet(e, observable)
    return supcon(g, e)


def verify_lemma1(g: Generator, sup0: Generator) -> tuple[bool, Witness | None]:
    """Is the closed loop of a decentralized supervisor with the plant
    nonblocking?

    Composes them by synchronous product and checks nonblockingness; the
    witness is a path to a blocking state of the composition.
    """
    extra = set(sup0.alphabet.labels) - set(g.alphabet.labels)
    if extra:
        raise AlphabetMismatch(
            "supervisor uses labels outside the plant alphabet: %s"
            % " ".join(sorted(extra))
        )
    return is_nonblocking(sync(sup0, g))


@dataclass(frozen=True)
class TheoremComparison:
    """Comparison record of the two synthesis routes on one instance.

    ``marked_compare`` relates the monolithic supervisor's marked language
    (left) with the composition of the decentralized supervisor and the
    plant (right).  ``nonblocking``/``nonblocking_witness`` report the
    closed-loop nonblockingness of that composition.
    """

    gcc: bool
    monolithic: SynthesisResult
    decentralized: SynthesisResult
    composed: Generator
    marked_compare: CompareResult
    nonblocking: bool
    nonblocking_witness: Witness | None

    @property
    def equal(self) -> bool:
        return self.marked_compare.equal


def verify_theorem1(
    g: Generator,
    e: Generator,
    observable: ObservableSet,
    mode: str = "literal",
) -> TheoremComparison:
    """Run both synthesis routes and compare their enforced marked languages.

    Returns a comparison record with witnesses either way rather than a
    pass/fail boolean.
    """
    dec = decentralized_supcon(g, e, observable, mode)
    mono = monolithic_supcon(g, e, observable)
    composed = sync(dec.supervisor, g)
    cmp_res = language_compare(mono.supervisor, composed, "marked")
    nb, nb_wit = is_nonblocking(composed)
    return TheoremComparison(
        gcc=True,
        monolithic=mono,
        decentralized=dec,
        composed=composed,
        marked_compare=cmp_res,
        nonblocking=nb,
        nonblocking_witness=nb_wit,
    )
