"""Brute-force reference semantics, random instances, and canonical fixtures.

Everything here works at the string level by quantifier expansion over
bounded enumerations, independently of the automaton-level algorithms it is
used to check.  Exactness is guaranteed on acyclic generators, where every
string is shorter than the state count; cyclic generators get bounded
approximations with an explicit flag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .automaton import Alphabet, EventAttr, Generator, Witness, Word
from .errors import (
    ControllableUnobservable,
    NotAcyclic,
    NotNonblocking,
    ValidationError,
)
from .langops import ObservableSet


def _sorted_words(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=lambda w: (len(w), w))


def is_acyclic(g: Generator) -> bool:
    """No cycle is reachable from the initial state."""
    if g.is_empty:
        return True
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * g.n_states
    stack: list[tuple[int, int]] = [(g.initial, 0)]
    color[g.initial] = GRAY
    succ = {q: [g.step(q, l) for l in g.enabled(q)] for q in range(g.n_states)}
    while stack:
        q, i = stack.pop()
        nxt = succ[q]
        if i < len(nxt):
            stack.append((q, i + 1))
            t = nxt[i]
            if color[t] == GRAY:
                return False
            if color[t] == WHITE:
                color[t] = GRAY
                stack.append((t, 0))
        else:
            color[q] = BLACK
    return True


@dataclass(frozen=True)
class LanguageSample:
    """A bounded enumeration of a language.

    ``exact`` is set when the source is acyclic and the bound covers its
    longest path, so the sample is the whole language.
    """

    strings: frozenset[Word]
    bound: int
    exact: bool

    def sorted(self) -> list[Word]:
        return _sorted_words(self.strings)


def enumerate_language(g: Generator, which: str, bound: int) -> LanguageSample:
    """All strings of the closed or marked language up to ``bound``."""
    if which not in ("closed", "marked"):
        raise ValidationError("which must be 'closed' or 'marked', got %r" % (which,))
    if bound < 0:
        raise ValidationError("bound must be nonnegative")
    out: set[Word] = set()
    if not g.is_empty:
        stack: list[tuple[int, Word]] = [(g.initial, ())]
        while stack:
            q, word = stack.pop()
            if which == "closed" or q in g.marked:
                out.add(word)
            if len(word) < bound:
                for lab in g.enabled(q):
                    stack.append((g.step(q, lab), word + (lab,)))
    exact = is_acyclic(g) and bound >= g.n_states
    return LanguageSample(frozenset(out), bound, exact)


def _prefixes(words: Iterable[Word]) -> set[Word]:
    out: set[Word] = set()
    for w in words:
        for i in range(len(w) + 1):
            out.add(w[:i])
    return out


def _spec_accepts(e: Generator, word: Word) -> bool:
    """Membership of a plant string in the lifted spec language."""
    own = set(e.alphabet.labels)
    return e.accepts(tuple(l for l in word if l in own))


def brute_supcon(g: Generator, e: Generator, bound: int | None = None) -> LanguageSample:
    """Supremal controllable sublanguage computed literally on string sets.

    Starts from the marked strings of plant-and-spec and repeatedly deletes
    strings whose closures can be extended inside the plant by an
    uncontrollable event escaping the closure, until stable.  Exact when the
    plant is acyclic and no bound is forced.  The bounded variant is a sound
    under-approximation: plant extensions one event past the bound are still
    visible, so every returned string is genuinely controllable (on cyclic
    plants with uncontrollable events this can erode the whole sample).
    """
    exact = False
    if bound is None:
        if not is_acyclic(g):
            raise NotAcyclic(
                "cyclic plant requires an explicit bound for the approximation"
            )
        bound = g.n_states
        exact = True
    closed = enumerate_language(g, "closed", bound + 1).strings
    marked = enumerate_language(g, "marked", bound).strings
    unctrl = set(g.alphabet.uncontrollable_labels)

    k = {s for s in marked if _spec_accepts(e, s)}
    while True:
        kbar = _prefixes(k)
        bad = {
            p
            for p in kbar
            for u in unctrl
            if p + (u,) in closed and p + (u,) not in kbar
        }
        if not bad:
            break
        k = {s for s in k if not any(s[:i] in bad for i in range(len(s) + 1))}
    return LanguageSample(frozenset(k), bound, exact)


def _endpoint(g: Generator, word: Word) -> int:
    q = g.run(word)
    assert q is not None
    return q


def brute_check(
    g: Generator,
    observable: ObservableSet,
    prop: str,
    mode: str = "literal",
) -> tuple[bool, Witness | None]:
    """Literal evaluation of a consistency or observation property.

    ``prop`` is one of ``gcc``, ``occ``, ``observer-marked``,
    ``observer-closed``.  Exact only on acyclic generators.
    """
    observable.validate_for(g.alphabet)
    if not is_acyclic(g):
        raise NotAcyclic("brute-force checks require an acyclic generator")
    bound = g.n_states
    closed = enumerate_language(g, "closed", bound).strings
    marked = enumerate_language(g, "marked", bound).strings

    def proj(w: Word) -> Word:
        return tuple(l for l in w if l in observable)

    if prop == "gcc":
        hidden = [l for l in g.alphabet.controllable_labels if l not in observable]
        if hidden:
            raise ControllableUnobservable(hidden)
        if not closed <= _prefixes(marked):
            raise NotNonblocking("plant is blocking")
        groups: dict[Word, list[Word]] = {}
        for s in _sorted_words(closed):
            groups.setdefault(proj(s), []).append(s)
        ctrl = g.alphabet.controllable_labels
        for key in sorted(groups, key=lambda w: (len(w), w)):
            members = groups[key]
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    s, s2 = members[i], members[j]
                    qi, qj = _endpoint(g, s), _endpoint(g, s2)
                    if qi == qj:
                        continue
                    viol = None
                    if mode == "literal":
                        for lab in ctrl:
                            if g.step(qi, lab) is not None and g.step(qj, lab) is not None:
                                viol = (lab, "")
                                break
                        if viol is None and qi in g.marked and qj in g.marked:
                            viol = (None, "both marked")
                    else:
                        for lab in ctrl:
                            if (g.step(qi, lab) is None) != (g.step(qj, lab) is None):
                                viol = (lab, "enablement disagrees")
                                break
                        if viol is None and (qi in g.marked) != (qj in g.marked):
                            viol = (None, "marking disagrees")
                    if viol is not None:
                        lab, note = viol
                        lo, hi = (qi, qj) if qi <= qj else (qj, qi)
                        w1, w2 = (s, s2) if qi <= qj else (s2, s)
                        return False, Witness(
                            kind="state-pair",
                            states=(lo, hi),
                            strings=(w1, w2),
                            events=(lab,) if lab else (),
                            note=note,
                        )
        return True, None

    if prop == "occ":
        for s in _sorted_words(closed):
            for k_pos, lab in enumerate(s):
                a = g.alphabet.attr(lab)
                if lab in observable and not a.controllable:
                    j = k_pos - 1
                    while j >= 0 and s[j] not in observable:
                        if g.alphabet.attr(s[j]).controllable:
                            return False, Witness(
                                kind="path", strings=(s[: k_pos + 1],)
                            )
                        j -= 1
        return True, None

    if prop in ("observer-marked", "observer-closed"):
        lang = marked if prop == "observer-marked" else closed
        closure = _prefixes(lang) if lang else set()
        plang = sorted({proj(t) for t in lang}, key=lambda w: (len(w), w))
        for s in _sorted_words(closure):
            ps = proj(s)
            for t in plang:
                if t[: len(ps)] != ps:
                    continue
                if not any(v[: len(s)] == s and proj(v) == t for v in lang):
                    return False, Witness(
                        kind="string-pair",
                        strings=(s, t),
                        note="projected continuation cannot be realized",
                    )
        return True, None

    raise ValidationError("unknown property %r" % (prop,))


@dataclass(frozen=True)
class InstanceConfig:
    """Shape parameters for the random instance generator."""

    max_states: int = 6
    max_events: int = 5
    transition_density: float = 0.35
    controllable_fraction: float = 0.5
    observable_fraction: float = 0.5
    acyclic_only: bool = True
    seed: int | str = 0
    max_spec_states: int = 4

    def __post_init__(self):
        if not 1 <= self.max_states:
            raise ValidationError("max_states must be positive")
        if not 1 <= self.max_spec_states:
            raise ValidationError("max_spec_states must be positive")
        if not 1 <= self.max_events <= 26:
            raise ValidationError("max_events must be in 1..26")
        for f in (
            self.transition_density,
            self.controllable_fraction,
            self.observable_fraction,
        ):
            if not 0.0 <= f <= 1.0:
                raise ValidationError("fractions must be in [0, 1]")


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _random_trim_generator(
    rng: random.Random,
    alphabet: Alphabet,
    max_states: int,
    density: float,
    acyclic: bool,
    name: str,
) -> Generator:
    """A well-formed, trim, nonblocking generator; deterministic in ``rng``."""
    n = rng.randint(1, max_states)
    trans: dict[tuple[int, str], int] = {}
    for s in range(n):
        for lab in alphabet.labels:
            if rng.random() < density:
                if acyclic:
                    if s + 1 >= n:
                        continue
                    trans[(s, lab)] = rng.randrange(s + 1, n)
                else:
                    trans[(s, lab)] = rng.randrange(n)
    marked = {s for s in range(n) if rng.random() < 0.4}

    succ: dict[int, list[int]] = {q: [] for q in range(n)}
    for (s, _), t in trans.items():
        succ[s].append(t)
    reach = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for t in succ[q]:
            if t not in reach:
                reach.add(t)
                stack.append(t)
    if not marked & reach:
        marked.add(rng.choice(sorted(reach)))

    pred: dict[int, list[int]] = {q: [] for q in range(n)}
    for (s, _), t in trans.items():
        pred[t].append(s)
    coreach = set(q for q in marked)
    stack = sorted(coreach)
    while stack:
        q = stack.pop()
        for p in pred[q]:
            if p not in coreach:
                coreach.add(p)
                stack.append(p)
    keep = sorted(reach & coreach)
    remap = {old: new for new, old in enumerate(keep)}
    kset = set(keep)
    return Generator.build(
        alphabet,
        len(keep),
        remap[0],
        {remap[q] for q in marked if q in kset},
        {
            (remap[s], lab): remap[t]
            for (s, lab), t in trans.items()
            if s in kset and t in kset
        },
        name=name,
    )


def random_instance(cfg: InstanceConfig) -> tuple[Generator, Generator, ObservableSet]:
    """A (plant, spec, observable set) triple, deterministic in the config.

    The plant and the spec are trim and nonblocking; controllable events are
    always observable, so the instance is admissible for control-consistency
    checks; the spec is over a sub-alphabet of the observable labels.
    """
    rng = random.Random("gcckit:%s" % (cfg.seed,))
    n_events = rng.randint(1, cfg.max_events)
    labels = list(_LETTERS[:n_events])
    ctrl = {lab for lab in labels if rng.random() < cfg.controllable_fraction}
    obs = {
        lab
        for lab in labels
        if lab in ctrl or rng.random() < cfg.observable_fraction
    }
    alphabet = Alphabet(
        EventAttr(lab, controllable=lab in ctrl, observable=lab in obs)
        for lab in labels
    )
    plant = _random_trim_generator(
        rng, alphabet, cfg.max_states, cfg.transition_density, cfg.acyclic_only, "plant"
    )
    spec_labels = {lab for lab in sorted(obs) if rng.random() < 0.8}
    spec_alphabet = alphabet.restrict(spec_labels)
    spec = _random_trim_generator(
        rng,
        spec_alphabet,
        cfg.max_spec_states,
        cfg.transition_density,
        cfg.acyclic_only,
        "spec",
    )
    return plant, spec, ObservableSet(obs)


# -- canonical fixtures ----------------------------------------------------------


def _alphabet(*events: tuple[str, bool, bool]) -> Alphabet:
    return Alphabet(EventAttr(l, c, o) for l, c, o in events)


def fix_twopath() -> Generator:
    """Two branches from the start: uncontrollable a, controllable c."""
    a = _alphabet(("a", False, False), ("c", True, True))
    return Generator.build(
        a, 3, 0, {1, 2}, {(0, "a"): 1, (0, "c"): 2}, name="twopath"
    )


def fix_clash() -> Generator:
    """twopath plus a second c-transition, so lookalikes share a controllable."""
    a = _alphabet(("a", False, False), ("c", True, True))
    return Generator.build(
        a, 3, 0, {1, 2}, {(0, "a"): 1, (0, "c"): 2, (1, "c"): 2}, name="clash"
    )


def fix_taint() -> Generator:
    """A controllable step followed by an uncontrollable one."""
    a = _alphabet(("c", True, False), ("u", False, True))
    return Generator.build(a, 3, 0, {2}, {(0, "c"): 1, (1, "u"): 2}, name="taint")


def fix_obs_a() -> Generator:
    """Diamond whose b-successors are both marked."""
    a = _alphabet(("a", False, False), ("b", False, True))
    return Generator.build(
        a, 4, 0, {2, 3}, {(0, "a"): 1, (1, "b"): 2, (0, "b"): 3}, name="obs_a"
    )


def fix_obs_b() -> Generator:
    """Fork where only one branch carries the observable event."""
    a = _alphabet(("a", False, False), ("b", False, True))
    return Generator.build(
        a, 4, 0, {1, 3}, {(0, "a"): 1, (0, "b"): 3}, name="obs_b"
    )


def fix_supc() -> Generator:
    """Uncontrollable u and controllable c from the start, both marked."""
    a = _alphabet(("u", False, True), ("c", True, True))
    return Generator.build(a, 3, 0, {1, 2}, {(0, "u"): 1, (0, "c"): 2}, name="supc")


def fix_spec_c() -> Generator:
    """Recognizer of the single string c over the alphabet {c}."""
    a = _alphabet(("c", True, True))
    return Generator.build(a, 2, 0, {1}, {(0, "c"): 1}, name="spec_c")


FIXTURES = {
    "twopath": fix_twopath,
    "clash": fix_clash,
    "taint": fix_taint,
    "obs_a": fix_obs_a,
    "obs_b": fix_obs_b,
    "supc": fix_supc,
    "spec_c": fix_spec_c,
}
