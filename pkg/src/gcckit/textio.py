"""The on-disk automaton format and report rendering.

An automaton file is UTF-8 text with LF line endings and sections in fixed
order::

    des <name>
    events:
    <label> <c|u> <o|x>
    ...
    states: <n>
    initial: <i>
    marked: <i ...>
    transitions:
    <src> <label> <dst>
    ...

``c``/``u`` flag controllability, ``o``/``x`` the default observability.
``#`` starts a comment running to the end of the line.  Serialization is
canonical (events sorted by label, transitions by source then label) so
parse/serialize round-trips are exact and outputs are byte-stable.
"""

from __future__ import annotations

from .automaton import Alphabet, EventAttr, Generator
from .decentral import TheoremComparison
from .errors import ParseError, ValidationError
from .harness import Counterexample, ReplicationReport
from .langops import ObservableSet

TOOL_VERSION = "0.1.0"


def serialize(g: Generator) -> str:
    lines = ["des %s" % g.name, "events:"]
    for e in g.alphabet:
        lines.append(
            "%s %s %s"
            % (e.label, "c" if e.controllable else "u", "o" if e.observable else "x")
        )
    lines.append("states: %d" % g.n_states)
    lines.append("initial: %d" % g.initial)
    lines.append("marked:%s" % ("".join(" %d" % q for q in sorted(g.marked))))
    lines.append("transitions:")
    for s, l, t in sorted(g.transitions):
        lines.append("%d %s %d" % (s, l, t))
    return "\n".join(lines) + "\n"


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse(text: str) -> Generator:
    """Parse an automaton file; sections must appear in the fixed order."""
    lines = list(_logical_lines(text))
    pos = 0

    def fail(msg: str, lineno: int | None = None) -> ParseError:
        where = "" if lineno is None else " (line %d)" % lineno
        return ParseError(msg + where)

    def take():
        nonlocal pos
        if pos >= len(lines):
            raise fail("unexpected end of file")
        item = lines[pos]
        pos += 1
        return item

    lineno, line = take()
    if not line.startswith("des ") or not line[4:].strip():
        raise fail("expected 'des <name>' header", lineno)
    name = line[4:].strip()

    lineno, line = take()
    if line != "events:":
        raise fail("expected 'events:' section", lineno)
    events = []
    while True:
        lineno, line = take()
        if line.startswith("states:"):
            break
        parts = line.split()
        if len(parts) != 3 or parts[1] not in ("c", "u") or parts[2] not in ("o", "x"):
            raise fail("expected '<label> <c|u> <o|x>'", lineno)
        events.append(EventAttr(parts[0], parts[1] == "c", parts[2] == "o"))

    try:
        n = int(line.split(":", 1)[1])
    except ValueError:
        raise fail("bad state count", lineno) from None

    lineno, line = take()
    if not line.startswith("initial:"):
        raise fail("expected 'initial:' line", lineno)
    try:
        initial = int(line.split(":", 1)[1])
    except ValueError:
        raise fail("bad initial state", lineno) from None

    lineno, line = take()
    if not line.startswith("marked:"):
        raise fail("expected 'marked:' line", lineno)
    rest = line.split(":", 1)[1].split()
    try:
        marked = frozenset(int(x) for x in rest)
    except ValueError:
        raise fail("bad marked state list", lineno) from None

    lineno, line = take()
    if line != "transitions:":
        raise fail("expected 'transitions:' section", lineno)
    triples = []
    while pos < len(lines):
        lineno, line = take()
        parts = line.split()
        if len(parts) != 3:
            raise fail("expected '<src> <label> <dst>'", lineno)
        try:
            triples.append((int(parts[0]), parts[1], int(parts[2])))
        except ValueError:
            raise fail("bad transition endpoints", lineno) from None

    try:
        return Generator(Alphabet(events), n, initial, frozenset(marked), tuple(triples), name=name)
    except ValidationError as exc:
        raise ParseError("invalid automaton: %s" % exc) from exc


def load(path) -> Generator:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(g: Generator, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))


# -- report rendering --------------------------------------------------------------


def _indent_block(text: str, pad: str) -> str:
    return "\n".join(pad + line if line else pad.rstrip() for line in text.rstrip("\n").split("\n"))


def format_theorem_report(
    rec: TheoremComparison, obs: ObservableSet, mode: str, seed=None
) -> str:
    """Stable text for a two-route synthesis comparison."""
    lines = [
        "gcckit-report v1",
        "tool-version: %s" % TOOL_VERSION,
        "kind: synthesis-comparison",
        "mode: %s" % mode,
    ]
    if seed is not None:
        lines.append("seed: %s" % seed)
    lines.append("observable: %s" % " ".join(sorted(obs.labels)))
    lines.append("gcc: %s" % str(rec.gcc).lower())
    lines.append(
        "monolithic: states=%d empty=%s"
        % (rec.monolithic.supervisor.n_states, str(rec.monolithic.empty).lower())
    )
    lines.append(
        "decentralized: states=%d empty=%s"
        % (rec.decentralized.supervisor.n_states, str(rec.decentralized.empty).lower())
    )
    lines.append("marked-languages: %s" % rec.marked_compare.verdict)
    if rec.marked_compare.in_left_only is not None:
        lines.append(
            "only-monolithic: %s" % rec.marked_compare.in_left_only.describe()
        )
    if rec.marked_compare.in_right_only is not None:
        lines.append(
            "only-composed: %s" % rec.marked_compare.in_right_only.describe()
        )
    lines.append("closed-loop-nonblocking: %s" % str(rec.nonblocking).lower())
    if rec.nonblocking_witness is not None:
        lines.append("blocking-witness: %s" % rec.nonblocking_witness.describe())
    return "\n".join(lines) + "\n"


def format_counterexample(cx: Counterexample, index: int) -> str:
    lines = ["counterexample %d: occurrences=%d first-trial=%d" % (index, cx.occurrences, cx.first_trial)]
    lines.append("  observable: %s" % " ".join(sorted(cx.observable.labels)))
    lines.append("  plant:")
    lines.append(_indent_block(serialize(cx.plant), "    "))
    if cx.spec is not None:
        lines.append("  spec:")
        lines.append(_indent_block(serialize(cx.spec), "    "))
    for key, value in cx.oracle:
        lines.append("  %s: %s" % (key, value))
    return "\n".join(lines)


_CLAIM_LEGENDS = {
    "prop1": "conclusion: the erasure-search observable set is control consistent",
    "prop2": "hypotheses: closed-language OCC and marked-language observer; "
    "conclusion: control consistency",
    "corollary1": "a fail is a control-consistent instance where OCC or the "
    "observer property does not hold (witnessing that the reverse "
    "implication is not valid)",
    "lemma1": "conclusion: decentralized supervisor composed with the plant "
    "is nonblocking",
    "theorem1": "conclusion: decentralized and monolithic synthesis enforce "
    "the same marked language",
}


def format_replication_report(rep: ReplicationReport) -> str:
    lines = [
        "gcckit-report v1",
        "tool-version: %s" % TOOL_VERSION,
        "kind: replication",
        "claim: %s" % rep.claim,
        "legend: %s" % _CLAIM_LEGENDS[rep.claim],
        "seed: %s" % rep.seed,
        "mode: %s" % rep.mode,
        "trials: %d" % rep.trials,
        "holds: %d" % rep.holds,
        "fails: %d" % rep.fails,
        "skipped: %d" % rep.skipped,
        "recorded-counterexamples: %d" % len(rep.counterexamples),
    ]
    for i, cx in enumerate(rep.counterexamples):
        lines.append(format_counterexample(cx, i))
    return "\n".join(lines) + "\n"
