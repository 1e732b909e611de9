"""Exception hierarchy for the toolkit.

Every error raised on a violated operation precondition derives from
ToolkitError so the command-line front end can map them to exit code 2.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(ToolkitError):
    """A generator, alphabet, or observable set is malformed."""


class ParseError(ToolkitError):
    """An automaton text file could not be parsed."""


class AttributeClash(ToolkitError):
    """Two alphabets disagree on the attributes of a shared event label."""


class AlphabetMismatch(ToolkitError):
    """An operation required identical or nested alphabets and got neither."""


class NotNonblocking(ToolkitError):
    """The operation requires a nonblocking generator."""


class SameState(ToolkitError):
    """A state-pair check was invoked on a single state."""


class ControllableUnobservable(ToolkitError):
    """A control-consistency check needs all controllable events observable."""

    def __init__(self, labels):
        self.labels = tuple(sorted(labels))
        super().__init__(
            "controllable events outside the observable set: "
            + " ".join(self.labels)
        )


class NotGCC(ToolkitError):
    """The projection is not control consistent for the plant."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__("projection is not control consistent: %s" % (witness,))


class SpecNotSublanguage(ToolkitError):
    """The candidate language is not contained in the plant language."""


class NotAcyclic(ToolkitError):
    """An exact brute-force check was invoked on a cyclic generator."""
