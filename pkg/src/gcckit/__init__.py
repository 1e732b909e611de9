"""Supervisory control of discrete-event systems.

Deterministic generators with attributed events, language operators
(synchronous product, meet, natural and inverse projection), supremal
controllable nonblocking synthesis, control-consistency and observation
property checkers, decentralized synthesis over a reduced plant, brute-force
oracles, and a randomized replication harness.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .automaton import (
    Alphabet,
    CompareResult,
    EventAttr,
    Generator,
    Witness,
    coreachable,
    is_nonblocking,
    language_compare,
    reachable,
    trim,
)
from .consistency import (
    ErasureTrace,
    LookalikePairs,
    check_gcc,
    check_normal,
    check_observer,
    check_occ,
    check_paranormal,
    find_gcc_alphabet,
    is_icc,
    lookalike_pairs,
)
from .decentral import (
    Cover,
    ReducedPlant,
    TheoremComparison,
    build_cover,
    decentralized_supcon,
    monolithic_supcon,
    reduce_plant,
    verify_lemma1,
    verify_theorem1,
)
from .errors import (
    AlphabetMismatch,
    AttributeClash,
    ControllableUnobservable,
    NotAcyclic,
    NotGCC,
    NotNonblocking,
    ParseError,
    SameState,
    SpecNotSublanguage,
    ToolkitError,
    ValidationError,
)
from .harness import (
    CLAIMS,
    Counterexample,
    ReplicationReport,
    replay_counterexample,
    replicate,
    shrink_instance,
)
from .langops import (
    ObservableSet,
    extend_alphabet,
    inverse_project,
    meet,
    project,
    sync,
)
from .oracle import (
    FIXTURES,
    InstanceConfig,
    LanguageSample,
    brute_check,
    brute_supcon,
    enumerate_language,
    is_acyclic,
    random_instance,
)
from .synthesis import SynthesisResult, control_equivalent, is_controllable, supcon
from .textio import load, parse, save, serialize

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "AttributeClash",
    "CLAIMS",
    "CompareResult",
    "ControllableUnobservable",
    "Counterexample",
    "Cover",
    "ErasureTrace",
    "EventAttr",
    "FIXTURES",
    "Generator",
    "InstanceConfig",
    "KERNEL_BACKEND",
    "LanguageSample",
    "LookalikePairs",
    "NotAcyclic",
    "NotGCC",
    "NotNonblocking",
    "ObservableSet",
    "ParseError",
    "ReducedPlant",
    "ReplicationReport",
    "SameState",
    "SpecNotSublanguage",
    "SynthesisResult",
    "TheoremComparison",
    "ToolkitError",
    "ValidationError",
    "Witness",
    "brute_check",
    "brute_supcon",
    "build_cover",
    "check_gcc",
    "check_normal",
    "check_observer",
    "check_occ",
    "check_paranormal",
    "control_equivalent",
    "coreachable",
    "decentralized_supcon",
    "enumerate_language",
    "extend_alphabet",
    "find_gcc_alphabet",
    "inverse_project",
    "is_acyclic",
    "is_controllable",
    "is_icc",
    "is_nonblocking",
    "language_compare",
    "load",
    "lookalike_pairs",
    "meet",
    "monolithic_supcon",
    "parse",
    "project",
    "random_instance",
    "reachable",
    "reduce_plant",
    "replay_counterexample",
    "replicate",
    "save",
    "serialize",
    "shrink_instance",
    "supcon",
    "sync",
    "trim",
    "verify_lemma1",
    "verify_theorem1",
]
