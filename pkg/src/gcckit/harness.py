"""Randomized replication harness.

Each claim about control-consistent projections is exercised on seeded
random instances: hypotheses are evaluated first (trials with unmet
hypotheses are skipped), the conclusion is checked with the toolkit's
algorithms, and every failure is cross-checked against the brute-force
string-level oracles, shrunk by greedy deletion, and recorded.  Reports are
deterministic functions of (claims, trials, seed, mode, instance config).

Claim catalog:

- ``prop1``      the erasure search yields a control-consistent projection
- ``prop2``      closed-language output control consistency plus the
                 marked-language observer property imply control consistency
- ``corollary1`` the reverse of prop2 fails on some instance (a recorded
                 "fail" here is an instance witnessing exactly that)
- ``lemma1``     the decentralized supervisor composed with the plant is
                 nonblocking
- ``theorem1``   decentralized and monolithic synthesis enforce the same
                 marked language
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .automaton import Generator, Word
from .consistency import check_gcc, check_observer, check_occ, find_gcc_alphabet
from .decentral import decentralized_supcon, verify_lemma1, verify_theorem1
from .errors import ToolkitError, ValidationError
from .langops import ObservableSet
from .oracle import (
    InstanceConfig,
    brute_check,
    brute_supcon,
    enumerate_language,
    is_acyclic,
    random_instance,
)

CLAIMS = ("prop1", "prop2", "corollary1", "lemma1", "theorem1")

MAX_RECORDED = 10


@dataclass(frozen=True)
class Counterexample:
    """A minimized failing instance with its oracle verdicts."""

    claim: str
    plant: Generator
    spec: Generator | None
    observable: ObservableSet
    oracle: tuple[tuple[str, str], ...]
    occurrences: int
    first_trial: int


@dataclass(frozen=True)
class ReplicationReport:
    """Per-claim tallies and minimized counterexamples for one run."""

    claim: str
    trials: int
    holds: int
    fails: int
    skipped: int
    counterexamples: tuple[Counterexample, ...]
    seed: int | str
    mode: str


# -- string-level oracle verdicts --------------------------------------------------


def _filter_by_supervisor(words, sup: Generator, marked: bool):
    own = set(sup.alphabet.labels)
    out = set()
    for w in words:
        p = tuple(l for l in w if l in own)
        if sup.accepts(p) if marked else sup.in_closed(p):
            out.add(w)
    return out


def _oracle_lemma1(plant: Generator, sup0: Generator) -> bool:
    """Nonblocking verdict for the composed loop, by enumeration."""
    bound = plant.n_states
    closed = _filter_by_supervisor(
        enumerate_language(plant, "closed", bound).strings, sup0, marked=False
    )
    marked = _filter_by_supervisor(
        enumerate_language(plant, "marked", bound).strings, sup0, marked=True
    )
    prefixes = {w[:i] for w in marked for i in range(len(w) + 1)}
    return closed <= prefixes


def _oracle_theorem1(
    plant: Generator, spec: Generator, sup0: Generator
) -> tuple[bool, frozenset[Word], frozenset[Word]]:
    """String-set comparison of the monolithic supremal language with the
    language the decentralized supervisor enforces on the plant."""
    left = brute_supcon(plant, spec).strings
    right = frozenset(
        _filter_by_supervisor(
            enumerate_language(plant, "marked", plant.n_states).strings,
            sup0,
            marked=True,
        )
    )
    return left == right, left, right


def _fmt_words(words, limit=3) -> str:
    ws = sorted(words, key=lambda w: (len(w), w))[:limit]
    shown = ", ".join("'%s'" % " ".join(w) if w else "''" for w in ws)
    more = "" if len(words) <= limit else ", ..."
    return "{%s%s}" % (shown, more)


# -- per-claim evaluation -----------------------------------------------------------


def _run_claim(
    claim: str,
    plant: Generator,
    spec: Generator | None,
    obs: ObservableSet,
    mode: str,
    with_oracle: bool,
) -> tuple[str, tuple[tuple[str, str], ...]]:
    """Evaluate one claim on one instance.

    Returns (status, oracle verdict items); status is hold/fail/skip.  The
    spec is only consulted by the synthesis claims.  When ``with_oracle`` is
    set, failures on acyclic plants are confirmed against the brute-force
    oracles (cyclic instances are recorded as not cross-checked, since the
    bounded oracles are not exact there); a checker/oracle disagreement
    raises, since agreement is a build invariant.
    """
    detail: list[tuple[str, str]] = []

    def oracle_exact() -> bool:
        if is_acyclic(plant):
            return True
        detail.append(("oracle", "not-cross-checked (cyclic instance)"))
        return False

    def confirm(name: str, module_verdict: bool, oracle_verdict: bool):
        detail.append((name, str(oracle_verdict)))
        if module_verdict != oracle_verdict:
            raise RuntimeError(
                "checker/oracle disagreement on %s for claim %s" % (name, claim)
            )

    if claim == "prop1":
        trace = find_gcc_alphabet(plant, mode)
        ok, wit = check_gcc(plant, trace.result, mode)
        if ok:
            return "hold", ()
        if with_oracle:
            detail.append(("erased", " ".join(trace.erased) or "<none>"))
            detail.append(("witness", wit.describe()))
            if oracle_exact():
                confirm(
                    "oracle_gcc", ok, brute_check(plant, trace.result, "gcc", mode)[0]
                )
        return "fail", tuple(detail)

    if claim == "prop2":
        occ_ok, _ = check_occ(plant, obs)
        observer_ok, _ = check_observer(plant, obs, "marked")
        if not (occ_ok and observer_ok):
            return "skip", ()
        ok, wit = check_gcc(plant, obs, mode)
        if ok:
            return "hold", ()
        if with_oracle:
            detail.append(("witness", wit.describe()))
            if oracle_exact():
                confirm("oracle_occ", occ_ok, brute_check(plant, obs, "occ")[0])
                confirm(
                    "oracle_observer",
                    observer_ok,
                    brute_check(plant, obs, "observer-marked")[0],
                )
                confirm("oracle_gcc", ok, brute_check(plant, obs, "gcc", mode)[0])
        return "fail", tuple(detail)

    if claim == "corollary1":
        gcc_ok, _ = check_gcc(plant, obs, mode)
        if not gcc_ok:
            return "skip", ()
        occ_ok, occ_wit = check_occ(plant, obs)
        observer_ok, obs_wit = check_observer(plant, obs, "marked")
        if occ_ok and observer_ok:
            return "hold", ()
        if with_oracle:
            if oracle_exact():
                confirm("oracle_gcc", gcc_ok, brute_check(plant, obs, "gcc", mode)[0])
                confirm("oracle_occ", occ_ok, brute_check(plant, obs, "occ")[0])
                confirm(
                    "oracle_observer",
                    observer_ok,
                    brute_check(plant, obs, "observer-marked")[0],
                )
            missing = []
            if not occ_ok:
                missing.append("occ")
            if not observer_ok:
                missing.append("observer")
            detail.append(("reverse_fails_on", " ".join(missing)))
        return "fail", tuple(detail)

    if claim == "lemma1":
        assert spec is not None, "synthesis claims need a specification"
        gcc_ok, _ = check_gcc(plant, obs, mode)
        if not gcc_ok:
            return "skip", ()
        dec = decentralized_supcon(plant, spec, obs, mode)
        nb, wit = verify_lemma1(plant, dec.supervisor)
        if nb:
            return "hold", ()
        if with_oracle:
            detail.append(("witness", wit.describe()))
            if oracle_exact():
                confirm(
                    "oracle_nonblocking", nb, _oracle_lemma1(plant, dec.supervisor)
                )
        return "fail", tuple(detail)

    if claim == "theorem1":
        assert spec is not None, "synthesis claims need a specification"
        gcc_ok, _ = check_gcc(plant, obs, mode)
        if not gcc_ok:
            return "skip", ()
        rec = verify_theorem1(plant, spec, obs, mode)
        if rec.equal:
            return "hold", ()
        if with_oracle and oracle_exact():
            equal, left, right = _oracle_theorem1(
                plant, spec, rec.decentralized.supervisor
            )
            detail.append(("oracle_monolithic", _fmt_words(left)))
            detail.append(("oracle_composed", _fmt_words(right)))
            confirm("oracle_equal", rec.equal, equal)
        return "fail", tuple(detail)

    raise ValidationError("unknown claim %r" % (claim,))


def _claim_fails(claim, plant, spec, obs, mode) -> bool:
    """Does the claim still fail on a (possibly mutated) instance?

    Any precondition error counts as "no": the mutation left the instance
    family.
    """
    try:
        status, _ = _run_claim(claim, plant, spec, obs, mode, with_oracle=False)
    except ToolkitError:
        return False
    return status == "fail"


# -- shrinking ----------------------------------------------------------------------


def _delete_state(g: Generator, s: int) -> Generator | None:
    if g.n_states <= 1 or s == g.initial:
        return None
    remap = {old: (old if old < s else old - 1) for old in range(g.n_states) if old != s}
    return Generator(
        g.alphabet,
        g.n_states - 1,
        remap[g.initial],
        frozenset(remap[q] for q in g.marked if q != s),
        tuple(
            (remap[a], l, remap[b])
            for a, l, b in g.transitions
            if a != s and b != s
        ),
        name=g.name,
    )


def _delete_transition(g: Generator, triple) -> Generator:
    return Generator(
        g.alphabet,
        g.n_states,
        g.initial,
        g.marked,
        tuple(t for t in g.transitions if t != triple),
        name=g.name,
    )


def _unmark(g: Generator, q: int) -> Generator:
    return Generator(
        g.alphabet,
        g.n_states,
        g.initial,
        g.marked - {q},
        g.transitions,
        name=g.name,
    )


def shrink_instance(
    claim: str,
    plant: Generator,
    spec: Generator,
    obs: ObservableSet,
    mode: str,
) -> tuple[Generator, Generator]:
    """Greedy minimization preserving hypothesis satisfaction and failure.

    Tries, in order and to a fixpoint: plant state deletions, plant
    transition deletions, plant unmarkings, then the same for the spec.
    """
    uses_spec = claim in ("lemma1", "theorem1")

    def candidates(p: Generator, e: Generator):
        for s in range(p.n_states):
            cand = _delete_state(p, s)
            if cand is not None:
                yield cand, e
        for tr in p.transitions:
            yield _delete_transition(p, tr), e
        for q in sorted(p.marked):
            yield _unmark(p, q), e
        if uses_spec:
            for s in range(e.n_states):
                cand = _delete_state(e, s)
                if cand is not None:
                    yield p, cand
            for tr in e.transitions:
                yield p, _delete_transition(e, tr)
            for q in sorted(e.marked):
                yield p, _unmark(e, q)

    changed = True
    while changed:
        changed = False
        for p2, e2 in candidates(plant, spec):
            if _claim_fails(claim, p2, e2, obs, mode):
                plant, spec = p2, e2
                changed = True
                break
    return plant, spec


# -- the harness --------------------------------------------------------------------


def replicate(
    claims,
    trials: int,
    seed: int | str,
    mode: str = "literal",
    cfg: InstanceConfig | None = None,
) -> dict[str, ReplicationReport]:
    """Run the requested claims on seeded random instances.

    Per trial one (plant, spec, observable set) instance is drawn with
    randomness derived from (seed, trial index), so reports are independent
    of evaluation order.  Failures are oracle-confirmed, shrunk, and
    deduplicated; at most a fixed number of distinct minimized
    counterexamples per claim are stored (tallies always cover all trials).
    """
    if trials < 1:
        raise ValidationError("trials must be positive")
    claims = list(claims)
    unknown = set(claims) - set(CLAIMS)
    if unknown:
        raise ValidationError("unknown claims: %s" % " ".join(sorted(unknown)))
    claims = [c for c in CLAIMS if c in claims]
    base = cfg if cfg is not None else InstanceConfig()

    tallies = {c: {"hold": 0, "fail": 0, "skip": 0} for c in claims}
    recorded: dict[str, dict[str, Counterexample]] = {c: {} for c in claims}

    for trial in range(trials):
        plant, spec, obs = random_instance(
            replace(base, seed="%s:%s" % (seed, trial))
        )
        for claim in claims:
            status, _ = _run_claim(claim, plant, spec, obs, mode, with_oracle=False)
            tallies[claim][status] += 1
            if status != "fail":
                continue
            small_plant, small_spec = shrink_instance(claim, plant, spec, obs, mode)
            _, oracle = _run_claim(
                claim, small_plant, small_spec, obs, mode, with_oracle=True
            )
            uses_spec = claim in ("lemma1", "theorem1")
            key = _instance_key(small_plant, small_spec if uses_spec else None, obs)
            bucket = recorded[claim]
            if key in bucket:
                prev = bucket[key]
                bucket[key] = replace(prev, occurrences=prev.occurrences + 1)
            else:
                bucket[key] = Counterexample(
                    claim=claim,
                    plant=small_plant,
                    spec=small_spec if uses_spec else None,
                    observable=obs,
                    oracle=oracle,
                    occurrences=1,
                    first_trial=trial,
                )

    reports: dict[str, ReplicationReport] = {}
    for claim in claims:
        t = tallies[claim]
        cxs = sorted(recorded[claim].values(), key=lambda c: c.first_trial)
        reports[claim] = ReplicationReport(
            claim=claim,
            trials=trials,
            holds=t["hold"],
            fails=t["fail"],
            skipped=t["skip"],
            counterexamples=tuple(cxs[:MAX_RECORDED]),
            seed=seed,
            mode=mode,
        )
    return reports


def _instance_key(plant, spec, obs) -> str:
    from .textio import serialize

    parts = [serialize(plant)]
    if spec is not None:
        parts.append(serialize(spec))
    parts.append(" ".join(sorted(obs.labels)))
    return "\n".join(parts)


def replay_counterexample(cx: Counterexample, mode: str) -> bool:
    """Re-run a stored counterexample: the claim must still fail and the
    oracle verdicts must reproduce."""
    status, oracle = _run_claim(
        cx.claim, cx.plant, cx.spec, cx.observable, mode, with_oracle=True
    )
    return status == "fail" and oracle == cx.oracle
