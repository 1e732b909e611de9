import pytest

from gcckit import (
    ControllableUnobservable,
    Generator,
    NotNonblocking,
    ObservableSet,
    SameState,
    SpecNotSublanguage,
    check_gcc,
    check_normal,
    check_observer,
    check_occ,
    check_paranormal,
    extend_alphabet,
    find_gcc_alphabet,
    is_icc,
    lookalike_pairs,
    supcon,
)
from gcckit.oracle import (
    brute_check,
    fix_clash,
    fix_obs_a,
    fix_obs_b,
    fix_spec_c,
    fix_taint,
    fix_twopath,
)

from conftest import instances

S = ObservableSet


# -- intrinsic consistency -----------------------------------------------------


def test_icc_examples(twopath):
    assert is_icc(twopath, 0, 1) == (True, None)
    ok, wit = is_icc(fix_clash(), 0, 1)
    assert not ok and wit.events == ("c",)
    ok, wit = is_icc(fix_obs_a(), 2, 3)
    assert not ok and wit.kind == "marking"


def test_icc_errors(twopath):
    with pytest.raises(SameState):
        is_icc(twopath, 1, 1)
    blocking = Generator.build(
        twopath.alphabet, 2, marked=set(), transitions={(0, "a"): 1}
    )
    with pytest.raises(NotNonblocking):
        is_icc(blocking, 0, 1)


def test_icc_agreement_mode():
    # both marked: inconsistent literally, consistent as agreement
    g = fix_obs_a()
    assert is_icc(g, 2, 3, mode="literal")[0] is False
    assert is_icc(g, 2, 3, mode="agreement")[0] is True
    # enablement at exactly one: consistent literally, inconsistent as agreement
    assert is_icc(fix_twopath(), 0, 1, mode="literal")[0] is True
    assert is_icc(fix_twopath(), 0, 1, mode="agreement")[0] is False


# -- lookalike pairs -------------------------------------------------------------


def test_lookalike_full_observation_is_diagonal(twopath):
    lp = lookalike_pairs(twopath, S(twopath.alphabet.labels))
    assert set(lp.pairs) == {(0, 0), (2, 2), (1, 1)} or set(lp.pairs) <= {
        (q, q) for q in range(3)
    }


def test_lookalike_twopath():
    lp = lookalike_pairs(fix_twopath(), S("c"))
    assert set(lp.pairs) == {(0, 0), (0, 1), (1, 1), (2, 2)}
    assert lp.witnesses[(0, 1)] == ((), ("a",))


def test_lookalike_obs_a():
    lp = lookalike_pairs(fix_obs_a(), S("b"))
    assert (0, 1) in lp.pairs and (2, 3) in lp.pairs


def test_lookalike_witnesses_replay_and_project_equally():
    from gcckit import reachable

    for i, (plant, _, obs) in enumerate(instances("look", 150)):
        lp = lookalike_pairs(plant, obs)
        assert {(q, q) for q in reachable(plant)} <= set(lp.pairs), i
        for (qi, qj), (s1, s2) in lp.witnesses.items():
            assert plant.run(s1) == qi and plant.run(s2) == qj, i
            assert obs.project_word(s1) == obs.project_word(s2), i


# -- projection-wide consistency --------------------------------------------------


def test_gcc_fixture_pins():
    assert check_gcc(fix_twopath(), S("c")) == (True, None)
    ok, wit = check_gcc(fix_clash(), S("c"))
    assert not ok
    assert wit.states == (0, 1) and wit.strings == ((), ("a",))
    ok, wit = check_gcc(fix_obs_a(), S("b"))
    assert not ok
    assert wit.states == (2, 3) and wit.note == "both marked"


def test_gcc_errors(twopath):
    with pytest.raises(ControllableUnobservable) as err:
        check_gcc(twopath, S("a"))
    assert err.value.labels == ("c",)
    blocking = Generator.build(
        twopath.alphabet, 2, marked=set(), transitions={(0, "a"): 1}
    )
    with pytest.raises(NotNonblocking):
        check_gcc(blocking, S("a c".split()))


def test_gcc_oracle_agreement_both_modes():
    for i, (plant, _, obs) in enumerate(instances("gcc", 200)):
        for mode in ("literal", "agreement"):
            assert (
                check_gcc(plant, obs, mode)[0] == brute_check(plant, obs, "gcc", mode)[0]
            ), (i, mode)


# -- output control consistency ----------------------------------------------------


def test_occ_all_uncontrollable_holds():
    g = fix_obs_a()  # both events uncontrollable
    assert check_occ(g, S("b")) == (True, None)


def test_occ_taint_pins():
    ok, wit = check_occ(fix_taint(), S("u"))
    assert not ok and wit.strings == (("c", "u"),)
    # reflagging c uncontrollable clears the violation
    from gcckit import Alphabet, EventAttr

    a2 = Alphabet([EventAttr("c", False, False), EventAttr("u", False, True)])
    g2 = Generator.build(a2, 3, 0, {2}, {(0, "c"): 1, (1, "u"): 2})
    assert check_occ(g2, S("u")) == (True, None)


def test_occ_observable_event_clears_the_tail():
    from gcckit import Alphabet, EventAttr

    a = Alphabet(
        [EventAttr("c", True, False), EventAttr("o", True, True), EventAttr("u", False, True)]
    )
    obs = S(["o", "u"])
    cleared = Generator.build(
        a, 4, 0, {3}, {(0, "c"): 1, (1, "o"): 2, (2, "u"): 3}, name="cleared"
    )
    assert check_occ(cleared, obs) == (True, None)
    direct = Generator.build(a, 3, 0, {2}, {(0, "c"): 1, (1, "u"): 2}, name="direct")
    assert check_occ(direct, obs)[0] is False


def test_occ_oracle_agreement():
    for i, (plant, _, obs) in enumerate(instances("occ", 200)):
        assert check_occ(plant, obs)[0] == brute_check(plant, obs, "occ")[0], i


# -- observer property ----------------------------------------------------------


def test_observer_full_observation(twopath):
    assert check_observer(twopath, S(twopath.alphabet.labels), "marked") == (True, None)


def test_observer_fixture_pins():
    assert check_observer(fix_obs_a(), S("b"), "marked") == (True, None)
    ok, wit = check_observer(fix_obs_b(), S("b"), "marked")
    assert not ok
    assert wit.strings == (("a",), ("b",))


def test_observer_oracle_agreement():
    for i, (plant, _, obs) in enumerate(instances("observer", 200)):
        for which, prop in (("marked", "observer-marked"), ("closed", "observer-closed")):
            assert (
                check_observer(plant, obs, which)[0]
                == brute_check(plant, obs, prop)[0]
            ), (i, which)


def test_observer_and_occ_exact_on_raw_generators():
    # the literal quantifier semantics must hold even off the trim,
    # nonblocking instance family the generator produces
    import random

    from gcckit import Alphabet, EventAttr

    rng = random.Random("raw-observer")
    for i in range(300):
        m = rng.randint(1, 4)
        labels = "abcd"[:m]
        alphabet = Alphabet(
            EventAttr(l, rng.random() < 0.4, rng.random() < 0.6) for l in labels
        )
        n = rng.randint(1, 6)
        trans = {}
        for s in range(n):
            for l in labels:
                if rng.random() < 0.4 and s + 1 < n:
                    trans[(s, l)] = rng.randrange(s + 1, n)
        marked = {s for s in range(n) if rng.random() < 0.35}
        g = Generator.build(alphabet, n, 0, marked, trans, name="raw%d" % i)
        obs = S([l for l in labels if rng.random() < 0.6])
        for which, prop in (("marked", "observer-marked"), ("closed", "observer-closed")):
            assert check_observer(g, obs, which)[0] == brute_check(g, obs, prop)[0], i
        assert check_occ(g, obs)[0] == brute_check(g, obs, "occ")[0], i


def test_observer_witness_is_a_genuine_violation():
    for i, (plant, _, obs) in enumerate(instances("observer-wit", 300)):
        ok, wit = check_observer(plant, obs, "marked")
        if ok:
            continue
        s, t = wit.strings
        # s is in the closure of the marked language, P(s) <= t, t in P(Lm)
        from gcckit.oracle import enumerate_language

        lm = enumerate_language(plant, "marked", plant.n_states).strings
        assert any(v[: len(s)] == s for v in lm), i
        ps = obs.project_word(s)
        assert t[: len(ps)] == ps, i
        assert any(obs.project_word(v) == t for v in lm), i
        # and no continuation realizes it
        assert not any(
            v[: len(s)] == s and obs.project_word(v) == t for v in lm
        ), i


# -- normality and paranormality ------------------------------------------------


def test_normal_trivial_and_pins(twopath):
    assert check_normal(twopath, twopath, S("c")) == (True, None)
    k = extend_alphabet(fix_spec_c(), twopath.alphabet)
    ok, wit = check_normal(k, twopath, S("c"))
    assert not ok and wit.strings == (("a",),)
    empty = Generator.empty(twopath.alphabet)
    assert check_normal(empty, twopath, S("c")) == (True, None)


def test_paranormal_pins(twopath):
    assert check_paranormal(twopath, twopath, S(twopath.alphabet.labels)) == (
        True,
        None,
    )
    k = extend_alphabet(fix_spec_c(), twopath.alphabet)
    ok, wit = check_paranormal(k, twopath, S("c"))
    assert not ok
    assert wit.strings == ((),) and wit.events == ("a",)


def test_normal_requires_sublanguage(twopath):
    foreign = Generator.build(
        twopath.alphabet, 2, marked={1}, transitions={(1, "c"): 1, (0, "a"): 1, (1, "a"): 0}
    )
    with pytest.raises(SpecNotSublanguage):
        check_normal(foreign, twopath, S("c"))


def test_normal_implies_paranormal():
    checked = 0
    for plant, spec, obs in instances("norm", 400):
        k = supcon(plant, spec).supervisor
        if k.is_empty:
            continue
        if check_normal(k, plant, obs)[0]:
            checked += 1
            assert check_paranormal(k, plant, obs)[0]
    assert checked > 50  # the implication was actually exercised


# -- erasure search ----------------------------------------------------------------


def test_find_gcc_alphabet_no_uncontrollable():
    from gcckit import Alphabet, EventAttr

    a = Alphabet([EventAttr("c", True, True)])
    g = Generator.build(a, 2, marked={1}, transitions={(0, "c"): 1})
    tr = find_gcc_alphabet(g)
    assert tr.erased == () and tr.result.labels == {"c"}


def test_find_gcc_alphabet_fixture_pins():
    tr = find_gcc_alphabet(fix_twopath())
    assert tr.erased == ("a",)
    assert tr.rejected == ()
    assert tr.result.labels == {"c"}

    tr = find_gcc_alphabet(fix_clash())
    assert tr.erased == ()
    assert tr.rejected == (("a", (0, 1)),)
    assert tr.result.labels == {"a", "c"}


def test_find_gcc_alphabet_result_admissible():
    # the returned set always contains the controllable events, so the
    # consistency check runs without a precondition error
    for i, (plant, _, _) in enumerate(instances("erase", 150)):
        tr = find_gcc_alphabet(plant)
        assert set(plant.alphabet.controllable_labels) <= tr.result.labels, i
        check_gcc(plant, tr.result)  # must not raise
