"""The oracle is the ground truth for the derived values used everywhere
else, so it is tested first, against hand-computed cases only."""

import pytest

from gcckit import Generator, NotAcyclic, ObservableSet
from gcckit.oracle import (
    InstanceConfig,
    brute_check,
    brute_supcon,
    enumerate_language,
    fix_clash,
    fix_obs_a,
    fix_obs_b,
    fix_supc,
    fix_spec_c,
    fix_taint,
    fix_twopath,
    is_acyclic,
    random_instance,
)

from conftest import instances


def words(*ws):
    return {tuple(w.split()) if w else () for w in ws}


def test_enumerate_trivial_bound_zero(twopath):
    assert enumerate_language(twopath, "closed", 0).strings == {()}


def test_enumerate_twopath_marked():
    sample = enumerate_language(fix_twopath(), "marked", 2)
    assert sample.strings == words("a", "c")
    assert sample.exact is False  # bound 2 < 3 states
    assert enumerate_language(fix_twopath(), "marked", 3).exact is True


def test_enumerate_taint_closed():
    sample = enumerate_language(fix_taint(), "closed", 3)
    assert sample.strings == words("", "c", "c u")
    assert sample.exact


def test_enumerate_closed_prefix_closed():
    for plant, _, _ in instances("enum-prefix", 50):
        ss = enumerate_language(plant, "closed", 6).strings
        assert all(w[:i] in ss for w in ss for i in range(len(w)))


def test_enumerate_empty_generator(twopath):
    empty = Generator.empty(twopath.alphabet)
    assert enumerate_language(empty, "closed", 3).strings == set()


def test_acyclic_detection(twopath):
    assert is_acyclic(twopath)
    assert not is_acyclic(Generator.universal(twopath.alphabet))


def test_brute_supcon_supc_pins():
    assert brute_supcon(fix_supc(), fix_spec_c()).strings == set()
    euc = Generator.build(
        fix_supc().alphabet, 2, 0, {1}, {(0, "u"): 1, (0, "c"): 1}, name="spec_uc"
    )
    assert brute_supcon(fix_supc(), euc).strings == words("u", "c")


def test_brute_supcon_unrestrictive_spec():
    for plant, _, _ in instances("brute-sup", 30):
        universal = Generator.universal(plant.alphabet)
        assert (
            brute_supcon(plant, universal).strings
            == enumerate_language(plant, "marked", plant.n_states).strings
        )


def test_brute_supcon_requires_bound_on_cyclic(twopath):
    cyclic = Generator.universal(twopath.alphabet)
    with pytest.raises(NotAcyclic):
        brute_supcon(cyclic, cyclic)
    # bounded approximation is conservative: every bounded string here has an
    # uncontrollable a-extension inside the plant, so nothing survives
    approx = brute_supcon(cyclic, cyclic, bound=2)
    assert not approx.exact
    assert approx.strings == set()
    # without uncontrollable events the truncated sample is controllable as is
    from gcckit import Alphabet, EventAttr

    tame = Generator.universal(Alphabet([EventAttr("c", True, True)]))
    approx = brute_supcon(tame, tame, bound=2)
    assert approx.strings == words("", "c", "c c")


def test_brute_check_fixture_pins():
    assert brute_check(fix_twopath(), ObservableSet("c"), "gcc")[0] is True
    assert brute_check(fix_clash(), ObservableSet("c"), "gcc")[0] is False
    assert brute_check(fix_taint(), ObservableSet("u"), "occ")[0] is False
    assert brute_check(fix_obs_b(), ObservableSet("b"), "observer-marked")[0] is False
    assert brute_check(fix_obs_a(), ObservableSet("b"), "observer-marked")[0] is True


def test_brute_check_rejects_cyclic(twopath):
    with pytest.raises(NotAcyclic):
        brute_check(Generator.universal(twopath.alphabet), ObservableSet("a"), "occ")


def test_random_instance_deterministic():
    cfg = InstanceConfig(seed="det")
    assert random_instance(cfg) == random_instance(cfg)


def test_random_instance_contract():
    # every draw is well-formed (constructor validates), trim, and nonblocking
    from gcckit import coreachable, reachable, trim

    for i, (plant, spec, obs) in enumerate(instances("contract", 1000)):
        for g in (plant, spec):
            assert g.n_states >= 1
            assert reachable(g) == set(range(g.n_states)), i
            assert coreachable(g) >= reachable(g), i
            assert trim(g) == g, i
        assert set(plant.alphabet.controllable_labels) <= obs.labels
        assert set(spec.alphabet.labels) <= obs.labels


def test_random_instance_acyclic_only():
    for plant, spec, _ in instances("acy", 200, acyclic_only=True):
        assert is_acyclic(plant) and is_acyclic(spec)
