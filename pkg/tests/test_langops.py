import random

import pytest

from gcckit import (
    AlphabetMismatch,
    AttributeClash,
    EventAttr,
    Alphabet,
    Generator,
    ObservableSet,
    ValidationError,
    inverse_project,
    language_compare,
    meet,
    project,
    sync,
)
from gcckit.oracle import (
    _random_trim_generator,
    enumerate_language,
    fix_spec_c,
    fix_taint,
    fix_twopath,
)

from conftest import instances


def test_observable_set_validates():
    s = ObservableSet(["c"])
    s.validate_for(fix_twopath().alphabet)
    with pytest.raises(ValidationError):
        ObservableSet(["zz"]).validate_for(fix_twopath().alphabet)


def test_sync_identity_element(twopath):
    loop = Generator.universal(twopath.alphabet)
    for which in ("closed", "marked"):
        assert language_compare(sync(twopath, loop), twopath, which).equal


def test_sync_twopath_with_observable_supervisor(twopath):
    s = sync(fix_spec_c(), twopath)
    assert enumerate_language(s, "marked", 4).strings == {("c",)}
    assert enumerate_language(s, "closed", 4).strings == {(), ("a",), ("c",)}


def test_sync_commutative(twopath):
    s1, s2 = sync(twopath, fix_spec_c()), sync(fix_spec_c(), twopath)
    for which in ("closed", "marked"):
        assert language_compare(s1, s2, which).equal


def test_sync_attribute_clash(twopath):
    other = Generator.build(
        Alphabet([EventAttr("c", controllable=False)]), 1, transitions={(0, "c"): 0}
    )
    with pytest.raises(AttributeClash):
        sync(twopath, other)


def test_meet_examples(twopath):
    assert language_compare(meet(twopath, twopath), twopath, "marked").equal
    a = fix_spec_c().alphabet
    rec_c = fix_spec_c()
    rec_eps_c = Generator.build(a, 2, marked={0, 1}, transitions={(0, "c"): 1})
    assert enumerate_language(meet(rec_c, rec_eps_c), "marked", 3).strings == {("c",)}
    with pytest.raises(AlphabetMismatch):
        meet(twopath, rec_c)


def test_meet_disjoint_recognizers():
    a = Alphabet([EventAttr("a"), EventAttr("b")])
    ra = Generator.build(a, 2, marked={1}, transitions={(0, "a"): 1})
    rb = Generator.build(a, 2, marked={1}, transitions={(0, "b"): 1})
    assert enumerate_language(meet(ra, rb), "marked", 3).strings == set()


def test_project_examples(twopath):
    full = project(twopath, ObservableSet(twopath.alphabet.labels))
    for which in ("closed", "marked"):
        assert language_compare(full, twopath, which).equal

    p = project(twopath, ObservableSet("c"))
    assert p.n_states == 2
    assert p.marked == {0, 1}
    assert p.transitions == ((0, "c", 1),)

    pt = project(fix_taint(), ObservableSet("u"))
    assert pt.n_states == 2
    assert pt.marked == {1}
    assert pt.transitions == ((0, "u", 1),)


def test_project_oracle_agreement():
    for plant, _, obs in instances("proj", 200):
        for which in ("closed", "marked"):
            via_automaton = enumerate_language(project(plant, obs), which, 8).strings
            direct = {
                obs.project_word(s)
                for s in enumerate_language(plant, which, 8).strings
            }
            assert via_automaton == direct


def test_inverse_project_examples(twopath):
    c_only = fix_spec_c()
    assert inverse_project(c_only, c_only.alphabet) == c_only
    lifted = inverse_project(c_only, twopath.alphabet)
    assert lifted.accepts(("a", "c", "a"))
    assert not lifted.accepts(("a",))
    back = project(lifted, ObservableSet("c"))
    for which in ("closed", "marked"):
        assert language_compare(back, c_only, which).equal


def test_inverse_project_flag_clash(twopath):
    shadow = Generator.build(
        Alphabet([EventAttr("c", controllable=False)]), 1, marked={0}
    )
    with pytest.raises(AttributeClash):
        inverse_project(shadow, twopath.alphabet)


def test_projection_galois_properties():
    for i, (plant, _, obs) in enumerate(instances("galois", 150)):
        image = project(plant, obs)
        # P(P^-1(M)) = M
        again = project(inverse_project(image, plant.alphabet), obs)
        assert language_compare(again, image, "marked").equal, i
        # M' subset of P^-1(P(M'))
        lifted = inverse_project(image, plant.alphabet)
        res = language_compare(plant, lifted, "closed")
        assert res.verdict in ("equal", "left-proper-subset"), i


def test_sync_associative_language_level():
    for i in range(150):
        rng = random.Random("assoc:%d" % i)
        plant, _, _ = next(instances("assoc:%d" % i, 1))
        g2 = _random_trim_generator(rng, plant.alphabet, 4, 0.4, True, "g2")
        g3 = _random_trim_generator(rng, plant.alphabet, 3, 0.4, True, "g3")
        lhs = sync(sync(plant, g2), g3)
        rhs = sync(plant, sync(g2, g3))
        for which in ("closed", "marked"):
            assert language_compare(lhs, rhs, which).equal, i


def test_meet_matches_intersection_of_enumerations():
    for i in range(100):
        rng = random.Random("meet:%d" % i)
        plant, _, _ = next(instances("meet:%d" % i, 1))
        g2 = _random_trim_generator(rng, plant.alphabet, 4, 0.5, True, "g2")
        got = enumerate_language(meet(plant, g2), "marked", 8).strings
        want = (
            enumerate_language(plant, "marked", 8).strings
            & enumerate_language(g2, "marked", 8).strings
        )
        assert got == want, i
