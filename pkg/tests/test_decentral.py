import pytest

from gcckit import (
    Generator,
    NotGCC,
    ObservableSet,
    build_cover,
    decentralized_supcon,
    inverse_project,
    language_compare,
    monolithic_supcon,
    reduce_plant,
    project,
    trim,
    verify_lemma1,
    verify_theorem1,
)
from gcckit.oracle import (
    enumerate_language,
    fix_clash,
    fix_obs_a,
    fix_spec_c,
    fix_supc,
    fix_twopath,
)

from conftest import instances

S = ObservableSet


def test_build_cover_full_observation_singletons(twopath):
    cover = build_cover(twopath, S(twopath.alphabet.labels))
    assert cover.cells == ((0,), (1,), (2,))


def test_build_cover_twopath():
    cover = build_cover(fix_twopath(), S("c"))
    assert cover.cells == ((0, 1), (2,))


def test_build_cover_rejects_inconsistent_projection():
    with pytest.raises(NotGCC) as err:
        build_cover(fix_clash(), S("c"))
    assert err.value.witness.states == (0, 1)


def test_cover_invariants_on_random_instances():
    built = 0
    for plant, _, obs in instances("cover", 300):
        try:
            cover = build_cover(plant, obs)
        except NotGCC:
            continue
        built += 1
        cover.check_invariants()  # totality, initial containment, closure
    assert built > 100


def test_reduce_plant_examples(twopath):
    cover = build_cover(twopath, S("c"))
    rp = reduce_plant(twopath, cover)
    assert rp.generator.n_states == 2
    assert rp.generator.marked == {0, 1}
    assert rp.generator.transitions == ((0, "c", 1),)
    assert rp.cell_map == (0, 0, 1)
    assert enumerate_language(rp.generator, "marked", 3).strings == {(), ("c",)}


def test_reduce_plant_matches_projection():
    for plant, _, obs in instances("reduce", 120):
        try:
            cover = build_cover(plant, obs)
        except NotGCC:
            continue
        rp = reduce_plant(plant, cover)
        proj = project(plant, obs)
        assert rp.generator == proj or language_compare(rp.generator, proj, "marked").equal


def test_reduce_plant_full_observation_isomorphic_to_trim():
    g = fix_obs_a()
    cover = build_cover(g, S(g.alphabet.labels))
    rp = reduce_plant(g, cover)
    for which in ("closed", "marked"):
        assert language_compare(rp.generator, trim(g), which).equal


def test_reduced_plant_lifted_containments():
    for plant, _, obs in instances("reduce-lift", 120):
        try:
            cover = build_cover(plant, obs)
        except NotGCC:
            continue
        gp = reduce_plant(plant, cover).generator
        lifted = inverse_project(gp, plant.alphabet)
        for which in ("closed", "marked"):
            r = language_compare(plant, lifted, which)
            assert r.verdict in ("equal", "left-proper-subset"), which


def test_decentralized_supcon_twopath():
    uni = Generator.universal(fix_spec_c().alphabet)
    res = decentralized_supcon(fix_twopath(), uni, S("c"))
    assert enumerate_language(res.supervisor, "marked", 3).strings == {(), ("c",)}

    res = decentralized_supcon(fix_twopath(), fix_spec_c(), S("c"))
    assert enumerate_language(res.supervisor, "marked", 3).strings == {("c",)}

    empty = Generator.empty(fix_spec_c().alphabet)
    assert decentralized_supcon(fix_twopath(), empty, S("c")).empty


def test_decentralized_supcon_requires_consistency():
    with pytest.raises(NotGCC):
        decentralized_supcon(fix_clash(), fix_spec_c(), S("c"))


def test_decentralized_supcon_postconditions():
    from gcckit import is_controllable, is_nonblocking

    checked = 0
    for plant, spec, obs in instances("dec-post", 150):
        try:
            dec = decentralized_supcon(plant, spec, obs)
        except NotGCC:
            continue
        if dec.empty:
            continue
        gp = reduce_plant(plant, build_cover(plant, obs)).generator
        assert is_controllable(dec.supervisor, gp)[0]
        assert is_nonblocking(dec.supervisor)[0]
        checked += 1
    assert checked > 50


def test_monolithic_supcon_examples(twopath):
    full = S(twopath.alphabet.labels)
    uni = Generator.universal(twopath.alphabet)
    res = monolithic_supcon(twopath, uni, full)
    assert language_compare(res.supervisor, twopath, "marked").equal

    res = monolithic_supcon(twopath, fix_spec_c(), S("c"))
    assert res.empty

    euc = Generator.build(
        fix_supc().alphabet, 2, 0, {1}, {(0, "u"): 1, (0, "c"): 1}, name="spec_uc"
    )
    res = monolithic_supcon(fix_supc(), euc, S(fix_supc().alphabet.labels))
    assert enumerate_language(res.supervisor, "marked", 3).strings == {("u",), ("c",)}


def test_verify_lemma1_examples(twopath):
    uni = Generator.universal(twopath.alphabet)
    assert verify_lemma1(twopath, uni) == (True, None)

    ok, wit = verify_lemma1(twopath, fix_spec_c())
    assert not ok and wit.strings == (("a",),)

    empty = Generator.empty(fix_spec_c().alphabet)
    assert verify_lemma1(twopath, empty) == (True, None)


def test_verify_theorem1_unrestrictive_spec():
    for plant, _, obs in instances("thm-uni", 40):
        spec_alpha = plant.alphabet.restrict(obs.labels)
        uni = Generator.universal(spec_alpha)
        try:
            rec = verify_theorem1(plant, uni, obs)
        except NotGCC:
            continue
        # an unrestrictive spec makes both routes enforce the whole marked behavior
        assert rec.equal


def test_verify_theorem1_twopath_pinned_disagreement():
    rec = verify_theorem1(fix_twopath(), fix_spec_c(), S("c"))
    assert rec.gcc
    assert rec.monolithic.empty
    assert not rec.equal
    assert rec.marked_compare.verdict == "left-proper-subset"
    assert rec.marked_compare.in_right_only.strings == (("c",),)
    assert not rec.nonblocking
    assert rec.nonblocking_witness.strings == (("a",),)


def test_verify_theorem1_full_observation_collapse():
    for plant, spec, _ in instances("thm-full", 60, acyclic_only=False):
        rec = verify_theorem1(plant, spec, S(plant.alphabet.labels))
        assert rec.equal
        assert rec.nonblocking
