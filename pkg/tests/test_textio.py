import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcckit import Alphabet, EventAttr, Generator, ParseError
from gcckit.oracle import FIXTURES
from gcckit.textio import parse, serialize

from conftest import instances


def test_round_trip_fixtures():
    for name, fn in FIXTURES.items():
        g = fn()
        assert parse(serialize(g)) == g, name
        assert serialize(parse(serialize(g))) == serialize(g), name


def test_round_trip_preserves_name(twopath):
    assert parse(serialize(twopath)).name == "twopath"


def test_round_trip_random_instances():
    for plant, spec, _ in instances("textio", 300, acyclic_only=False):
        for g in (plant, spec):
            assert parse(serialize(g)) == g


def test_comments_and_blank_lines(twopath):
    text = serialize(twopath)
    noisy = "# header comment\n" + text.replace(
        "states: 3", "states: 3  # three states\n\n"
    )
    assert parse(noisy) == twopath


def test_empty_generator_round_trip(twopath):
    g = Generator.empty(twopath.alphabet)
    assert parse(serialize(g)) == g


@pytest.mark.parametrize(
    "mutation",
    [
        lambda t: t.replace("des ", "automaton "),
        lambda t: t.replace("events:", "alphabet:"),
        lambda t: t.replace("a u x", "a q x"),
        lambda t: t.replace("initial: 0", "initial: zero"),
        lambda t: t.replace("0 a 1", "0 a"),
        lambda t: t.replace("initial: 0", "initial: 9"),
        lambda t: t + "trailing junk line\n",
    ],
)
def test_parse_errors(mutation, twopath):
    with pytest.raises(ParseError):
        parse(mutation(serialize(twopath)))


def test_section_order_enforced(twopath):
    lines = serialize(twopath).splitlines()
    # move the marked line before initial
    i = lines.index("initial: 0")
    j = lines.index("marked: 1 2")
    lines[i], lines[j] = lines[j], lines[i]
    with pytest.raises(ParseError):
        parse("\n".join(lines) + "\n")


_labels = st.lists(
    st.text(alphabet="abcdef_019", min_size=1, max_size=3),
    min_size=1,
    max_size=4,
    unique=True,
)


@st.composite
def generators(draw):
    labels = draw(_labels)
    alphabet = Alphabet(
        EventAttr(l, draw(st.booleans()), draw(st.booleans())) for l in labels
    )
    n = draw(st.integers(min_value=1, max_value=5))
    trans = {}
    for s in range(n):
        for l in labels:
            if draw(st.booleans()):
                trans[(s, l)] = draw(st.integers(min_value=0, max_value=n - 1))
    marked = draw(st.sets(st.integers(min_value=0, max_value=n - 1)))
    initial = draw(st.integers(min_value=0, max_value=n - 1))
    return Generator.build(alphabet, n, initial, marked, trans, name=draw(st.sampled_from("GHK")))


@settings(max_examples=200, deadline=None)
@given(generators())
def test_round_trip_hypothesis(g):
    assert parse(serialize(g)) == g
    assert serialize(parse(serialize(g))) == serialize(g)


@settings(max_examples=50, deadline=None)
@given(generators())
def test_serialize_deterministic(g):
    assert serialize(g) == serialize(g)
    assert serialize(g).endswith("\n")
    assert "\r" not in serialize(g)
