import pytest

from gcckit.oracle import InstanceConfig, random_instance


def instances(prefix, count, **overrides):
    """Deterministic stream of (plant, spec, observable set) triples."""
    for i in range(count):
        yield random_instance(InstanceConfig(seed="%s:%d" % (prefix, i), **overrides))


@pytest.fixture
def twopath():
    from gcckit.oracle import fix_twopath

    return fix_twopath()
