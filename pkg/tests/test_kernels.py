"""The two kernel backends must be interchangeable bit for bit."""

import numpy as np
import pytest

from gcckit._kernels import _pykernels

ck = pytest.importorskip(
    "gcckit._kernels._ckernels", reason="compiled kernels not built"
)


def random_table(rng, n, m, density=0.4):
    return np.where(
        rng.random((n, m)) < density, rng.integers(0, n, (n, m)), -1
    ).astype(np.int32)


@pytest.mark.parametrize("seed", range(40))
def test_backends_bit_identical(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 40))
    m = int(rng.integers(1, 7))
    trans = random_table(rng, n, m)
    ok = rng.integers(0, 2, m).astype(np.uint8)
    alive = rng.integers(0, 2, n).astype(np.uint8)
    alive[0] = 1

    a = _pykernels.reach(trans, [0], ok, alive)
    b = ck.reach(trans, [0], ok, alive)
    assert np.array_equal(a, b)

    targets = sorted(int(x) for x in np.nonzero(rng.integers(0, 2, n))[0])
    a = _pykernels.coreach(trans, targets, ok, alive)
    b = ck.coreach(trans, targets, ok, alive)
    assert np.array_equal(a, b)

    n2 = int(rng.integers(1, 25))
    trans2 = random_table(rng, n2, m, 0.5)
    for x, y in zip(
        _pykernels.product(trans, trans2, 0, 0), ck.product(trans, trans2, 0, 0)
    ):
        assert np.array_equal(x, y)

    for x, y in zip(_pykernels.pair_bfs(trans, ok, 0), ck.pair_bfs(trans, ok, 0)):
        assert np.array_equal(x, y)

    ca, cb, pt, _, _ = _pykernels.product(trans2, trans, 0, 0)
    pm = np.array(range(0, len(ca), 3), dtype=np.int32)
    un = rng.integers(0, 2, m).astype(np.uint8)
    a = _pykernels.supcon_prune(pt, cb, trans, un, pm, 0)
    b = ck.supcon_prune(pt, cb, trans, un, pm, 0)
    assert np.array_equal(a, b)


def test_empty_event_axis():
    trans = np.empty((3, 0), dtype=np.int32)
    ok = np.empty(0, dtype=np.uint8)
    for impl in (_pykernels, ck):
        mask = impl.reach(trans, [0], ok)
        assert mask.tolist() == [1, 0, 0]


def test_cli_output_identical_across_backends():
    import os
    import pathlib
    import subprocess
    import sys

    root = pathlib.Path(__file__).resolve().parent.parent
    argv = [
        sys.executable, "-m", "gcckit.cli", "replicate",
        "--claims", "prop1,theorem1", "--trials", "30", "--seed", "3",
    ]
    compiled = subprocess.run(argv, capture_output=True, text=True, cwd=root)
    env = dict(os.environ, GCCKIT_PURE_KERNELS="1")
    pure = subprocess.run(argv, capture_output=True, text=True, cwd=root, env=env)
    assert compiled.returncode == pure.returncode == 0
    assert compiled.stdout == pure.stdout
