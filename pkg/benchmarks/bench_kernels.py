#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each kernel on synthetic automata large enough for the loop cost to
dominate, plus one end-to-end consistency check, and prints a table with the
speedup.  Works with only the pure backend present (prints a note instead of
a ratio).

Usage: python3 benchmarks/bench_kernels.py [--states N] [--repeat K]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gcckit._kernels import _pykernels

try:
    from gcckit._kernels import _ckernels
except ImportError:
    _ckernels = None


def random_table(rng, n, m, density):
    return np.where(
        rng.random((n, m)) < density, rng.integers(0, n, (n, m)), -1
    ).astype(np.int32)


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--states", type=int, default=2000)
    ap.add_argument("--events", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(12345)
    n, m = args.states, args.events
    trans = random_table(rng, n, m, 0.6)
    trans2 = random_table(rng, max(2, n // 4), m, 0.6)
    obs = (rng.random(m) < 0.6).astype(np.uint8)
    unctrl = (rng.random(m) < 0.5).astype(np.uint8)
    all_ok = np.ones(m, dtype=np.uint8)
    marked_states = sorted(int(q) for q in rng.integers(0, n, n // 10))

    cases = {
        "reach": lambda k: k.reach(trans, [0], all_ok),
        "coreach": lambda k: k.coreach(trans, marked_states, all_ok),
        "product": lambda k: k.product(trans, trans2, 0, 0),
        "pair_bfs": lambda k: k.pair_bfs(trans2, obs, 0),
    }

    ca, cb, pt, _, _ = _pykernels.product(trans2, trans, 0, 0)
    pm = np.array(
        [i for i in range(len(ca)) if int(ca[i]) % 3 == 0 and int(cb[i]) % 3 == 0],
        dtype=np.int32,
    )
    cases["supcon_prune"] = lambda k: k.supcon_prune(pt, cb, trans, unctrl, pm, 0)

    print("states=%d events=%d repeat=%d" % (n, m, args.repeat))
    print("%-14s %12s %12s %9s" % ("kernel", "python [s]", "cython [s]", "speedup"))
    for name, fn in cases.items():
        t_py = timeit(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print("%-14s %12.4f %12s %9s" % (name, t_py, "n/a", "n/a"))
            continue
        t_cy = timeit(lambda: fn(_ckernels), args.repeat)
        print("%-14s %12.4f %12.4f %8.1fx" % (name, t_py, t_cy, t_py / t_cy))

    # end-to-end: a consistency check of a sizable plant under partial
    # observation, timed on whichever backend the package selected at import
    # (rerun with GCCKIT_PURE_KERNELS=1 for the other side)
    import gcckit as gk

    labels = [chr(ord("a") + i) for i in range(m)]
    alpha = gk.Alphabet(
        gk.EventAttr(lab, controllable=False, observable=bool(obs[i]))
        for i, lab in enumerate(labels)
    )
    nn = 400
    t3 = random_table(rng, nn, m, 0.25)
    triples = [
        (s, labels[e], int(t3[s, e]))
        for s in range(nn)
        for e in range(m)
        if t3[s, e] >= 0
    ]
    g = gk.Generator.build(alpha, nn, 0, set(range(nn)), triples, name="bench")
    sset = gk.ObservableSet([lab for i, lab in enumerate(labels) if obs[i]])
    t0 = time.perf_counter()
    gk.check_gcc(g, sset)
    print(
        "end-to-end check_gcc on %d states via %s backend: %.4f s"
        % (nn, gk.KERNEL_BACKEND, time.perf_counter() - t0)
    )


if __name__ == "__main__":
    main()
