"""Throughput of the matched-filter cascade: compiled kernel vs pure-Python
fallback vs a direct FIR correlator bank (numpy convolution).

    python benchmarks/bench_correlator.py --m 2 --k 10 --samples 20000
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from pucodes import _backend, build_matched_filter, generate_set, op_count
from pucodes.correlator import StreamState
from pucodes.randomspec import random_generator
from pucodes.rings import COMPLEX, ring_from_name


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run(m: int, k: int, samples: int, kind: str, repeat: int, python_samples: int, seed: int):
    rng = np.random.default_rng(seed)
    ring = ring_from_name(kind) if kind != "auto" else None
    g = random_generator(rng, m, k, ring=ring)
    ring = g.ring
    f = build_matched_filter(g)
    ops = op_count(f)
    if ring.exact:
        x = rng.integers(-3, 4, size=(samples, m, ring.dim)).astype(np.int64)
    else:
        x = rng.standard_normal((samples, m)) + 1j * rng.standard_normal((samples, m))
    print(f"M={m} K={k} L={g.length} kind={ring.name} samples={samples}")
    print(f"multiplies per input vector: cascade {ops.cascade}, direct {ops.direct} "
          f"(ratio {ops.ratio:.1f})")

    results = {}
    backends = ["python"] + (["cython"] if _backend.compiled_kernels is not None else [])
    outputs = {}
    for name in backends:
        n = samples if name == "cython" else min(samples, python_samples)
        block = x[:n]

        def go():
            outputs[name] = StreamState(f, backend=name).process(block)

        results[f"cascade/{name}"] = (best_of(go, repeat), n)

    # direct bank: every output is the sum over ports of an FIR with a
    # conjugated, reversed sequence, evaluated by numpy convolution
    seqs = np.stack([generate_set(g, r).to_complex() for r in range(m)])  # (r, s, L)
    taps = np.conj(seqs[:, :, ::-1])
    xc = ring.embed(x) if ring.exact else x

    def direct():
        out = np.zeros((samples, m), complex)
        for r in range(m):
            for s in range(m):
                out[:, s] += np.convolve(xc[:, r], taps[r, s])[:samples]
        return out

    results["direct/numpy"] = (best_of(direct, repeat), samples)
    ref = direct()
    for name, y in outputs.items():
        got = ring.embed(y) if ring.exact else y
        n = got.shape[0]
        assert np.allclose(got, ref[:n], atol=1e-6 * max(1.0, np.abs(ref).max())), name

    width = max(len(k) for k in results)
    for name, (t, n) in results.items():
        print(f"  {name:<{width}}  {n / t:>14,.0f} samples/s  ({t * 1e3:.1f} ms for {n})")
    if "cascade/cython" in results:
        tc, nc = results["cascade/cython"]
        tp, np_ = results["cascade/python"]
        print(f"  compiled speed-up over fallback: {(nc / tc) / (np_ / tp):.1f}x")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--python-samples", type=int, default=2000,
                   help="cap for the slow pure-Python backend")
    p.add_argument("--kind", default="auto", help="ring name, e.g. cyclo4, gauss, complex")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    run(a.m, a.k, a.samples, a.kind, a.repeat, a.python_samples, a.seed)


if __name__ == "__main__":
    main()
