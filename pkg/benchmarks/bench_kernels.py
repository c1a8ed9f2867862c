"""Compiled kernel versus the numpy fallback: the quartic residual kernel on its
own and a full triple enumeration under each backend.

    python3 benchmarks/bench_kernels.py [--repeat 20] [--solve J6_1 J24_1]
"""
import argparse
import time

import numpy as np

from ngcenter import _kernels_py, kernels
from ngcenter.centersolver import CenterSystem, solve_all_triples
from ngcenter.neargroup import load_instance

try:
    from ngcenter import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def _time(fn, repeat):
    fn()
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--batch", type=int, default=512)
    ap.add_argument("--solve", nargs="*", default=["J6_1"])
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    impls = {"python": _kernels_py}
    if _kernels_cy is not None:
        impls["cython"] = _kernels_cy
    print(f"default backend: {kernels.BACKEND}")
    cc = lambda A: np.ascontiguousarray(A, dtype=complex)
    for name in ("J6_1", "J24_1"):
        sysm = CenterSystem(load_instance(name))
        c = sysm.data.c
        X = np.exp(1j * rng.uniform(-np.pi, np.pi, (args.batch, sysm.n)))
        argv = (cc(X), cc(sysm.bsub), cc(sysm._bghmt[1]), cc(sysm.conj_a_sub), complex(c**-2), complex(c**2 / sysm.data.d))
        ref = _kernels_py.half4_residual_batch(*argv)
        for impl, mod in impls.items():
            diff = np.abs(mod.half4_residual_batch(*argv) - ref).max()
            dt = _time(lambda: mod.half4_residual_batch(*argv), args.repeat)
            print(f"{name:6s} quartic residuals, batch {args.batch}: {impl:7s} {dt * 1e3:8.3f} ms  max diff {diff:.1e}")
    saved = kernels._impl
    for name in args.solve:
        data = load_instance(name)
        for impl, mod in impls.items():
            kernels._impl = mod
            t0 = time.perf_counter()
            triples = solve_all_triples(data)
            print(f"{name:6s} solve_all_triples: {impl:7s} {time.perf_counter() - t0:8.2f} s  ({len(triples)} triples)")
    kernels._impl = saved


if __name__ == "__main__":
    main()
