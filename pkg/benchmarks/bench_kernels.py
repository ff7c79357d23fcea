#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the hot inner loop (per-sample evaluation of stretched rotational
state amplitudes over large Euler-angle sample sets) and a full
Monte-Carlo alignment-cosine estimate through both backends.

Usage: python benchmarks/bench_kernels.py [n_samples]
"""

import sys
import time

import numpy as np

from rotifuge import _kernels_np, observables as obs, rotor

try:
    from rotifuge import _kernels
except ImportError:
    _kernels = None


def time_backend(impl, comp, th, ph, ch, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        out = np.zeros(len(th), dtype=complex)
        tic = time.perf_counter()
        impl.stretched_state_values(
            comp.J,
            np.ascontiguousarray(comp._pref),
            comp._norm,
            th,
            ph,
            ch,
            comp.M,
            out,
            1.0 + 0j,
        )
        best = min(best, time.perf_counter() - tic)
    return best, out


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    spec = rotor.load_molecule("d2s")
    rng = np.random.default_rng(0)
    th, ph, ch = (np.ascontiguousarray(x) for x in obs.sample_haar(rng, n))

    print(f"{n} Euler samples per call\n")
    print(f"{'state':>12} {'numpy':>10} {'compiled':>10} {'speedup':>8}  agreement")
    for J, axis in [(10, "b"), (20, "b"), (58, "b")]:
        st = rotor.find_principal_state(J, axis, spec, tau=0, embedding="b")
        comp = obs.component_from_state(st, M=J)
        t_np, out_np = time_backend(_kernels_np, comp, th, ph, ch)
        if _kernels is None:
            print(f"  J={J:<3} {axis}: {t_np*1e3:8.1f} ms  (no compiled extension)")
            continue
        t_c, out_c = time_backend(_kernels, comp, th, ph, ch)
        err = np.max(np.abs(out_np - out_c)) / np.max(np.abs(out_np))
        print(
            f"  J={J:<3} {axis}: {t_np*1e3:8.1f} ms {t_c*1e3:8.1f} ms "
            f"{t_np/t_c:7.1f}x  {err:.1e}"
        )

    print("\nfull MC alignment cosine (J=20 state, 1e6 samples):")
    st = rotor.find_principal_state(20, "b", spec, tau=0)
    pkt = obs.AngularPacket([obs.component_from_state(st, M=20)], [1.0], embedding="b")
    import rotifuge.kernels as kern

    saved = kern.stretched_state_values
    try:
        for name, impl in [("numpy", _kernels_np)] + (
            [("compiled", _kernels)] if _kernels else []
        ):
            kern.stretched_state_values = impl.stretched_state_values
            tic = time.perf_counter()
            est = obs.alignment_cos2_mc(pkt, "b", "ZX", n_samples=n, seed=1)
            print(f"  {name:>9}: {time.perf_counter()-tic:6.2f} s  "
                  f"cos2 = {est.value:.4f} +- {est.stderr:.4f}")
    finally:
        kern.stretched_state_values = saved


if __name__ == "__main__":
    main()
