"""Benchmark the compiled kernels against the pure-Python reference.

Run as a script:  python benchmarks/bench_kernels.py  [--repeat N]

Covers the three hot loops: sparse polynomial products (the bulk of
symbolic Poisson-bracket work), Poisson brackets of mid-sized invariants
on so(8), and the breadth-first closure of a reflection group over int8
matrices.  Both kernel implementations are imported directly, so the
benchmark is independent of which one the package selected at import.
"""

from __future__ import annotations

import argparse
import random
import time

from liesplit._kernels import pure
from liesplit.rationals import QQ

try:
    from liesplit._kernels import speedups
except ImportError:
    speedups = None


def random_terms(rng, nvars, nterms, max_exp=3):
    out = {}
    while len(out) < nterms:
        e = bytes(rng.randint(0, max_exp) for _ in range(nvars))
        out[e] = QQ(rng.randint(-99, 99), rng.randint(1, 9))
    return out


def bench(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def poly_product_case(impl, rng_seed=7, nvars=28, nterms=300):
    rng = random.Random(rng_seed)
    a = random_terms(rng, nvars, nterms)
    b = random_terms(rng, nvars, nterms)

    def run():
        impl.mul_terms(a, b, nvars)

    return run


def bracket_case(impl):
    # representative of the so(8) commutativity workload: bracket of two
    # mid-sized bi-components through diff/mul/axpy kernel calls
    from liesplit.liealg import build_so_even
    from liesplit.invariants import bidecompose, hilbert_basis
    from liesplit.splitting import make_splitting

    so8 = build_so_even(4)
    S = make_splitting(so8, tuple(so8.triangular.plus) + tuple(so8.triangular.cartan))
    B = hilbert_basis(so8, "so_minors_pfaffian", verify=False)
    comps = [c.poly for c in bidecompose(S, B.polys[1]).components]
    F, G = comps[0], comps[-1]
    n = so8.dim
    constants = so8.constants

    def run():
        dF = [impl.diff_terms(F.terms, i) for i in range(n)]
        dG = [impl.diff_terms(G.terms, i) for i in range(n)]
        acc = {}
        one = QQ(1)
        for (i, j), entries in constants.items():
            cross = {}
            if dF[i] and dG[j]:
                impl.axpy_terms(cross, impl.mul_terms(dF[i], dG[j], n), one)
            if dF[j] and dG[i]:
                impl.axpy_terms(cross, impl.mul_terms(dF[j], dG[i], n), -one)
            if not cross:
                continue
            lin = {}
            for k, c in entries:
                e = bytearray(n)
                e[k] = 1
                lin[bytes(e)] = c
            impl.axpy_terms(acc, impl.mul_terms(cross, lin, n), one)

    return run


def weyl_closure_case(impl):
    from liesplit.weyl import build_root_system

    rs = build_root_system("D", 4)
    gens = rs.reflections
    n = rs.model_dim
    identity = bytes(
        ((1 if i == j else 0) & 0xFF) for i in range(n) for j in range(n)
    )

    def run():
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for el in frontier:
                for g in gens:
                    w = impl.matmul_i8(el, g, n)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        assert len(seen) == 192

    return run


CASES = [
    ("poly product 300x300 terms, 28 vars", poly_product_case),
    ("poisson bracket of so(8) components", bracket_case),
    ("Weyl closure of D4 (192 elements)", weyl_closure_case),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if speedups is None:
        print("compiled kernels unavailable; showing pure timings only")
    header = f"{'case':45s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, case in CASES:
        t_pure = bench(case(pure), args.repeat)
        if speedups is not None:
            t_fast = bench(case(speedups), args.repeat)
            print(f"{label:45s} {t_pure * 1e3:9.1f}ms {t_fast * 1e3:9.1f}ms "
                  f"{t_pure / t_fast:7.1f}x")
        else:
            print(f"{label:45s} {t_pure * 1e3:9.1f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
