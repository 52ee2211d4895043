"""Relative timings for the two bounded-reduction engines.

Each workload is reduced with the same step budget by the pure zipper
engine and, when the extension was built, by the compiled arena kernel
(including encode/decode overhead, since that is what run_bounded
pays). Usage:

    python3 benchmarks/bench_engines.py [--repeat N]
"""

import argparse
import time

from pcfkit import arena, opsem
from pcfkit.frontend import elaborate, parse
from pcfkit.syntax import App, Fix, Iota, Pred, Succ, numeral

try:
    from pcfkit import _kernel
except ImportError:
    _kernel = None

ADD = r"""
(fix \f:nat -> nat -> nat. \x:nat. \y:nat.
  ifz x (succ (f x (pred y))) y)
"""


def run_compiled(t, max_steps):
    enc = arena.encode(t)
    root, steps = _kernel.run(enc.tags, enc.fun, enc.arg, enc.numv,
                              enc.rule, enc.root, max_steps)
    return arena.decode(enc, root), steps


def pred_tower(n):
    t = numeral(n)
    for _ in range(n):
        t = App(Pred, t)
    return t


def workloads():
    add = elaborate(parse(ADD))
    yield ("fix succ, budget 50k",
           App(Fix(Iota), Succ), 50_000)
    yield ("pred tower, n=300",
           pred_tower(300), 200_000)
    yield ("add 40 40, to normal form",
           App(App(add, numeral(40)), numeral(40)), 1_000_000)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _kernel is None:
        print("compiled kernel not built; timing the pure engine only")
    print(f"{'workload':<28} {'steps':>9} {'pure':>10} {'compiled':>10} "
          f"{'speedup':>8}")
    for name, term, budget in workloads():
        pure_t, (fin_p, steps) = best_of(
            lambda: opsem._run_pure(term, budget), args.repeat)
        if _kernel is not None:
            comp_t, (fin_c, steps_c) = best_of(
                lambda: run_compiled(term, budget), args.repeat)
            assert fin_c is fin_p and steps_c == steps, name
            print(f"{name:<28} {steps:>9} {pure_t:>9.3f}s {comp_t:>9.3f}s "
                  f"{pure_t / comp_t:>7.1f}x")
        else:
            print(f"{name:<28} {steps:>9} {pure_t:>9.3f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
