#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot loops on representative workloads and prints a
speedup table.  Works (and says so) when the extension is not built.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from slcong import _kernels_py
from slcong.congruences import _set_partition_ids
from slcong.core import extend_below, from_covers, named
from slcong.joinsub import PartialJoinStructure

try:
    from slcong import _kernels as _compiled
except ImportError:
    _compiled = None


def _scan_workload():
    # 21-element quasi-tree with the pentagon nucleus: 2^20 subset masks
    S = extend_below(named("n5"), 16)
    pm, jm = PartialJoinStructure(S).constraints
    return ("join-closed scan, n=21, t=2", lambda mod: mod.scan_join_closed(S.n - 1, pm, jm))


def _scan_many_ubtas_workload():
    # fan of 6 atoms below a top, lengthened: 15 UBTA constraints
    fan = from_covers([[]] + [[0]] * 6 + [list(range(1, 7))])
    S = extend_below(fan, 10)
    pm, jm = PartialJoinStructure(S).constraints
    return ("join-closed scan, n=18, t=15", lambda mod: mod.scan_join_closed(S.n - 1, pm, jm))


def _closure_workload():
    # every principal congruence of a 40-element chain
    S = named("chain_40")
    flat = S.meet_flat

    def run(mod):
        acc = 0
        for x in range(0, S.n, 3):
            for y in range(x + 1, S.n, 3):
                acc += mod.congruence_closure(S.n, flat, [x, y])[-1]
        return acc

    return ("congruence closure, chain_40 principal sweep", run)


def _compat_workload():
    # Bell(9) = 21147 partitions checked against a 9-element table
    S = extend_below(named("b4"), 5)
    flat = S.meet_flat
    parts = list(_set_partition_ids(S.n))

    def run(mod):
        return sum(1 for ids in parts if mod.op_compatible(S.n, flat, ids))

    return ("meet compatibility, Bell(9) partition scan", run)


def _time(fn, mod, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(mod)
        best = min(best, time.perf_counter() - start)
    return result, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = [
        _scan_workload(),
        _scan_many_ubtas_workload(),
        _closure_workload(),
        _compat_workload(),
    ]
    print(f"{'workload':<48} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in workloads:
        pure_result, pure_t = _time(fn, _kernels_py, args.repeat)
        if _compiled is None:
            print(f"{name:<48} {pure_t:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        compiled_result, compiled_t = _time(fn, _compiled, args.repeat)
        assert pure_result == compiled_result, name
        print(
            f"{name:<48} {pure_t:>9.3f}s {compiled_t:>9.3f}s {pure_t / compiled_t:>7.1f}x"
        )
    if _compiled is None:
        print("\nextension not built; showing pure-Python timings only")


if __name__ == "__main__":
    main()
