"""
How solve time grows with instance size
=======================================

Times the solver (checks off, they are the caller's business here) on
generated instances whose variable count grows like the cube root of the
total number of variable-value pairs, then fits the growth exponent on a
log-log scale.  The point of the design is that this stays well below
cubic.
"""

import time

import numpy as np

from zfree import GenConfig, generate_instance, minimize_zfree


def main():
    sizes = [(6, 42), (8, 63), (10, 100), (13, 154)]
    ns, ts = [], []
    print(f"{'n':>6} {'r':>4} {'seconds':>9}  stage breakdown")
    for r, d in sizes:
        inst = generate_instance(GenConfig(r=r, domains=(d,) * r, seed=7))
        t0 = time.perf_counter()
        report = minimize_zfree(inst, check_properties=False)
        elapsed = time.perf_counter() - t0
        stages = ", ".join(f"{k} {v:.3f}" for k, v in report.timings.items()
                           if k != "check")
        print(f"{inst.layout.n:>6} {r:>4} {elapsed:>9.3f}  {stages}")
        ns.append(inst.layout.n)
        ts.append(max(elapsed, 1e-4))
    slope = float(np.polyfit(np.log(ns), np.log(ts), 1)[0])
    print(f"fitted exponent: {slope:.2f}")


if __name__ == "__main__":
    main()
