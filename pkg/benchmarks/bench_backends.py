"""Time the hot kernels under both backends.

Each backend runs in its own interpreter because the choice is made at
import time from SHEARSPEC_BACKEND.  Numba compile time is excluded by a
warm-up call.

    python benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from shearspec import _backend, oracle
from shearspec.family import MonomialFamily, ShearParam
from shearspec.specfun import airy_arrays, pcf_u_arrays
from shearspec.spectrum import find_levels

repeat = int(sys.argv[1])
lin, osc = MonomialFamily.linear(), MonomialFamily.harmonic()
x = np.linspace(-40.0, 40.0, 20000)
z = np.linspace(-20.0, 30.0, 20000)

cases = {
    "airy 20k points": lambda: airy_arrays(x),
    "pcf U 20k points": lambda: pcf_u_arrays(-6.7, z),
    "oracle 5 levels N=4000": lambda: oracle.oracle_levels(osc, ShearParam(0.7), 5, N=4000),
    "find_levels linear 5": lambda: find_levels(lin, ShearParam(0.6), 4),
    "find_levels harmonic 5": lambda: find_levels(osc, ShearParam(0.6), 4),
}
out = {"backend": "numba" if _backend.USE_NUMBA else "numpy", "times": {}}
for name, fn in cases.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run(backend, repeat):
    env = dict(os.environ, SHEARSPEC_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    nb = run("numba", args.repeat)
    py = run("numpy", args.repeat)
    print(f"{'kernel':<26}{'numba [s]':>12}{'numpy [s]':>12}{'speed-up':>10}")
    for name, t_nb in nb["times"].items():
        t_np = py["times"][name]
        print(f"{name:<26}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
