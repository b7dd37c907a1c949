"""Time the enumeration kernels under the numba and pure-numpy backends.

Each backend runs in its own interpreter because the backend is fixed at
import time by ``EXACTCONE_NO_NUMBA``.  The first numba call includes JIT
compilation, so it is reported separately from the steady-state timings.
Outputs of both backends are hashed and must agree.

    python benchmarks/bench_kernels.py --n 4 5 --repeat 3
"""

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time


def worker(ns, repeat):
    from exactcone import _kernels
    from exactcone.catalogue import purely_min_semi_balanced
    from exactcone.setcore import PlayerSet

    out = {"backend": _kernels.backend(), "runs": {}}
    for n in ns:
        t0 = time.perf_counter()
        mb = _kernels.min_balanced_masks(n)
        first_mb = time.perf_counter() - t0
        mb_times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            _kernels.min_balanced_masks(n)
            mb_times.append(time.perf_counter() - t0)

        purely = purely_min_semi_balanced(PlayerSet(n))
        systems = [s.sets for s, _ in purely]
        exc = [t for _, t in purely]
        t0 = time.perf_counter()
        dec = _kernels.first_decompositions(systems, exc, n)
        first_dec = time.perf_counter() - t0
        dec_times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            _kernels.first_decompositions(systems, exc, n)
            dec_times.append(time.perf_counter() - t0)

        digest = hashlib.sha256(json.dumps([sorted(mb), dec]).encode()).hexdigest()
        out["runs"][n] = {
            "min_balanced": len(mb),
            "purely": len(systems),
            "indecomposable": sum(1 for w in dec if w < 0),
            "first_call": [first_mb, first_dec],
            "best": [min(mb_times), min(dec_times)],
            "digest": digest,
        }
    print(json.dumps(out))


def run_backend(no_numba, ns, repeat):
    env = dict(os.environ)
    if no_numba:
        env["EXACTCONE_NO_NUMBA"] = "1"
    else:
        env.pop("EXACTCONE_NO_NUMBA", None)
    cmd = [sys.executable, __file__, "--worker", "--repeat", str(repeat), "--n", *map(str, ns)]
    res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def ratio(slow, fast):
    return f"{slow / fast:.1f}x" if fast > 0 else "n/a"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.n, args.repeat)
        return 0

    results = [run_backend(False, args.n, args.repeat), run_backend(True, args.n, args.repeat)]
    print(f"{'backend':<8} {'n':>2} {'min-bal':>8} {'first':>9} {'best':>9} {'decomp':>8} {'first':>9} {'best':>9}")
    for r in results:
        for n, run in r["runs"].items():
            f_mb, f_dec = run["first_call"]
            b_mb, b_dec = run["best"]
            print(f"{r['backend']:<8} {n:>2} {run['min_balanced']:>8} {f_mb:>8.3f}s {b_mb:>8.3f}s "
                  f"{run['purely']:>8} {f_dec:>8.3f}s {b_dec:>8.3f}s")
    agree = all(results[0]["runs"][k]["digest"] == results[1]["runs"][k]["digest"] for k in results[0]["runs"])
    for n in results[0]["runs"]:
        a, b = results[0]["runs"][n]["best"], results[1]["runs"][n]["best"]
        print(f"n={n}: numpy/numba time ratio {ratio(b[0], a[0])} (min-balanced), "
              f"{ratio(b[1], a[1])} (decompositions)")
    print("outputs agree" if agree else "OUTPUTS DIFFER")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
