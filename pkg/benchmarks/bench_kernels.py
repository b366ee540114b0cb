"""Compiled vs pure-Python letter kernels, plus one end-to-end workload.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from freegog import _pykernels

try:
    from freegog import _ckernels
except ImportError:
    _ckernels = None


def workloads(rng):
    def word(n):
        return _pykernels.free_reduce([rng.choice((1, -1, 2, -2, 3, -3, 4, -4)) for _ in range(n)])

    raw = [rng.choice((1, -1, 2, -2)) for _ in range(2000)]
    u, v = word(400), word(400)
    imgs = [word(8) for _ in range(4)]
    neg = [_pykernels.inverse(x) for x in imgs]
    long = word(300)
    return {
        "free_reduce(2000)": lambda k: k.free_reduce(raw),
        "multiply(400, 400)": lambda k: k.multiply(u, v),
        "power(u, 25)": lambda k: k.power(imgs[0], 25),
        "substitute(300 letters)": lambda k: k.substitute(long, imgs, neg),
        "peel_count(400)": lambda k: k.peel_count(u + _pykernels.inverse(u[:50])),
    }


END_TO_END = ("from freegog.section4 import run_section4; "
              "run_section4(checks=['length-invariance', 'commute-*', 'conjugation-table'])")


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["FREEGOG_PURE_PYTHON"] = "1"
    code = f"import time; t = time.perf_counter(); {END_TO_END}; print(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--skip-end-to-end", action="store_true")
    ns = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare")
        return 1
    rng = random.Random(0)
    print(f"{'kernel':<26}{'python us':>12}{'cython us':>12}{'speed-up':>10}")
    for name, fn in workloads(rng).items():
        assert fn(_pykernels) == fn(_ckernels), name
        tp = min(timeit.repeat(lambda: fn(_pykernels), number=ns.repeat, repeat=3)) / ns.repeat * 1e6
        tc = min(timeit.repeat(lambda: fn(_ckernels), number=ns.repeat, repeat=3)) / ns.repeat * 1e6
        print(f"{name:<26}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")
    if not ns.skip_end_to_end:
        tp, tc = end_to_end(True), end_to_end(False)
        print(f"{'section4 subset (s)':<26}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
