"""Compare the compiled and pure-Python cyclotomic kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The end-to-end rows run in subprocesses so each backend is selected at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from qenvelope import _pykernel
from qenvelope.cyclo import cyclotomic_polynomial, euler_phi

try:
    from qenvelope import _ckernel
except ImportError:
    _ckernel = None


def random_flat(rng, count, d, bound):
    return [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(count)]


def kernel_rows(repeat):
    rng = random.Random(7)
    rows = []
    for level, size, bound in ((9, 6, 50), (45, 6, 50), (45, 10, 10**6), (45, 4, 10**30)):
        d = euler_phi(level)
        phi = list(cyclotomic_polynomial(level))
        a = random_flat(rng, size * size, d, bound)
        b = random_flat(rng, size * size, d, bound)
        args = (size, size, size, a, b, phi)
        label = f"matmul {size}x{size} level {level} |coeff|<={bound:.0e}"
        py = min(timeit.repeat(lambda: _pykernel.matmul_flat(*args), number=3, repeat=repeat)) / 3
        cy = None
        if _ckernel is not None:
            assert _ckernel.matmul_flat(*args) == _pykernel.matmul_flat(*args)
            cy = min(timeit.repeat(lambda: _ckernel.matmul_flat(*args), number=3, repeat=repeat)) / 3
        rows.append((label, py, cy))
    return rows


POWER = (
    "import random, time;"
    "from qenvelope.cyclo import CycloNum; from qenvelope.linalg import CycloMatrix;"
    "rng = random.Random(3);"
    "m = CycloMatrix(45, 12, 12, [CycloNum(45, [rng.randint(-3, 3) for _ in range(24)]) for _ in range(144)]);"
    "t = time.perf_counter(); m ** 6; print(time.perf_counter() - t)"
)

WORKLOAD = (
    "import time;"
    "from qenvelope.reps import sl3_showcase, span_dimension, verify_relations, construct_central_one_dim;"
    "from qenvelope.lattice import weight_lattice; from qenvelope.rootdata import build_root_datum;"
    "from qenvelope.cyclo import root_of_unity;"
    "t = time.perf_counter();"
    "r = sl3_showcase(); verify_relations(r); span_dimension(r);"
    "[verify_relations(construct_central_one_dim(weight_lattice(build_root_datum('A', 4)), 3, root_of_unity(30, 6 * u)))"
    " for u in (1, 2, 3, 4)];"
    "print(time.perf_counter() - t)"
)


def end_to_end(pure, code):
    env = dict(os.environ)
    if pure:
        env["QENVELOPE_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rows = kernel_rows(args.repeat)
    for label, code in (
        ("CycloMatrix 12x12 level 45, 6th power", POWER),
        ("showcase checks + 4 central modules", WORKLOAD),
    ):
        py = min(end_to_end(True, code) for _ in range(args.repeat))
        cy = min(end_to_end(False, code) for _ in range(args.repeat)) if _ckernel is not None else None
        rows.append((label, py, cy))
    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python [ms]':>12}  {'cython [ms]':>12}  {'speedup':>8}")
    for label, p, c in rows:
        cs = f"{c * 1e3:12.2f}" if c is not None else f"{'n/a':>12}"
        sp = f"{p / c:7.1f}x" if c else f"{'n/a':>8}"
        print(f"{label:<{width}}  {p * 1e3:12.2f}  {cs}  {sp}")


if __name__ == "__main__":
    main()
