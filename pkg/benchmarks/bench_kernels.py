"""Compiled vs pure-Python certification kernel on manipulator corner batches.

    python3 benchmarks/bench_kernels.py [--eps 0.01] [--configs 128] [--repeat 1]
"""

import argparse
import time

import numpy as np

from robustpm._kernels import compiled_kernel, python_kernel
from robustpm.engine import CornerBuilder, EngineOptions
from robustpm.problem import load_fixture
from robustpm.testing_sets import testing_plan


def corner_batches(eps, configs, method):
    problem = load_fixture("manipulator").instantiate(eps)
    plan = testing_plan(problem.B, problem.D, method)
    out = []
    for exp in plan.expansions:
        k = min(configs, exp.size)
        out.append((CornerBuilder(problem, exp).build(exp.index_array(0, k)), exp.pattern.arity))
    return out


def time_kernel(kernel, batches, opts, repeat):
    best = float("inf")
    verdicts = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = [kernel.certify_batch(P, m, opts.tol, opts.hull_tol, opts.freq_floor, opts.lam_floor,
                                    opts.max_tasks, False)[0] for P, m in batches]
        best = min(best, time.perf_counter() - t0)
        verdicts = np.concatenate(res)
    return best, verdicts


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps", type=float, default=0.01)
    parser.add_argument("--configs", type=int, default=128, help="configurations per pattern")
    parser.add_argument("--method", default="thm1_row")
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    batches = corner_batches(args.eps, args.configs, args.method)
    families = sum(len(P) for P, _ in batches)
    opts = EngineOptions()
    print(f"{families} families, method {args.method}, eps {args.eps}")
    t_py, v_py = time_kernel(python_kernel, batches, opts, args.repeat)
    print(f"python    {t_py:8.3f} s   {families / t_py:10.1f} families/s")
    if compiled_kernel is None:
        print("compiled  not built")
        return
    t_c, v_c = time_kernel(compiled_kernel, batches, opts, args.repeat)
    print(f"compiled  {t_c:8.3f} s   {families / t_c:10.1f} families/s")
    print(f"speedup   {t_py / t_c:8.1f}x   verdicts identical: {bool(np.array_equal(v_py, v_c))}")


if __name__ == "__main__":
    main()
