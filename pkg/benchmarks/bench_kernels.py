"""Compare the compiled reduction kernel with the pure-Python machine.

    python3 benchmarks/bench_kernels.py [--repeat N]

Runs a fixed workload of coded-algebra applications (library arithmetic,
tuple operations, the F realizer) through both backends, checks that they
agree, and prints the best wall time of each.
"""
import argparse
import time

from k2lab._kernels import machine_py
from k2lab.basepca import CODE_PCA, num, tuple_term
from k2lab.morphisms import build_F_realizer, claim_programs, identity_delta


def workload():
    """Application chains ``f x1 ... xn`` over value terms."""
    pca = CODE_PCA
    lib = pca.library
    jobs = []
    for n in (20, 40, 80):
        jobs.append((lib["PLUS"], num(n), num(n)))
        jobs.append((lib["CPAIR"], num(n // 4), num(n // 4)))
    t = tuple_term([num(i) for i in range(12)])
    jobs.append((lib["APPEND"], t, num(5)))
    jobs.append((lib["NTH"], t, num(11)))
    F = pca.term(build_F_realizer(identity_delta()))
    progs = {k: pca.term(v) for k, v in claim_programs().items()}
    jobs.append((F, progs["two-query"], progs["double"], tuple_term([num(3)])))
    return jobs


def run_chain(apply_values, chain):
    f, steps = chain[0], 0
    for x in chain[1:]:
        status, f, used = apply_values(f, x, 10**7)
        steps += used
        if status != machine_py.OK:
            return status, None, steps
    return machine_py.OK, f, steps


def time_backend(apply_values, jobs, repeat):
    best, results = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = [run_chain(apply_values, job) for job in jobs]
        best = min(best, time.perf_counter() - start)
        results = out
    return best, results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jobs = workload()
    py_time, py_out = time_backend(machine_py.apply_values, jobs, args.repeat)
    steps = sum(r[2] for r in py_out)
    print(f"workload: {len(jobs)} applications, {steps} contractions")
    print(f"python  {py_time * 1e3:9.1f} ms  {steps / py_time / 1e6:6.2f} M steps/s")
    try:
        from k2lab._kernels import _machine
    except ImportError:
        print("cython  (not built)")
        return
    cy_time, cy_out = time_backend(_machine.apply_values, jobs, args.repeat)
    if cy_out != py_out:
        raise SystemExit("backends disagree")
    print(f"cython  {cy_time * 1e3:9.1f} ms  {steps / cy_time / 1e6:6.2f} M steps/s")
    print(f"speedup {py_time / cy_time:.1f}x")


if __name__ == "__main__":
    main()
