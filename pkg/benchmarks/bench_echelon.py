"""Compare the compiled and pure-Python echelon kernels on hom-space rank workloads.

Workloads are the constraint and homotopy systems of Hom(F, tau^m G) for the
generated collection of a corpus case. Both kernels see identical rows.

    python benchmarks/bench_echelon.py [--case w-2-2-5-10] [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

from artifact import acceptance, ar, data, linalg
from artifact import mf as M
from artifact._ext import echelon_py

try:
    from artifact._ext import echelon_c
except ImportError:
    echelon_c = None


def workloads(case_id: str, ms=range(-3, 4)) -> list[tuple[list[dict], int]]:
    rec = ar.build_collection(data.load_case(case_id), check_corpus=False)
    objs = [M.reduce(X) for X in rec.objects.values()]
    out = []
    for F in objs:
        for G in objs:
            for m in ms:
                L = M._Layout(F, M.tau(G, m))
                if not L.n:
                    continue
                for rows in (M._constraint_rows(L), M._homotopy_rows(L)):
                    out.append(([linalg.integral(r) for r in rows], L.n))
    return out


def time_kernel(kernel, loads, repeat: int) -> tuple[float, list[int]]:
    best = float("inf")
    ranks: list[int] = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        ranks = [kernel.rank_of([dict(r) for r in rows], n) for rows, n in loads]
        best = min(best, time.perf_counter() - t0)
    return best, ranks


def end_to_end(pure: bool) -> float:
    env = dict(os.environ, ARTIFACT_PURE="1" if pure else "0")
    code = "import time,artifact.acceptance as a;t=time.perf_counter();a.check_pipeline();print(time.perf_counter()-t)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(res.stdout.strip())


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--case", default=acceptance.CI_CASE)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--end-to-end", action="store_true", help="also time the CI pipeline in subprocesses")
    args = p.parse_args(argv)

    loads = workloads(args.case)
    entries = sum(len(r) for rows, _ in loads for r in rows)
    report = {"case": args.case, "systems": len(loads), "nonzeros": entries}
    t_py, r_py = time_kernel(echelon_py, loads, args.repeat)
    report["python_s"] = round(t_py, 4)
    if echelon_c is None:
        report["cython_s"] = None
        report["note"] = "compiled kernel not built"
    else:
        t_c, r_c = time_kernel(echelon_c, loads, args.repeat)
        if r_c != r_py:
            raise SystemExit("kernels disagree on rank")
        report["cython_s"] = round(t_c, 4)
        report["speedup"] = round(t_py / t_c, 2)
    if args.end_to_end:
        report["pipeline_python_s"] = round(end_to_end(True), 2)
        report["pipeline_default_s"] = round(end_to_end(False), 2)
    print(json.dumps(report, sort_keys=True, indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
