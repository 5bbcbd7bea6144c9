"""Compare the compiled and pure-Python finite-model kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends must return
identical answers; the table reports the best of several wall-clock runs.
"""
import time

from eqtop import kernels
from eqtop.algebra import SearchStats, power_algebra, satisfies, search_all, search_models
from eqtop.algebra import FiniteAlgebra
from eqtop.theories import associative, boolean_algebra, squaring_theory


def best_of(fn, repeat=3):
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    return best, result


def cases():
    sq = squaring_theory()
    pw = power_algebra(FiniteAlgebra(4, {}), 2)
    yield "satisfies squaring on 16-element square", lambda b: bool(satisfies(pw, sq, backend=b))
    for n in (4, 5):
        yield (f"search squaring n={n}",
               lambda b, n=n: search_models(sq, n, backend=b, stats=SearchStats()))
    yield ("all associative 3-element tables",
           lambda b: len(search_all(associative(), 3, backend=b)))
    yield ("all boolean algebras of size 4",
           lambda b: len(search_all(boolean_algebra(), 4, backend=b)))


def main():
    found = kernels.backends()
    if "cython" not in found:
        print("compiled kernels not built; only the Python backend is available")
    names = list(found)
    print(f"{'case':45s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in cases():
        times, results = [], []
        for n in names:
            dt, r = best_of(lambda: fn(found[n]))
            times.append(dt)
            results.append(r)
        if any(r != results[0] for r in results):
            raise SystemExit(f"backends disagree on {label!r}")
        speed = f"{times[-1] / times[0]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:45s}" + "".join(f"{t * 1000:10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
