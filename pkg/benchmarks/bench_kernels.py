"""Compare the compiled and pure-Python coefficient kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 2000]
"""
import argparse
import random
import timeit

from sfcat import _pykernels


def _operands(n, rng):
    out = []
    while len(out) < n:
        t = _pykernels.cyc_norm(*(rng.randint(-50, 50) for _ in range(4)), rng.randint(1, 30))
        if t is not None:
            out.append(t)
    return out


def _laurent(cycs, rng, width=4):
    return [{rng.randint(-3, 3): c for c in cycs[i:i + width]} for i in range(0, len(cycs), width)]


def bench(mod, cycs, polys, repeat):
    pairs = list(zip(cycs, cycs[1:]))
    ppairs = list(zip(polys, polys[1:]))
    cases = {
        "cyc_mul": lambda: [mod.cyc_mul(a, b) for a, b in pairs],
        "cyc_add": lambda: [mod.cyc_add(a, b) for a, b in pairs],
        "laurent_mul": lambda: [mod.laurent_mul(a, b) for a, b in ppairs],
        "laurent_add": lambda: [mod.laurent_add(a, b) for a, b in ppairs],
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=2000)
    args = ap.parse_args(argv)
    rng = random.Random(0)
    cycs = _operands(args.size, rng)
    polys = _laurent(cycs, rng)
    results = {"python": bench(_pykernels, cycs, polys, args.repeat)}
    try:
        from sfcat import _ckernels
        results["cython"] = bench(_ckernels, cycs, polys, args.repeat)
    except ImportError:
        print("compiled kernels not available; reporting the Python fallback only")
    print(f"{'kernel':<14}" + "".join(f"{k:>12}" for k in results) + "     speedup")
    for name in results["python"]:
        row = [results[k][name] for k in results]
        speed = row[0] / row[-1] if len(row) > 1 else 1.0
        print(f"{name:<14}" + "".join(f"{v * 1e3:>10.2f}ms" for v in row) + f"{speed:>11.2f}x")


if __name__ == "__main__":
    main()
