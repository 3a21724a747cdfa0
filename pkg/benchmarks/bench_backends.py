"""Time the Groebner-heavy workloads under both rational backends.

Each backend runs in a fresh interpreter because the backend is fixed at
import time (``CHOWKIT_NOGMPY=1`` selects ``fractions.Fraction``)::

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from chowkit import BACKEND
from chowkit.chow import CycleComponent, chow_form_component, point_space
from chowkit.graphs import monomial_map_graph, pushforward_chow
from chowkit.groebner import IdealGens, buchberger
from chowkit.poly import MonomialOrder, parse_poly, random_poly, VariableSpace

def twisted_cubic():
    sp = point_space(3)
    gens = [parse_poly(t, sp) for t in ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")]
    chow_form_component(CycleComponent(3, 1, IdealGens(sp, gens)))

def surface_pushforward():
    pushforward_chow(monomial_map_graph(2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)]))

def random_lex():
    rng = random.Random(3)
    sp = VariableSpace([("x", 3)])
    for _ in range(10):
        gens = [random_poly(sp, rng, 3, 2, coeff_range=30) for _ in range(3)]
        buchberger(IdealGens(sp, gens), MonomialOrder.lex())

out = {"backend": BACKEND}
for name, fn in [("twisted_cubic_chow", twisted_cubic), ("surface_pushforward", surface_pushforward), ("random_lex_gb", random_lex)]:
    best = float("inf")
    for _ in range(REPEAT):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(nogmpy: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("CHOWKIT_NOGMPY", None)
    if nogmpy:
        env["CHOWKIT_NOGMPY"] = "1"
    code = WORKLOAD.replace("REPEAT", str(repeat))
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = [run(False, args.repeat), run(True, args.repeat)]
    names = [k for k in rows[0] if k != "backend"]
    print(f"{'workload':24s}" + "".join(f"{r['backend']:>12s}" for r in rows) + f"{'ratio':>9s}")
    for name in names:
        a, b = rows[0][name], rows[1][name]
        print(f"{name:24s}{a:12.4f}{b:12.4f}{b / a:9.2f}")


if __name__ == "__main__":
    main()
