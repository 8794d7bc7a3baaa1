"""Inferred syntomic exponent over a grid of catalog schemes, primes and twists.

    python scripts/milne_grid.py --schemes P1 P2 E:1,0 K3:quartic --primes 3 5 7 --n -1 0 1 2
"""

import argparse
import json

from fpzeta.catalog import parse_scheme
from fpzeta.errors import FpZetaError
from fpzeta.special_values import verify_milne


def grid(schemes, primes, twists):
    for name in schemes:
        X = parse_scheme(name)
        for p in primes:
            for n in twists:
                try:
                    rep = verify_milne(X, p, n)
                except FpZetaError as exc:
                    yield {"scheme": name, "p": p, "n": n, "error": str(exc)}
                    continue
                yield {
                    "scheme": name,
                    "p": p,
                    "n": n,
                    "rho": rep.special.rho,
                    "v_p(C)": rep.special.p_valuation,
                    "correction": rep.correction_exp,
                    "e_syn": rep.inferred_syntomic_exp,
                    "consistent": rep.consistent,
                }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--schemes", nargs="+", default=["pt", "P1", "P2", "P3", "E:1,0", "Bl:P2", "K3:quartic"])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--n", type=int, nargs="+", default=[-1, 0, 1, 2])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = list(grid(args.schemes, args.primes, args.n))
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'scheme':<12} {'p':>2} {'n':>3} {'rho':>4} {'v_p(C)':>6} {'corr':>5} {'e_syn':>5}  ok")
    for r in rows:
        if "error" in r:
            print(f"{r['scheme']:<12} {r['p']:>2} {r['n']:>3}  skipped: {r['error']}")
            continue
        flag = "" if r["e_syn"] >= 0 else "  (negative, flagged)"
        print(
            f"{r['scheme']:<12} {r['p']:>2} {r['n']:>3} {r['rho']:>4} {r['v_p(C)']:>6} {r['correction']:>5}"
            f" {r['e_syn']:>5}  {'yes' if r['consistent'] else 'NO'}{flag}"
        )


if __name__ == "__main__":
    main()
