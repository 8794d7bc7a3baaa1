"""Exhaustive search for anomalous short-Weierstrass curves (N_1 = p) and their exponent at n = 1.

    python scripts/anomalous_search.py --primes 5 7 11 13
"""

import argparse

from fpzeta.numerics import valuation
from fpzeta.schemes import EllipticCurve, count_points
from fpzeta.special_values import verify_milne


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13])
    args = ap.parse_args()
    for p in args.primes:
        total = mismatches = 0
        found = []
        for a in range(p):
            for b in range(p):
                if (4 * a**3 + 27 * b * b) % p == 0:
                    continue
                total += 1
                E = EllipticCurve(a, b)
                N1 = count_points(E, p, 1)
                e = verify_milne(E, p, 1).inferred_syntomic_exp
                mismatches += e != valuation(N1, p)
                if N1 == p:
                    found.append((a, b, e))
        shown = ", ".join(f"E:{a},{b} (e={e})" for a, b, e in found[:6])
        more = f" and {len(found) - 6} more" if len(found) > 6 else ""
        print(f"p={p}: {total} smooth curves, {len(found)} anomalous: {shown or 'none'}{more}; e != v_p(N1) in {mismatches}")


if __name__ == "__main__":
    main()
