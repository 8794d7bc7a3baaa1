"""Command-line front end.

Exit status: 0 when every check in the report holds, 1 when some ``holds`` or
``consistent`` field is false, 2 on usage errors (unknown scheme, bad flag,
unsupported input, exhausted budget).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from . import catalog, devissage, lattice_lab
from .errors import ConsistencyError, FactorizationError, FpZetaError
from .numerics import is_prime
from .schemes import CountConfig, Thickening, count_series, dimension, smoothness
from .special_values import special_value, verify_milne
from .zeta import degree_bounds, weight_factorization, weil_bound_check, zeta_of

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass(frozen=True)
class VerificationRun:
    command: str
    schemes: tuple[str, ...]
    primes: tuple[int, ...]
    n_values: tuple[int, ...]
    seed: int | None
    budget: int
    json: bool

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "schemes": list(self.schemes),
            "primes": list(self.primes),
            "n_values": list(self.n_values),
            "seed": self.seed,
            "budget": self.budget,
        }


def _all_hold(doc: Any) -> bool:
    """False iff some nested ``holds`` or ``consistent`` field is false."""
    if isinstance(doc, dict):
        for k, v in doc.items():
            if k in ("holds", "consistent") and v is False:
                return False
            if not _all_hold(v):
                return False
    elif isinstance(doc, list):
        return all(_all_hold(v) for v in doc)
    return True


# -- commands ---------------------------------------------------------------


def cmd_catalog(args, config: CountConfig) -> dict:
    return {"catalog": [{"name": k, "description": v} for k, v in catalog.CATALOG_HELP.items()]}


def cmd_zeta(args, config: CountConfig) -> dict:
    X = catalog.parse_scheme(args.scheme)
    a, b = degree_bounds(X, args.p, config)
    K = args.K if args.K is not None else a + b + 1
    Z = zeta_of(X, args.p, config)
    doc: dict[str, Any] = {
        "scheme": X.name,
        "p": args.p,
        "degree_bounds": [a, b],
        "counts": [str(c) for c in count_series(X, args.p, K, config).counts],
        "zeta": Z.to_json(),
    }
    if smoothness(X, args.p, config).smooth and dimension(X) >= 0:
        wf = weight_factorization(Z, args.p, dimension(X))
        doc["weil_factorization"] = wf.to_json()
        doc["weil_bound"] = weil_bound_check(wf, args.p).to_json()
    return doc


def cmd_value(args, config: CountConfig) -> dict:
    X = catalog.parse_scheme(args.scheme)
    Z = zeta_of(X, args.p, config)
    out = [dict(special_value(Z, args.p, n, args.extra_primes).to_json(), scheme=X.name) for n in args.n]
    return out[0] if len(out) == 1 else {"values": out}


def cmd_verify_milne(args, config: CountConfig) -> dict:
    X = catalog.parse_scheme(args.scheme)
    out = [verify_milne(X, args.p, n, config, args.extra_primes).to_json() for n in args.n]
    return out[0] if len(out) == 1 else {"reports": out}


def cmd_lemma21(args, config: CountConfig) -> dict:
    if args.instance:
        with open(args.instance) as fh:
            inst = lattice_lab.LatticeMapInstance.from_json(json.load(fh))
        return {"instance": inst.to_json(), "report": lattice_lab.lemma21_check(inst).to_json()}
    primes = [args.p] if args.p else [2, 3, 5]
    rng = random.Random(args.seed)
    reports = [lattice_lab.lemma21_check(lattice_lab.random_instance(rng, rng.choice(primes), args.max_rank)) for _ in range(args.trials)]
    passed = sum(r.holds for r in reports)
    return {
        "trials": args.trials,
        "seed": args.seed,
        "primes": primes,
        "max_rank": args.max_rank,
        "passed": passed,
        "failures": [i for i, r in enumerate(reports) if not r.holds],
        "holds": passed == args.trials,
    }


def _square_for(args) -> catalog.BlowupSquareInstance:
    if args.members:
        return catalog.BlowupSquareInstance(*(catalog.parse_scheme(m) for m in args.members))
    X = catalog.parse_scheme(args.scheme)
    if isinstance(X, Thickening):
        return catalog.thickening_square(X)
    return catalog.blowup_square(X)


def cmd_devissage_square(args, config: CountConfig) -> dict:
    sq = _square_for(args)
    reports = [devissage.blowup_value_identity(sq, args.p, n, config).to_json() for n in args.n]
    return {"p": args.p, "reports": reports, "holds": all(r["holds"] for r in reports)}


def cmd_devissage_propagate(args, config: CountConfig) -> dict:
    if args.ledger:
        with open(args.ledger) as fh:
            ledger = devissage.PropertyPLedger.from_json(json.load(fh))
    else:
        names = args.seed_schemes or ["pt", "P1", "P2", "P3"]
        ledger = devissage.seed_ledger([catalog.parse_scheme(s) for s in names], args.p, args.n, config)
    closed = devissage.propagate_property_p(ledger)
    idempotent = devissage.propagate_property_p(closed).known == closed.known
    rng = random.Random(args.seed)
    order_independent = all(
        devissage.propagate_property_p(devissage.shuffled(ledger, rng)).known == closed.known for _ in range(args.shuffles)
    )
    return {
        "input": ledger.to_json(),
        "closure": closed.to_json(),
        "idempotent": idempotent,
        "order_independent": order_independent,
        "shuffles": args.shuffles,
        "holds": idempotent and order_independent,
    }


def cmd_devissage_open(args, config: CountConfig) -> dict:
    U = catalog.parse_scheme(args.scheme)
    out = [devissage.compare_compactifications(U, args.p, n, config).to_json() for n in args.n]
    return {"p": args.p, "reports": out}


def cmd_devissage_decompose(args, config: CountConfig) -> dict:
    X, Z = catalog.parse_scheme(args.x), catalog.parse_scheme(args.z)
    return dict(devissage.decompose_check(X, Z, args.p, args.K, config).to_json(), p=args.p)


# -- parser -----------------------------------------------------------------


def _prime(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (default: short text)")
    common.add_argument("--budget", type=_positive, default=10**8, help="max evaluations per point count")

    p = _Parser(prog="fpzeta", description="Zeta functions, special values and Milne's formula over F_p.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("catalog", parents=[common], help="catalog registry")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    def scheme_args(q, n=True, many=True):
        q.add_argument("--scheme", required=True)
        q.add_argument("--p", type=_prime, required=True)
        if n:
            q.add_argument("--n", type=int, nargs="+" if many else None, required=True)

    z = sub.add_parser("zeta", parents=[common], help="zeta function from point counts")
    scheme_args(z, n=False)
    z.add_argument("--K", type=_positive, default=None, help="number of counts to print")
    z.set_defaults(func=cmd_zeta)

    v = sub.add_parser("value", parents=[common], help="special value C(X, n) and pole order")
    scheme_args(v)
    v.add_argument("--extra-primes", type=_prime, nargs="*", default=[])
    v.set_defaults(func=cmd_value)

    ver = sub.add_parser("verify", help="formula checks")
    vsub = ver.add_subparsers(dest="check", required=True, parser_class=_Parser)
    m = vsub.add_parser("milne", parents=[common], help="p-adic check of Milne's formula")
    scheme_args(m)
    m.add_argument("--extra-primes", type=_prime, nargs="*", default=[])
    m.set_defaults(func=cmd_verify_milne)

    lm = sub.add_parser("lemma21", parents=[common], help="random lattice index suite, or one instance document")
    lm.add_argument("--trials", type=_positive, default=200)
    lm.add_argument("--seed", type=int, default=0)
    lm.add_argument("--p", type=_prime, default=None)
    lm.add_argument("--max-rank", type=_positive, default=6)
    lm.add_argument("--instance", help="JSON instance document")
    lm.set_defaults(func=cmd_lemma21)

    d = sub.add_parser("devissage", help="blowup squares, compactifications, property P")
    dsub = d.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sq = dsub.add_parser("square", parents=[common], help="C(X)C(Y') = C(X')C(Y) on a square")
    sq.add_argument("--scheme", help="blow this up at a point (a thickening gives its reduction square)")
    sq.add_argument("--members", nargs=4, metavar=("Y_PRIME", "X_PRIME", "Y", "X"))
    sq.add_argument("--p", type=_prime, required=True)
    sq.add_argument("--n", type=int, nargs="+", default=[0, 1, 2])
    sq.set_defaults(func=cmd_devissage_square)

    pr = dsub.add_parser("propagate", parents=[common], help="property-P closure")
    pr.add_argument("--ledger", help="JSON ledger document")
    pr.add_argument("--seed-schemes", nargs="*", help="candidates checked with verify milne")
    pr.add_argument("--p", type=_prime, default=3)
    pr.add_argument("--n", type=int, nargs="+", default=[0, 1, 2])
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--shuffles", type=int, default=20)
    pr.set_defaults(func=cmd_devissage_propagate)

    op = dsub.add_parser("open", parents=[common], help="compactly supported value over every registered compactification")
    scheme_args(op)
    op.set_defaults(func=cmd_devissage_open)

    dc = dsub.add_parser("decompose", parents=[common], help="zeta(X) = zeta(Z) zeta(X - Z)")
    dc.add_argument("--x", required=True)
    dc.add_argument("--z", required=True)
    dc.add_argument("--p", type=_prime, required=True)
    dc.add_argument("--K", type=_positive, default=3)
    dc.set_defaults(func=cmd_devissage_decompose)
    return p


def _text(doc: Any, indent: str = "") -> str:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v:
                block = _text(v, indent + "  ")
                lines.append(indent + "- " + block[len(indent) + 2 :])
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{doc}")
    return "\n".join(lines)


def _run_of(args) -> VerificationRun:
    command = " ".join(filter(None, [args.command, getattr(args, "check", None), getattr(args, "action", None)]))
    names = [getattr(args, k, None) for k in ("scheme", "x", "z")] + list(getattr(args, "members", None) or [])
    p = getattr(args, "p", None)
    n = getattr(args, "n", None)
    return VerificationRun(
        command,
        tuple(x for x in names if x),
        (p,) if p else (),
        tuple(n) if isinstance(n, list) else (),
        getattr(args, "seed", None),
        args.budget,
        args.json,
    )


def dispatch(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=err)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if getattr(args, "command", None) == "devissage" and args.action == "square" and not (args.scheme or args.members):
        print("error: give --scheme or --members", file=err)
        return EXIT_USAGE
    config = CountConfig(budget=args.budget)
    try:
        doc = args.func(args, config)
    except (ConsistencyError, FactorizationError) as exc:
        print(f"check failed: {exc}", file=err)
        return EXIT_FAILED
    except (FpZetaError, OSError, json.JSONDecodeError) as exc:
        print(parser.format_usage().rstrip(), file=err)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    doc = dict(doc, run=_run_of(args).to_json())
    print(json.dumps(doc, sort_keys=True, indent=2) if args.json else _text(doc), file=out)
    return EXIT_OK if _all_hold(doc) else EXIT_FAILED


def main() -> None:
    sys.exit(dispatch())
