"""Command-line interface: coefficients, products, tables, and verification.

Subcommands: coeff, product, table, diag, verify, cache.  Exit codes:
0 success, 1 invalid input, 2 internal inconsistency (a value failed to
clear its denominator or a pinning coefficient vanished), 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import oracle
from .engine import Calculator, InternalInconsistency, multiply_expansion
from .partition import Rect, all_partitions, format_partition, parse_partition
from .poly import DenominatorNotCleared, NotTranslationInvariant, difference_basis

LARGE_RECTANGLE = 36
ALL_CHECKS = (
    "assoc",
    "comm",
    "pieri",
    "classical",
    "equivariant",
    "homog",
    "translation",
    "filters",
    "positivity",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- rendering ---------------------------------------------------------------


def poly_latex(poly):
    if poly.is_zero:
        return "0"
    pieces = []
    for exps, coeff in poly.sorted_terms():
        mono = "".join(
            f"T_{{{i + 1}}}^{{{e}}}" if e > 1 else f"T_{{{i + 1}}}"
            for i, e in enumerate(exps) if e
        )
        mag = abs(coeff)
        body = mono if mono and mag == 1 else (f"{mag}{mono}" if mono else str(mag))
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


def _sigma(nu, latex):
    label = format_partition(nu)
    return f"\\sigma_{{({label})}}" if latex else f"σ_({label})"


def _q_power(d, latex):
    if d == 0:
        return ""
    if d == 1:
        return "q"
    return f"q^{{{d}}}" if latex else f"q^{d}"


def render_term(nu, d, coeff, latex=False):
    """One product term: coefficient, q power, Schubert class."""
    body = poly_latex(coeff) if latex else str(coeff)
    pieces = []
    if body != "1":
        if " " in body or body.startswith("-"):
            body = f"({body})"
        pieces.append(body)
    q = _q_power(d, latex)
    if q:
        pieces.append(q)
    if d == 0 or not nu.is_zero:
        pieces.append(_sigma(nu, latex))
    return " ".join(pieces)


def render_expansion(expansion, latex=False):
    terms = expansion.sorted_terms()
    if not terms:
        rhs = "0"
    else:
        rhs = " + ".join(render_term(nu, d, coeff, latex) for (nu, d), coeff in terms)
    op = " \\circ " if latex else " ∘ "
    lhs = _sigma(expansion.lam, latex) + op + _sigma(expansion.mu, latex)
    return f"{lhs} = {rhs}"


def _parts_list(partition):
    parts = list(partition.parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return parts


def coeff_json(rect, lam, mu, nu, d, poly):
    return {
        "p": rect.p,
        "m": rect.m,
        "lambda": _parts_list(lam),
        "mu": _parts_list(mu),
        "nu": _parts_list(nu),
        "d": d,
        "poly_degree": lam.weight + mu.weight - nu.weight - rect.m * d,
        "coeff": poly.to_json_dict(),
    }


def expansion_json(expansion):
    return {
        "p": expansion.rect.p,
        "m": expansion.rect.m,
        "lambda": _parts_list(expansion.lam),
        "mu": _parts_list(expansion.mu),
        "terms": [
            {"nu": _parts_list(nu), "d": d, "coeff": coeff.to_json_dict()}
            for (nu, d), coeff in expansion.sorted_terms()
        ],
    }


# -- verification checks -------------------------------------------------------


def _table_pairs(rect, include_zero=False):
    parts = [lam for lam in all_partitions(rect) if include_zero or not lam.is_zero]
    order = {lam: (lam.weight, tuple(-x for x in lam.parts)) for lam in parts}
    parts.sort(key=order.get)
    return [(a, b) for i, a in enumerate(parts) for b in parts[i:]]


def _compute_products(calc, pairs, threads=1):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            expansions = list(pool.map(lambda ab: calc.product(*ab), pairs))
    else:
        expansions = [calc.product(a, b) for a, b in pairs]
    return dict(zip(pairs, expansions))


def _max_degree(rect):
    return (2 * rect.p * rect.cols) // rect.m


def run_checks(rect, names, threads=1, seed=104729):
    """Run the named verification suites; returns (report lines, exit code).

    Hard failures exit 3.  Positivity violations at d > 0 only warn, at
    d = 0 they fail hard.
    """
    for name in names:
        if name not in ALL_CHECKS:
            raise ValueError(f"unknown check {name!r}; expected one of {', '.join(ALL_CHECKS)}")
    calc = Calculator(rect)
    parts = all_partitions(rect)
    lines = []
    failed = False
    table = _compute_products(calc, _table_pairs(rect, include_zero=True), threads)

    def report(name, ok, detail):
        nonlocal failed
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failed = True

    for name in names:
        if name == "comm":
            bad = sum(
                1 for (a, b) in table
                if calc.product(b, a).terms != table[(a, b)].terms
            )
            report(name, bad == 0, f"{len(table)} pairs, {bad} asymmetric")
        elif name == "assoc":
            if len(parts) <= 6:
                triples = [
                    (a, b, c)
                    for i, a in enumerate(parts)
                    for j, b in enumerate(parts[i:], start=i)
                    for c in parts[j:]
                ]
            else:
                rng = random.Random(seed)
                triples = [
                    (rng.choice(parts), rng.choice(parts), rng.choice(parts))
                    for _ in range(50)
                ]
            bad = 0
            for a, b, c in triples:
                left = multiply_expansion(calc, calc.product(a, b), c)
                right = multiply_expansion(calc, calc.product(b, c), a)
                if left != right:
                    bad += 1
            report(name, bad == 0, f"{len(triples)} triples, {bad} broken")
        elif name == "pieri":
            box = rect.box()
            bad = []
            for lam in parts:
                if calc.product(lam, box).terms != calc.eq_pieri(lam).terms:
                    bad.append(lam)
                ints = calc.product(lam, box).integer_specialization()
                if ints != oracle.quantum_pieri_ref(lam):
                    bad.append(lam)
            report(name, not bad, f"{len(parts)} classes, {len(bad)} mismatched")
        elif name == "classical":
            bad = 0
            total = 0
            for lam in parts:
                for mu in parts:
                    for nu in parts:
                        total += 1
                        got = calc.eqlr(lam, mu, nu, 0).terms.get((0,) * rect.m, 0)
                        if got != oracle.classical_lr(lam, mu, nu):
                            bad += 1
            report(name, bad == 0, f"{total} keys at d=0, T=0; {bad} mismatched")
        elif name == "equivariant":
            ref = oracle.EquivariantRef(rect)
            bad = 0
            total = 0
            for lam in parts:
                for mu in parts:
                    for nu in parts:
                        total += 1
                        if calc.eqlr(lam, mu, nu, 0) != ref.coeff(lam, mu, nu):
                            bad += 1
            report(name, bad == 0, f"{total} keys at d=0; {bad} mismatched")
        elif name == "homog":
            bad = 0
            total = 0
            for (lp, mp, np_, d), poly in calc._memo.items():
                total += 1
                pd = sum(lp) + sum(mp) - sum(np_) - rect.m * d
                if not poly.is_homogeneous(pd):
                    bad += 1
            report(name, bad == 0, f"{total} memoized values, {bad} inhomogeneous")
        elif name == "translation":
            bad = 0
            total = 0
            for poly in calc._memo.values():
                if poly.is_zero:
                    continue
                total += 1
                try:
                    difference_basis(poly)
                except NotTranslationInvariant:
                    bad += 1
            report(name, bad == 0, f"{total} nonzero values, {bad} not translation invariant")
        elif name == "filters":
            strict = Calculator(rect, filters="all")
            free = Calculator(rect, filters="none")
            bad = 0
            flagged_bad = 0
            total = 0
            for d in range(_max_degree(rect) + 1):
                for lam in parts:
                    for mu in parts:
                        if mu.parts < lam.parts:
                            continue
                        for nu in parts:
                            total += 1
                            a = strict.eqlr(lam, mu, nu, d)
                            b = free.eqlr(lam, mu, nu, d)
                            if a != b:
                                bad += 1
                            flagged = strict.vanish_filter(lam, mu, nu, d) or (
                                d > 0 and strict.classical_vanish_filter(lam, mu, nu, d)
                            )
                            if flagged and not b.is_zero:
                                flagged_bad += 1
            report(
                name,
                bad == 0 and flagged_bad == 0,
                f"{total} keys; {bad} differ with filters off, {flagged_bad} flagged but nonzero",
            )
        elif name == "positivity":
            hard_bad = []
            soft_bad = []
            for (lp, mp, np_, d), poly in calc._memo.items():
                if poly.is_zero:
                    continue
                in_y = difference_basis(poly)
                if any(c < 0 for c in in_y.terms.values()):
                    (hard_bad if d == 0 else soft_bad).append((lp, mp, np_, d))
            for key in soft_bad:
                lines.append(f"WARN positivity: negative coefficient in y-basis at {key}")
            detail = f"{len(hard_bad)} hard (d=0) violations, {len(soft_bad)} warnings (d>0)"
            report(name, not hard_bad, detail)
    return lines, (3 if failed else 0)


# -- commands ------------------------------------------------------------------


def _add_common(sub, *, need_d=False, need_lam=False, need_mu=False, need_nu=False):
    sub.add_argument("-p", type=int, required=True, help="number of rows")
    sub.add_argument("-m", type=int, required=True, help="ambient dimension")
    if need_lam:
        sub.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 2,1")
    if need_mu:
        sub.add_argument("--mu", required=True, help="partition, e.g. 2,1")
    if need_nu:
        sub.add_argument("--nu", required=True, help="partition, e.g. 2,1")
    if need_d:
        sub.add_argument("-d", type=int, required=True, help="quantum degree (power of q)")
    sub.add_argument("--format", choices=("text", "json", "latex"), default="text")
    sub.add_argument("--cache", help="JSON memo cache file to load and update")
    sub.add_argument("--no-filters", action="store_true", help="disable vanishing filters")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--large", action="store_true", help="allow rectangles with area > 36")


def build_parser():
    parser = _Parser(prog="eqlr", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("coeff", help="one structure constant")
    _add_common(sub, need_d=True, need_lam=True, need_mu=True, need_nu=True)

    sub = commands.add_parser("product", help="expand one product")
    _add_common(sub, need_lam=True, need_mu=True)
    sub.add_argument("--q-max", type=int, help="cap on the q-degree")

    sub = commands.add_parser("table", help="full multiplication table")
    _add_common(sub)
    sub.add_argument("--q-max", type=int, help="cap on the q-degree")

    sub = commands.add_parser("diag", help="diagonal coefficients at one degree")
    _add_common(sub, need_d=True)

    sub = commands.add_parser("verify", help="run verification suites")
    _add_common(sub)
    sub.add_argument("--checks", default=",".join(ALL_CHECKS), help="comma-separated check names")

    sub = commands.add_parser("cache", help="inspect or clear a cache file")
    sub.add_argument("action", choices=("inspect", "clear"))
    sub.add_argument("--cache", required=True)
    return parser


def _make_rect(args):
    rect = Rect(args.p, args.m)
    if rect.p * rect.cols > LARGE_RECTANGLE and not args.large:
        raise ValueError(
            f"rectangle area {rect.p * rect.cols} exceeds {LARGE_RECTANGLE}; pass --large to proceed"
        )
    return rect


def _make_calc(args, rect):
    calc = Calculator(rect, filters="none" if args.no_filters else "default")
    if args.cache and os.path.exists(args.cache):
        calc.load_cache(args.cache)
    return calc


def _finish_cache(args, calc):
    if args.cache:
        calc.save_cache(args.cache)


def _cmd_coeff(args, out):
    rect = _make_rect(args)
    calc = _make_calc(args, rect)
    lam = parse_partition(args.lam, rect)
    mu = parse_partition(args.mu, rect)
    nu = parse_partition(args.nu, rect)
    if args.d < 0:
        raise ValueError("d must be nonnegative")
    poly = calc.eqlr(lam, mu, nu, args.d)
    _finish_cache(args, calc)
    if args.format == "json":
        print(json.dumps(coeff_json(rect, lam, mu, nu, args.d, poly), indent=1), file=out)
    elif args.format == "latex":
        print(poly_latex(poly), file=out)
    else:
        print(poly, file=out)
    return 0


def _capped(expansion, q_max):
    if q_max is None:
        return expansion
    kept = {k: v for k, v in expansion.terms.items() if k[1] <= q_max}
    expansion.terms = kept
    return expansion


def _cmd_product(args, out):
    rect = _make_rect(args)
    calc = _make_calc(args, rect)
    lam = parse_partition(args.lam, rect)
    mu = parse_partition(args.mu, rect)
    expansion = _capped(calc.product(lam, mu), args.q_max)
    _finish_cache(args, calc)
    if args.format == "json":
        print(json.dumps(expansion_json(expansion), indent=1), file=out)
    else:
        print(render_expansion(expansion, latex=args.format == "latex"), file=out)
    return 0


def _cmd_table(args, out):
    rect = _make_rect(args)
    calc = _make_calc(args, rect)
    pairs = _table_pairs(rect)
    products = _compute_products(calc, pairs, args.threads)
    _finish_cache(args, calc)
    if args.format == "json":
        rows = [expansion_json(_capped(products[pair], args.q_max)) for pair in pairs]
        print(json.dumps({"p": rect.p, "m": rect.m, "products": rows}, indent=1), file=out)
    else:
        for pair in pairs:
            expansion = _capped(products[pair], args.q_max)
            print(render_expansion(expansion, latex=args.format == "latex"), file=out)
    return 0


def _cmd_diag(args, out):
    rect = _make_rect(args)
    calc = _make_calc(args, rect)
    if args.d < 0:
        raise ValueError("d must be nonnegative")
    rows = calc.diag_table(args.d)
    _finish_cache(args, calc)
    if args.format == "json":
        payload = {
            "p": rect.p,
            "m": rect.m,
            "d": args.d,
            "entries": [
                {"lambda": _parts_list(lam), "coeff": poly.to_json_dict()}
                for lam, poly in rows
            ],
        }
        print(json.dumps(payload, indent=1), file=out)
    else:
        latex = args.format == "latex"
        for lam, poly in rows:
            label = f"({format_partition(lam)})"
            value = poly_latex(poly) if latex else str(poly)
            print(f"{label} -> {value}", file=out)
    return 0


def _cmd_verify(args, out):
    rect = _make_rect(args)
    names = [x.strip() for x in args.checks.split(",") if x.strip()]
    lines, code = run_checks(rect, names, threads=args.threads)
    for line in lines:
        print(line, file=out)
    return code


def _cmd_cache(args, out):
    if args.action == "clear":
        if os.path.exists(args.cache):
            os.remove(args.cache)
            print(f"removed {args.cache}", file=out)
        else:
            print(f"no cache at {args.cache}", file=out)
        return 0
    with open(args.cache, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "eqlr-cache-v1":
        raise ValueError(f"unsupported cache format {payload.get('format')!r}")
    entries = payload.get("entries", {})
    print(f"format: {payload['format']}", file=out)
    print(f"rectangle: p={payload.get('p')} m={payload.get('m')}", file=out)
    print(f"entries: {len(entries)}", file=out)
    return 0


_COMMANDS = {
    "coeff": _cmd_coeff,
    "product": _cmd_product,
    "table": _cmd_table,
    "diag": _cmd_diag,
    "verify": _cmd_verify,
    "cache": _cmd_cache,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InternalInconsistency, DenominatorNotCleared) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
