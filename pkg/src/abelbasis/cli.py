"""Command line interface: ``abelbasis {basis,iso,bench}``.

Exit codes: 0 success (``iso``: isomorphic), 1 not isomorphic, 2 bad input,
3 the generators do not generate (or the group is not cyclic for basis3).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import bench
from .errors import AbelianGroupError, NotCyclicOrNotGenerating, NotGenerating
from .factorization import Factorization
from .groups import (
    AbelianGroup,
    UnitsModN,
    make_product_group,
    parse_product_spec,
    read_table_file,
)
from .structure import (
    GroupStructure,
    basis_cyclic,
    basis_from_generators,
    basis_from_table,
    canonical_invariants,
    is_isomorphic,
)

ALGORITHMS = ("auto", "basis1", "basis2", "basis3")


class InputError(Exception):
    pass


def load_group(args, listing: bool = True) -> AbelianGroup:
    sources = [s for s in (args.table, args.product, args.units) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --table, --product, --units")
    if args.table is not None:
        return read_table_file(args.table, validate=True, check_associativity=args.validate)
    if args.product is not None:
        return make_product_group(parse_product_spec(args.product))
    if args.phi_factorization is None:
        raise InputError("--units needs --phi-factorization")
    return UnitsModN(args.units, Factorization.parse(args.phi_factorization), listing=listing)


def load_source(desc: str, validate: bool = False) -> AbelianGroup:
    """``table:PATH``, ``product:SPEC``, ``units:N:PHI``, or a bare path/spec."""
    kind, _, rest = desc.partition(":")
    if kind == "table":
        return read_table_file(rest, check_associativity=validate)
    if kind == "product":
        return make_product_group(parse_product_spec(rest))
    if kind == "units":
        n, _, phi = rest.partition(":")
        return UnitsModN(int(n), Factorization.parse(phi), listing=True)
    if os.path.exists(desc):
        return read_table_file(desc, check_associativity=validate)
    return make_product_group(parse_product_spec(desc))


def parse_gens(text: str, G: AbelianGroup) -> list:
    """Generators as ``3,8`` (one coordinate each), ``(1,0),(1,1)`` or
    ``1,0;1,1``. A multi-coordinate product without brackets or ``;`` is
    read as a single generator."""
    text = text.strip()
    if "(" in text:
        items = re.findall(r"\(([^)]*)\)", text)
    elif ";" in text:
        items = [t for t in text.split(";") if t.strip()]
    elif len(getattr(G, "moduli", (0,))) > 1:
        items = [text]
    else:
        items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise InputError(f"no generators in {text!r}")
    return [G.parse_element(t) for t in items]


def choose_algorithm(algo: str, G: AbelianGroup, gens) -> str:
    if algo == "auto":
        if gens:
            return "basis2"
        if G.enumerable:
            return "basis1"
        raise InputError("group is not enumerable; pass --gens")
    if algo == "basis1" and not G.enumerable:
        raise InputError("basis1 needs an enumerable group (table or product source)")
    if algo in ("basis2", "basis3") and not gens:
        raise InputError(f"{algo} needs --gens")
    return algo


def run_algorithm(algo: str, G: AbelianGroup, gens) -> GroupStructure:
    if algo == "basis1":
        return basis_from_table(G)
    if algo == "basis2":
        return basis_from_generators(G, gens)
    return basis_cyclic(G, gens)


def _token(G: AbelianGroup, x):
    return list(x) if isinstance(x, tuple) else x


def structure_document(G: AbelianGroup, s: GroupStructure, algo: str) -> dict:
    f = G.factorization
    return {
        "N": f.n,
        "factorization": [[p, a] for p, a in f.factors],
        "algorithm": algo,
        "components": [
            {
                "prime": p,
                "exponent": a,
                "generators": [
                    {"token": _token(G, g), "order": o} for g, o in s.components.get(p, [])
                ],
            }
            for p, a in f.factors
        ],
        "invariants": str(canonical_invariants(s)),
        "stats": s.stats,
        "op_report": G.counter.as_dict(),
    }


def format_text(G: AbelianGroup, s: GroupStructure, algo: str) -> str:
    f = G.factorization
    lines = [f"N={f.n} ({f}) algorithm={algo}"]
    for p, a in f.factors:
        for g, o in s.components.get(p, []):
            lines.append(f"{p}^{a}: generator={G.format_element(g)} order={o}")
    lines.append(f"invariants={canonical_invariants(s)}")
    lines.append(f"group_ops={G.counter.group_ops} eq_tests={G.counter.eq_tests}")
    lines.append(f"product-of-orders={s.product_of_orders()}")
    return "\n".join(lines)


def cmd_basis(args) -> int:
    G = load_group(args, listing=args.gens is None)
    gens = parse_gens(args.gens, G) if args.gens else []
    algo = choose_algorithm(args.algo, G, gens)
    G.reset_counter()
    s = run_algorithm(algo, G, gens)
    if args.format == "structured":
        print(json.dumps(structure_document(G, s, algo), indent=2, sort_keys=False))
    else:
        print(format_text(G, s, algo))
    return 0


def cmd_iso(args) -> int:
    invs = []
    for desc in (args.a, args.b):
        G = load_source(desc, validate=args.validate)
        invs.append(canonical_invariants(basis_from_table(G)))
    same = is_isomorphic(*invs)
    if args.format == "structured":
        print(json.dumps({
            "a": {"source": args.a, "invariants": {str(p): v for p, v in invs[0].as_dict().items()}},
            "b": {"source": args.b, "invariants": {str(p): v for p, v in invs[1].as_dict().items()}},
            "isomorphic": same,
        }, indent=2))
    else:
        print(f"A: {args.a} -> {invs[0]}")
        print(f"B: {args.b} -> {invs[1]}")
        print("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def cmd_bench(args) -> int:
    ladder = bench.parse_ladder(args.bench_ladder or "")
    rows = bench.run_bench(ladder, args.algo, args.seed, args.repetitions, args.jobs)
    sys.stdout.write(bench.rows_to_csv(rows, timing=not args.no_timing))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abelbasis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("basis", help="compute a basis of a finite abelian group")
    src = pb.add_argument_group("source")
    src.add_argument("--table", metavar="FILE")
    src.add_argument("--product", metavar="SPEC", help='e.g. "Z4xZ2xZ9"')
    src.add_argument("--units", type=int, metavar="N", help="units modulo N")
    src.add_argument("--phi-factorization", metavar="SPEC", help='factorization of phi(N), e.g. "2^2 3"')
    pb.add_argument("--gens", metavar="LIST")
    pb.add_argument("--algo", choices=ALGORITHMS, default="auto")
    pb.add_argument("--validate", action="store_true", help="also check associativity of tables")
    pb.add_argument("--format", choices=("text", "structured"), default="text")
    pb.add_argument("--seed", type=int, default=0)
    pb.set_defaults(func=cmd_basis)

    pi = sub.add_parser("iso", help="decide whether two groups are isomorphic")
    pi.add_argument("a", help="table:PATH, product:SPEC, units:N:PHI, or a bare path/spec")
    pi.add_argument("b")
    pi.add_argument("--validate", action="store_true")
    pi.add_argument("--format", choices=("text", "structured"), default="text")
    pi.set_defaults(func=cmd_iso)

    pn = sub.add_parser("bench", help="operation counts over a ladder of groups (CSV)")
    pn.add_argument("--bench-ladder", metavar="SPEC", default="",
                    help='";"-separated items: product specs, cyclic:P:A..B, elementary:P:A..B')
    pn.add_argument("--algo", choices=ALGORITHMS, default="auto")
    pn.add_argument("--seed", type=int, default=0)
    pn.add_argument("--repetitions", type=int, default=1)
    pn.add_argument("--jobs", type=int, default=1)
    pn.add_argument("--no-timing", action="store_true", help="leave wall_time empty for reproducible output")
    pn.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotGenerating, NotCyclicOrNotGenerating) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InputError, AbelianGroupError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
