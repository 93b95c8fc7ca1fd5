"""Command-line front end: ``isopoints <subcommand> [options]``.

Every subcommand prints one report (JSON by default, ``--format table`` for
humans) and exits with status 1 when any check in the report failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .counting import check_functional_equation, zeta_L_polynomial
from .degsets import MapSpec, RankInput, cycle_type_statistics, fiber_sample
from .errors import IsoPointsError
from .examples import (
    cmd_classify,
    cmd_example_dendegs,
    cmd_example_ueno,
    cmd_positivity,
    cmd_verify_cover,
    identity_cover,
    rawson_cover,
    rawson_target,
    ueno_cover,
)
from .fgab import FgAbGroup, Subgroup, avoid_cosets, index
from .io import Report, cover_from_json, curve_from_json, dumps, load_json, place_from_json, poly_from_json, render_table
from .lmfdb import lmfdb_fetch

BUILTIN_COVERS = {"rawson": rawson_cover, "ueno": ueno_cover,
                  "identity": lambda: identity_cover(rawson_target())}


def _rank_input(args) -> RankInput | None:
    if args.rank is None and not args.rank_label:
        return None
    if args.rank_label:
        rec = lmfdb_fetch(args.rank_label, offline=args.offline)
        return RankInput("LMFDB", rec.rank, f"{rec.label} via {rec.provenance}")
    return RankInput("config", args.rank, "command line")


def run_verify_cover(args) -> Report:
    if args.builtin:
        return cmd_verify_cover(BUILTIN_COVERS[args.builtin](), args.builtin)
    if not args.spec:
        raise SystemExit("verify-cover needs a spec file or --builtin")
    return cmd_verify_cover(cover_from_json(load_json(args.spec)), args.spec)


def run_example_dendegs(args) -> Report:
    return cmd_example_dendegs()


def run_example_ueno(args) -> Report:
    rank = _rank_input(args) or RankInput("config", 0, "paper-quoted")
    return cmd_example_ueno(args.height, rank)


def run_classify(args) -> Report:
    C = curve_from_json(load_json(args.curve))
    P = place_from_json(C, load_json(args.point))
    return cmd_classify(C, P, _rank_input(args))


def run_fiber_sample(args) -> Report:
    C = curve_from_json(load_json(args.curve))
    spec = MapSpec()
    if args.psi:
        data = load_json(args.psi)
        spec = MapSpec(poly_from_json(data["num"]), poly_from_json(data.get("den", ["1"])))
    rep = Report("fiber-sample", C, {"budget": args.budget, "psi": f"({spec.num})/({spec.den})"})
    res = fiber_sample(C, spec, args.budget)
    rep.claim("map degree", res.map_degree)
    rep.claim("sampled", res.sampled)
    rep.claim("irreducible fibers", res.irreducible)
    rep.claim("irreducible fraction", Fraction(res.irreducible, max(1, res.sampled - len(res.skipped))))
    rep.exceptional = res.exceptional
    if res.skipped:
        rep.claim("skipped (fiber meets infinity)", res.skipped)
    if args.cycle_primes:
        t = Fraction(args.cycle_t)
        table = cycle_type_statistics(C, spec, t, args.cycle_primes)
        rep.witnesses.append({"t": t, "fiber_polynomial": table.polynomial,
                              "patterns": {p: list(v) for p, v in table.patterns.items()},
                              "skipped_primes": table.skipped})
    rep.verdict = f"{res.irreducible}/{res.sampled - len(res.skipped)} irreducible"
    return rep


def run_zeta(args) -> Report:
    C = curve_from_json(load_json(args.curve))
    rep = Report("zeta", C, {"p": args.p})
    z = zeta_L_polynomial(C, args.p)
    rep.claim("N_1..N_g", list(z.counts))
    rep.claim("L coefficients", list(z.L))
    rep.check("functional equation", check_functional_equation(z))
    rep.claim("L(1) = #Pic0(F_p)", z.picard_order)
    rep.verdict = z.picard_order
    return rep


def run_avoid_cosets(args) -> Report:
    data = load_json(args.spec)
    B = FgAbGroup.from_invariants(data.get("torsion", []), int(data.get("rank", 0)))
    x = B.element(_coords(B, data["x"]))
    cosets = [(B.element(_coords(B, c["y"])), Subgroup(B, [_coords(B, g) for g in c.get("gens", [])]))
              for c in data["cosets"]]
    rep = Report("avoid-cosets", None, {"group": repr(B), "x": list(x), "cosets": len(cosets)})
    steps = []
    H = avoid_cosets(B, x, cosets, on_step=lambda i, m: steps.append({"coset": i, "m": m}))
    rep.claim("multipliers", steps)
    rep.claim("index of H", index(H))
    rep.witnesses.append({"generators": [list(g) for g in H.generators]})
    rep.verdict = "disjoint (re-verified)"
    return rep


def _coords(B: FgAbGroup, vec) -> list[int]:
    """Elements are given in the canonical coordinates of B (torsion first)."""
    if len(vec) != B.ngens:
        raise SystemExit(f"element {vec} needs {B.ngens} coordinates in canonical form {B!r}")
    return [int(c) for c in vec]


def run_positivity(args) -> Report:
    return cmd_positivity()


def run_lmfdb(args) -> Report:
    rec = lmfdb_fetch(args.label, offline=args.offline, refresh=args.refresh)
    rep = Report("lmfdb-fetch", None, {"label": args.label})
    rep.claim("rank", rec.rank, "external-input")
    rep.claim("torsion structure", list(rec.torsion_structure), "external-input")
    rep.claim("served from", rec.provenance, "external-input")
    rep.claim("source url", rec.source_url, "external-input")
    rep.verdict = f"rank {rec.rank}"
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isopoints", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--offline", action="store_true", help="never touch the network")
    ap.add_argument("--seed", type=int, default=20240601, help="seed for randomized steps")
    ap.add_argument("--budget", type=int, default=100, help="sampling budget (rationals by height)")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-cover", help="check a map between hyperelliptic curves")
    p.add_argument("spec", nargs="?")
    p.add_argument("--builtin", choices=sorted(BUILTIN_COVERS))
    p.set_defaults(func=run_verify_cover)

    p = sub.add_parser("example-dendegs", help="genus-5 fiber product and its Picard orders")
    p.set_defaults(func=run_example_dendegs)

    p = sub.add_parser("example-ueno", help="genus-3 curve with Ueno isolated quadratic points")
    p.add_argument("--height", type=int, default=1000)
    p.add_argument("--rank", type=int)
    p.add_argument("--rank-label")
    p.set_defaults(func=run_example_ueno)

    p = sub.add_parser("classify", help="P1-parameterized or P1-isolated")
    p.add_argument("curve")
    p.add_argument("point")
    p.add_argument("--rank", type=int)
    p.add_argument("--rank-label")
    p.set_defaults(func=run_classify)

    p = sub.add_parser("fiber-sample", help="irreducibility of fibers over rationals by height")
    p.add_argument("curve")
    p.add_argument("--psi", help="JSON file {num: [...], den: [...]}")
    p.add_argument("--cycle-primes", type=int, nargs="*", help="primes for factor-pattern statistics")
    p.add_argument("--cycle-t", default="2", help="fiber used for the pattern statistics")
    p.set_defaults(func=run_fiber_sample)

    p = sub.add_parser("zeta", help="L-polynomial at a good prime")
    p.add_argument("curve")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=run_zeta)

    p = sub.add_parser("avoid-cosets", help="finite-index subgroup avoiding given cosets")
    p.add_argument("spec")
    p.set_defaults(func=run_avoid_cosets)

    p = sub.add_parser("positivity-check", help="re-verify the positivity polynomial identity")
    p.set_defaults(func=run_positivity)

    p = sub.add_parser("lmfdb-fetch", help="rank record for an elliptic curve label")
    p.add_argument("label")
    p.add_argument("--refresh", action="store_true")
    p.set_defaults(func=run_lmfdb)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except IsoPointsError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    data = report.to_dict()
    data["inputs"]["seed"] = args.seed
    sys.stdout.write(render_table(data) if args.format == "table" else dumps(data))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
