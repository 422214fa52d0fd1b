"""Command-line interface.

Subcommands cover the full pipeline: construct a finite-field spread or
a root-of-unity family, lift, verify, measure, search, and print the
summary count table.  All families travel through the JSON code file
format; verification certificates are only ever written by an in-process
check.

Exit codes are a stable contract: 0 success or verified, 1 verification
failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .codefile import CodeFileError, read_code_file, write_code_file
from .codes_ff import (
    CodeFF,
    VerificationReport,
    max_family_size,
    spread_code,
    verify_code,
)
from .codes_psk import psk_code, psk_family_bounds
from .gf import Field, field_default, is_prime
from .lift import (
    CodeC,
    SubspaceC,
    UnverifiedInputError,
    lift_code,
    lift_subspace,
    verify_lifted,
)
from .geometry import code_rate, min_distance, pair_table
from .search import (
    build_graph,
    clique_heuristic,
    enumerate_planes,
    max_clique_exact,
    seed_indices,
    verify_clique_planes,
)

DEFAULT_VERIFY_LIMIT = 200_000
DEFAULT_RNG_SEED = 12345


def _split_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"alphabet size {q} must be a prime power >= 2")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        raise ValueError(f"alphabet size {q} is not a prime power")
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"alphabet size {q} is not a prime power")
    return p, k


def _parse_poly(text: str, p: int, deg: int) -> tuple[int, ...]:
    """Digit string, highest degree first, base-p digits, length deg+1."""
    if len(text) != deg + 1:
        raise ValueError(
            f"polynomial needs {deg + 1} digits for degree {deg}, "
            f"got {text!r}")
    try:
        digits = [int(c) for c in text]
    except ValueError:
        raise ValueError(f"polynomial digits must be numeric: {text!r}")
    if any(not 0 <= d < p for d in digits):
        raise ValueError(f"polynomial digits must lie below {p}: {text!r}")
    if digits[0] != 1:
        raise ValueError("polynomial must be monic (leading digit 1)")
    return tuple(reversed(digits))


def _pair_count(planes: int) -> int:
    return planes * (planes - 1) // 2


def _cert_from_report(report: VerificationReport) -> dict:
    return {
        "method": report.method,
        "ok": report.ok,
        "planes": report.planes,
        "pairs_checked": report.pairs_checked,
    }


def _print_failures(report: VerificationReport) -> None:
    for i in report.rank_failures[:20]:
        print(f"rank-deficient subspace: {i}")
    for i, j in report.pair_failures[:20]:
        print(f"intersecting pair: {i} {j}")
    hidden = (max(0, len(report.rank_failures) - 20)
              + max(0, len(report.pair_failures) - 20))
    if hidden > 0:
        print(f"... and {hidden} more failures not listed")


def cmd_construct_ff(args) -> int:
    p, k = _split_prime_power(args.q)
    field = field_default(p, k)
    top = None
    if args.poly is not None:
        top = Field(p, k * args.m, _parse_poly(args.poly, p, k * args.m))
    code = spread_code(field, args.m, args.mt, top=top)
    tower_poly = "".join(map(str, reversed(code.provenance["tower_poly"])))
    print(f"constructed {len(code)} subspaces: q={args.q} m={args.m} "
          f"mt={args.mt} tower_poly={tower_poly}")
    cert = None
    pairs = _pair_count(len(code))
    if pairs <= args.verify_limit:
        report = verify_code(code, jobs=args.jobs)
        print(report.summary())
        if not report.ok:
            _print_failures(report)
            return 1
        cert = _cert_from_report(report)
    else:
        print(f"verification skipped: {pairs} pairs exceed the limit of "
              f"{args.verify_limit} (raise --verify-limit to force)")
    out = args.out or f"code-ff-q{args.q}-m{args.m}-mt{args.mt}.json"
    write_code_file(out, code, certificate=cert)
    print(f"wrote {out}")
    return 0


def cmd_lift(args) -> int:
    data = read_code_file(args.input)
    if not data.is_finite_field():
        raise CodeFileError("lift expects a finite-field code file")
    if data.is_empty():
        raise CodeFileError("cannot lift an empty family")
    code = data.to_code()
    cert = data.certificate
    if (cert and cert.get("ok") is True and cert.get("method") == "exact-ff"
            and cert.get("planes") == len(code)):
        report = VerificationReport(
            ok=True, method="exact-ff", planes=len(code),
            pairs_checked=cert.get("pairs_checked", 0),
            rank_failures=[], pair_failures=[], seconds=0.0)
    else:
        if cert:
            raise UnverifiedInputError(
                "input certificate does not attest this family; re-verify")
        print("input has no certificate; verifying now")
        report = verify_code(code, jobs=args.jobs)
        print(report.summary())
        if not report.ok:
            _print_failures(report)
            raise UnverifiedInputError("input family fails verification")
    lifted = lift_code(code, report)
    pairs = _pair_count(len(lifted))
    if pairs <= args.verify_limit:
        lifted_report = verify_lifted(lifted, jobs=args.jobs)
        print(lifted_report.summary())
        if not lifted_report.ok:
            _print_failures(lifted_report)
            return 1
    else:
        print(f"lifted verification skipped: {pairs} pairs exceed the limit "
              f"of {args.verify_limit}")
    inp = Path(args.input)
    out = args.out or str(inp.with_name(inp.stem + "-lifted.json"))
    write_code_file(out, lifted)
    print(f"wrote {out}: {len(lifted)} subspaces over root order {lifted.n}")
    return 0


def cmd_construct_psk(args) -> int:
    code = psk_code(args.r, args.m)
    lo, hi = psk_family_bounds(args.r, args.m)
    print(f"constructed {len(code)} subspaces: r={args.r} m={args.m} "
          f"(guaranteed range {lo}-{hi})")
    pairs = _pair_count(len(code))
    if pairs <= args.verify_limit:
        report = verify_lifted(code, jobs=args.jobs)
        print(report.summary())
        if not report.ok:
            _print_failures(report)
            return 1
    else:
        print(f"verification skipped: {pairs} pairs exceed the limit of "
              f"{args.verify_limit}")
    out = args.out or f"code-psk-r{args.r}-m{args.m}.json"
    write_code_file(out, code)
    print(f"wrote {out}")
    return 0


def cmd_verify(args) -> int:
    data = read_code_file(args.input)
    if data.is_empty():
        print("PASS (vacuous): file contains no subspaces")
        return 0
    code = data.to_code()
    if isinstance(code, CodeFF):
        report = verify_code(code, jobs=args.jobs)
    else:
        report = verify_lifted(code, jobs=args.jobs)
    print(report.summary())
    if not report.ok:
        _print_failures(report)
        return 1
    if args.update:
        write_code_file(args.input, code,
                        certificate=_cert_from_report(report))
        print(f"updated certificate in {args.input}")
    return 0


def _alphabet_size(data) -> int:
    if data.kind == "finite-field":
        return data.parameters["p"] ** data.parameters["k"]
    if data.kind == "lifted":
        return data.parameters["n"] + 1
    n = data.parameters["n"]
    return n + 1 if data.parameters.get("includes_zero") else n


def cmd_metrics(args) -> int:
    data = read_code_file(args.input)
    if data.is_empty():
        raise CodeFileError("metrics needs at least one subspace")
    code = data.to_code()
    if isinstance(code, CodeFF):
        planes = [lift_subspace(s) for s in code.planes]
        numeric = CodeC(planes[0].n, code.m, code.t, planes,
                        dict(code.provenance))
    else:
        numeric = code
    rate = code_rate(len(numeric), numeric.m)
    print(f"kind={data.kind} planes={len(numeric)} m={numeric.m} "
          f"mt={numeric.t} alphabet={_alphabet_size(data)}")
    print(f"rate={rate:.6f}")
    report = min_distance(numeric)
    print(report.summary())
    if args.out:
        table = pair_table(numeric)
        csv_path = f"{args.out}.csv"
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "nu", "min_theta", "lambda",
                             "chordal"])
            for g in table:
                writer.writerow([g.i, g.j, g.nu, f"{g.min_theta:.12g}",
                                 f"{g.lam:.12g}", f"{g.chordal:.12g}"])
        print(f"wrote {csv_path}")
        from .figures import save_pair_histograms
        for path in save_pair_histograms(table, args.out):
            print(f"wrote {path}")
    return 0


def render_count_table() -> str:
    """Fixed summary of spread counts and psk ranges, mt = 2."""
    colw = 16
    lines = ["Pairwise nonintersecting planes (mt = 2)"]
    header = "alphabet".ljust(colw)
    for m in (4, 6, 8):
        header += f"m={m}".ljust(colw)
    lines.append(header.rstrip())
    for power in (1, 2, 3):
        q = 2 ** power
        field_row = f"size {q} field".ljust(colw)
        psk_row = f"{'':7}psk".ljust(colw)
        for m in (4, 6, 8):
            field_row += str(max_family_size(q, m, 2)).ljust(colw)
            lo, hi = psk_family_bounds(power, m)
            psk_row += f"{lo}-{hi}".ljust(colw)
        lines.append(field_row.rstrip())
        lines.append(psk_row.rstrip())
    lines.append("field rows: spread count for GF(q), q = alphabet size")
    lines.append("psk rows: guaranteed-achievable to best-possible range "
                 "for the 2^r-th roots of unity")
    return "\n".join(lines)


def cmd_table1(args) -> int:
    print(render_count_table())
    return 0


def cmd_search(args) -> int:
    n = 2 ** args.psk_r
    candidates = enumerate_planes(n, args.m, include_zero=args.include_zero,
                                  limit=args.limit)
    graph = build_graph(candidates, jobs=args.jobs)
    print(f"candidates={len(candidates)} edges={graph.edge_count()} "
          f"graph_sha256={graph.digest()[:16]}...")
    seed: list[int] = []
    if args.seed and args.mode != "heuristic":
        raise ValueError("--seed applies only to --mode heuristic")
    if args.seed:
        seed_data = read_code_file(args.seed)
        if seed_data.is_empty():
            seed_planes: list[SubspaceC] = []
        else:
            seed_code = seed_data.to_code()
            if isinstance(seed_code, CodeFF):
                seed_planes = [lift_subspace(s) for s in seed_code.planes]
            else:
                seed_planes = list(seed_code.planes)
        seed = seed_indices(candidates, seed_planes)
        print(f"seed clique from {args.seed}: {len(seed)} vertices")
    if args.mode == "exact":
        result = max_clique_exact(graph, time_budget=args.budget,
                                  max_vertices=args.max_vertices)
    else:
        rounds = int(args.budget) if args.budget is not None else 100
        result = clique_heuristic(graph, seed_clique=seed, budget=rounds,
                                  rng_seed=args.rng_seed)
    if not verify_clique_planes(candidates, result.vertices):
        print("internal error: clique failed plane-level re-verification")
        return 1
    status = "proven maximum" if result.exact else "best found"
    print(f"clique size {result.size} ({status}); nodes={result.nodes} "
          f"time={result.seconds:.2f}s")
    if result.warning:
        print(f"warning: {result.warning}")
    planes = [candidates.planes[v] for v in result.vertices]
    prov = {
        "construction": "search-clique",
        "alphabet": n,
        "include_zero": args.include_zero,
        "m": args.m,
        "candidates": len(candidates),
        "edges": graph.edge_count(),
        "graph_sha256": graph.digest(),
        "mode": args.mode,
        "budget": args.budget,
        "rng_seed": args.rng_seed if args.mode == "heuristic" else None,
        "seed_size": len(seed),
        "exact": result.exact,
        "nodes": result.nodes,
        "clique_size": result.size,
        "vertices": list(result.vertices),
    }
    if result.warning:
        prov["warning"] = result.warning
    code = CodeC(n, args.m, 2, planes, prov)
    report = verify_lifted(code)
    if not report.ok:
        print("internal error: result family failed verification")
        return 1
    out = args.out or f"search-psk{args.psk_r}-m{args.m}-{args.mode}.json"
    write_code_file(out, code)
    print(f"wrote {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewcodes",
        description="Construct, verify, measure, and search families of "
                    "pairwise nonintersecting subspaces over finite "
                    "alphabets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "construct-ff",
        help="build a spread of nonintersecting subspaces over GF(q)")
    p.add_argument("--q", type=int, required=True,
                   help="alphabet size, a prime power")
    p.add_argument("--m", type=int, required=True, help="ambient dimension")
    p.add_argument("--mt", type=int, required=True,
                   help="subspace dimension; must divide m")
    p.add_argument("--poly", default=None,
                   help="defining polynomial of the q^m-element tower "
                        "field, as base-p digits highest degree first "
                        "(e.g. 10011 for q=2, m=4); must be primitive")
    p.add_argument("--out", default=None, help="output code file")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes for verification")
    p.add_argument("--verify-limit", type=int, default=DEFAULT_VERIFY_LIMIT,
                   help="skip verification above this many pairs")
    p.set_defaults(func=cmd_construct_ff)

    p = sub.add_parser(
        "lift",
        help="lift a verified finite-field family to roots of unity")
    p.add_argument("input", help="finite-field code file")
    p.add_argument("--out", default=None, help="output code file")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--verify-limit", type=int, default=DEFAULT_VERIFY_LIMIT)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser(
        "construct-psk",
        help="build the recursive family of planes over 2^r-th roots")
    p.add_argument("--r", type=int, required=True,
                   help="alphabet is the 2^r-th roots of unity")
    p.add_argument("--m", type=int, required=True,
                   help="ambient dimension, even")
    p.add_argument("--out", default=None, help="output code file")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--verify-limit", type=int, default=DEFAULT_VERIFY_LIMIT)
    p.set_defaults(func=cmd_construct_psk)

    p = sub.add_parser("verify",
                       help="exactly re-check a code file pair by pair")
    p.add_argument("input", help="code file of any kind")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--update", action="store_true",
                   help="write the fresh certificate back into the file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics",
                       help="rate and pairwise distance report")
    p.add_argument("input", help="code file of any kind")
    p.add_argument("--out", default=None,
                   help="prefix for the csv table and histogram images")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("table1",
                       help="print the spread-count and psk-range table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("search",
                       help="clique search for large families of planes")
    p.add_argument("--psk-r", type=int, required=True,
                   help="alphabet is the 2^r-th roots of unity")
    p.add_argument("--m", type=int, required=True, help="ambient dimension")
    p.add_argument("--include-zero", action="store_true",
                   help="allow the zero symbol in candidate vectors")
    p.add_argument("--mode", choices=("exact", "heuristic"),
                   default="exact")
    p.add_argument("--budget", type=float, default=None,
                   help="exact: wall seconds; heuristic: improvement "
                        "rounds (default 100)")
    p.add_argument("--seed", default=None,
                   help="code file whose planes seed the heuristic")
    p.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED,
                   help="rng seed for the heuristic (fixed default for "
                        "reproducibility)")
    p.add_argument("--limit", type=int, default=2_000_000,
                   help="enumeration pair budget")
    p.add_argument("--max-vertices", type=int, default=5000,
                   help="vertex bound for the exact solver")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes for the graph build")
    p.add_argument("--out", default=None, help="result code file")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnverifiedInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
