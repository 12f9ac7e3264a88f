"""Command-line front end.

Exit codes: 0 all assertions hold, 1 a mathematical assertion failed,
2 usage or parse error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import ot2 as ot2mod
from .arrangement import (
    Arrangement,
    NotEssentialError,
    NotReducedError,
    circuits3,
    min_distance,
    p_of_arrangement,
    parse_arrangement,
    rank,
    rank2_flats,
    reduced_support,
)
from .exactalg import ParseError, Polynomial, Ring
from .fold_ideals import fold_ideal
from .groebner import Budget, BudgetExceeded, Ideal
from .resolution import check_resolution, minimal_free_resolution
from .verify import (
    claim4_check,
    cm_criterion,
    conjecture_scan,
    multisets,
    phi_kernel_check,
    predicted_betti,
    primary_decomposition_check,
    random_cases,
    verify_a_n_minus_1,
    verify_k2,
    verify_main_theorem,
)

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def poly_json(p: Polynomial) -> list:
    """[[exponents], "num/den"] per term, largest term first."""
    return [[list(e), _frac(c)] for e, c in p.terms()]


def _frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _budget(args) -> Budget:
    return Budget(max_degree=args.budget_degree)


def _load(args) -> tuple[Arrangement, str]:
    if not args.input:
        raise UsageError("--input is required for this command")
    path = Path(args.input[0])
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not UTF-8 text") from None
    A = parse_arrangement(text, str(path))
    return A, hashlib.sha256(data).hexdigest()


def _reduced(A: Arrangement) -> Arrangement:
    if not A.is_reduced():
        raise NotReducedError("this command needs pairwise nonproportional forms")
    return A


def _betti_lines(d: dict) -> list[str]:
    return [f"  beta[{k}] = {v}" for k, v in d.items()]


# ---------------------------------------------------------------------------
# commands; each returns (pass, result dict, text lines)

def cmd_flats(args, A: Arrangement):
    A = _reduced(A)
    flats = rank2_flats(A)
    res = {
        "n": A.n, "k": A.k, "rank": rank(A), "p": p_of_arrangement(A),
        "flats": [[i + 1 for i in f.members] for f in flats],
    }
    if rank(A) == A.k:
        res["min_distance"] = min_distance(A)
    lines = [f"n={A.n} k={A.k} rank={res['rank']} p={res['p']}"]
    lines += ["flat {" + ",".join(map(str, m)) + "}" for m in res["flats"]]
    return True, res, lines


def cmd_circuits(args, A: Arrangement):
    A = _reduced(A)
    circs = circuits3(A)
    res = {"circuits": [{"indices": [i + 1 for i in c.indices], "coeffs": [_frac(x) for x in c.coeffs]}
                        for c in circs]}
    lines = []
    for c in circs:
        terms = " + ".join(f"({x})*l{i + 1}" for x, i in zip(c.coeffs, c.indices))
        lines.append(f"circuit {tuple(i + 1 for i in c.indices)}: {terms} = 0")
    if not lines:
        lines = ["no 3-circuits"]
    return True, res, lines


def _a(args, A: Arrangement) -> int:
    return args.a if args.a is not None else A.n - 2


def cmd_fold(args, A: Arrangement):
    a = _a(args, A)
    F = fold_ideal(A, a)
    res = {"a": a, "count": len(F.subsets),
           "generators": [{"subset": [i + 1 for i in s], "poly": poly_json(g)}
                          for s, g in zip(F.subsets, F.generators)]}
    lines = [f"I_{a}: {len(F.subsets)} generators"]
    for s, g in zip(F.subsets, F.generators):
        lines.append(f"  prod{tuple(i + 1 for i in s)} = {g}")
    return True, res, lines


def cmd_betti(args, A: Arrangement):
    a = _a(args, A)
    ideal = fold_ideal(A, a).ideal
    res_, betti = minimal_free_resolution(ideal, _budget(args))
    check = check_resolution(res_, ideal)
    res = {"a": a, "betti": betti.as_dict(), "regularity": betti.regularity(),
           "projective_dimension": betti.projective_dimension(), "linear": betti.is_linear(),
           "resolution_check": check}
    return check["ok"], res, [f"Betti table of R/I_{a}:", str(betti)]


def cmd_verify_main(args, A: Arrangement):
    rep = verify_main_theorem(_reduced(A), _budget(args))
    pred = rep["predicted"]
    lines = [f"predicted ranks {tuple(pred['ranks'])} in degrees {tuple(pred['degrees'])} (p={pred['p']})"]
    lines += _betti_lines(rep["betti"])
    lines += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in rep["checks"].items()]
    return rep["pass"], rep, lines


def cmd_verify_k2(args, A: Arrangement):
    rep = verify_k2(A, _budget(args))
    lines = [f"a={c['a']}: {'linear' if c['linear'] else 'NOT linear'}" for c in rep["resolutions"]]
    lines += [f"I_{p['b']} = m^{p['b']}: {p['holds']}" for p in rep["powers_of_m"]]
    bad = [c for c in rep["colons"] if not c["holds"]]
    lines.append(f"colon identities: {len(rep['colons']) - len(bad)}/{len(rep['colons'])} hold")
    return rep["pass"], rep, lines


def cmd_verify_top(args, A: Arrangement):
    rep = verify_a_n_minus_1(A, _budget(args))
    lines = [f"n={rep['n']} s={rep['s']}"] + _betti_lines(rep["betti"])
    return rep["pass"], rep, lines


def cmd_kernel(args, A: Arrangement):
    rep = phi_kernel_check(_reduced(A), args.dmax, budget=_budget(args))
    lines = [f"ker HF      {rep['kernel_hf']}", f"Lambda3 HF  {rep['lambda3_hf']}", rep["certification"]]
    return rep["pass"], rep, lines


def cmd_cm(args, A: Arrangement):
    rep = cm_criterion(_reduced(A), _budget(args))
    rep["claim4"] = claim4_check(A)
    ok = rep["pass"] and rep["claim4"]["pass"]
    lines = [f"CM predicted={rep['cm_predicted']} computed={rep['cm_computed']}",
             f"pdim predicted={rep['pdim_predicted']} computed={rep['pdim_computed']} height={rep['height']}"]
    return ok, rep, lines


def cmd_primary(args, A: Arrangement):
    rep = primary_decomposition_check(_reduced(A), _budget(args))
    lines = [f"P=[{':'.join(p['point'])}] n_j={p['n_j']}" for p in rep["points"]]
    lines.append("saturation = <" + ", ".join(rep["saturation"]) + ">")
    lines += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in rep["checks"].items()]
    return rep["pass"], rep, lines


def cmd_ot2(args, A: Arrangement):
    A = _reduced(A)
    budget = _budget(args)
    fr = ot2mod.FiberRing(A.n, A.ring)
    I2 = ot2mod.ot2_ideal(A, budget)
    mins = I2.minimal_generators()
    std = ot2mod.standard_generators(A, fr)
    pairings = ot2mod.pairing_generators(A, fr)
    expected = Ideal(fr.t_ring, std + pairings)
    std_in = all(I2.contains(g, budget) for g in std)
    pair_in = all(I2.contains(g, budget) for g in pairings)
    matches = expected.equals(I2, budget)
    res = {
        "generators": [poly_json(g) for g in mins],
        "generators_text": [str(g) for g in mins],
        "variables": list(fr.t_ring.names),
        "standard_in_ideal": std_in,
        "pairings_in_ideal": pair_in,
        "matches_standard_plus_pairings": matches,
    }
    lines = [f"I(2,A) has {len(mins)} minimal generators:"] + [f"  {g}" for g in mins]
    lines.append("matches standard generators plus pairings: " + ("yes" if matches else "no"))
    return std_in and pair_in, res, lines


def cmd_sym(args, A: Arrangement):
    S = ot2mod.sym_ideal(_reduced(A))
    dims = S.strand_dims
    strands_ok = dims["(0,1)"] == dims["kernel_(0,1)"] and dims["(1,1)"] == dims["kernel_(1,1)"]
    ok = S.all_vanish and S.minimal_count == S.expected_count and strands_ok
    res = {"minimal_count": S.minimal_count, "expected_count": S.expected_count,
           "all_vanish": S.all_vanish, "strand_dims": dims,
           "linear": [str(g) for g in S.linear],
           "counts": {k: len(v) for k, v in S.standard_syzygies.items()}}
    lines = [f"minimal generators: {S.minimal_count} (expected n(n-2)-p = {S.expected_count})",
             f"all generators vanish under t -> f: {S.all_vanish}"]
    return ok, res, lines


def _parse_rows(spec: str, A: Arrangement) -> list[Polynomial]:
    rows = []
    for item in spec.replace(";", " ").split():
        try:
            kind, idx = item.split(":")
            a, b, c = (int(x) - 1 for x in idx.split(","))
        except ValueError:
            raise UsageError(f"bad row spec {item!r}; expected e.g. A:1,2,3") from None
        rows.append(ot2mod.sym_generator(A, kind.upper(), a, b, c))
    return rows


def cmd_sylvester(args, A: Arrangement):
    A = _reduced(A)
    if not args.rows or not args.seq:
        raise UsageError("sylvester needs --rows and --seq")
    rows = _parse_rows(args.rows, A)
    try:
        seq = [int(x) - 1 for x in args.seq.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad --seq {args.seq!r}") from None
    r = ot2mod.sylvester_form(rows, seq, A, budget=_budget(args))
    res = {"content": [[str(e) for e in row] for row in r.content],
           "determinant": poly_json(r.determinant), "determinant_text": str(r.determinant),
           "monomial_factor": str(r.monomial_factor), "cofactor": str(r.cofactor),
           "in_ideal": r.in_ideal, "cofactor_in_ideal": r.cofactor_in_ideal}
    lines = [f"det = {r.determinant}", f"    = ({r.monomial_factor}) * ({r.cofactor})",
             f"det in I(2,A): {r.in_ideal}; cofactor in I(2,A): {r.cofactor_in_ideal}"]
    return bool(r.in_ideal and r.cofactor_in_ideal), res, lines


def cmd_scan(args):
    budget = _budget(args)
    seed = args.seed if args.seed is not None else 0
    if args.family == "random":
        cases = random_cases(seed, args.count, k=args.k, n_range=(args.min_n, args.max_n))
    elif args.family == "multisets":
        names = tuple(args.vars.replace(",", " ").split())
        ring = Ring(names)
        forms = [f for f in args.forms.split(",") if f.strip()]
        cases = [(f"multiset[{j}]", S, a) for j, S in enumerate(multisets(forms, ring, args.max_n))
                 for a in range(1, S.n + 1)]
    else:
        if not args.input:
            raise UsageError("scan --family files needs --input FILE [FILE ...]")
        cases = []
        for p in args.input:
            A = parse_arrangement(Path(p).read_text(encoding="utf-8"), p)
            a_values = [args.a] if args.a is not None else list(range(1, A.n + 1))
            cases += [(p, A, a) for a in a_values]
    rep = conjecture_scan(cases, budget, jobs=args.jobs, seed=seed)
    lines = [f"{len(rep['cases'])} cases, {len(rep['nonlinear'])} non-linear, "
             f"{len(rep['budget_exceeded'])} over budget"]
    for row in rep["cases"]:
        if row["linear"] is False:
            lines.append(f"  non-linear: #{row['index']} {row['label']} a={row['a']} {row['forms']}")
    return rep["pass"], rep, lines


COMMANDS = {
    "flats": cmd_flats,
    "circuits": cmd_circuits,
    "fold": cmd_fold,
    "betti": cmd_betti,
    "verify-main": cmd_verify_main,
    "verify-k2": cmd_verify_k2,
    "verify-top": cmd_verify_top,
    "kernel": cmd_kernel,
    "cm": cmd_cm,
    "primary": cmd_primary,
    "ot2": cmd_ot2,
    "sym": cmd_sym,
    "sylvester": cmd_sylvester,
    "scan": None,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foldideals", description="Fold-product ideals of linear forms.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", nargs="+", metavar="FILE", help="arrangement file (several for scan)")
    p.add_argument("--a", type=int, help="fold order (default n-2 where relevant)")
    p.add_argument("--dmax", type=int, help="degree bound for kernel (default 2n)")
    p.add_argument("--seed", type=int, help="seed for random scans")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--budget-degree", type=int, default=60, help="Gröbner degree budget")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--rows", help="sylvester rows, e.g. 'A:1,2,3 B:1,2,3'")
    p.add_argument("--seq", help="sylvester forms by index, e.g. '1,2'")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for scan")
    p.add_argument("--family", choices=["random", "multisets", "files"], default="random")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--min-n", type=int, default=4)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--forms", default="x,y,x+y,x-y", help="forms for the multisets family")
    p.add_argument("--vars", default="x,y", help="variables for the multisets family")
    return p


def _emit(report: dict, lines: list[str], as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n")
    else:
        status = report.get("status")
        for line in lines:
            out.write(line + "\n")
        out.write(f"{report['command']}: {status}\n")


def _json_default(obj):
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, Polynomial):
        return poly_json(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report: dict = {"schema": SCHEMA, "command": args.command,
                    "budget": {"max_degree": args.budget_degree, "exceeded": False}}
    if args.seed is not None:
        report["seed"] = args.seed
    t0 = time.perf_counter()
    lines: list[str] = []
    try:
        if args.command == "scan":
            ok, result, lines = cmd_scan(args)
            report["input_digest"] = None
        else:
            A, digest = _load(args)
            report["input_digest"] = digest
            report["arrangement"] = {"vars": list(A.ring.names),
                                     "forms": [str(f.to_polynomial(A.ring)) for f in A.forms]}
            ok, result, lines = COMMANDS[args.command](args, A)
        report["result"] = result
        report["pass"] = ok
        report["status"] = "pass" if ok else "fail"
        code = EXIT_OK if ok else EXIT_FAIL
    except BudgetExceeded as exc:
        report["budget"]["exceeded"] = True
        report.update(status="budget-exceeded", error=str(exc), **{"pass": False})
        code = EXIT_BUDGET
    except (UsageError, ParseError, NotReducedError, NotEssentialError, ValueError) as exc:
        report.update(status="usage-error", error=str(exc), **{"pass": False})
        code = EXIT_USAGE
    if args.timing:
        report["seconds"] = f"{time.perf_counter() - t0:.3f}"
    if "error" in report and not args.json:
        sys.stderr.write(f"error: {report['error']}\n")
    _emit(report, lines, args.json, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
