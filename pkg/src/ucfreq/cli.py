"""Command-line front end. Batch commands, exact rational output.

Exit codes: 0 success, 1 usage error, 2 invalid input family,
3 internal consistency failure (a certificate that does not re-verify,
or a verification suite reporting violations - both always bugs).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import lpmodel, search, setfam
from .ratlp import CertificateError, Optimal, format_certificate, format_lp

OK, USAGE_ERROR, BAD_FAMILY, INTERNAL_ERROR = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to status 2; keep 1 for usage
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


class FamilyInputError(Exception):
    pass


def _render(value: Fraction, approx: bool) -> str:
    return repr(float(value)) if approx else str(value)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_family(path: str, fmt: str | None, add_empty: bool) -> setfam.SetFamily:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FamilyInputError(f"cannot read {path}: {exc}") from exc
    kind = fmt or ("json" if path.endswith(".json") else "text")
    try:
        if kind == "json":
            fam = setfam.family_from_json(text)
        else:
            fam = setfam.family_from_text(text)
    except ValueError as exc:
        raise FamilyInputError(f"{path}: {exc}") from exc
    if add_empty and 0 not in fam.member_set():
        fam = setfam.SetFamily(fam.n, (0,) + fam.sets)
    return fam


def _parse_base(text: str, n: int) -> int:
    try:
        elements = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise FamilyInputError(f"bad base set {text!r}") from exc
    if not all(1 <= e <= n for e in elements):
        raise FamilyInputError(f"base set {text!r} leaves the ground set 1..{n}")
    return setfam.mask_of(elements)


def _parse_objective(text: str, s: int) -> dict[str, Fraction]:
    roles = lpmodel.role_letters(s)
    if text == "q_singleton":
        return {"q_a": Fraction(1)}
    if text == "sum_singletons":
        return {f"q_{y}": Fraction(1) for y in roles}
    names = {lpmodel.subset_name(t) for t in lpmodel.all_subsets(s)}
    objective: dict[str, Fraction] = {}
    for token in text.split("+"):
        name = token.strip()
        if name not in names:
            raise FamilyInputError(
                f"unknown objective term {name!r} (try q_singleton, sum_singletons, or q_<roles>)"
            )
        objective[name] = objective.get(name, Fraction(0)) + 1
    return objective


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_table(args) -> int:
    if args.certificates and args.format != "json":
        raise FamilyInputError("--certificates needs --format json")
    if args.jobs > 1:
        results = _solve_cells_parallel(args.jobs)
    else:
        results = lpmodel.bounds_table()
    for res in results:
        if not lpmodel.recheck(res):
            raise CertificateError(f"certificate for {res.spec} failed re-verification")
    if args.format == "csv":
        if args.approx:
            lines = ["s," + ",".join(f"|C|={k}" for k in lpmodel.COLUMN_KEYS)]
            by_cell = {(r.spec.s, r.spec.scenario): r for r in results}
            for s in (4, 5):
                cells = [
                    "infeasible" if
                    by_cell[(s, sc)].bound is None else repr(float(by_cell[(s, sc)].bound))
                    for sc in lpmodel.GRID
                ]
                lines.append(f"{s}," + ",".join(cells))
            _emit("\n".join(lines) + "\n", args.out)
        else:
            _emit(lpmodel.table_to_csv(results), args.out)
    else:
        doc = lpmodel.table_to_json(results, certificates=args.certificates)
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return OK


def _solve_cells_parallel(jobs: int):
    import concurrent.futures

    specs = [lpmodel.CaseSpec(s, sc) for s in (4, 5) for sc in lpmodel.GRID]
    try:
        with concurrent.futures.ProcessPoolExecutor(max_workers=min(jobs, len(specs))) as pool:
            return tuple(pool.map(lpmodel.solve_case, specs))
    except (OSError, PermissionError):  # restricted environments: fall back
        return tuple(lpmodel.solve_case(spec) for spec in specs)


_SCENARIOS = {
    "0": lpmodel.Scenario.C0,
    "1": lpmodel.Scenario.C1,
    "2": lpmodel.Scenario.C2,
    "3": lpmodel.Scenario.C3PLUS,
    "aux": lpmodel.Scenario.PAIR_CAP,
}


def _cmd_solve_case(args) -> int:
    if args.c == "aux" and args.s != 5:
        raise FamilyInputError("--c aux exists only for --s 5")
    spec = lpmodel.CaseSpec(args.s, _SCENARIOS[args.c])
    res = lpmodel.solve_case(spec)
    if not lpmodel.recheck(res):
        raise CertificateError(f"certificate for {spec} failed re-verification")
    if args.dump_lp:
        lp = lpmodel.case_program(spec)
        _emit(format_lp(lp) + "\n" + format_certificate(lp, res.outcome), args.out)
    else:
        text = res.bound_text if res.bound is None or not args.approx else repr(float(res.bound))
        _emit(text + "\n", args.out)
    return OK


def _cmd_solve_base(args) -> int:
    res = lpmodel.solve_case(lpmodel.CaseSpec(args.s, lpmodel.Scenario.BASE))
    if not lpmodel.recheck(res):
        raise CertificateError("base certificate failed re-verification")
    _emit(_render(res.bound, args.approx) + "\n", args.out)
    return OK


def _cmd_min_objective(args) -> int:
    objective = _parse_objective(args.objective, args.s)
    outcome = lpmodel.min_objective(args.s, objective)
    if not isinstance(outcome, Optimal):
        raise CertificateError("objective minimization did not reach an optimum")
    _emit(_render(outcome.value, args.approx) + "\n", args.out)
    return OK


def _cmd_analyze(args) -> int:
    fam = _load_family(args.family, args.format, args.add_empty)
    if not setfam.is_union_closed(fam):
        raise FamilyInputError(f"{args.family}: family is not union-closed")
    if args.normalize:
        fam = setfam.normalize(fam)
    lines = [f"m = {len(fam)}"]
    freqs = setfam.element_frequencies(fam)
    lines.append("frequencies: " + " ".join(f"{e}={freqs[e]}" for e in sorted(freqs)))
    for k in (1, 2):
        if k <= fam.n:
            _, _, ratio = setfam.kth_frequency(fam, k)
            lines.append(f"f_{k} = " + _render(ratio, args.approx))
    lines.append("minimal 2-good sets:")
    for s in setfam.minimal_two_good_sets(fam):
        lines.append(f"  {setfam.format_mask(s)} incidence={setfam.incidence(fam, s)}")
    if args.base is not None:
        base = _parse_base(args.base, fam.n)
        counts = setfam.trace_counts(fam, base)
        lines.append(f"trace counts for S = {setfam.format_mask(base)}:")
        for t in setfam.submasks(base):
            lines.append(f"  {setfam.format_mask(t)} -> {counts[t]}")
    _emit("\n".join(lines) + "\n", args.out)
    return OK


def _cmd_covers(args) -> int:
    fam = _load_family(args.family, args.format, add_empty=False)
    try:
        mc = setfam.minimal_covers(fam)
    except ValueError as exc:
        raise FamilyInputError(f"{args.family}: {exc}") from exc
    lines = ["minimal covers:"]
    lines.extend(f"  {setfam.format_mask(s)}" for s in mc.sets)
    if setfam.is_antichain(fam):
        lines.append("input is antichain: yes")
        holds = setfam.minimal_covers(mc) == fam.sorted()
        lines.append(f"MC(MC(F)) == F: {'yes' if holds else 'NO (bug)'}")
        if not holds:
            raise CertificateError("minimal-cover involution failed")
    else:
        lines.append("input is antichain: no")
        reduced = setfam.minimal_elements(fam)
        holds = setfam.minimal_covers(mc) == reduced.sorted()
        lines.append(f"MC(MC(F)) == minimal elements of F: {'yes' if holds else 'NO (bug)'}")
        if not holds:
            raise CertificateError("minimal-cover reduction failed")
    _emit("\n".join(lines) + "\n", args.out)
    return OK


def _cmd_search_nagel(args) -> int:
    spec = search.EnumerationSpec(
        args.n,
        require_empty=args.require_empty,
        require_ground_coverage=True,
        max_family_size=args.max_family_size,
    )
    progress = (lambda k: print(f"checked {k} families", file=sys.stderr)) if not args.quiet else None
    try:
        report = search.verify_nagel_k2(spec, progress=progress)
    except ValueError as exc:
        raise FamilyInputError(str(exc)) from exc
    _emit(json.dumps(report.to_json_dict(max_witnesses=args.max_witnesses), indent=2) + "\n", args.out)
    return OK if report.passed else INTERNAL_ERROR


def _cmd_check_lemmas(args) -> int:
    fam = _load_family(args.family, args.format, args.add_empty)
    base = _parse_base(args.base, fam.n)
    try:
        report = search.spot_check_lemmas(fam, base)
    except ValueError as exc:
        raise FamilyInputError(f"{args.family}: {exc}") from exc
    _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    return OK if report.passed else INTERNAL_ERROR


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ucfreq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_input=False):
        p.add_argument("--out", help="write output to a file instead of stdout")
        if family_input:
            p.add_argument("family", help="family file (JSON or plain text)")
            p.add_argument("--format", choices=("json", "text"), help="override format autodetection")

    p = sub.add_parser("table", help="solve all eight case cells")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--certificates", action="store_true", help="embed certificates (JSON only)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the cells")
    p.add_argument("--approx", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("solve-case", help="solve one case cell")
    p.add_argument("--s", type=int, choices=(4, 5), required=True)
    p.add_argument("--c", choices=tuple(_SCENARIOS), required=True)
    p.add_argument("--dump-lp", action="store_true", help="print the program and certificate text")
    p.add_argument("--approx", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_solve_case)

    p = sub.add_parser("solve-base", help="solve the base program")
    p.add_argument("--s", type=int, choices=(4, 5), required=True)
    p.add_argument("--approx", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_solve_base)

    p = sub.add_parser("min-objective", help="minimize a custom objective over the base program")
    p.add_argument("--s", type=int, choices=(4, 5), required=True)
    p.add_argument("--objective", required=True,
                   help="q_singleton, sum_singletons, or q_<roles> terms joined by +")
    p.add_argument("--approx", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_min_objective)

    p = sub.add_parser("analyze", help="frequencies, 2-good structure and traces of a family")
    common(p, family_input=True)
    p.add_argument("--base", help="comma-separated base set for trace counts, e.g. 2,3,4")
    p.add_argument("--add-empty", action="store_true", help="add the empty set to the family")
    p.add_argument("--normalize", action="store_true",
                   help="relabel so the most frequent element is 1")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("covers", help="minimal covers and the involution status")
    common(p, family_input=True)
    p.set_defaults(handler=_cmd_covers)

    p = sub.add_parser("search-nagel", help="exhaustive second-frequency check")
    p.add_argument("--n", type=int, required=True, help="ground-set size (2..4 exhaustive)")
    p.add_argument("--require-empty", action="store_true")
    p.add_argument("--max-family-size", type=int)
    p.add_argument("--max-witnesses", type=int, default=16)
    p.add_argument("--quiet", action="store_true", help="suppress stderr progress")
    common(p)
    p.set_defaults(handler=_cmd_search_nagel)

    p = sub.add_parser("check-lemmas", help="recount the lemma bounds on a family")
    common(p, family_input=True)
    p.add_argument("--base", required=True, help="comma-separated minimal 2-good base set")
    p.add_argument("--add-empty", action="store_true")
    p.set_defaults(handler=_cmd_check_lemmas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.handler(args)
    except FamilyInputError as exc:
        print(f"ucfreq: {exc}", file=sys.stderr)
        return BAD_FAMILY
    except CertificateError as exc:
        print(f"ucfreq: internal consistency failure: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
