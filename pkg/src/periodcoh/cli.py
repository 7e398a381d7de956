"""Command-line front end.

Exit codes: 0 success, 1 unparsable input, 2 invalid data, 3 a consistency
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from .checks import invariant_suite
from .cohomology import (
    boundary_cohomology,
    compactly_supported_cohomology,
    euler_consistency_check,
    omega_set,
    schubert_cohomology,
    spectral_pages,
    splitting_hypothesis_check,
    strata,
)
from .errors import ConsistencyError, ValidationError
from .isocrystal import acceptable_set_gln, hasse_edges, is_basic
from .report import Report, datum_json, page_json, rat_vector, serialize_report, sum_json
from .shtuka import LocalShtukaDatum, build_datum
from .steinberg import format_group, hom, ext1, tits_table_lookup

COMMANDS = ("cohomology", "boundary", "schubert", "strata", "kottwitz", "ext", "check", "selftest")


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _add_datum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="preset such as drinfeld:2, gln_basic:2:1,0:1/2, quadric:7, split:B3:1,0,0")
    p.add_argument("--datum", help="datum file (JSON)")
    p.add_argument("--group", help="group string, e.g. GL4 or A2xA1")
    p.add_argument("--galois", help="Galois action in cycle notation, e.g. '(a1 a3)'")
    p.add_argument("--mu", help="comma-separated integers")
    p.add_argument("--nu", help="comma-separated rationals")
    p.add_argument("--s", type=int, help="decency metadata s")
    p.add_argument("--format", choices=("human", "machine"), default="human")


def _add_pn(p: argparse.ArgumentParser, default_p: int = 5) -> None:
    p.add_argument("--p", type=int, default=default_p)
    p.add_argument("--n", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="periodcoh", description="Cohomology of p-adic period domains, exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cohomology", help="compactly supported cohomology of the period domain")
    _add_datum_args(c)
    _add_pn(c)
    c.add_argument("--coefficients", choices=("modp", "zp"), default="modp")

    b = sub.add_parser("boundary", help="cohomology of the boundary, with spectral pages")
    _add_datum_args(b)

    s = sub.add_parser("schubert", help="Schubert cohomology for a subset I")
    _add_datum_args(s)
    s.add_argument("--I", dest="subset", help="comma-separated labels (default: all)")

    st = sub.add_parser("strata", help="subsets with |Delta - I| = i and nonemptiness")
    _add_datum_args(st)
    st.add_argument("--i", dest="index", type=int, required=True)

    k = sub.add_parser("kottwitz", help="acceptable set for GL_n")
    k.add_argument("--gln", type=int, required=True)
    k.add_argument("--mu", required=True)
    k.add_argument("--format", choices=("human", "machine"), default="human")

    e = sub.add_parser("ext", help="Ext^1 between generalized Steinberg representations")
    e.add_argument("--rank", type=int, help="|Delta|")
    e.add_argument("--I", dest="I", default="", help="labels a1,a2,... ('' for the empty set)")
    e.add_argument("--J", dest="J", default="")
    e.add_argument("--p", type=int, default=5)
    e.add_argument("--group-preset", choices=("GLnD", "GeneralQuasiSplit"), default="GeneralQuasiSplit")
    e.add_argument("--split-at-2", action="store_true", help="GLnD with D = Q_2 (only relevant for p = 2)")
    e.add_argument("--tits", help="look up a relative rank two Tits index instead")
    e.add_argument("--format", choices=("human", "machine"), default="human")

    ch = sub.add_parser("check", help="Euler, splitting and invariant checks")
    _add_datum_args(ch)
    _add_pn(ch)

    se = sub.add_parser("selftest", help="acceptance criteria and golden regression")
    se.add_argument("--golden", help="golden directory (default: the packaged one)")
    se.add_argument("--update", action="store_true", help="rewrite the golden files")
    se.add_argument("--skip-criteria", action="store_true", help="only compare golden files")
    se.add_argument("--format", choices=("human", "machine"), default="human")
    return parser


def _vector(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _description(args) -> dict:
    if args.datum:
        try:
            desc = json.loads(Path(args.datum).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read datum file: {exc}") from exc
        if not isinstance(desc, dict):
            raise ParseError("datum file must hold a JSON object")
        return desc
    if args.preset:
        desc = {"preset": args.preset}
    elif args.group and args.mu and args.nu:
        desc = {"group": args.group, "mu": [int(x) for x in _vector(args.mu)], "nu": _vector(args.nu)}
        if args.galois:
            desc["galois"] = args.galois
    else:
        raise ParseError("give --preset, --datum, or --group with --mu and --nu")
    if args.s is not None:
        desc["s"] = args.s
    return desc


def _base_report(command: str, desc: dict, datum: LocalShtukaDatum, results: dict) -> Report:
    return Report(command=command, results=results, datum=datum_json(datum),
                  provenance=datum.provenance, input=dict(datum.description))


def _splitting_json(datum: LocalShtukaDatum, p: int) -> dict:
    rep = splitting_hypothesis_check(datum, p)
    labels = datum.j.labels
    return {
        "p": p,
        "verdict": rep.verdict,
        "ext_preset": rep.ext_preset,
        "pairs_checked": len(rep.checks),
        "failing": [{"degree": c.degree, "kind": c.kind, "source": c.source, "target": c.target,
                     "I": [labels[k] for k in sorted(c.I)], "J": [labels[k] for k in sorted(c.J)],
                     "answer": c.answer.label()} for c in rep.failing],
        "notes": list(rep.notes),
    }


def cohomology_report(desc: dict, coefficients: str = "ModPn", p: int = 5, n: int = 1) -> Report:
    datum = build_datum(desc)
    hc = compactly_supported_cohomology(datum, coefficients)
    results = {"coefficients": coefficients, "n": n, **sum_json(hc, datum)}
    report = _base_report("cohomology", desc, datum, results)
    report.verdicts = {"splitting": _splitting_json(datum, p)}
    return report


def boundary_report(desc: dict) -> Report:
    datum = build_datum(desc)
    results = sum_json(boundary_cohomology(datum), datum)
    if datum.delta:
        e1, e2 = spectral_pages(datum)
        results["E1"] = page_json(e1, datum)
        results["E2"] = page_json(e2, datum)
    return _base_report("boundary", desc, datum, results)


def _labels_to_subset(datum: LocalShtukaDatum, text: str | None) -> frozenset:
    if text is None:
        return datum.delta
    index = {lab: k for k, lab in enumerate(datum.j.labels)}
    out = set()
    for lab in _vector(text):
        if lab not in index:
            raise ValidationError(f"unknown relative root label {lab!r}")
        out.add(index[lab])
    return frozenset(out)


def schubert_report(desc: dict, subset: str | None) -> Report:
    datum = build_datum(desc)
    I = _labels_to_subset(datum, subset)
    results = {"I": datum.labels_of(I), "omega": sorted(omega_set(datum, I)),
               **sum_json(schubert_cohomology(datum, I), datum)}
    return _base_report("schubert", desc, datum, results)


def strata_report(desc: dict, index: int) -> Report:
    datum = build_datum(desc)
    results = {"i": index, "strata": [{"I": datum.labels_of(I), "nonempty": flag}
                                      for I, flag in strata(datum, index)]}
    return _base_report("strata", desc, datum, results)


def kottwitz_report(n: int, mu_text: str) -> Report:
    try:
        mu = [int(x) for x in _vector(mu_text)]
    except ValueError as exc:
        raise ParseError(f"cannot read mu: {exc}") from exc
    pts = acceptable_set_gln(n, mu)
    results = {
        "points": [{"slopes": rat_vector(p.newton.slopes), "kappa": p.kappa, "basic": is_basic(p.newton)}
                   for p in pts],
        "hasse": [list(e) for e in hasse_edges(pts)],
    }
    return Report(command="kottwitz", results=results, input={"gln": n, "mu": mu})


def ext_report(args) -> Report:
    if args.tits:
        gsc, zsc = tits_table_lookup(args.tits)
        results = {"tits": {"name": args.tits, "center_Gsc": format_group(gsc), "center_Zsc": format_group(zsc)}}
        return Report(command="ext", results=results, input={"tits": args.tits})
    if args.rank is None:
        raise ParseError("ext needs --rank (or --tits)")
    labels = [f"a{k + 1}" for k in range(args.rank)]
    index = {lab: k for k, lab in enumerate(labels)}

    def subset(text):
        try:
            return frozenset(index[x] for x in _vector(text))
        except KeyError as exc:
            raise ValidationError(f"unknown label {exc.args[0]!r} for rank {args.rank}") from exc

    I, J = subset(args.I), subset(args.J)
    ans = ext1(I, J, args.p, args.group_preset, split_at_2=args.split_at_2)
    results = {"ext": {"I": [labels[k] for k in sorted(I)], "J": [labels[k] for k in sorted(J)],
                       "answer": ans.label(), "value": ans.value, "torsion_bound": ans.torsion_bound,
                       "trail": ans.trail, "hom": hom(I, J)}}
    inp = {"rank": args.rank, "I": args.I, "J": args.J, "p": args.p,
           "group_preset": args.group_preset, "split_at_2": args.split_at_2}
    return Report(command="ext", results=results, input=inp)


def check_report(desc: dict, p: int, n: int) -> tuple[Report, bool]:
    datum = build_datum(desc)
    euler = euler_consistency_check(datum, p, n)
    checks = [{"name": f"euler_consistency(p={p}, n={n})", "passed": euler.passed}]
    checks += [{"name": r.name, "passed": r.passed} for r in invariant_suite(datum)]
    results = {"checks": checks,
               "euler_residual": [{"K": datum.labels_of(K), "twist": t, "value": v} for K, t, v in euler.residual]}
    report = _base_report("check", desc, datum, results)
    report.verdicts = {"splitting": _splitting_json(datum, p)}
    return report, all(c["passed"] for c in checks)


# Golden regression -----------------------------------------------------------

def regression_reports() -> dict[str, bytes]:
    """Machine reports for every suite datum, keyed by golden file name."""
    from .acceptance import SUITE
    out = {}
    for name, desc in SUITE:
        out[f"{name}.cohomology.json"] = serialize_report(cohomology_report(desc), "machine")
        out[f"{name}.boundary.json"] = serialize_report(boundary_report(desc), "machine")
    out["kottwitz_gl3.json"] = serialize_report(kottwitz_report(3, "1,0,0"), "machine")
    return out


def default_golden_dir() -> Path:
    return Path(str(resources.files("periodcoh") / "golden"))


def compare_golden(golden: Path, update: bool = False) -> list[dict]:
    rows = []
    for name, data in regression_reports().items():
        path = golden / name
        if update:
            golden.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
            rows.append({"name": name, "status": "written"})
        elif not path.exists():
            rows.append({"name": name, "status": "missing"})
        else:
            rows.append({"name": name, "status": "match" if path.read_bytes() == data else "differs"})
    return rows


def selftest_report(golden: Path | None = None, update: bool = False,
                    skip_criteria: bool = False) -> tuple[Report, bool]:
    from .acceptance import run_all
    golden = default_golden_dir() if golden is None else golden
    results: dict = {}
    ok = True
    if not skip_criteria:
        crit = run_all()
        results["criteria"] = [{"id": c.id, "name": c.name, "passed": c.passed} for c in crit]
        ok = all(c.passed for c in crit)
    rows = compare_golden(golden, update)
    results["golden"] = rows
    ok = ok and all(r["status"] in ("match", "written") for r in rows)
    return Report(command="selftest", results=results, input={"update": update}), ok


def run(argv: Sequence[str]) -> tuple[int, bytes, str]:
    """Execute a command; returns (exit code, stdout bytes, stderr text)."""
    try:
        args = build_parser().parse_args(list(argv))
        fmt = getattr(args, "format", "human")
        code = 0
        if args.command == "cohomology":
            coeff = "Zp" if args.coefficients == "zp" else "ModPn"
            report = cohomology_report(_description(args), coeff, args.p, args.n)
        elif args.command == "boundary":
            report = boundary_report(_description(args))
        elif args.command == "schubert":
            report = schubert_report(_description(args), args.subset)
        elif args.command == "strata":
            report = strata_report(_description(args), args.index)
        elif args.command == "kottwitz":
            report = kottwitz_report(args.gln, args.mu)
        elif args.command == "ext":
            report = ext_report(args)
        elif args.command == "check":
            report, ok = check_report(_description(args), args.p, args.n)
            code = 0 if ok else 3
        else:
            golden = Path(args.golden) if args.golden else None
            report, ok = selftest_report(golden, args.update, args.skip_criteria)
            code = 0 if ok else 3
        return code, serialize_report(report, fmt), ""
    except ParseError as exc:
        return 1, b"", f"error: {exc}\n"
    except ValidationError as exc:
        return 2, b"", f"invalid input ({type(exc).__name__}): {exc}\n"
    except ConsistencyError as exc:
        return 3, b"", f"consistency failure ({type(exc).__name__}): {exc}\n"
    except ValueError as exc:
        return 1, b"", f"error: {exc}\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
