"""Reports: JSON-ready payloads and their human / machine serializations.

Machine output is JSON with a fixed key order, rationals as "num/den"
strings and subsets as sorted label lists, so reruns are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .cohomology import CohomologySummand, GradedRepSum, RepSymbol, SpectralPage
from .shtuka import LocalShtukaDatum, orbit_invariants


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_vector(v: Sequence) -> list[str]:
    return [rat(x) for x in v]


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


def cycles_string(perm: Sequence[int], labels: Sequence[str]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, k = [], i
        while k not in seen:
            seen.add(k)
            cyc.append(labels[k])
            k = perm[k]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts)


def rep_json(r: RepSymbol, labels: Sequence[str]) -> dict:
    return {"kind": r.kind, "I": [labels[k] for k in sorted(r.I)], "coefficient": r.coefficient}


def summand_json(s: CohomologySummand, datum: LocalShtukaDatum) -> dict:
    orb = datum.orbits[s.origin_orbit]
    return {
        "degree": s.degree,
        "rep": rep_json(s.rep, datum.j.labels),
        "galois": {"rank": s.galois.rank, "twist": s.galois.twist},
        "orbit": {"id": s.origin_orbit, "size": orb.size, "length": orb.length, "cycle_type": [orb.size]},
    }


def sum_json(g: GradedRepSum, datum: LocalShtukaDatum) -> dict:
    out: dict[str, Any] = {"summands": [summand_json(s, datum) for s in g]}
    for name, value in g.flags:
        out[name] = value
    return out


def page_json(page: SpectralPage, datum: LocalShtukaDatum) -> dict:
    cells = []
    for (i, j), entries in page.cells:
        cells.append({
            "i": i, "j": j,
            "entries": [{"rep": rep_json(r, datum.j.labels), "galois": {"rank": g.rank, "twist": g.twist},
                         "orbit": oid} for r, g, oid in entries],
        })
    return {"page": page.page, "cells": cells}


def datum_json(datum: LocalShtukaDatum) -> dict:
    g = datum.g
    invs = orbit_invariants(datum)
    return {
        "group": str(g.spec),
        "galois": cycles_string(datum.tau.perm, g.labels),
        "galois_order": datum.tau.order,
        "s": datum.s,
        "mu": rat_vector(datum.mu),
        "nu": rat_vector(datum.nu),
        "delta_J": list(datum.j.labels),
        "kostant_size": len(datum.kset),
        "dim_F": datum.dim_F,
        "orbits": [
            {"id": inv.orbit_id, "members": list(inv.orbit.members), "length": inv.length,
             "size": inv.orbit.size, "I": datum.labels_of(inv.I), "n": inv.n}
            for inv in invs
        ],
    }


@dataclass
class Report:
    command: str
    results: dict
    datum: dict | None = None
    provenance: str | None = None
    input: dict | None = None
    verdicts: dict = field(default_factory=dict)
    engine_version: str = __version__

    def to_obj(self) -> dict:
        return {
            "command": self.command,
            "engine_version": self.engine_version,
            "input": self.input,
            "provenance": self.provenance,
            "datum": self.datum,
            "results": self.results,
            "verdicts": self.verdicts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        obj = json.loads(text)
        return cls(command=obj["command"], results=obj["results"], datum=obj["datum"],
                   provenance=obj["provenance"], input=obj["input"], verdicts=obj["verdicts"],
                   engine_version=obj["engine_version"])


# Human rendering ------------------------------------------------------------

def rep_label(rep: dict, delta: Sequence[str]) -> str:
    I = rep["I"]
    if rep["kind"] == "i" and len(I) == len(delta):
        return "1"
    head = rep["kind"]
    if rep["kind"] == "v" and rep.get("coefficient") == "Zp":
        head = "v^cont"
    text = f"{head}_{{{','.join(I)}}}"
    if rep["kind"] == "v" and not I:
        text += " (St)"
    return text


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    cols = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(c[k]) for c in cols) for k in range(len(header))]
    fmt = lambda r: "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()
    lines = [fmt(cols[0]), fmt(["-" * w for w in widths])]
    lines += [fmt(r) for r in cols[1:]]
    return lines


def _summand_rows(summands: list, delta: Sequence[str]) -> list[list]:
    return [[s["degree"], rep_label(s["rep"], delta), s["galois"]["rank"], s["galois"]["twist"],
             s["orbit"]["id"], s["orbit"]["length"], s["orbit"]["size"]] for s in summands]


_SUMMAND_HEADER = ["degree", "rep", "rank", "twist", "orbit", "length", "size"]


def render_human(report: Report) -> str:
    lines = [f"periodcoh {report.engine_version}  command: {report.command}"]
    d = report.datum
    if d:
        lines.append(f"group {d['group']}  galois {d['galois'] or '1'} (order {d['galois_order']})  s = {d['s']}")
        lines.append(f"mu = ({', '.join(d['mu'])})  nu = ({', '.join(d['nu'])})  provenance: {report.provenance}")
        lines.append(f"Delta_J = {{{', '.join(d['delta_J'])}}}  |W^mu| = {d['kostant_size']}  dim F = {d['dim_F']}")
    delta = d["delta_J"] if d else []
    res = report.results
    lines.append("")
    if "summands" in res:
        if res["summands"]:
            lines += _summand_rows_table(res["summands"], delta)
        else:
            lines.append("(no summands)")
        for key in ("boundary_empty",):
            if res.get(key):
                lines.append(f"{key}: true")
    for key in ("E1", "E2"):
        if key in res:
            lines.append(f"{key}:")
            rows = [[c["i"], c["j"], ", ".join(f"{rep_label(e['rep'], delta)} rank {e['galois']['rank']} "
                                                f"twist {e['galois']['twist']} [orbit {e['orbit']}]"
                                                for e in c["entries"])] for c in res[key]["cells"]]
            lines += _table(["i", "j", "entries"], rows)
    if "omega" in res:
        lines.append(f"Omega_I = {{{', '.join(map(str, res['omega']))}}}")
    if "strata" in res:
        lines += _table(["I", "nonempty"], [["{" + ",".join(s["I"]) + "}", s["nonempty"]] for s in res["strata"]])
    if "points" in res:
        rows = [[k, "(" + ", ".join(p["slopes"]) + ")", p["kappa"], p["basic"]] for k, p in enumerate(res["points"])]
        lines += _table(["#", "newton", "kappa", "basic"], rows)
        lines.append("Hasse edges (lower < upper): " + ", ".join(f"{a}<{b}" for a, b in res["hasse"]))
    if "ext" in res:
        e = res["ext"]
        lines.append(f"Ext^1(v_{{{','.join(e['I'])}}}, v_{{{','.join(e['J'])}}}) = {e['answer']}")
        lines.append(f"  {e['trail']}")
        lines.append(f"Hom = {e['hom']}")
    if "tits" in res:
        t = res["tits"]
        lines.append(f"{t['name']}: Z(G_sc) = {t['center_Gsc']}, Z(Z_sc) = {t['center_Zsc']}")
    if "checks" in res:
        lines += _table(["check", "result"], [[c["name"], "pass" if c["passed"] else "FAIL"] for c in res["checks"]])
    if "criteria" in res:
        lines += _table(["criterion", "result"],
                        [[f"{c['id']}. {c['name']}", "pass" if c["passed"] else "FAIL"] for c in res["criteria"]])
    if "golden" in res:
        lines += _table(["golden", "result"], [[g["name"], g["status"]] for g in res["golden"]])
    for name, v in report.verdicts.items():
        lines.append("")
        lines.append(f"{name}: {v['verdict']} (p = {v['p']})")
        for f in v.get("failing", []):
            lines.append(f"  needs Ext^1(v_{{{','.join(f['I'])}}}, v_{{{','.join(f['J'])}}}) = 0 "
                         f"in degree {f['degree']}: {f['answer']}")
        for note in v.get("notes", []):
            lines.append(f"  {note}")
    return "\n".join(lines) + "\n"


def _summand_rows_table(summands, delta):
    return _table(_SUMMAND_HEADER, _summand_rows(summands, delta))


def serialize_report(report: Report, fmt: str = "machine") -> bytes:
    if fmt == "machine":
        return report.to_json().encode("ascii")
    if fmt == "human":
        return render_human(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
