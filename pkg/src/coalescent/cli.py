"""Command-line front end: build, inspect and check complexes, handle witnesses.

Exit codes: 0 when every requested check passed or gave a definitive answer,
1 on a property failure or an undecided answer, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import builders
from .coalesce import opening_time, witness_from_collapse
from .collapse import exhaustive_collapse, free_faces, greedy_collapse
from .complex import census
from .errors import ParseError, TopologyError, UnknownCommand
from .fundamental_group import Pi1Verdict, pi1_presentation, simplify_presentation
from .homology import homology
from .scx import parse_scx, write_scx
from .stardisk import CycleMap, circle_degree, max_displacement, star_disk_report
from .verdict import Budgets, Conclusion, coalescence_verdict, search_collapse
from .witness import format_rational, verify_witness, witness_document


@dataclass
class Report:
    command: list
    results: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    exit_code: int = 0
    as_json: bool = False

    def to_json(self) -> str:
        doc = {"command": self.command, "results": self.results, "exit_code": self.exit_code}
        return json.dumps(doc, sort_keys=True, indent=2)

    def to_text(self) -> str:
        return "\n".join(self.lines)

    def render(self) -> str:
        return self.to_json() if self.as_json else self.to_text()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownCommand(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coalescent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="write a stock complex in .scx form")
    b.add_argument("what", help="dunce-hat, dunce-hat-minimal8, bings-house, dunce-hat-flap, "
                                "simplex N, sphere N or disc K")
    b.add_argument("n", nargs="?", type=int)
    b.add_argument("--out")
    b.add_argument("--json", action="store_true")

    i = sub.add_parser("info", help="census of a .scx file")
    i.add_argument("file")
    i.add_argument("--json", action="store_true")

    c = sub.add_parser("check", help="run one check on a .scx file")
    c.add_argument("kind", choices=["free-faces", "collapse", "star-disk", "homology", "pi1", "verdict"])
    c.add_argument("file")
    c.add_argument("--exhaustive", action="store_true")
    c.add_argument("--budget", type=int, default=20_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true")

    w = sub.add_parser("witness", help="build or verify a contraction witness")
    wsub = w.add_subparsers(dest="action", required=True, parser_class=_Parser)
    wb = wsub.add_parser("build")
    wb.add_argument("file")
    wb.add_argument("--out")
    wb.add_argument("--points", type=int, default=20)
    wb.add_argument("--times", type=int, default=10)
    wb.add_argument("--budget", type=int, default=20_000)
    wb.add_argument("--seed", type=int, default=0)
    wb.add_argument("--json", action="store_true")
    wv = wsub.add_parser("verify")
    wv.add_argument("file")
    wv.add_argument("--pairs", type=int, default=100)
    wv.add_argument("--times", type=int, default=20)
    wv.add_argument("--seed", type=int, default=0)
    wv.add_argument("--json", action="store_true")

    d = sub.add_parser("degree", help="degree of a cycle self-map")
    d.add_argument("--cycle", type=int, required=True)
    d.add_argument("--map", required=True, dest="images")
    d.add_argument("--strict", action="store_true")
    d.add_argument("--json", action="store_true")
    return p


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from err


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as err:
        raise ParseError(f"cannot write {path}: {err.strerror}") from err


def _labels(c, s) -> list:
    return [c.label(v) for v in s]


def _pair_doc(c, p) -> dict:
    return {"free_face": _labels(c, p.free_face), "coface": _labels(c, p.coface)}


# -- subcommands ---------------------------------------------------------------

def _build(args, rep: Report):
    what = args.what
    sized = {"simplex": builders.full_simplex, "sphere": builders.boundary_sphere,
             "disc": builders.disc_fan}
    if what in sized:
        if args.n is None:
            raise UnknownCommand(f"build {what} needs a size argument")
        nc = sized[what](args.n)
    elif what in builders.BUILDERS:
        if args.n is not None:
            raise UnknownCommand(f"build {what} takes no size argument")
        nc = builders.BUILDERS[what]()
    else:
        raise UnknownCommand(f"unknown complex {what!r}")
    c = nc.complex
    text = write_scx(c)
    cen = census(c)
    marked = {k: c.label(v) for k, v in nc.marked.items() if isinstance(v, int)}
    rep.results = {"name": nc.name, "f_vector": list(cen.f_vector), "euler": cen.euler_characteristic,
                   "marked": marked}
    if args.out:
        _write(args.out, text)
        rep.results["out"] = args.out
        rep.lines.append(f"{nc.name}: f-vector {list(cen.f_vector)}, euler {cen.euler_characteristic} -> {args.out}")
    else:
        rep.results["scx"] = text
        rep.lines.append(text.rstrip("\n"))


def _info(args, rep: Report):
    c = parse_scx(_read(args.file))
    cen = census(c)
    rep.results = {"name": c.name, "dim": c.dim, "f_vector": list(cen.f_vector),
                   "euler": cen.euler_characteristic, "connected": cen.connected,
                   "facets": len(c.facets())}
    rep.lines += [f"name: {c.name or '(none)'}", f"dimension: {c.dim}",
                  f"f-vector: {list(cen.f_vector)}", f"euler characteristic: {cen.euler_characteristic}",
                  f"connected: {cen.connected}", f"facets: {len(c.facets())}"]


def _check(args, rep: Report):
    c = parse_scx(_read(args.file))
    kind = args.kind
    if kind == "free-faces":
        pairs = free_faces(c)
        rep.results = {"count": len(pairs), "pairs": [_pair_doc(c, p) for p in pairs]}
        rep.lines.append(f"free faces: {len(pairs)}")
        rep.lines += [f"  {c.format_simplex(p.free_face)} in {c.format_simplex(p.coface)}" for p in pairs]

    elif kind == "collapse":
        out = None
        if not args.exhaustive:
            out = greedy_collapse(c, "lex")
        if out is None or not out.collapsible:
            out = exhaustive_collapse(c, args.budget)
        rep.results = {"status": out.status.value, "nodes": out.nodes}
        rep.lines.append(f"collapse: {out.status.value} ({out.nodes} search nodes)")
        if out.collapsible:
            pairs = out.sequence.pairs
            rep.results["sequence"] = [_pair_doc(c, p) for p in pairs]
            rep.results["terminal"] = _labels(c, out.sequence.terminal.vertices)
            rep.lines.append(f"  {len(pairs)} elementary collapses to "
                             f"{c.label(out.sequence.terminal.vertices[0])}")
        rep.exit_code = 0 if out.definitive else 1

    elif kind == "star-disk":
        report = star_disk_report(c)
        fails = report.failures()
        rep.results = {
            "all_hold": report.all_hold,
            "failing_points": [c.format_simplex(r.point) for r in fails],
            "failures": [{"point": c.format_simplex(r.point),
                          "failing_simplices": [c.format_simplex(s) for s in r.failing_simplices]}
                         for r in fails],
        }
        if report.all_hold:
            rep.lines.append("star-disk property holds at every point")
        else:
            rep.lines.append("star-disk property fails at: "
                             + ", ".join(c.format_simplex(r.point) for r in fails))
            for r in fails:
                rep.lines.append(f"  {c.format_simplex(r.point)}: "
                                 + ", ".join(c.format_simplex(s) for s in r.failing_simplices))

    elif kind == "homology":
        h = homology(c)
        rep.results = {"betti": list(h.betti), "torsion": [list(t) for t in h.torsion],
                       "groups": h.as_groups(), "trivial": h.is_trivial()}
        for d, g in enumerate(h.as_groups()):
            rep.lines.append(f"reduced H_{d} = {g}")

    elif kind == "pi1":
        raw = pi1_presentation(c)
        simple, verdict = simplify_presentation(raw)
        rep.results = {"generators": len(raw.generators), "relators": len(raw.relators),
                       "simplified": str(simple), "verdict": verdict.value}
        rep.lines += [f"edge-path presentation: {len(raw.generators)} generators, "
                      f"{len(raw.relators)} relators",
                      f"simplified: {simple}", f"pi_1: {verdict.value}"]
        rep.exit_code = 1 if verdict is Pi1Verdict.UNKNOWN else 0

    elif kind == "verdict":
        v = coalescence_verdict(c, Budgets(collapse_nodes=args.budget, seed=args.seed))
        rep.results = {
            "conclusion": v.conclusion.value,
            "star_disk_all": v.star_disk_all,
            "free_faces": v.free_face_count,
            "collapsible": v.collapsible,
            "contractible_evidence": v.contractible_evidence.value,
            "opening_time_positive": v.opening_time_positive,
            "notes": list(v.notes),
        }
        rep.lines += [f"verdict: {v.conclusion.value}",
                      f"  star-disk everywhere: {v.star_disk_all}",
                      f"  free faces: {v.free_face_count}",
                      f"  collapsible: {v.collapsible}",
                      f"  contractibility evidence: {v.contractible_evidence.value}"]
        rep.lines += [f"  note: {n}" for n in v.notes]
        rep.exit_code = 1 if v.conclusion is Conclusion.INCONCLUSIVE else 0


def _witness(args, rep: Report):
    if args.action == "build":
        c = parse_scx(_read(args.file))
        answer, seq = search_collapse(c, Budgets(collapse_nodes=args.budget, seed=args.seed))
        if answer != "yes":
            rep.results = {"collapsible": answer}
            rep.lines.append(f"no witness: collapse search answered {answer!r}")
            rep.exit_code = 1
            return
        h = witness_from_collapse(c, seq)
        doc = witness_document(h, args.points, args.times, args.seed)
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        rep.results = {"stages": h.m, "terminal": c.label(h.terminal),
                       "opening_time": format_rational(opening_time(h))}
        if args.out:
            _write(args.out, text)
            rep.results["out"] = args.out
        else:
            rep.results["witness"] = doc
        rep.lines.append(f"witness: {h.m} stages, terminal {c.label(h.terminal)}, "
                         f"opening time {format_rational(opening_time(h))}"
                         + (f" -> {args.out}" if args.out else ""))
        if not args.out:
            rep.lines.append(text.rstrip("\n"))
        return

    try:
        doc = json.loads(_read(args.file))
    except json.JSONDecodeError as err:
        raise ParseError(f"witness is not valid JSON: {err.msg}", err.lineno) from err
    if not isinstance(doc, dict):
        raise ParseError("witness must be a JSON object")
    check = verify_witness(doc, args.pairs, args.times, args.seed)
    rep.results = {"ok": check.ok, "problems": list(check.problems), "stages": check.stages}
    if check.audit is not None:
        rep.results["pairs_checked"] = check.audit.pairs_checked
    rep.lines.append("witness verified" if check.ok else "witness REJECTED")
    rep.lines += [f"  {p}" for p in check.problems]
    rep.exit_code = 0 if check.ok else 1


def _degree(args, rep: Report):
    try:
        images = tuple(int(x) for x in args.images.replace(",", " ").split())
    except ValueError as err:
        raise ParseError(f"map must be a list of integers: {args.images!r}") from err
    m = CycleMap(args.cycle, images)
    deg = circle_degree(m, strict=args.strict)
    disp = max_displacement(m)
    rep.results = {"degree": deg, "simplicial": m.is_simplicial,
                   "max_displacement": format_rational(disp)}
    rep.lines.append(f"degree {deg} (simplicial: {m.is_simplicial}, "
                     f"max displacement {format_rational(disp)})")


COMMANDS = {"build": _build, "info": _info, "check": _check, "witness": _witness, "degree": _degree}


def run(argv) -> Report:
    argv = list(argv)
    rep = Report(command=argv, as_json="--json" in argv)
    try:
        args = _parser().parse_args(argv)
        COMMANDS[args.cmd](args, rep)
    except TopologyError as err:
        rep.results = {"error": {"code": err.code, "message": str(err)}}
        rep.lines = [f"error [{err.code}]: {err}"]
        rep.exit_code = 2
    except ValueError as err:
        rep.results = {"error": {"code": "invalid-input", "message": str(err)}}
        rep.lines = [f"error [invalid-input]: {err}"]
        rep.exit_code = 2
    return rep


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        try:
            _parser().parse_args(argv)
        except SystemExit as done:
            return int(done.code or 0)
    rep = run(argv)
    out = sys.stdout if rep.exit_code != 2 or rep.as_json else sys.stderr
    print(rep.render(), file=out)
    return rep.exit_code
