"""Command line interface: ``vkparity <command> ...``.

Exit codes: 0 success, 1 input error, 2 property violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib.resources import files

from .gauss import GaussDiagram, GaussError, emit_gauss_code, load_corpus_text, parse_gauss_code

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- corpus --------------------------------------------------------------------

def bundled_corpus_text() -> str:
    return files("vkparity").joinpath("data/corpus.tsv").read_text(encoding="utf-8")


def corpus_load(path=None) -> dict:
    """name -> diagram, from a TSV file or the bundled corpus."""
    if path is None:
        return load_corpus_text(bundled_corpus_text())
    with open(path, encoding="utf-8") as fh:
        return load_corpus_text(fh.read())


def resolve(name: str, corpus: dict) -> GaussDiagram:
    if name in corpus:
        return corpus[name]
    try:
        return parse_gauss_code(name)
    except GaussError as exc:
        raise InputError(f"{name!r} is neither a corpus name nor a Gauss code ({exc})") from None


# -- helpers -----------------------------------------------------------------------

def _num(x):
    """Plain ints for Z, strings otherwise."""
    return int(x) if x.group.free_rank == 1 and not x.group.torsion else str(x)


def _dump(obj, out):
    json.dump(obj, out, indent=2, ensure_ascii=False, sort_keys=False)
    out.write("\n")


def invariants(d: GaussDiagram) -> dict:
    from .derived import derived_series
    from .groups import render_groupring
    from .parity import GP, IP, linking_invariant
    from .surface import pairing_matrix
    gp, ip = GP.values(d), IP.values(d)
    out = {
        "code": emit_gauss_code(d),
        "writhe": d.writhe,
        "signs": {str(v): d.signs[v] for v in d.labels},
        "gp": {str(v): _num(gp[v]) for v in d.labels},
        "ip": {str(v): _num(ip[v]) for v in d.labels},
        "almost_classical": all(x.is_zero() for x in ip.values()),
    }
    if len(d.components) == 1 and not d.long:
        step = derived_series(d, max_n=2).steps[0]
        out["sigma"] = _num(step.sigma)
        out["lk"] = _num(linking_invariant(d, IP))
        out["LK"] = out["lk_poly"] = render_groupring(step.lk_poly)
    pm = pairing_matrix(d.closure() if d.long else d)
    out["pairing_matrix"] = {"basis": [f"{k}:{v}" for k, v in pm.basis],
                             "entries": [list(r) for r in pm.entries]}
    return out


def derived_table(d: GaussDiagram, max_n: int) -> dict:
    from .derived import derived_series
    from .groups import render_groupring
    rep = derived_series(d, max_n=max_n)
    rows = [{"n": s.n, "group": str(s.group), "sigma": str(s.sigma),
             "LK": render_groupring(s.lk_poly),
             "p": [str(x) for x in s.values(d.labels)]} for s in rep.steps]
    return {"rows": rows, "classification": rep.classification,
            "evidence": {k: v for k, v in rep.evidence.items()}}


def _markdown(table: dict) -> str:
    lines = ["| n | A_n | sigma_n | LK_n | p_n |", "|---|---|---|---|---|"]
    for r in table["rows"]:
        lines.append(f"| {r['n']} | {r['group']} | {r['sigma']} | {r['LK']} | ({', '.join(r['p'])}) |")
    lines.append("")
    lines.append(f"classification: {table['classification']} {table['evidence']}")
    return "\n".join(lines) + "\n"


def verify(d: GaussDiagram, moves: int, seed: int, allowed, cap: int) -> dict:
    """Axioms of gp and ip and constancy of sigma, lk, LK along a walk."""
    from .derived import derived_series
    from .moves import random_walk
    from .parity import GP, IP, verify_parity_axioms
    walk = random_walk(d, moves, seed=seed, allowed=allowed, cap=cap)
    report = {}
    for rule in (GP, IP):
        rep = verify_parity_axioms(rule, walk)
        report[rule.name] = {k: [repr(x) for x in v] for k, v in rep.items() if v}
    if len(d.components) == 1 and not d.long:
        seen = set()
        for dd in walk.diagrams:
            s = derived_series(dd, max_n=2).steps[0]
            seen.add((s.sigma, s.lk_poly))
        if len(seen) != 1:
            report["invariants"] = {"changed": [repr(x) for x in seen]}
    return {"moves": len(walk.records), "violations": {k: v for k, v in report.items() if v}}


# -- commands ----------------------------------------------------------------------

def cmd_corpus(args, corpus, out):
    for name, d in corpus.items():
        out.write(f"{name}\t{emit_gauss_code(d)}\n")
    return EXIT_OK


def cmd_parse(args, corpus, out):
    from .surface import genus
    d = resolve(args.diagram, corpus)
    info = {"code": emit_gauss_code(d), "kind": d.kind, "chords": d.n,
            "components": len(d.components), "signs": {str(v): d.signs[v] for v in d.labels}}
    if not d.flat:
        info["writhe"] = d.writhe
    if not d.long:
        info["genus"] = genus(d)
    _dump(info, out)
    return EXIT_OK


def cmd_invariants(args, corpus, out):
    _dump(invariants(resolve(args.diagram, corpus)), out)
    return EXIT_OK


def cmd_pairing(args, corpus, out):
    from .surface import pairing_matrix
    d = resolve(args.diagram, corpus)
    pm = pairing_matrix(d.closure() if d.long else d)
    names = [f"{k}:{v}" for k, v in pm.basis]
    if args.format == "json":
        _dump({"basis": names, "entries": [list(r) for r in pm.entries]}, out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + names)
        for name, row in zip(names, pm.entries):
            w.writerow([name] + list(row))
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_derived(args, corpus, out):
    d = resolve(args.diagram, corpus)
    if len(d.components) != 1 or d.long or d.flat:
        raise InputError("derived parities need a closed signed knot")
    table = derived_table(d, args.max_n)
    if args.format == "json":
        _dump(table, out)
    else:
        out.write(_markdown(table))
    return EXIT_OK


def cmd_verify(args, corpus, out):
    d = resolve(args.diagram, corpus)
    allowed = tuple(x.strip() for x in args.allowed.split(",") if x.strip())
    if not allowed or set(allowed) - {"r1", "r2", "r3"}:
        raise InputError(f"bad --allowed {args.allowed!r}")
    rep = verify(d, args.moves, args.seed, allowed, args.cap)
    _dump(rep, out)
    return EXIT_VIOLATION if rep["violations"] else EXIT_OK


def cmd_biquandle(args, corpus, out):
    from .biquandle import (B3, B3_THETA, Z3, check_axioms, colorings, index_conditions_check,
                            is_one_cocycle, read_biquandle, read_cocycle)
    from .groups import Z, parse_group
    if args.table:
        with open(args.table, encoding="utf-8") as fh:
            b = read_biquandle(fh.read())
    else:
        b = B3
    axioms = check_axioms(b)
    rep = {"size": b.m, "axioms": {k: len(v) for k, v in axioms.items()}}
    ok = not any(axioms.values())
    cocycle = args.cocycle
    if cocycle is None and not args.table:
        cocycle = " ".join(map(str, B3_THETA))
    if cocycle:
        group = parse_group(args.group) if args.group else (Z if args.table else Z3)
        theta = read_cocycle(cocycle, group)
        rep["one_cocycle"] = is_one_cocycle(b, theta, group)
        rep["index_conditions_failures"] = len(index_conditions_check(b, theta, group))
        ok &= rep["one_cocycle"]
    if args.diagram and ok:
        d = resolve(args.diagram, corpus)
        rep["colorings"] = len(colorings(d, b))
    _dump(rep, out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _pi_choice(name: str):
    from .groups import Z
    from .parity import GP, parity_cycle_of_rule, quasi_index_of_cycle
    if name == "one":
        return (lambda d: {v: Z(1) for v in d.labels}), Z
    if name == "zero":
        return (lambda d: {v: Z(0) for v in d.labels}), Z
    if name == "gp":
        return (lambda d: quasi_index_of_cycle(d, parity_cycle_of_rule(GP, d)).values), GP.group
    raise InputError(f"unknown quasi-index {name!r}")


def cmd_functor(args, corpus, out):
    from .functors import monodromy_search, quasiindex_functor
    d = resolve(args.diagram, corpus)
    if len(d.components) != 1 or d.long or d.flat:
        raise InputError("functors need a closed signed knot")
    pi, group = _pi_choice(args.pi)
    if args.action == "eval":
        F = quasiindex_functor(pi, d, group)
        vals = F.values(d)
        pairs = {}
        for v in d.labels:
            x, y = F.split(vals[v])
            pairs[str(v)] = [str(x), y]
        _dump({"quasi_index": args.pi, "group": f"{F.abar}+Z", "sigma": str(F.sigma),
               "values": pairs}, out)
    else:
        found = monodromy_search(pi, d, group, depth=args.depth, seed=args.seed, width=args.width)
        _dump({"quasi_index": args.pi, "group": str(group),
               "deltas": sorted(str(x) for x in found)}, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vkparity", description="Parity invariants of virtual knots.")
    p.add_argument("--corpus", help="TSV corpus file (default: bundled)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("corpus", help="list corpus entries")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("parse", help="validate and normalize a Gauss code")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("invariants", help="JSON invariants of a diagram")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("pairing-matrix", help="intersection matrix of the half basis")
    s.add_argument("diagram")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_pairing)

    s = sub.add_parser("derived", help="derived parity series")
    s.add_argument("diagram")
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_derived)

    s = sub.add_parser("verify", help="check axioms along a random move walk")
    s.add_argument("diagram")
    s.add_argument("--moves", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--allowed", default="r1,r2,r3")
    s.add_argument("--cap", type=int, default=16)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("biquandle", help="check a finite biquandle and a 1-cocycle")
    s.add_argument("table", nargs="?", help="table file (default: the 3-element example)")
    s.add_argument("--cocycle", help="values theta(1) ... theta(m) (default with the "
                   "bundled table: 0 1 -1)")
    s.add_argument("--group", help="coefficient group, e.g. Z or Z_3 (default Z_3 for the "
                   "bundled table, Z otherwise)")
    s.add_argument("--diagram", help="count colourings of this diagram")
    s.set_defaults(func=cmd_biquandle)

    s = sub.add_parser("functor", help="quasi-index functor values or monodromy")
    s.add_argument("action", choices=("eval", "monodromy"))
    s.add_argument("diagram")
    s.add_argument("--pi", default="one", help="one, zero or gp")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--width", type=int, default=40)
    s.set_defaults(func=cmd_functor)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        corpus = corpus_load(args.corpus)
        return args.func(args, corpus, out)
    except (InputError, GaussError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
