"""Command line: ``parabolica build|verify|decide|check-grid``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .arrangements import build_k_parabolic, intersection_lattice
from .complex import DEFAULT_CELL_CAP, CellCapExceeded, build_q_graph, build_two_complex
from .coxeter import CoxeterError, CoxeterSystem, build_system, read_matrix_file
from .homotopy import decide_homotopic, pi1_presentation
from .loops import HomotopyGrid, LoopError, QLoop, loop_of_word, verify_grid
from .presentation import DEFAULT_COSET_CAP
from .suites import (FAIL, PASS, SUITES, ResourceCap, SuiteOptions, overall_status, run_suite)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
SCHEMA_VERSION = 1
EMITS = ("arrangement", "lattice", "graph", "presentation")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _system(args) -> CoxeterSystem:
    if bool(args.type) == bool(args.matrix_file):
        raise UsageError("give exactly one of --type or --matrix-file")
    if args.type:
        return build_system(args.type)
    return build_system(read_matrix_file(args.matrix_file))


def _out_dir(args) -> Path:
    out = Path(os.environ.get("PARABOLICA_OUT") or args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- build ----------------------------------------------------------------------------

def cmd_build(args) -> int:
    system = _system(args)
    n = system.rank
    k = args.k if args.k is not None else 3
    if not 2 <= k <= n + 1:
        raise UsageError(f"--k must lie in 2..{n + 1}")
    q = max(0, n - k + 1)
    out = _out_dir(args)
    emits = args.emit or list(EMITS)
    stem = f"{system.label}_k{k}".replace("(", "").replace(")", "")
    for what in emits:
        if what == "arrangement":
            A = build_k_parabolic(system, k)
            path = out / f"{stem}_arrangement.json"
            path.write_text(_dump(A.to_json()))
            print(f"arrangement {A.label}: {len(A)} subspaces -> {path}")
        elif what == "lattice":
            Lt = intersection_lattice(build_k_parabolic(system, k))
            path = out / f"{stem}_lattice.json"
            path.write_text(_dump(Lt.to_json()))
            print(f"lattice: {len(Lt)} elements -> {path}")
        elif what == "graph":
            Gq = build_q_graph(system, q)
            path = out / f"{stem}_gamma{q}.dot"
            path.write_text(Gq.to_dot())
            print(f"graph Gamma^{q}: {Gq.num_vertices} nodes, {Gq.num_edges} edges -> {path}")
        elif what == "presentation":
            X = build_two_complex(system, q, args.cell_cap)
            P = pi1_presentation(X)
            path = out / f"{stem}_pi1.txt"
            path.write_text(P.to_text())
            print(f"presentation: {P.num_generators} generators, {len(P.relators)} relators -> {path}")
    return EXIT_OK


# -- verify ---------------------------------------------------------------------------

def _suite_job(payload):
    label, matrix, name, opt = payload
    system = build_system(label) if label else build_system(matrix)
    return run_suite(name, system, opt)


def cmd_verify(args) -> int:
    system = _system(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    opt = SuiteOptions(args.k, args.cell_cap, args.coset_cap, args.samples, args.seed)
    matrix = None if args.type else [list(r) for r in system.matrix]
    jobs = [(args.type, matrix, name, opt) for name in names]
    try:
        if args.parallel and len(jobs) > 1:
            with ProcessPoolExecutor() as ex:
                results = list(ex.map(_suite_job, jobs))
        else:
            results = [_suite_job(j) for j in jobs]
    except ResourceCap as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    records = [r for group in results for r in group]
    status = overall_status(records)
    report = {
        "schema_version": SCHEMA_VERSION,
        "system": system.label,
        "matrix": [[str(x) for x in row] for row in system.matrix],
        "suites": names,
        "options": {"k": args.k, "cell_cap": args.cell_cap, "coset_cap": args.coset_cap,
                    "samples": args.samples, "seed": args.seed},
        "records": [r.to_json() for r in records],
        "overall": status,
    }
    out = _out_dir(args)
    (out / "report.json").write_text(_dump(report))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "runtime_s"])
    for r in records:
        w.writerow([r.name, r.status, f"{r.runtime:.4f}"])
    (out / "timings.csv").write_text(buf.getvalue())
    for r in records:
        print(f"[{r.status.upper():>12}] {r.name}: {json.dumps(r.computed, sort_keys=True)}")
    print(f"overall: {status} (report in {out / 'report.json'})")
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL}.get(status, EXIT_INCONCLUSIVE)


# -- decide ---------------------------------------------------------------------------

def _read_loop(system: CoxeterSystem, word: Optional[str], path: Optional[str]) -> QLoop:
    if word is not None:
        try:
            w = system.parse_word(word)
        except CoxeterError as e:
            raise LoopError(f"word {word!r}: {e}") from None
        chain = loop_of_word(system, w)
        if not chain.is_loop:
            raise LoopError(f"word {word!r} is not the identity in {system.label}, so its gallery is not a loop")
        return chain
    lines = Path(path).read_text().splitlines()
    tokens = []
    for lineno, ln in enumerate(lines, start=1):
        body = ln.split("#")[0].replace(",", " ")
        for tok in body.split():
            tokens.append((lineno, tok))
    if not tokens:
        raise LoopError(f"{path}: no chambers")
    cd = system.cayley
    ch = []
    for lineno, tok in tokens:
        try:
            ch.append(cd.evaluate(system.parse_word(tok)))
        except CoxeterError as e:
            raise LoopError(f"{path}:{lineno}: chamber {tok!r}: {e}") from None
    try:
        return QLoop(system, system.rank - 2, tuple(ch))
    except LoopError as e:
        raise LoopError(f"{path}: {e}") from None


def cmd_decide(args) -> int:
    system = _system(args)
    if (args.word1 is None) == (args.loop1 is None) or (args.word2 is None) == (args.loop2 is None):
        raise UsageError("give each loop as either --word1/--word2 or --loop1/--loop2")
    try:
        l1 = _read_loop(system, args.word1, args.loop1)
        l2 = _read_loop(system, args.word2, args.loop2)
    except (LoopError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    v = decide_homotopic(l1, l2)
    out = _out_dir(args)
    fmt = system.format_word
    verdict = {
        "schema_version": SCHEMA_VERSION,
        "system": system.label,
        "loop1": l1.words(),
        "loop2": l2.words(),
        "equivalent": v.equivalent,
        "normal_forms": [fmt(v.normal_forms[0]), fmt(v.normal_forms[1])],
    }
    if v.equivalent:
        cert = v.certificate
        path = out / "certificate.csv"
        path.write_text(f"# q={cert.grid.q} system={system.label}\n" + cert.grid.to_csv())
        (out / "moves.txt").write_text("".join(f"{m}\n" for m in cert.script.moves))
        verdict["certificate"] = {"grid": path.name, "rows": len(cert.grid.rows),
                                  "moves": cert.script.counts()}
        print(f"equivalent; certificate grid {cert.grid.shape[0]}x{cert.grid.shape[1]} -> {path}")
    else:
        print(f"not equivalent; W' normal forms {verdict['normal_forms'][0]} vs {verdict['normal_forms'][1]}")
    (out / "verdict.json").write_text(_dump(verdict))
    return EXIT_OK


def read_grid(system: CoxeterSystem, path: str) -> HomotopyGrid:
    q = system.rank - 2
    cd = system.cayley
    rows = []
    for lineno, ln in enumerate(Path(path).read_text().splitlines(), start=1):
        if ln.startswith("#"):
            for part in ln[1:].split():
                if part.startswith("q="):
                    q = int(part[2:])
            continue
        if not ln.strip():
            continue
        row = []
        for col, tok in enumerate(ln.split(","), start=1):
            try:
                row.append(cd.evaluate(system.parse_word(tok.strip())))
            except CoxeterError as e:
                raise LoopError(f"{path}:{lineno}: column {col}: {e}") from None
        rows.append(tuple(row))
    return HomotopyGrid(system, q, tuple(rows))


def cmd_check_grid(args) -> int:
    system = _system(args)
    try:
        grid = read_grid(system, args.grid)
    except (LoopError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    chk = verify_grid(grid, 0)
    if chk:
        print(f"valid {grid.q}-homotopy grid ({grid.shape[0]}x{grid.shape[1]})")
        return EXIT_OK
    print(f"invalid grid at row {chk.cell[0]}, column {chk.cell[1]}: {chk.reason}")
    return EXIT_FAIL


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parabolica",
                                description="Parabolic arrangements and discrete homotopy of Coxeter complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", help="Coxeter type such as A3, B3, D4, H3, I2(5)")
        sp.add_argument("--matrix-file", help="plain-text Coxeter matrix (first line n, 'inf' for infinity)")
        sp.add_argument("--out", default="parabolica_out", help="output directory (PARABOLICA_OUT overrides)")
        sp.add_argument("--cell-cap", type=_positive, default=DEFAULT_CELL_CAP)
        sp.add_argument("--coset-cap", type=_positive, default=DEFAULT_COSET_CAP)

    b = sub.add_parser("build", help="write arrangement/lattice JSON, Gamma^q DOT and pi_1 presentation")
    common(b)
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--emit", action="append", choices=EMITS)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run verification suites and write report.json")
    common(v)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    v.add_argument("--parallel", action="store_true")
    v.add_argument("--samples", type=_positive, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decide", help="decide whether two (n-2)-loops are homotopic")
    common(d)
    d.add_argument("--word1")
    d.add_argument("--word2")
    d.add_argument("--loop1", help="file of chambers (canonical words) separated by spaces, commas or newlines")
    d.add_argument("--loop2")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("check-grid", help="re-validate a certificate grid CSV")
    common(c)
    c.add_argument("--grid", required=True)
    c.set_defaults(func=cmd_check_grid)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, CoxeterError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CellCapExceeded, ResourceCap) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
