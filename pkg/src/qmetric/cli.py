"""Command-line front-end: ``qmetric <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .classifier import (Classification, Kind, SurveyConfig, SurveyResult, SurveyRow, classify,
                         enumerate_vertex_transitive, graph_name, homogeneous_spaces, replay_check,
                         survey)
from .diagrams import FC, TL, gram_rank, quantum_vs_classical
from .permgroup import (PermutationGroup, automorphism_group, cycle_notation, orbit_count_on_tuples,
                        symmetric_group)
from .space import (ColoredSpace, SpaceFormatError, build_simplex_product, canonical_form,
                    format_space, graph_canonical_form, parse_space, validate_metric)
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qmetric", description="Classify colored complete graphs, compute diagram ranks, run exact checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    c = sub.add_parser("classify", help="classify a space read from a file")
    c.add_argument("--input", required=True, help="distance or letter matrix file")
    c.add_argument("--check-triangle", action="store_true", help="warn about triangle-inequality violations")
    c.add_argument("--autgroup", action="store_true", help="report the classical automorphism group")
    c.add_argument("--replay-check", action="store_true", help="exit 1 if the trace does not replay")
    c.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("enumerate-vt", help="census of vertex-transitive graphs")
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("survey", help="classify all or sampled colored spaces on n points")
    s.add_argument("--n", type=int, required=True)
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="K")
    mode.add_argument("--homogeneous", action="store_true", help="only spaces with a transitive group")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--format", choices=("text", "json"), default="text")

    d = sub.add_parser("dims", help="Gram ranks of diagram spaces")
    d.add_argument("--family", choices=("tl", "fc"), required=True)
    d.add_argument("--param", type=int, help="n for tl")
    d.add_argument("--params", help="m,s for fc")
    d.add_argument("--max-k", type=int, required=True)
    d.add_argument("--classical", action="store_true", help="compare with classical orbit counts")
    d.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="run exact verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), required=True)
    v.add_argument("--format", choices=("text", "json"), default="text")
    return p


# -- classify ---------------------------------------------------------------

def _group_json(G: PermutationGroup) -> dict:
    return {"order": G.order,
            "generators": [cycle_notation(g) for g in G.generators],
            "orbits": [list(o) for o in G.orbits()]}


def classification_json(c: Classification) -> dict:
    return {"kind": c.kind.value, "params": c.params_json()}


def _cmd_classify(args, out: TextIO, err: TextIO) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    try:
        s = parse_space(text)
    except SpaceFormatError as exc:
        raise UsageError(f"{args.input}: {exc}") from exc
    warnings = None
    if args.check_triangle:
        if s.values is None:
            raise UsageError("--check-triangle needs numeric distances, not a letter matrix")
        warnings = validate_metric(s)
        for w in warnings:
            err.write(f"warning: {w}\n")
    c = classify(s)
    report = {"n": s.n, "colors": s.num_colors, "classification": classification_json(c),
              "trace": [st.to_json() for st in c.trace]}
    if args.autgroup:
        report["autgroup"] = _group_json(c.group if c.group is not None else automorphism_group(s))
    if warnings is not None:
        report["triangle_warnings"] = warnings
    status = 0
    if args.replay_check:
        ok = replay_check(s, c)
        report["replay_check"] = "pass" if ok else "fail"
        status = 0 if ok else 1
    if args.format == "json":
        out.write(_dump(report))
    else:
        out.write(format_space(s, void=True))
        out.write(f"points: {s.n}  colors: {s.num_colors}\n")
        out.write(f"kind: {c.kind.value}\n")
        out.write(f"params: {json.dumps(c.params_json())}\n")
        for st in c.trace:
            line = f"  {st.rule}: {st.outcome}"
            if st.witness is not None and st.witness.detail:
                line += f"  ({st.witness.detail})"
            out.write(line + "\n")
        if args.autgroup:
            g = report["autgroup"]
            out.write(f"autgroup: order {g['order']}  generators {' '.join(g['generators']) or '()'}  "
                      f"orbits {g['orbits']}\n")
        if args.replay_check:
            out.write(f"replay check: {report['replay_check']}\n")
    return status


# -- enumerate-vt -----------------------------------------------------------

def _cmd_enumerate(args, out: TextIO, err: TextIO) -> int:
    if not 1 <= args.max_n <= 8:
        raise UsageError("--max-n must be between 1 and 8")
    census = enumerate_vertex_transitive(args.max_n)
    if args.format == "json":
        out.write(_dump({"counts": {str(n): len(gs) for n, gs in census.items()},
                         "total": sum(len(gs) for gs in census.values()),
                         "graphs": {str(n): [{"name": graph_name(g), "edges": len(g.edges),
                                              "key": graph_canonical_form(g).hex()} for g in gs]
                                    for n, gs in census.items()}}))
        return 0
    for n, gs in census.items():
        out.write(f"n={n} count={len(gs)}: {', '.join(graph_name(g) for g in gs)}\n")
    out.write(f"total={sum(len(gs) for gs in census.values())}\n")
    return 0


# -- survey -----------------------------------------------------------------

def survey_json(r: SurveyResult, mode: str) -> dict:
    return {
        "n": r.config.n,
        "mode": mode,
        "seed": None if mode != "sample" else r.config.seed,
        "labeled": r.labeled,
        "classes": [{"key": row.key.hex(), "kind": row.classification.kind.value,
                     "params": row.classification.params_json(), "draws": row.draws} for row in r.rows],
        "tally": r.tally(),
    }


def survey_text(doc: dict) -> str:
    lines = [f"survey n={doc['n']} mode={doc['mode']} seed={doc['seed']} labeled={doc['labeled']} "
             f"classes={len(doc['classes'])}"]
    for row in doc["classes"]:
        lines.append(f"{row['key']} {row['kind']} draws={row['draws']} "
                     f"params={json.dumps(row['params'], separators=(',', ':'))}")
    lines.append("tally " + " ".join(f"{k}={v}" for k, v in doc["tally"].items()))
    return "\n".join(lines) + "\n"


def parse_survey_text(text: str) -> dict:
    """Inverse of :func:`survey_text`."""
    head, *body, tail = text.strip("\n").split("\n")
    fields = dict(tok.split("=", 1) for tok in head.split()[1:])
    classes = []
    for line in body:
        key, kind, draws, params = line.split(" ", 3)
        classes.append({"key": key, "kind": kind, "draws": int(draws.removeprefix("draws=")),
                        "params": json.loads(params.removeprefix("params="))})
    tally = {k: int(v) for k, v in (tok.split("=") for tok in tail.split()[1:])}
    if int(fields["classes"]) != len(classes):
        raise ValueError("class count does not match the listed rows")
    seed = None if fields["seed"] == "None" else int(fields["seed"])
    return {"n": int(fields["n"]), "mode": fields["mode"], "seed": seed,
            "labeled": int(fields["labeled"]), "classes": classes, "tally": tally}


def _homogeneous_survey(n: int) -> SurveyResult:
    cfg = SurveyConfig(n, exhaustive=True)
    rows = [SurveyRow(canonical_form(s), classify(s)) for s in homogeneous_spaces(n)]
    rows.sort(key=lambda r: r.key)
    return SurveyResult(cfg, rows, len(rows))


def _cmd_survey(args, out: TextIO, err: TextIO) -> int:
    n = args.n
    if args.exhaustive:
        if not 1 <= n <= 5:
            raise UsageError("--exhaustive supports 1 <= n <= 5")
        mode, r = "exhaustive", survey(SurveyConfig(n, exhaustive=True))
    elif args.homogeneous:
        if not 1 <= n <= 7:
            raise UsageError("--homogeneous supports 1 <= n <= 7")
        mode, r = "homogeneous", _homogeneous_survey(n)
    else:
        if args.seed is None:
            raise UsageError("--sample needs an explicit --seed")
        if not 1 <= n <= 7 or args.sample < 1:
            raise UsageError("--sample needs K >= 1 and 1 <= n <= 7")
        mode, r = "sample", survey(SurveyConfig(n, exhaustive=False, samples=args.sample, seed=args.seed))
    doc = survey_json(r, mode)
    out.write(_dump(doc) if args.format == "json" else survey_text(doc))
    undetermined = doc["tally"][Kind.UNDETERMINED.value]
    if undetermined:
        err.write(f"{undetermined} classes left undetermined\n")
        return 1
    return 0


# -- dims -------------------------------------------------------------------

def _family(args):
    if args.family == "tl":
        if args.param is None or args.params is not None:
            raise UsageError("--family tl takes --param n")
        if args.param < 1:
            raise UsageError("n must be positive")
        fam = TL(args.param)
        space = ColoredSpace.simplex(args.param)
    else:
        if args.params is None or args.param is not None:
            raise UsageError("--family fc takes --params m,s")
        try:
            m, s = (int(x) for x in args.params.split(","))
        except ValueError as exc:
            raise UsageError("--params must look like m,s") from exc
        if m < 2 or s < 2:
            raise UsageError("m and s must both be at least 2")
        fam = FC(m, s)
        space = build_simplex_product(m, s, 2, 1)
    if not 0 <= args.max_k <= fam.max_k:
        raise UsageError(f"--max-k must be between 0 and {fam.max_k} for {fam}")
    return fam, space


def _cmd_dims(args, out: TextIO, err: TextIO) -> int:
    fam, space = _family(args)
    ks = range(args.max_k + 1)
    if args.classical:
        G = symmetric_group(space.n) if isinstance(fam, TL) else automorphism_group(space)
        rows = quantum_vs_classical(fam, [orbit_count_on_tuples(G, k) for k in ks])
        data = [{"k": r.k, "diagrams": r.diagrams, "rank": r.rank, "classical": r.classical, "gap": r.gap}
                for r in rows]
    else:
        data = [{"k": k, "diagrams": len(fam.diagrams(k)), "rank": gram_rank(fam, k)} for k in ks]
    if args.format == "json":
        out.write(_dump({"family": str(fam), "rows": data}))
        return 0
    cols = list(data[0])
    out.write(f"{fam}\n")
    out.write("  ".join(f"{c:>9}" for c in cols) + "\n")
    for row in data:
        out.write("  ".join(f"{row[c]:>9}" for c in cols) + "\n")
    return 0


# -- verify -----------------------------------------------------------------

def _cmd_verify(args, out: TextIO, err: TextIO) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    report = {}
    for name in names:
        results = run_suite(name)
        report[name] = {"cases": len(results), "passed": sum(1 for _, r in results if r),
                        "failures": [{"case": label, "detail": r.detail} for label, r in results if not r]}
    ok = all(not r["failures"] for r in report.values())
    if args.format == "json":
        out.write(_dump({"suites": report, "ok": ok}))
    else:
        for name, r in report.items():
            status = "PASS" if not r["failures"] else "FAIL"
            out.write(f"{name}: {status} {r['passed']}/{r['cases']}\n")
            for f in r["failures"]:
                out.write(f"  {f['case']}: {f['detail']}\n")
    return 0 if ok else 1


_COMMANDS = {
    "classify": _cmd_classify,
    "enumerate-vt": _cmd_enumerate,
    "survey": _cmd_survey,
    "dims": _cmd_dims,
    "verify": _cmd_verify,
}


def run(argv: list[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
