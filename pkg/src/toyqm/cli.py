"""Command-line front end.

Exit codes: 0 success, 1 verification or domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import correspondence as corr
from . import f5qm, projective, spekkens, verify
from .correspondence import SCHEMA
from .errors import DomainError, UsageError
from .field import FieldElement
from .projective import BRAS, KETS, NAMES, Ket, canonicalize

SPACES = ("p1", "p3", "spekkens1", "spekkens2")


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.payload: dict | None = None

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def json(self, payload: dict) -> None:
        self.payload = payload

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=False) + "\n"
        return "\n".join(self.lines) + "\n"


def _vec(v) -> list[int]:
    return [c.value for c in v.components]


# -- tables ------------------------------------------------------------------


def cmd_tables(args, out: Output) -> int:
    table = projective.pairing_table()
    if out.fmt == "json":
        out.json({
            "schema": SCHEMA,
            "report": "tables",
            "kets": {n: _vec(KETS[n]) for n in NAMES},
            "bras": {n: _vec(BRAS[n]) for n in NAMES},
            "pairing": {r: {c: table[i][j] for j, c in enumerate(NAMES)} for i, r in enumerate(NAMES)},
            "observables": {
                name: [_bra_name(o.plus_bra), _bra_name(o.minus_bra)]
                for name, o in f5qm.OBSERVABLES.items()
            },
        })
        return 0
    out.line("Kets")
    for n in NAMES:
        out.line(f"  |{n}⟩ = {KETS[n]}")
    out.line("Bras")
    for n in NAMES:
        out.line(f"  ⟨{n}| = {BRAS[n]}")
    out.line("Pairing")
    out.line("      " + "".join(f"{'|' + c + '⟩':>5}" for c in NAMES))
    for i, r in enumerate(NAMES):
        if i and i % 2 == 0:
            out.line("")
        out.line(f"  ⟨{r}| " + "".join(f"{v:>5}" for v in table[i]))
    out.line("Observables")
    for name, o in f5qm.OBSERVABLES.items():
        out.line(f"  {name} = {{⟨{_bra_name(o.plus_bra)}|, ⟨{_bra_name(o.minus_bra)}|}}")
    return 0


def _bra_name(bra) -> str:
    return next(n for n in NAMES if BRAS[n] == bra)


# -- enumerate ---------------------------------------------------------------


def cmd_enumerate(args, out: Output) -> int:
    space = args.space
    items: list[dict] = []
    if space in ("p1", "p3"):
        states = projective.enumerate_states(2 if space == "p1" else 4)
        for s in states:
            kind = "product" if s.dim == 2 or projective.is_product(s) else "entangled"
            items.append({"state": str(s), "name": s.name, "kind": kind})
        n_prod = sum(1 for i in items if i["kind"] == "product")
        if space == "p1":
            summary = {"total": len(items)}
            text = f"{len(items)} total"
        else:
            summary = {"total": len(items), "product": n_prod, "entangled": len(items) - n_prod}
            text = f"{len(items)} total, {n_prod} product, {len(items) - n_prod} entangled"
    elif space == "spekkens1":
        for e in spekkens.epistemic_states():
            items.append({"state": str(e), "name": None, "kind": "epistemic"})
        summary = {"total": len(items)}
        text = f"{len(items)} total"
    else:
        products, entangled = spekkens.pair_states()
        items = [{"state": str(p), "name": None, "kind": "product"} for p in products]
        items += [{"state": str(e), "name": None, "kind": "entangled"} for e in entangled]
        summary = {"product": len(products), "entangled": len(entangled)}
        text = f"{len(products)} product, {len(entangled)} entangled"
    if out.fmt == "json":
        out.json({"schema": SCHEMA, "report": "enumerate", "space": space, "summary": summary, "states": items})
        return 0
    for i in items:
        extra = []
        if i["name"]:
            extra.append(i["name"])
        if space == "p3" or space == "spekkens2":
            extra.append(i["kind"])
        out.line(i["state"] + ("  " + " ".join(extra) if extra else ""))
    out.line(text)
    return 0


# -- verify ------------------------------------------------------------------


def cmd_verify(args, out: Output) -> int:
    names = args.suite or None
    if names:
        unknown = [n for n in names if n not in verify.SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    results = verify.run_all(names)
    ok = all(r.ok for r in results)
    if out.fmt == "json":
        out.json({
            "schema": SCHEMA,
            "report": "verify",
            "ok": ok,
            "suites": [r.to_dict() for r in results],
        })
    else:
        for r in results:
            status = "INFO" if r.informational else ("PASS" if r.ok else "FAIL")
            out.line(f"{status} {r.name} {r.passed}/{len(r.checks)}  [{r.citation}]")
            for c in r.failures():
                out.line(f"    {c.description}: expected {c.expected}, got {c.actual}")
            for note in r.notes:
                out.line(f"    {note}")
        failed = [r.name for r in results if not r.ok]
        out.line("all suites passed" if ok else f"{len(failed)} suite(s) failed: {', '.join(failed)}")
    return 0 if ok else 1


# -- classify ----------------------------------------------------------------


def cmd_classify(args, out: Output) -> int:
    report = corr.classify_all()
    if out.fmt == "json":
        out.json(report.to_dict())
        return 0
    for rec in report.records:
        flag = "true" if rec.matched else "false"
        parity = "odd" if rec.state.sign < 0 else "even"
        out.line(f"{rec.state} matched={flag} ({parity})")
        analogs = [s.label() for s in rec.analogs] or ["-"]
        grid = rec.state.grid()
        for k, row in enumerate(grid):
            side = ""
            if k == 0:
                side = "analogs: " + ", ".join(analogs)
            out.line(f"    {row}    {side}".rstrip())
        out.line("")
    s = report.summary()
    out.line(f"{s['matched']} matched, {s['unmatched']} unmatched")
    out.line(f"matched = odd permutations: {str(s['matched_are_odd_permutations']).lower()}")
    out.line(f"analogs per matched permutation: {', '.join(map(str, s['analogs_per_matched']))}")
    out.line(f"analog lists shared between permutations: {s['analog_overlaps']}")
    return 0


# -- simulate ----------------------------------------------------------------


def _parse_observables(text: str) -> list[spekkens.SpekkensObservable]:
    names = [t for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("no observables given")
    return [spekkens.observable(n) for n in names]


def cmd_simulate(args, out: Output) -> int:
    initial = spekkens.EpistemicState.parse(args.state)
    observables = _parse_observables(args.observables)
    result = spekkens.simulate_sequence(initial, observables, args.trials, args.seed)
    predictions = result.predictions()
    steps = []
    for k, o in enumerate(observables):
        freq = result.frequencies(k)
        steps.append({
            "step": k + 1,
            "observable": o.name,
            "counts": {"+1": result.counts[k][1], "-1": result.counts[k][-1]},
            "frequencies": {"+1": freq[1], "-1": freq[-1]},
            "exact": {"+1": str(predictions[k].p_plus), "-1": str(predictions[k].p_minus)},
            "repeat_frequency": result.repeat_frequency(k),
        })
    if out.fmt == "json":
        out.json({
            "schema": SCHEMA,
            "report": "simulate",
            "state": str(initial),
            "observables": [o.name for o in observables],
            "trials": args.trials,
            "seed": args.seed,
            "steps": steps,
        })
        return 0
    out.line(
        f"state {initial}  observables {','.join(o.name for o in observables)}  "
        f"trials {args.trials}  seed {args.seed}"
    )
    for st in steps:
        f, e = st["frequencies"], st["exact"]
        line = (
            f"step {st['step']} {st['observable']}: "
            f"+1 {f['+1']:.5f} -1 {f['-1']:.5f}  exact +1 {e['+1']} -1 {e['-1']}"
        )
        if st["repeat_frequency"] is not None:
            line += f"  same-as-previous {st['repeat_frequency']:.5f}"
        out.line(line)
    return 0


# -- superpose ---------------------------------------------------------------


def _coef_prefix(k: int, leading: bool) -> str:
    if k == 1:
        return "" if leading else "+"
    if k == -1:
        return "-"
    return str(k) if leading or k < 0 else f"+{k}"


def cmd_superpose(args, out: Output) -> int:
    if args.compare_sums:
        return _compare_sums(out)
    if args.left is None or args.variant is None or args.right is None:
        raise UsageError("superpose needs LEFT VARIANT RIGHT (or --compare-sums)")
    left = spekkens.EpistemicState.parse(args.left)
    right = spekkens.EpistemicState.parse(args.right)
    try:
        variant = int(args.variant)
    except ValueError:
        raise UsageError(f"variant must be 1..4, got {args.variant!r}") from None
    lam = corr.VARIANT_COEFFICIENTS.get(variant)
    if lam is None:
        raise UsageError(f"variant must be 1..4, got {args.variant!r}")
    raw = corr.raw_sum(left, variant, right)
    state = canonicalize(raw)
    result = corr.epistemic_of(state)
    n1, n2, n = corr.NAME_OF_EPISTEMIC[left], corr.NAME_OF_EPISTEMIC[right], state.name
    scale = next(c for c in raw if c)
    expr = f"|{n1}⟩{_coef_prefix(lam, False)}|{n2}⟩"
    rhs = f"{_coef_prefix(scale.value, True)}|{n}⟩"
    f5_text = f"{expr} = {rhs}" + ("" if scale == 1 else f" ≐ |{n}⟩")
    if out.fmt == "json":
        out.json({
            "schema": SCHEMA,
            "report": "superpose",
            "left": str(left),
            "variant": variant,
            "coefficient": lam,
            "right": str(right),
            "raw_sum": _vec(raw),
            "scale": scale.value,
            "canonical": _vec(state),
            "f5_state": n,
            "result": str(result),
            "disjoint_sum": str(spekkens.sum_disjoint(left, right, variant)) if left.is_disjoint(right) else None,
        })
        return 0
    out.line(f"{result} ({f5_text})")
    return 0


def _compare_sums(out: Output) -> int:
    rows = corr.compare_sum_definitions()
    if out.fmt == "json":
        out.json({
            "schema": SCHEMA,
            "report": "compare-sums",
            "disagreements": sum(not r.agree for r in rows),
            "rows": [r.to_dict() for r in rows],
        })
        return 0
    out.line(f"{'left':<5} {'right':<5} {'+k':<3} {'spekkens':<9} {'f5':<5} agree")
    for r in rows:
        out.line(
            f"{str(r.left):<5} {str(r.right):<5} +{r.variant:<2} {str(r.disjoint_sum):<9} "
            f"{str(r.f5_sum):<5} {'yes' if r.agree else 'NO'}"
        )
    out.line(f"{sum(not r.agree for r in rows)} of {len(rows)} disagree")
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report to this file")

    parser = argparse.ArgumentParser(
        prog="toyqm",
        description="Spekkens' toy model and F5 quantum mechanics, side by side.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common], help="kets, bras, pairing table, observables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("enumerate", parents=[common], help="list a state space")
    p.add_argument("space", choices=SPACES)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run every identity and invariant suite")
    p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="F5 analogs of the 24 entangled states")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo measurement sequences")
    p.add_argument("--state", required=True, help="initial epistemic state, e.g. 1v2")
    p.add_argument("--observables", required=True, help="comma-separated, e.g. X,Z")
    p.add_argument("--trials", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("superpose", parents=[common], help="sum two epistemic states through F5")
    p.add_argument("left", nargs="?")
    p.add_argument("variant", nargs="?", help="1..4, i.e. coefficient +1, -1, +2, -2")
    p.add_argument("right", nargs="?")
    p.add_argument("--compare-sums", action="store_true", help="tabulate disjoint vs F5 sums")
    p.set_defaults(func=cmd_superpose)
    return parser


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    text = out.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
