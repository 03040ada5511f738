"""Command-line front end.

Exit codes: 0 success, 1 invalid instance or a failed theorem check,
2 usage error (bad arguments, unreadable file).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import closure as cl
from . import decomposition as dec
from . import sps as sp
from .functors import functor_F, functor_G
from .generators import enumerate_closure_spaces, random_closure_space, worker_count
from .oracle import quasi_components
from .report import Counterexample, InputError
from .serialization import ParseError, corpus_digest, dumps, instance_document, parse_instance, serialize_instance
from .theorems import TheoremReport, theorem_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Result:
    """What a subcommand produced: exit code, structured payload and text rendering."""

    def __init__(self, payload: Any, text: str, code: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.code = code


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _as_space(obj) -> cl.FiniteClosureSpace:
    return obj if isinstance(obj, cl.FiniteClosureSpace) else functor_F(obj)


def _as_sps(obj) -> sp.StatePropertySystem:
    return obj if isinstance(obj, sp.StatePropertySystem) else functor_G(obj)


def _family_text(universe, masks) -> str:
    return "\n".join(universe.format(m) for m in masks)


def _instance_result(obj) -> Result:
    return Result(instance_document(obj), serialize_instance(obj).rstrip("\n"))


def cmd_validate(args) -> Result:
    obj = _load(args.file)
    kind = "closure-space" if isinstance(obj, cl.FiniteClosureSpace) else "sps"
    return Result({"valid": True, "kind": kind}, f"valid {kind}")


def cmd_to_closure(args) -> Result:
    return _instance_result(_as_space(_load(args.file)))


def cmd_to_sps(args) -> Result:
    return _instance_result(_as_sps(_load(args.file)))


def _partition_result(part: cl.Partition) -> Result:
    return Result({"blocks": part.as_labels()}, _family_text(part.universe, part.blocks))


def cmd_components(args) -> Result:
    return _partition_result(cl.components(_as_space(_load(args.file))))


def cmd_quasi_components(args) -> Result:
    return _partition_result(quasi_components(_as_space(_load(args.file))))


def cmd_clopens(args) -> Result:
    fam = cl.clopen_sets(_as_space(_load(args.file)))
    return Result({"clopens": fam.as_labels()}, _family_text(fam.universe, fam))


def _bool_result(key: str, value: bool) -> Result:
    return Result({key: value}, "true" if value else "false")


def cmd_is_topological(args) -> Result:
    return _bool_result("topological", cl.is_topological(_as_space(_load(args.file))))


def cmd_is_connected(args) -> Result:
    return _bool_result("connected", cl.is_connected(_as_space(_load(args.file))))


def cmd_ssr_table(args) -> Result:
    system = _as_sps(_load(args.file))
    names = system.lattice.elements
    table = sp.ssr_table(system)
    width = max(len(n) for n in names)
    lines = [" " * width + " " + " ".join(names)]
    for name, row in zip(names, table):
        cells = " ".join(("1" if x else "0").center(len(n)) for x, n in zip(row, names))
        lines.append(f"{name:>{width}} {cells}")
    return Result({"properties": list(names), "ssr": table}, "\n".join(lines))


def cmd_classical_props(args) -> Result:
    system = _as_sps(_load(args.file))
    rows = {a: sp.is_classical_property(system, a) for a in sp.classical_properties(system)}
    text = "\n".join(f"{a}  complement {c}" for a, c in rows.items())
    return Result({"classical": [{"property": a, "complement": c} for a, c in rows.items()]}, text)


def cmd_classical_part(args) -> Result:
    return _instance_result(dec.classical_part(_as_sps(_load(args.file))))


def cmd_totally_classical(args) -> Result:
    system = _as_sps(_load(args.file))
    try:
        return _instance_result(dec.totally_classical_system(system))
    except Counterexample as exc:
        payload = {"counterexample": {"kind": exc.kind, "message": exc.message, "witness": exc.witness}}
        return Result(payload, f"counterexample ({exc.kind}): {exc.message}", EXIT_FAIL)


def cmd_segment(args) -> Result:
    system = _as_sps(_load(args.file))
    return _instance_result(dec.segment_system(system, args.property))


def cmd_decompose(args) -> Result:
    system = _as_sps(_load(args.file))
    d = dec.decompose(system)
    payload = {
        "components": [
            {
                "states": system.states.members(c.omega),
                "property": c.s_omega,
                "system": instance_document(c.sps),
                "pure_nonclassical": True,
            }
            for c in d.components
        ],
        "totally_classical": None if d.totally_classical is None else instance_document(d.totally_classical),
        "counterexample": None
        if d.counterexample is None
        else {"kind": d.counterexample.kind, "message": d.counterexample.message, "witness": d.counterexample.witness},
        "via_quotient": instance_document(d.via_quotient),
        "classical_part": instance_document(d.classical_part),
        "evidence": {k: r.verdict for k, r in d.evidence.items()},
        "probes": {k: r.verdict for k, r in d.probes.items()},
    }
    lines = [f"{len(d.components)} pure nonclassical component(s)"]
    for c in d.components:
        lines.append(f"  {system.states.format(c.omega)}  property {c.s_omega}  lattice size {len(c.sps.lattice)}")
    if d.totally_classical is not None:
        lines.append(f"totally classical system: {d.totally_classical.states.size} state(s), properties {list(d.totally_classical.lattice.elements)}")
    else:
        lines.append(f"totally classical system: counterexample ({d.counterexample.kind}): {d.counterexample.message}")
    lines.append(f"classical part: properties {list(d.classical_part.lattice.elements)}")
    for k, r in d.evidence.items():
        lines.append(f"  [{r.verdict}] {k}")
    for k, r in d.probes.items():
        lines.append(f"  [{r.verdict}] probe {k}")
    return Result(payload, "\n".join(lines), EXIT_OK if d.ok else EXIT_FAIL)


def cmd_enumerate(args) -> Result:
    spaces = list(enumerate_closure_spaces(args.n))
    payload = {
        "n": args.n,
        "count": len(spaces),
        "digest": corpus_digest(spaces),
        "spaces": [instance_document(s) for s in spaces],
    }
    lines = [str(s) for s in spaces] + [f"count {len(spaces)}", f"digest {payload['digest']}"]
    return Result(payload, "\n".join(lines))


def cmd_random(args) -> Result:
    return _instance_result(random_closure_space(args.n, args.density, args.seed))


def _report_payload(rep: TheoremReport) -> dict:
    return {
        "instance": rep.instance_id,
        "ok": rep.ok,
        "verdicts": {k: {"status": v.status, "detail": v.detail, "witness": v.witness} for k, v in rep.verdicts.items()},
    }


def _report_text(rep: TheoremReport) -> str:
    lines = [f"instance {rep.instance_id}"]
    for k, v in rep.verdicts.items():
        extra = f" ({v.detail})" if v.detail else ""
        lines.append(f"  [{v.status}] {k}{extra}")
        if v.status in ("fail", "counterexample"):
            lines.append(f"      witness: {v.witness}")
    return "\n".join(lines)


def cmd_check_theorems(args) -> Result:
    if (args.file is None) == (args.enumerate is None):
        raise UsageError("check-theorems takes either FILE or --enumerate N")
    if args.file is not None:
        reports = [theorem_suite(_load(args.file), args.file)]
    else:
        spaces = list(enumerate_closure_spaces(args.enumerate))
        workers = worker_count()
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(theorem_suite, spaces, chunksize=16))
        else:
            reports = [theorem_suite(s) for s in spaces]
    ok = all(r.ok for r in reports)
    payload = {"ok": ok, "reports": [_report_payload(r) for r in reports]}
    if len(reports) == 1:
        text = _report_text(reports[0])
    else:
        bad = [r for r in reports if not r.ok]
        found = [r for r in reports if any(x.status == "counterexample" for x in r.verdicts.values())]
        lines = [_report_text(r) for r in bad] + [f"{len(reports) - len(bad)}/{len(reports)} instances pass"]
        if found:
            lines.append(f"{len(found)} instance(s) with a confirmed counterexample, first: {found[0].instance_id}")
        text = "\n".join(lines)
    return Result(payload, text, EXIT_OK if ok else EXIT_FAIL)


COMMANDS: dict[str, tuple[Callable[[Any], Result], str]] = {
    "validate": (cmd_validate, "validate an instance file"),
    "to-closure": (cmd_to_closure, "closure space of a state property system"),
    "to-sps": (cmd_to_sps, "state property system of a closure space"),
    "components": (cmd_components, "connection components"),
    "quasi-components": (cmd_quasi_components, "classes not separated by any clopen"),
    "clopens": (cmd_clopens, "clopen sets"),
    "is-topological": (cmd_is_topological, "closed family closed under unions?"),
    "is-connected": (cmd_is_connected, "only trivial clopens?"),
    "ssr-table": (cmd_ssr_table, "superselection table over all property pairs"),
    "classical-props": (cmd_classical_props, "classical properties with a complement witness"),
    "decompose": (cmd_decompose, "full decomposition with evidence"),
    "classical-part": (cmd_classical_part, "system generated by meets of classical properties"),
    "totally-classical": (cmd_totally_classical, "system on the set of components"),
    "segment": (cmd_segment, "sub-system below a property"),
    "enumerate": (cmd_enumerate, "all closure spaces on n points"),
    "random": (cmd_random, "seeded random closure space"),
    "check-theorems": (cmd_check_theorems, "run every cross-check"),
}

_FILE_COMMANDS = set(COMMANDS) - {"enumerate", "random", "check-theorems"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spslab", description="Inspect finite closure spaces and state property systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if name in _FILE_COMMANDS:
            p.add_argument("file")
        if name == "segment":
            p.add_argument("--property", required=True)
        if name == "enumerate":
            p.add_argument("--n", type=int, required=True)
        if name == "random":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--density", type=float, required=True)
            p.add_argument("--seed", type=int, required=True)
        if name == "check-theorems":
            p.add_argument("file", nargs="?")
            p.add_argument("--enumerate", type=int, metavar="N")
    return parser


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except UsageError as exc:
        print(f"spslab: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        result = Result({"error": {"code": exc.code, "where": exc.where, "message": str(exc)}}, str(exc), EXIT_FAIL)
    except InputError as exc:
        print(f"spslab: {exc}", file=err)
        return EXIT_USAGE
    if args.format == "structured":
        out.write(dumps({"command": args.command, "exit": result.code, "result": result.payload}))
    else:
        out.write(result.text + "\n")
    return result.code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
