"""Command-line front end.

Exit codes: 0 success, 1 negative-but-valid result (an INVALID equation, a
failed validation, no isomorphism), 2 usage or input errors. Every
subcommand takes --json for a machine-readable form of the same result.
All element references on the command line use names, never indices.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import (FiniteAlgebra, algebra_to_dict, cloud_of, dump_algebra,
                      is_flat, load_algebra, regular_elements, validate)
from .congruences import (CongruenceDecomposition, all_congruences,
                          compose_flat, compose_nonflat, decompose,
                          extend_from_subalgebra, generated_congruence,
                          subalgebra)
from .enumeration import enumerate_all, enumerate_flat
from .errors import QbaError
from .partitions import (Partition, format_partition, pair_closure_gaps,
                         parse_partition)
from .quotients import (chi, direct_product, find_isomorphism, quotient, tau)
from .terms import Verdict, decide, holds_in, parse_equation


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str


def _load(path: str) -> FiniteAlgebra:
    p = Path(path)
    try:
        text = p.read_text("utf-8")
    except OSError as exc:
        raise QbaError(f"cannot read {path}: {exc}") from None
    return load_algebra(text, label=p.stem)


def _emit(payload: dict, human: str, as_json: bool) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) if as_json else human


def _verdict_lines(v: Verdict) -> tuple[dict, str]:
    if v.valid:
        return {"valid": True}, "VALID"
    w = v.witness
    assign = ", ".join(f"{k}={val}" for k, val in w.assignment) or "(no variables)"
    human = (f"INVALID in {w.algebra}: {assign} gives "
             f"{w.lhs_value} on the left, {w.rhs_value} on the right")
    payload = {"valid": False, "witness": {
        "assignment": dict(w.assignment), "lhs": w.lhs_value,
        "rhs": w.rhs_value, "algebra": w.algebra}}
    return payload, human


def _cmd_validate(args) -> CommandResult:
    a = _load(args.algebra)
    report = validate(a)
    kind = "flat" if is_flat(a) else "non-flat"
    if report.passed:
        human = f"VALID QB-algebra ({kind}, {a.size} elements)"
    else:
        lines = [f"INVALID: {len(report.violations)} axiom violation(s)"]
        lines += [f"  {label} at ({', '.join(a.names[i] for i in w)})"
                  for label, w in report.violations]
        human = "\n".join(lines)
    payload = {"algebra": a.label, "size": a.size, "flat": is_flat(a),
               "passed": report.passed,
               "violations": [{"axiom": label,
                               "witness": [a.names[i] for i in w]}
                              for label, w in report.violations]}
    return CommandResult(0 if report.passed else 1,
                         _emit(payload, human, args.json))


def _cmd_info(args) -> CommandResult:
    a = _load(args.algebra)
    report = validate(a)
    regs = sorted(regular_elements(a))
    clouds = sorted({cloud_of(a, x) for x in a.elements()},
                    key=lambda c: min(c))
    irreducible = (not is_flat(a)
                   and regular_elements(a) == frozenset((a.zero, a.one)))
    lines = [
        f"algebra {a.label or '(unnamed)'}: {a.size} elements",
        f"names: {' '.join(a.names)}",
        f"zero: {a.names[a.zero]}  one: {a.names[a.one]}",
        f"axioms: {'pass' if report.passed else 'FAIL'}",
        f"flat: {'yes' if is_flat(a) else 'no'}",
        f"regular elements: {{{', '.join(a.names[x] for x in regs)}}}",
        "clouds: " + " ".join("{" + ",".join(a.names[x] for x in sorted(c)) + "}"
                              for c in clouds),
    ]
    if not is_flat(a):
        lines.append(f"irreducible: {'yes' if irreducible else 'no'}")
    if a.size == 1:
        lines.append("note: trivial one-element algebra")
    payload = {"algebra": a.label, "size": a.size,
               "names": list(a.names),
               "zero": a.names[a.zero], "one": a.names[a.one],
               "passed": report.passed, "flat": is_flat(a),
               "regular": [a.names[x] for x in regs],
               "clouds": [[a.names[x] for x in sorted(c)] for c in clouds],
               "irreducible": None if is_flat(a) else irreducible,
               "trivial": a.size == 1}
    return CommandResult(0, _emit(payload, "\n".join(lines), args.json))


def _cmd_quotient(args) -> CommandResult:
    a = _load(args.algebra)
    rel = chi(a) if args.rel == "chi" else tau(a)
    q, proj = quotient(a, rel)
    q = q.relabel(f"{a.label}/{args.rel}")
    human = dump_algebra(q) + "map: " + " ".join(
        f"{a.names[x]}->{q.names[proj(x)]}" for x in a.elements())
    payload = {"relation": args.rel, "algebra": algebra_to_dict(q),
               "projection": {a.names[x]: q.names[proj(x)]
                              for x in a.elements()}}
    return CommandResult(0, _emit(payload, human, args.json))


def _cmd_product(args) -> CommandResult:
    a, b = _load(args.left), _load(args.right)
    p = direct_product(a, b)
    if args.out:
        Path(args.out).write_text(dump_algebra(p), "utf-8")
    payload = {"algebra": algebra_to_dict(p)}
    return CommandResult(0, _emit(payload, dump_algebra(p).rstrip("\n"), args.json))


def _cmd_iso(args) -> CommandResult:
    a, b = _load(args.left), _load(args.right)
    f = find_isomorphism(a, b)
    if f is None:
        return CommandResult(1, _emit({"isomorphic": False}, "NOT ISOMORPHIC",
                                      args.json))
    human = "isomorphic: " + " ".join(
        f"{a.names[x]}->{b.names[f(x)]}" for x in a.elements())
    payload = {"isomorphic": True,
               "map": {a.names[x]: b.names[f(x)] for x in a.elements()}}
    return CommandResult(0, _emit(payload, human, args.json))


def _cmd_check(args) -> CommandResult:
    a = _load(args.algebra)
    v = holds_in(a, parse_equation(args.equation))
    payload, human = _verdict_lines(v)
    return CommandResult(0 if v.valid else 1, _emit(payload, human, args.json))


def _cmd_decide(args) -> CommandResult:
    v = decide(args.variety, parse_equation(args.equation))
    payload, human = _verdict_lines(v)
    payload["variety"] = args.variety
    return CommandResult(0 if v.valid else 1, _emit(payload, human, args.json))


def _cmd_congruences(args) -> CommandResult:
    a = _load(args.algebra)
    cons = all_congruences(a)
    strings = [format_partition(a, p) for p in cons]
    return CommandResult(0, _emit({"congruences": strings},
                                  "\n".join(strings), args.json))


def _parse_pairs(a: FiniteAlgebra, text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        left, sep, right = chunk.partition("=")
        if not sep:
            raise QbaError(f"pair {chunk!r} is not of the form name=name")
        pairs.append((a.index_of(left.strip()), a.index_of(right.strip())))
    return pairs


def _cmd_generate(args) -> CommandResult:
    a = _load(args.algebra)
    if (args.seed is None) == (args.pairs is None):
        raise QbaError("exactly one of --seed and --pairs is required")
    note = None
    if args.seed is not None:
        seed = [(b[0], x) for b in parse_partition(a, args.seed).blocks
                for x in b[1:]]
    else:
        seed = _parse_pairs(a, args.pairs)
        gaps = pair_closure_gaps(a.size, seed)
        if gaps:
            note = ("input pairs are not transitively closed; closure added: "
                    + "; ".join(f"{a.names[p]}={a.names[q]}"
                                for p, q in gaps if p < q))
    result = generated_congruence(a, seed)
    text = format_partition(a, result)
    human = text if note is None else f"{text}\nnote: {note}"
    payload = {"congruence": text, "note": note}
    return CommandResult(0, _emit(payload, human, args.json))


def _cmd_extend(args) -> CommandResult:
    a = _load(args.algebra)
    subset = sorted(a.index_of(nm.strip())
                    for nm in args.sub.split(",") if nm.strip())
    sub_alg = subalgebra(a, subset)
    theta0 = parse_partition(sub_alg, args.cong)
    ext = extend_from_subalgebra(a, subset, theta0)
    text = format_partition(a, ext)
    return CommandResult(0, _emit({"congruence": text}, text, args.json))


def _cmd_split(args) -> CommandResult:
    from .congruences import split_congruence
    a = _load(args.algebra)
    theta = parse_partition(a, args.cong)
    t1, t2 = split_congruence(a, theta)
    qc = quotient(a, chi(a))[0]
    qt = quotient(a, tau(a))[0]
    s1, s2 = format_partition(qc, t1), format_partition(qt, t2)
    human = f"theta1 on {a.label}/chi: {s1}\ntheta2 on {a.label}/tau: {s2}"
    return CommandResult(0, _emit({"theta1": s1, "theta2": s2}, human,
                                  args.json))


def _cmd_decompose(args) -> CommandResult:
    a = _load(args.algebra)
    theta = parse_partition(a, args.cong)
    d = decompose(a, theta)
    regs = sorted(regular_elements(a))
    irs = [x for x in a.elements() if x not in set(regs)]
    fmt_r = format_partition(subalgebra(a, regs), d.theta_r)
    ir_names = [a.names[x] for x in irs]
    fmt_ir = ";".join(",".join(ir_names[i] for i in b)
                      for b in d.theta_ir.blocks)
    linked = sorted(
        ",".join(a.names[regs[i]] for i in d.theta_r.blocks[b])
        for b in d.linked)
    fmap = {",".join(a.names[regs[i]] for i in d.theta_r.blocks[b]):
            ",".join(ir_names[i] for i in d.theta_ir.blocks[img])
            for b, img in d.f}
    cross = sorted(f"{a.names[p]}={a.names[q]}" for p, q in d.cross if p < q)
    human = "\n".join([
        f"theta_r (regular part): {fmt_r}",
        f"theta_ir (irregular part): {fmt_ir}",
        f"linked blocks: {'; '.join(linked) if linked else '(none)'}",
        "f: " + ("; ".join(f"{k} -> {v}" for k, v in sorted(fmap.items()))
                 if fmap else "(empty)"),
        f"cross pairs: {'; '.join(cross) if cross else '(none)'}",
    ])
    payload = {"theta_r": fmt_r, "theta_ir": fmt_ir, "linked": linked,
               "f": fmap, "cross": cross}
    return CommandResult(0, _emit(payload, human, args.json))


def _cmd_compose(args) -> CommandResult:
    a = _load(args.algebra)
    regs = sorted(regular_elements(a))
    irs = [x for x in a.elements() if x not in set(regs)]
    if is_flat(a):
        if args.theta_ir is None:
            raise QbaError("flat composition needs --theta-ir")
        theta_ir = _local_partition(a, irs, args.theta_ir)
        result = compose_flat(a, theta_ir)
    else:
        if args.theta_r is None or args.theta_ir is None:
            raise QbaError("non-flat composition needs --theta-r and --theta-ir")
        theta_r = _local_partition(a, regs, args.theta_r)
        theta_ir = _local_partition(a, irs, args.theta_ir)
        local_r = {g: i for i, g in enumerate(regs)}
        local_ir = {g: i for i, g in enumerate(irs)}
        linked, fpairs = set(), []
        if args.link:
            for chunk in args.link.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                left, sep, right = chunk.partition(">")
                if not sep:
                    raise QbaError(f"link {chunk!r} is not of the form reg>irr")
                rb = theta_r.block_index(local_r[a.index_of(left.strip())])
                ib = theta_ir.block_index(local_ir[a.index_of(right.strip())])
                linked.add(rb)
                fpairs.append((rb, ib))
        cross: set[tuple[int, int]] = set()
        for rb, ib in fpairs:
            for i in theta_r.blocks[rb]:
                for j in theta_ir.blocks[ib]:
                    cross.add((regs[i], irs[j]))
                    cross.add((irs[j], regs[i]))
        d = CongruenceDecomposition(
            theta_r=theta_r, theta_ir=theta_ir, linked=frozenset(linked),
            f=tuple(sorted(fpairs)), cross=frozenset(cross))
        result = compose_nonflat(a, d)
    text = format_partition(a, result)
    return CommandResult(0, _emit({"congruence": text}, text, args.json))


def _local_partition(a: FiniteAlgebra, subset: list[int], text: str) -> Partition:
    local = {g: i for i, g in enumerate(subset)}
    blocks: list[list[int]] = []
    seen: set[int] = set()
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        block = []
        for nm in chunk.split(","):
            g = a.index_of(nm.strip())
            if g not in local:
                raise QbaError(f"element {nm.strip()!r} is outside this part")
            if g in seen:
                raise QbaError(f"element {nm.strip()!r} appears twice")
            seen.add(g)
            block.append(local[g])
        blocks.append(block)
    blocks.extend([i] for g, i in local.items() if g not in seen)
    return Partition.from_blocks(len(subset), blocks)


def _cmd_enumerate(args) -> CommandResult:
    report = (enumerate_flat(args.size, args.up_to_iso) if args.flat
              else enumerate_all(args.size, args.up_to_iso))
    lines = [f"size {report.size} flat_only={report.flat_only} "
             f"up_to_iso={report.up_to_iso} labeled={report.total_labeled} "
             f"emitted={len(report.iso_classes)} "
             f"violations={len(report.violations)}"]
    for i, a in enumerate(report.iso_classes):
        regs = len(regular_elements(a))
        lines.append(f"  [{i}] {'flat' if is_flat(a) else 'non-flat'} "
                     f"regulars={regs} "
                     f"star_fixed={sum(1 for x in a.elements() if a.star[x] == x)}")
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for i, a in enumerate(report.iso_classes):
            (out / f"qba_n{report.size}_{i}.alg").write_text(dump_algebra(a),
                                                             "utf-8")
        lines.append(f"wrote {len(report.iso_classes)} files to {out}")
    payload = {"size": report.size, "flat_only": report.flat_only,
               "up_to_iso": report.up_to_iso,
               "total_labeled": report.total_labeled,
               "emitted": len(report.iso_classes),
               "violations": [lbl for lbl, _ in report.violations]}
    return CommandResult(0, _emit(payload, "\n".join(lines), args.json))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qba", description="finite quasi-Boolean algebra workbench")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *, algebra=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        if algebra:
            p.add_argument("algebra", help="algebra file")
        return p

    add("validate", _cmd_validate, "check every axiom of an algebra file")
    add("info", _cmd_info, "summarize an algebra")
    p = add("quotient", _cmd_quotient, "quotient by a canonical congruence")
    p.add_argument("--rel", choices=("chi", "tau"), required=True)
    p = add("product", _cmd_product, "direct product of two algebras",
            algebra=False)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--out", help="also write the result to a file")
    p = add("iso", _cmd_iso, "search for an isomorphism", algebra=False)
    p.add_argument("left")
    p.add_argument("right")
    p = add("check", _cmd_check, "check an equation in one algebra")
    p.add_argument("equation")
    p = sub.add_parser("decide", help="decide an equation in a variety")
    p.set_defaults(fn=_cmd_decide)
    p.add_argument("--json", action="store_true")
    p.add_argument("--variety", choices=("qb", "fqb", "b"), required=True)
    p.add_argument("equation")
    add("congruences", _cmd_congruences, "list all congruences")
    p = add("generate", _cmd_generate, "least congruence containing the seed")
    p.add_argument("--seed", help="partition whose blocks are pre-merged")
    p.add_argument("--pairs", help="explicit pairs, e.g. 'a=b;c=d'")
    p = add("extend", _cmd_extend, "extend a subalgebra congruence")
    p.add_argument("--sub", required=True, help="subalgebra elements, e.g. 0,a,b,1")
    p.add_argument("--cong", required=True, help="congruence on the subalgebra")
    p = add("split", _cmd_split, "project a congruence through chi and tau")
    p.add_argument("--cong", required=True)
    p = add("decompose", _cmd_decompose,
            "split a congruence into regular/irregular/cross parts")
    p.add_argument("--cong", required=True)
    p = add("compose", _cmd_compose,
            "reassemble a congruence from its parts")
    p.add_argument("--theta-r", help="partition of the regular elements")
    p.add_argument("--theta-ir", help="partition of the irregular elements")
    p.add_argument("--link", help="block map, e.g. '0>a;1>b'")
    p = sub.add_parser("enumerate", help="enumerate small algebras")
    p.set_defaults(fn=_cmd_enumerate)
    p.add_argument("--json", action="store_true")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--flat", action="store_true")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--emit", help="write each emitted algebra to this directory")
    return parser


def run(argv: list[str] | None = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(int(exc.code or 0), "")
    try:
        return args.fn(args)
    except QbaError as exc:
        return CommandResult(2, f"error: {exc}")


def main(argv: list[str] | None = None) -> int:
    result = run(argv)
    if result.output:
        stream = sys.stderr if result.exit_code == 2 else sys.stdout
        print(result.output, file=stream)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
