"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed (violation, non-member,
failed premise), 2 malformed input, 3 structural invariant violated, 4 a
resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from . import subsets as ss
from .cone import (
    DEFAULT_ROW_CAP,
    Cone,
    ConeError,
    EliminationCapExceeded,
    ProjectionSpec,
    entropy_labels,
    full_space,
    gamma,
    intersect,
    is_member,
    project,
)
from .entropy import (
    EntropyVector,
    GroupCharacterization,
    RealEntropyVector,
    entropy_from_characterization,
    induced_joint_distribution,
    oracle_vector,
    vector_from_json,
)
from .extension import (
    AdhesiveVerificationError,
    ExtensionSpec,
    MarkovPremiseError,
    NotNormalError,
    adhesive_group_extension,
    bound_by_extension,
    build_extension,
    parse_extension,
)
from .group import FiniteGroup, GroupError, Subgroup, enumerate_subgroups, parse_group
from .inequality import builtin_suite, check_vector, suite_from_json
from .linear import (
    LinearCharacterization,
    Subspace,
    dual_rank_entropy,
    entropy_from_linear,
    sw_extension_linear,
)
from .sweep import (
    DEFAULT_MAX_TUPLES,
    MeetTable,
    SweepCapExceeded,
    abelian_groups,
    check_vectors,
    default_jobs,
    exhaustive_vectors,
    random_vectors,
    small_groups,
)

ORACLE_TOL = 1e-9


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


# input helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(2, f"cannot read {path}: {e.strerror}") from None


def _load_group(args) -> FiniteGroup:
    if getattr(args, "group_file", None):
        return FiniteGroup.from_json(_read(args.group_file))
    if not getattr(args, "group", None):
        raise CliError(2, "a group is required (--group SPEC or --group-file PATH)")
    return parse_group(args.group)


def _element(g: FiniteGroup, token: str) -> int:
    """Element labels take priority; otherwise the token is an element index."""
    token = token.strip()
    try:
        return g.element(token)
    except (KeyError, ValueError, GroupError):
        pass
    try:
        x = int(token)
    except ValueError:
        raise CliError(2, f"unknown element {token!r} in {g.name}") from None
    if not 0 <= x < g.order:
        raise CliError(2, f"element index {x} out of range for order {g.order}")
    return x


def _parse_subgroup(g: FiniteGroup, text: str) -> Subgroup:
    """``a,b`` lists generators; ``=a,b,...`` lists every element explicitly."""
    explicit = text.startswith("=")
    tokens = [t for t in text.lstrip("=").replace(" ", ",").split(",") if t]
    elements = [_element(g, t) for t in tokens]
    if not explicit:
        return g.generate(elements)
    if g.identity not in elements:
        elements.append(g.identity)
    try:
        return g.subgroup(elements)
    except GroupError as e:
        raise CliError(3, str(e)) from None


def _load_characterization(args) -> GroupCharacterization:
    if getattr(args, "char", None):
        try:
            return GroupCharacterization.from_dict(json.loads(_read(args.char)))
        except GroupError as e:
            raise CliError(3, str(e)) from None
    g = _load_group(args)
    if not args.subgroup:
        raise CliError(2, "at least one --subgroup is required")
    return GroupCharacterization(g, tuple(_parse_subgroup(g, s) for s in args.subgroup))


def _load_linear(args) -> LinearCharacterization:
    if args.char:
        return LinearCharacterization.from_dict(json.loads(_read(args.char)))
    if args.p is None or args.m is None or not args.subspace:
        raise CliError(2, "give --char FILE or --p, --m and at least one --subspace")
    subs = []
    for text in args.subspace:
        rows = [[int(v) for v in r.replace(" ", ",").split(",") if v] for r in text.split(";") if r.strip()]
        subs.append(Subspace.span(args.p, args.m, rows))
    return LinearCharacterization(args.p, args.m, tuple(subs))


def _load_cone(spec: str) -> Cone:
    """``gamma:N``, ``full:N``, or a cone file in text or JSON form."""
    kind, _, arg = spec.partition(":")
    if kind in ("gamma", "full") and arg.isdigit():
        n = int(arg)
        return gamma(n) if kind == "gamma" else full_space(entropy_labels(n))
    text = _read(spec)
    return Cone.from_dict(json.loads(text)) if text.lstrip().startswith("{") else Cone.from_text(text)


def _load_points(path: str) -> list[EntropyVector | RealEntropyVector]:
    data = json.loads(_read(path))
    if isinstance(data, dict) and "points" in data:
        data = data["points"]
    if isinstance(data, dict):
        data = [data]
    out = []
    for item in data:
        out.append(EntropyVector.from_dict(item) if "indices" in item else RealEntropyVector.from_dict(item))
    return out


def _labels_arg(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


# output helpers


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _bits(k: int) -> str:
    return f"{math.log2(k):.12f}"


def _vector_text(v: EntropyVector | RealEntropyVector, fmt: str) -> str:
    if fmt == "json":
        return _dump(v.to_dict())
    masks = list(ss.nonempty_subsets(v.n))
    if isinstance(v, EntropyVector):
        rows = [(ss.label(m), v.index(m), _bits(v.index(m))) for m in masks]
        header = ("subset", "index", "bits")
    else:
        rows = [(ss.label(m), "", f"{v.value(m):.12f}") for m in masks]
        header = ("subset", "index", "bits")
    if fmt == "csv":
        return _csv([header, *rows])
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{r[0]:<{width}}  {r[1]!s:>8}  {r[2]}" for r in rows)


def _cone_text(c: Cone, fmt: str, header: str = "") -> str:
    if fmt == "json":
        return _dump(c.to_dict())
    if fmt == "csv":
        rows = [[*c.labels, "type"]]
        rows += [[*r, ">="] for r in c.inequalities]
        rows += [[*r, "="] for r in c.equalities]
        return _csv(rows)
    return (header + c.to_text()) if header else c.to_text()


def _fmt(args, default: str) -> str:
    return args.format or default


# commands


def cmd_group_gen(args) -> int:
    g = parse_group(args.spec)
    fmt = _fmt(args, "json")
    if fmt == "json":
        _emit(args, g.to_json())
    elif fmt == "csv":
        _emit(
            args,
            _csv(
                [[""] + g.labels]
                + [[g.labels[i]] + [g.labels[x] for x in row] for i, row in enumerate(g.table.tolist())]
            ),
        )
    else:
        w = max(len(x) for x in g.labels)
        lines = [f"# {g.name}, order {g.order}, identity {g.labels[g.identity]}"]
        lines += [" ".join(f"{g.labels[x]:>{w}}" for x in row) for row in g.table.tolist()]
        _emit(args, "\n".join(lines))
    return 0


def cmd_group_subgroups(args) -> int:
    g = _load_group(args)
    subs = enumerate_subgroups(g)
    fmt = _fmt(args, "json")
    if fmt == "json":
        _emit(args, _dump({"group": g.name, "order": g.order, "subgroups": [h.elements() for h in subs]}))
    elif fmt == "csv":
        rows = [("position", "order", "elements")]
        rows += [(i, h.order, " ".join(map(str, h.elements()))) for i, h in enumerate(subs)]
        _emit(args, _csv(rows))
    else:
        lines = [f"# {g.name}: {len(subs)} subgroups"]
        lines += [
            f"{i:>4}  order {h.order:>4}  {{{', '.join(g.labels[x] for x in h.elements())}}}"
            for i, h in enumerate(subs)
        ]
        _emit(args, "\n".join(lines))
    return 0


def cmd_entropy(args) -> int:
    c = _load_characterization(args)
    v = entropy_from_characterization(c)
    if args.char_out:
        Path(args.char_out).write_text(c.to_json() + "\n")
    deviation = None
    if args.oracle or args.distribution:
        d = induced_joint_distribution(c)
        if args.distribution:
            Path(args.distribution).write_text(d.to_csv())
        if args.oracle:
            o = oracle_vector(d)
            deviation = max(abs(math.log2(v.index(m)) - o.value(m)) for m in ss.nonempty_subsets(c.n))
    fmt = _fmt(args, "json")
    if fmt == "json":
        data = v.to_dict()
        if deviation is not None:
            data["oracle_max_deviation_bits"] = deviation
        text = _dump(data)
    else:
        text = _vector_text(v, fmt)
        if deviation is not None and fmt == "text":
            text += f"\n# oracle max deviation: {deviation:.3e} bits"
    _emit(args, text)
    if deviation is not None and deviation > ORACLE_TOL:
        print(f"oracle deviation {deviation:.3e} exceeds {ORACLE_TOL}", file=sys.stderr)
        return 3
    return 0


def cmd_linear_entropy(args) -> int:
    _emit(args, _vector_text(entropy_from_linear(_load_linear(args)), _fmt(args, "json")))
    return 0


def cmd_linear_dual(args) -> int:
    c = _load_linear(args)
    dual = dual_rank_entropy(c)
    _emit(args, _vector_text(dual, _fmt(args, "json")))
    if dual != entropy_from_linear(c):
        print("dual rank vector differs from the subspace-intersection vector", file=sys.stderr)
        return 3
    return 0


def cmd_linear_sw(args) -> int:
    c = _load_linear(args)
    try:
        ext = sw_extension_linear(c, ss.parse_label(args.alpha), ss.parse_label(args.beta))
    except RuntimeError as e:
        raise CliError(3, str(e)) from None
    _emit(args, _dump(ext.to_dict()))
    return 0


def _load_suite(name: str, n: int):
    if name.endswith(".json") or Path(name).is_file():
        return suite_from_json(_read(name))
    return builtin_suite(name, n)


def cmd_check(args) -> int:
    v = vector_from_json(_read(args.vector))
    suite = _load_suite(args.suite, v.n)
    for f in suite:
        if f.n != v.n:
            raise CliError(2, f"functional {f.name or '?'} has n={f.n}, vector has n={v.n}")
    report = check_vector(v, suite)
    fmt = _fmt(args, "text")
    if fmt == "json":
        _emit(args, _dump({"seed": args.seed, "suite": args.suite, **report.to_dict()}))
    elif fmt == "csv":
        rows = [("name", "sign", "slack_bits")] + [(r.name, r.sign, f"{r.slack_bits:.12f}") for r in report.rows]
        _emit(args, _csv(rows))
    else:
        head = f"# seed {args.seed}; suite {args.suite}; {len(report.violations)} violation(s)\n"
        _emit(args, head + report.to_text())
    return 0 if report.all_nonnegative else 1


def _sweep_groups(args) -> list[FiniteGroup]:
    groups = [parse_group(s) for s in args.group or []]
    if args.family == "abelian":
        groups += abelian_groups(args.max_order or 16)
    elif args.family == "small":
        groups += small_groups(min(args.max_order or 12, 15))
    if args.max_order is not None:
        groups = [g for g in groups if g.order <= args.max_order]
    if not groups:
        raise CliError(2, "no groups to sweep (use --group or --family, check --max-order)")
    return groups


def cmd_sweep(args) -> int:
    groups = _sweep_groups(args)
    rng = np.random.default_rng(args.seed)
    jobs = args.jobs or default_jobs()
    results = []
    for g in groups:
        table = MeetTable.build(g)
        if args.random:
            vecs = random_vectors(g, args.n, args.random, rng, table=table)
        else:
            vecs = exhaustive_vectors(g, args.n, max_tuples=args.max_tuples, jobs=jobs, table=table)
        suite = _load_suite(args.suite, args.n)
        results.append((table, check_vectors(g, args.n, vecs, suite)))
    total_viol = sum(r.violations for _, r in results)
    fmt = _fmt(args, "text")
    if fmt == "json":
        out = {
            "seed": args.seed,
            "n": args.n,
            "suite": args.suite,
            "mode": "random" if args.random else "exhaustive",
            "groups": [],
        }
        for table, r in results:
            out["groups"].append(
                {
                    "group": r.group.name,
                    "order": r.group.order,
                    "subgroups": table.base,
                    "tuples": r.tuples,
                    "distinct_vectors": r.distinct,
                    "functionals": [
                        {
                            "name": f.name,
                            "violations": f.violations,
                            "min_slack_bits": f.min_slack,
                            "witness": [table.subgroups[i].elements() for i in f.min_witness],
                        }
                        for f in r.rows
                    ],
                }
            )
        out["violations"] = total_viol
        _emit(args, _dump(out))
    else:
        rows = [("group", "order", "tuples", "distinct", "functional", "violations", "min_slack_bits", "witness")]
        for table, r in results:
            for f in r.rows:
                wit = " ".join(str(i) for i in f.min_witness)
                rows.append(
                    (
                        r.group.name,
                        r.group.order,
                        r.tuples,
                        r.distinct,
                        f.name,
                        f.violations,
                        f"{f.min_slack:.12f}",
                        wit,
                    )
                )
        if fmt == "csv":
            _emit(args, _csv(rows))
        else:
            widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
            mode = f"random {args.random}" if args.random else "exhaustive"
            lines = [f"# seed {args.seed}; n={args.n}; suite {args.suite}; {mode}; {total_viol} violation(s)"]
            lines += ["  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
            _emit(args, "\n".join(lines))
    return 1 if total_viol else 0


def cmd_extend(args) -> int:
    source = vector_from_json(_read(args.source)) if args.source else None
    a = ss.parse_label(args.alpha)
    b = ss.parse_label(args.beta) if args.beta else 0
    c = ss.parse_label(args.gamma) if args.gamma else 0
    if args.kind in ("join", "sw") and not b:
        raise CliError(2, f"{args.kind} needs --beta")
    if args.kind == "markov" and not (b and c):
        raise CliError(2, "markov needs --beta and --gamma")
    n = args.n
    char = None
    if args.char:
        char = GroupCharacterization.from_dict(json.loads(_read(args.char)))
        n = n or char.n
    if source is not None:
        n = n or source.n
    if not n:
        raise CliError(2, "--n is required unless --char or --source is given")
    spec = build_extension(args.kind, n, a, b, c, source=source)
    fmt = _fmt(args, "json")
    witness_info = None
    if char is not None:
        if args.kind != "adhesive":
            raise CliError(2, "--char is only used by the adhesive construction")
        witness, extended = adhesive_group_extension(char, a, strict=False)
        witness_info = {"K_order": witness.K.order, "checks": witness.checks}
        if args.witness_out:
            Path(args.witness_out).write_text(extended.to_json() + "\n")
        if not witness.ok:
            _emit(args, _dump({**spec.to_dict(), "witness": witness_info}))
            return 3
    if fmt == "json":
        data = spec.to_dict()
        if witness_info:
            data["witness"] = witness_info
        _emit(args, _dump(data))
    else:
        head = f"# {spec.kind} extension: n={spec.n} -> m={spec.m}, alpha={ss.label(spec.alpha)}"
        if spec.beta:
            head += f", beta={ss.label(spec.beta)}"
        if spec.gamma:
            head += f", gamma={ss.label(spec.gamma)}"
        if witness_info:
            head += f"\n# witness |K| = {witness_info['K_order']}; " + ", ".join(
                f"{k}: {'ok' if v else 'FAIL'}" for k, v in witness_info["checks"].items()
            )
        _emit(
            args, _cone_text(spec.constraints, fmt, head + "\n") if fmt == "text" else _cone_text(spec.constraints, fmt)
        )
    return 0


def cmd_cone_project(args) -> int:
    c = _load_cone(args.cone)
    order = _labels_arg(args.order) if args.order else None
    out = project(c, ProjectionSpec(tuple(_labels_arg(args.keep))), order=order, cap=args.cap, prune=args.prune)
    _emit(args, _cone_text(out, _fmt(args, "text")))
    return 0


def cmd_cone_intersect(args) -> int:
    cones = [_load_cone(s) for s in args.cones]
    out = cones[0]
    for c in cones[1:]:
        out = intersect(out, c)
    _emit(args, _cone_text(out, _fmt(args, "text")))
    return 0


def _membership(c: Cone, points) -> list[bool]:
    out = []
    for p in points:
        if (1 << p.n) - 1 != c.dim:
            raise CliError(2, f"point with n={p.n} does not match cone dimension {c.dim}")
        out.append(is_member(c, p))
    return out


def cmd_cone_member(args) -> int:
    flags = _membership(_load_cone(args.cone), _load_points(args.points))
    fmt = _fmt(args, "text")
    bad = [i for i, f in enumerate(flags) if not f]
    if fmt == "json":
        _emit(args, _dump({"points": len(flags), "members": len(flags) - len(bad), "non_members": bad}))
    elif fmt == "csv":
        _emit(args, _csv([("point", "member")] + [(i, int(f)) for i, f in enumerate(flags)]))
    else:
        lines = [f"{i}  {'member' if f else 'NOT A MEMBER'}" for i, f in enumerate(flags)]
        lines.append(f"# {len(flags) - len(bad)}/{len(flags)} members")
        _emit(args, "\n".join(lines))
    return 1 if bad else 0


def cmd_bound(args) -> int:
    ext = args.extension
    if ext.endswith(".json") or Path(ext).is_file():
        spec = ExtensionSpec.from_dict(json.loads(_read(ext)))
    else:
        spec = parse_extension(ext)
    outer = _load_cone(args.outer if ":" in args.outer or Path(args.outer).is_file() else f"{args.outer}:{spec.m}")
    result = bound_by_extension(spec.n, spec, outer, cap=args.cap, prune=args.prune)
    if args.keep:
        keep = tuple(_labels_arg(args.keep))
        if keep != result.labels:
            result = project(result, ProjectionSpec(keep), cap=args.cap, prune=args.prune)
    code = 0
    summary = ""
    if args.verify_members:
        points = _load_points(args.verify_members)
        flags = _membership(result, points)
        bad = [i for i, f in enumerate(flags) if not f]
        summary = f"# verified {len(flags)} point(s): {len(bad)} non-member(s)"
        if bad:
            summary += " at " + ", ".join(map(str, bad[:20]))
            code = 1
    fmt = _fmt(args, "text")
    head = f"# seed {args.seed}; bound by {spec.kind} extension n={spec.n} -> m={spec.m}; outer {args.outer}\n"
    if summary and fmt == "text":
        head += summary + "\n"
    elif summary:
        print(summary, file=sys.stderr)
    _emit(args, _cone_text(result, fmt, head))
    return code


# parser


def _add_common(p: argparse.ArgumentParser, default_fmt: str | None = None) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default_fmt, help="output format")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice (64-bit integer)")


def _add_group_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="group spec: cyclic:6, abelian:2,4, S3, D4, Q8, Z2*S3, ...")
    p.add_argument("--group-file", help="group JSON file")


def _add_linear_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--char", help="linear characterization JSON")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--subspace", action="append", default=[], help='spanning rows, e.g. "1,0,0;0,1,1"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupentropy", description="Group-characterizable entropy functions and outer bounds."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="construct groups and list subgroups")
    gsub = grp.add_subparsers(dest="action", required=True)
    p = gsub.add_parser("gen", help="write a group's Cayley table")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(func=cmd_group_gen)
    p = gsub.add_parser("subgroups", help="enumerate all subgroups")
    _add_group_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_group_subgroups)

    p = sub.add_parser("entropy", help="entropy vector of a group characterization")
    _add_group_source(p)
    p.add_argument("--subgroup", action="append", default=[], help="generators a,b or explicit elements =a,b,c")
    p.add_argument("--char", help="characterization JSON instead of --group/--subgroup")
    p.add_argument("--char-out", help="also write the characterization JSON here")
    p.add_argument("--oracle", action="store_true", help="compare with entropies of the induced distribution")
    p.add_argument("--distribution", help="write the induced joint distribution CSV here")
    _add_common(p)
    p.set_defaults(func=cmd_entropy)

    lin = sub.add_parser("linear", help="subspace characterizations over F_p")
    lsub = lin.add_subparsers(dest="action", required=True)
    for name, func, helptext in (
        ("entropy", cmd_linear_entropy, "p^(m - dim W_a) vector"),
        ("dual", cmd_linear_dual, "rank vector of the orthogonal complements"),
        ("sw-extend", cmd_linear_sw, "append a Slepian-Wolf subspace"),
    ):
        p = lsub.add_parser(name, help=helptext)
        _add_linear_source(p)
        if name == "sw-extend":
            p.add_argument("--alpha", required=True)
            p.add_argument("--beta", required=True)
        _add_common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="evaluate an inequality suite on a vector")
    p.add_argument("--vector", required=True, help="entropy vector JSON")
    p.add_argument("--suite", required=True, help="shannon, ingleton, zy or a functional JSON file")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="check a suite over many subgroup tuples")
    p.add_argument("--group", action="append", help="group spec (repeatable)")
    p.add_argument("--family", choices=("abelian", "small"), help="every abelian group, or every group up to order 15")
    p.add_argument("--max-order", type=int, help="largest group order to include")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--suite", required=True)
    p.add_argument("--random", type=int, default=0, help="draw this many seeded random tuples per group")
    p.add_argument("--max-tuples", type=int, default=DEFAULT_MAX_TUPLES)
    p.add_argument("--jobs", type=int, default=0, help="worker processes (default from GROUPENTROPY_JOBS)")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("extend", help="constraint set of an extension")
    p.add_argument("kind", choices=("adhesive", "join", "sw", "markov"))
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta")
    p.add_argument("--gamma")
    p.add_argument("--source", help="source vector JSON (markov premise check)")
    p.add_argument("--char", help="adhesive: build and verify the explicit group extension")
    p.add_argument("--witness-out", help="adhesive: write the extended characterization JSON here")
    _add_common(p)
    p.set_defaults(func=cmd_extend)

    cone = sub.add_parser("cone", help="polyhedral cone operations")
    csub = cone.add_subparsers(dest="action", required=True)
    p = csub.add_parser("project", help="Fourier-Motzkin projection")
    p.add_argument("--cone", required=True, help="cone file, gamma:N or full:N")
    p.add_argument("--keep", required=True, help="comma-separated labels to keep")
    p.add_argument("--order", help="explicit elimination order")
    p.add_argument("--prune", action="store_true", help="remove redundant rows with exact LPs")
    p.add_argument("--cap", type=int, default=DEFAULT_ROW_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_cone_project)
    p = csub.add_parser("member", help="exact membership of points")
    p.add_argument("--cone", required=True)
    p.add_argument("--points", required=True, help="JSON vector or list of vectors")
    _add_common(p)
    p.set_defaults(func=cmd_cone_member)
    p = csub.add_parser("intersect", help="intersection of cones with equal labels")
    p.add_argument("cones", nargs="+")
    _add_common(p)
    p.set_defaults(func=cmd_cone_intersect)

    p = sub.add_parser("bound", help="extend, intersect with an outer cone, project back")
    p.add_argument("--extension", required=True, help="spec JSON or kind:n:alpha[:beta[:gamma]]")
    p.add_argument("--outer", required=True, help="gamma, full, gamma:M, full:M or a cone file")
    p.add_argument("--keep", help="labels to keep (default: every source coordinate)")
    p.add_argument("--prune", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_ROW_CAP)
    p.add_argument("--verify-members", help="JSON list of vectors that must lie in the result")
    _add_common(p)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (SweepCapExceeded, EliminationCapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except MarkovPremiseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (NotNormalError, AdhesiveVerificationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (GroupError, ConeError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
