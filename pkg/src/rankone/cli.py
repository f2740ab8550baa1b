"""Command line front end.

Host strings are ``<Letter><rank>[~<twist>]`` joined by ``x`` for products,
for example ``D7``, ``F4~1``, ``A5~2`` or ``A1~1xA1~1``.  Twisted affine types
use the Kac name, so ``A4~2`` has three nodes.  Diagrams use the grammar

    HOST ; S1'={i,j}:c=<1/2|1|2|i> ; S2'={k}:c=<...> [; Sc={...}]

with nodes named as in ``rankone hosts``: affine node ``0`` is the extra node,
finite nodes are numbered from ``1``, and nodes of the second factor of a
product carry one prime (``0'``), the third two, and so on.

Exit codes: 0 success, 1 the diagram is not valid (``check``, ``realize``),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import classify, localmodels, notation, realize, rootsys, selftest
from .classify import PrimitiveDiagram, SphericalDiagram

log = logging.getLogger("rankone")


class UsageError(Exception):
    pass


def _diagram(text: str, spherical: bool = False):
    try:
        d = notation.parse_diagram(text)
    except (notation.NotationError, ValueError, KeyError) as exc:
        raise UsageError(f"{exc}\n  grammar: {notation.GRAMMAR}") from None
    if spherical and isinstance(d, PrimitiveDiagram):
        d = d.as_spherical()
    return d


def _host(text: str) -> rootsys.DynkinDiagram:
    try:
        return notation.parse_host(text)
    except notation.NotationError as exc:
        raise UsageError(f"unknown host {text!r}: {exc}") from None


def _verdict(d):
    try:
        if isinstance(d, SphericalDiagram):
            return classify.check_spherical(d)
        return classify.check_primitive(d)
    except classify.HostScopeError as exc:
        raise UsageError(str(exc)) from None


def _verdict_text(v) -> str:
    if v.valid:
        return "valid" + (f" [{', '.join(v.flags)}]" if v.flags else "")
    return f"invalid: {v.failed_condition}: {v.witness}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, text)


def cmd_hosts(args) -> tuple[int, str]:
    tags = []
    if args.kind in ("all", "finite"):
        tags += rootsys.finite_host_tags(args.max_rank)
    if args.kind in ("all", "affine"):
        tags += rootsys.affine_irreducible_tags(args.max_rank) + list(rootsys.AFFINE_PRODUCT_HOSTS)
    hosts = [rootsys.parse_host(t) for t in tags]
    if args.format == "json":
        return 0, _dump([h.to_json() | {"nodes": list(h.names)} for h in hosts])
    return 0, "".join(f"{h.tag}\t{' '.join(h.names)}\n" for h in hosts)


def cmd_catalog(args) -> tuple[int, str]:
    entries = localmodels.catalog(args.max_rank)
    if args.format == "json":
        return 0, _dump([e.to_json() for e in entries])
    lines = []
    for e in entries:
        dec = ",".join(e.support.names[i] for i in sorted(e.decorated))
        lines.append(f"{e.label}\t{e.support.tag or '-'}\tS'={{{dec}}}\tc={e.factor}\tnD={e.nd}\n")
    return 0, "".join(lines)


def cmd_enumerate(args) -> tuple[int, str]:
    tags = args.host or rootsys.affine_irreducible_tags(args.max_rank)
    hosts = [_host(t) for t in tags]
    found = []
    for h in hosts:
        try:
            if args.mode == "primitive":
                found += classify.enumerate_primitive(h, jobs=args.jobs)
            else:
                found += classify.enumerate_spherical(h, jobs=args.jobs)
        except classify.HostScopeError as exc:
            raise UsageError(str(exc)) from None
    log.info("%d diagrams", len(found))
    if args.format == "json":
        return 0, _dump([notation.diagram_to_json(d, _verdict(d)) for d in found])
    if args.format == "dot":
        return 0, "".join(notation.render_dot(d) for d in found)
    lines = []
    for d in found:
        v = _verdict(d)
        lines.append(notation.format_diagram(d) + (f"  [{', '.join(v.flags)}]" if v.flags else "") + "\n")
    return 0, "".join(lines)


def cmd_check(args) -> tuple[int, str]:
    d = _diagram(args.diagram, args.spherical)
    v = _verdict(d)
    code = 0 if v.valid else 1
    if args.format == "json":
        return code, _dump(notation.diagram_to_json(d, v))
    return code, f"{notation.format_diagram(d)}\n{_verdict_text(v)}\n"


def cmd_realize(args) -> tuple[int, str]:
    d = _diagram(args.diagram, args.spherical)
    v = _verdict(d)
    if not v.valid:
        log.error("cannot realize: %s", _verdict_text(v))
        return 1, ""
    r = realize.realize_spherical(d) if isinstance(d, SphericalDiagram) else realize.realize_primitive(d)
    obj = notation.realization_to_json(r, d.host)
    if args.format == "json":
        return 0, _dump(obj)
    out = [notation.format_diagram(d)]
    for key in ("X1", "X2"):
        parts = [f"{x}*P{n}" if d.host.is_affine_irreducible or d.host.is_affine_product else f"{x}*pi{n}"
                 for n, x in obj[key].items()]
        out.append(f"{key} = {' + '.join(parts) or '0'}")
    out.append(f"c = {obj['c']}")
    out.append("omega pairings: " + " ".join(f"{n}:{x}" for n, x in obj["omega_pairings"].items()))
    if "omega_roots" in obj:
        out.append("omega roots: " + " ".join(f"{n}:{x}" for n, x in obj["omega_roots"].items()))
    return 0, "\n".join(out) + "\n"


def cmd_render(args) -> tuple[int, str]:
    d = _diagram(args.diagram, args.spherical)
    if args.format == "dot":
        return 0, notation.render_dot(d)
    if args.format == "json":
        return 0, _dump(notation.diagram_to_json(d))
    return 0, notation.render_text(d)


def cmd_selftest(args) -> tuple[int, str]:
    checks = selftest.run()
    code = 0 if all(c.ok for c in checks) else 1
    if args.format == "json":
        return code, _dump([{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks])
    return code, "".join(c.line() + "\n" for c in checks)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--output", "-o", help="write output to this file instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="rankone", description="Rank one primitive and spherical diagrams.",
                                epilog=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hosts", parents=[common], help="list supported hosts and node names")
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--kind", choices=("all", "finite", "affine"), default="all")
    s.set_defaults(func=cmd_hosts)

    s = sub.add_parser("catalog", parents=[common], help="list local diagrams")
    s.add_argument("--max-rank", type=int, default=8)
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate valid diagrams on hosts")
    s.add_argument("--host", action="append", help="host string (repeatable); default all affine hosts")
    s.add_argument("--mode", choices=("primitive", "spherical"), default="primitive")
    s.add_argument("--max-rank", type=int, default=8, help="rank bound when --host is not given")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    for name, func, helptext in (("check", cmd_check, "check a diagram"),
                                 ("realize", cmd_realize, "compute the momentum segment of a diagram"),
                                 ("render", cmd_render, "draw a diagram")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("diagram")
        s.add_argument("--spherical", action="store_true", help="read a diagram without Sc as spherical")
        s.set_defaults(func=func)

    s = sub.add_parser("selftest", parents=[common], help="run built-in consistency checks")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.format == "dot" and args.command not in ("enumerate", "render"):
        print(f"rankone {args.command}: --format dot is only available for enumerate and render", file=sys.stderr)
        return 2
    try:
        code, text = args.func(args)
    except UsageError as exc:
        print(f"rankone {args.command}: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
