"""``catlaw`` command line: check documents and inspect the structures they declare."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import distlaw as dl
from . import oracle
from .dsl import SpecError, parse_file
from .monad import ComonadData, MonadData
from .report import CatlawError
from .runner import Env, RunResult, elaborate, emit_report, run_checks


def _load(path: str) -> tuple[Any, Env]:
    doc = parse_file(path)
    return doc, elaborate(doc)


def _out(payload: dict[str, Any], fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _cmd_check(args) -> int:
    fmt = args.format
    try:
        doc = parse_file(args.file)
    except SpecError as e:
        res = RunResult(diagnostics=[str(e)])
    else:
        fmt = fmt or doc.options.get("format")
        res = run_checks(doc, args.bound)
    sys.stdout.buffer.write(emit_report(res, fmt or "text"))
    sys.stdout.flush()
    return res.exit_code


def _cmd_em(args) -> int:
    _, env = _load(args.file)
    m = env.lookup_name(args.monad, ("monad",))
    em = env.em(m)
    algebras = [{"id": a, "carrier": x, "action": nu} for a, (x, nu) in enumerate(em.algebras)]
    arrows = [{"id": f, "source": a, "target": b, "underlying": u} for f, (a, b, u) in enumerate(em.arrows)]
    lines = [f"EM({args.monad}): {len(algebras)} algebras, {len(arrows)} morphisms"]
    lines += [f"  algebra {a['id']}: carrier {a['carrier']}, action {a['action']}" for a in algebras]
    lines += [f"  morphism {f['id']}: {f['source']} -> {f['target']} over {f['underlying']}" for f in arrows]
    lines.append(f"  free: {list(em.F.object_map)}")
    _out({"monad": args.monad, "algebras": algebras, "morphisms": arrows, "free": list(em.F.object_map)},
         args.format, lines)
    return 0


def _cmd_lift(args) -> int:
    _, env = _load(args.file)
    d = env.lookup_name(args.law, ("distlaw",))
    if not isinstance(d.monad, MonadData):
        raise CatlawError(f"{args.law} is not a law over a monad")
    em = env.em(d.monad)
    Gt = dl.lift_from_law(d, em)
    lines = [f"lift of {d.G.name or 'G'} along {args.law}:"]
    for a, b in enumerate(Gt.object_map):
        lines.append(f"  algebra {a} {em.algebras[a]} -> algebra {b} {em.algebras[b]}")
    lines.append(f"  arrows: {list(Gt.morphism_map)}")
    payload = {"law": args.law, "objects": list(Gt.object_map), "arrows": list(Gt.morphism_map)}
    if isinstance(d.companion, ComonadData):
        c = dl.lift_comonad(d, em)
        payload.update(delta=list(c.delta.components), eps=list(c.epsilon.components))
        lines.append(f"  delta: {payload['delta']}  eps: {payload['eps']}")
    _out(payload, args.format, lines)
    return 0


def _cmd_law_from_lift(args) -> int:
    _, env = _load(args.file)
    L = env.lookup_name(args.lift, ("lift",))
    d = dl.law_from_lift(L.functor, L.em, L.companion)
    rep = dl.validate_dist_law(d)
    lines = [f"law from {args.lift}: components {list(d.l.components)}",
             "  valid" if rep.ok else "  invalid: " + "; ".join(str(f) for f in rep.failures)]
    _out({"lift": args.lift, "components": list(d.l.components), "valid": rep.ok}, args.format, lines)
    return 0 if rep.ok else 1


def _cmd_enumerate(args) -> int:
    _, env = _load(args.file)
    lines: list[str] = []
    payload: dict[str, Any] = {"what": args.what, "results": []}
    kinds = env.names_of
    if args.what in ("functors", "monads"):
        cats = [args.on] if args.on else kinds("category")
        for name in cats:
            c = env.lookup_name(name, ("category",))
            if args.what == "functors":
                items = [{"objects": list(F.object_map), "arrows": list(F.morphism_map)}
                         for F in oracle.enumerate_functors(c)]
            else:
                items = [{"objects": list(m.T.object_map), "arrows": list(m.T.morphism_map),
                          "mu": list(m.mu.components), "eta": list(m.eta.components)}
                         for m in oracle.enumerate_monads(c)]
            payload["results"].append({"category": name, "count": len(items), "items": items})
            lines.append(f"{name}: {len(items)} {args.what}")
            lines += ["  " + " ".join(f"{k}={v}" for k, v in it.items()) for it in items]
    else:
        monads = [args.monad] if args.monad else kinds("monad")
        companions = [args.companion] if args.companion else kinds("functor") + kinds("comonad")
        for mn in monads:
            m = env.lookup_name(mn, ("monad",))
            for gn in companions:
                G = env.lookup_name(gn, ("functor", "comonad"))
                Gf = dl.underlying(G)
                if Gf.source != m.base or not Gf.is_endo:
                    continue
                items = [list(d.l.components) for d in oracle.enumerate_dist_laws(m, G)]
                payload["results"].append({"monad": mn, "companion": gn, "count": len(items), "items": items})
                lines.append(f"{mn}, {gn}: {len(items)} laws")
                lines += [f"  {it}" for it in items]
    _out(payload, args.format, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catlaw", description="Check categorical laws on finite categories.")
    p.add_argument("--bound", type=int, default=None,
                   help="enumeration ceiling on morphisms per category (default: CATLAW_BOUND or 24)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.add_argument("--format", choices=("text", "json"), default=None)
        sp.add_argument("--bound", type=int, default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    add("check", _cmd_check, "run every check in a document")
    add("em", _cmd_em, "print the Eilenberg-Moore category of a monad").add_argument("--monad", required=True)
    add("lift", _cmd_lift, "print the lift induced by a law").add_argument("--law", required=True)
    add("law-from-lift", _cmd_law_from_lift, "recover a law from a declared lift").add_argument(
        "--lift", required=True)
    e = add("enumerate", _cmd_enumerate, "enumerate functors, monads or laws")
    e.add_argument("--what", choices=("functors", "monads", "laws"), required=True)
    e.add_argument("--on", help="category (functors, monads)")
    e.add_argument("--monad", help="monad (laws)")
    e.add_argument("--companion", help="functor or comonad (laws)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "check" and args.format is None:
        args.format = "text"
    try:
        with oracle.bound_override(args.bound if args.command != "check" else None):
            return args.fn(args)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CatlawError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
