"""Command-line entry point ``tl``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import commutor as cm
from . import crystal as cr
from . import diagrams as dg
from . import fiber as fb
from . import functor as fn
from . import semisimple as ss
from . import verify as vf
from .diagrams import Diagram
from .errors import TLError
from .jones_wenzl import jw
from .morphisms import Morphism, compose
from .render import render
from .scalars import Q0, format_rational, parse_context


class UsageError(Exception):
    """Bad flag value; reported with the flag name and exit code 2."""


def _read(text: str, flag: str):
    try:
        if text == "-":
            raw = sys.stdin.read()
        elif text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                raw = fh.read()
        else:
            raw = text
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _diagram(text: str, flag: str) -> Diagram:
    try:
        return Diagram.from_json(_read(text, flag))
    except TLError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _morphism(text: str, flag: str, ctx=None) -> Morphism:
    obj = _read(text, flag)
    try:
        if isinstance(obj, dict) and "terms" in obj:
            f = Morphism.from_json(obj)
            if ctx is not None and f.context != ctx:
                raise UsageError(f"{flag}: morphism context {f.context} differs from --param {ctx}")
            return f
        return Morphism.of(Diagram.from_json(obj), ctx if ctx is not None else Q0)
    except TLError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _bound(args, default: int) -> int:
    if args.max is not None:
        return args.max
    env = os.environ.get("TL_MAX_N")
    return int(env) if env else default


def _emit(args, payload, obj=None) -> None:
    """JSON payload by default; ascii/tikz render ``obj`` when one is given."""
    if args.format in ("ascii", "tikz") and obj is not None:
        print(render(obj, args.format))
    else:
        print(json.dumps(payload, indent=2))


def _check_n(n: int, bound: int, flag: str = "--n") -> None:
    if n < 0:
        raise UsageError(f"{flag}: must be a natural number")
    if n > bound:
        raise UsageError(f"{flag}: {n} exceeds the bound {bound} (raise with --max or TL_MAX_N)")


def _basis(f: Morphism, basis: str):
    if basis == "hat":
        return [{"coeff": format_rational(c), "hat": d.to_json()} for d, c in
                sorted(ss.expand_hat(f).items(), key=lambda kv: dg._sort_key(kv[0]))]
    return f.to_json()


# verbs


def cmd_dims(args) -> int:
    if (args.m + args.n) % 2:
        raise UsageError("--m/--n: m + n must be even")
    print(json.dumps({"dim": len(dg.hom(args.m, args.n))}))
    return 0


def cmd_enumerate(args) -> int:
    if args.mode == "hom":
        if args.m is None:
            raise UsageError("--m: required for mode hom")
        _check_n(args.m + args.n, _bound(args, 16), "--m/--n")
        ds = dg.enumerate_diagrams("hom", args.m, args.n)
    else:
        _check_n(args.n, _bound(args, 16))
        ds = dg.enumerate_diagrams("cap", args.n)
    if args.format in ("ascii", "tikz"):
        for i, d in enumerate(ds):
            print(f"# {i + 1}: th={d.th}")
            print(render(d, args.format))
    else:
        print(json.dumps({"count": len(ds), "diagrams": [d.to_json() for d in ds]}, indent=2))
    return 0


def cmd_compose(args) -> int:
    ctx = parse_context(args.param)
    g = _morphism(args.g, "--g", ctx)
    f = _morphism(args.f, "--f", ctx)
    out = compose(g, f)
    _emit(args, out.to_json(), out)
    return 0


def cmd_jw(args) -> int:
    _check_n(args.n, _bound(args, 20))
    f = jw(args.n)
    _emit(args, f.to_json(), f)
    return 0


def cmd_hat(args) -> int:
    if args.diagram:
        x = _diagram(args.diagram, "--diagram")
        f = ss.hat(x)
        _emit(args, f.to_json(), f)
        return 0
    if args.expand:
        f = _morphism(args.expand, "--expand")
        print(json.dumps({"hat_expansion": _basis(f, "hat")}, indent=2))
        return 0
    raise UsageError("--diagram or --expand: one is required")


def cmd_blocks(args) -> int:
    _check_n(args.m, _bound(args, 12), "--m")
    blocks = ss.end_block_decomposition(args.m)
    if args.format == "ascii":
        print("k  r_k")
        for k, r in blocks:
            print(f"{k:<2} {r}")
    else:
        print(json.dumps({"m": args.m, "blocks": [{"k": k, "r": r} for k, r in blocks],
                          "dim": sum(r * r for _, r in blocks)}, indent=2))
    return 0


def cmd_mobius(args) -> int:
    x = _diagram(args.diagram, "--diagram")
    try:
        f = ss.mobius_bracket(x)
    except TLError as exc:
        raise UsageError(f"--diagram: {exc}") from exc
    if args.format in ("ascii", "tikz"):
        print(render(f, args.format))
    else:
        print(json.dumps({"bracket": f.to_json(), "equals_hat": f == ss.hat(x)}, indent=2))
    return 0


def cmd_crystal_components(args) -> int:
    bound = _bound(args, cr.DEFAULT_BOUND)
    try:
        comps = cr.components(args.n, bound=bound)
    except TLError as exc:
        raise UsageError(f"--n: {exc}") from exc
    if args.edges:
        print("\n".join(cr.crystal_edges(args.n, bound=bound)))
        return 0
    if args.format == "ascii":
        for c in comps:
            print(c)
    else:
        print(json.dumps({"n": args.n, "components": [
            {"lambda": c.highest_weight, "chain": [cr.bits_str(x) for x in c.chain]} for c in comps]},
            indent=2))
    return 0


def cmd_crystal_tensor(args) -> int:
    print(json.dumps({"lambda": args.lam, "mu": args.mu,
                      "components": cr.tensor_decompose(args.lam, args.mu)}))
    return 0


def cmd_functor_check(args) -> int:
    if args.morphism:
        f = _morphism(args.morphism, "--morphism")
        try:
            payload = fn.F_json(f)
        except TLError as exc:
            raise UsageError(f"--morphism: {exc}") from exc
        print(json.dumps(payload, indent=2))
        return 0
    if args.projection:
        x = _diagram(args.projection, "--projection")
        ok, problems = fn.verify_projection(x, detail=True)
        print(json.dumps({"ok": ok, "problems": problems}, indent=2))
        return 0 if ok else 1
    n = _bound(args, 6)
    results = {}
    for k in range(n + 1):
        results[str(k)] = all(fn.verify_projection(x) for x in dg.cap_diagrams(k))
    ok = all(results.values())
    print(json.dumps({"ok": ok, "projection_by_n": results}, indent=2))
    return 0 if ok else 1


def cmd_sigma(args) -> int:
    _check_n(args.m + args.n, _bound(args, 10), "--m/--n")
    f = cm.sigma(args.m, args.n)
    perm = cr.hk_permutation(args.m, args.n)
    if args.format in ("ascii", "tikz"):
        print(render(f, args.format))
    else:
        print(json.dumps({"sigma": _basis(f, args.basis),
                          "hk_permutation": {cr.bits_str(k): cr.bits_str(v) for k, v in perm.items()}},
                         indent=2))
    return 0


def cmd_interval_reversal(args) -> int:
    _check_n(args.n, _bound(args, 10))
    try:
        f = cm.interval_reversal(args.p, args.q, args.n)
    except TLError as exc:
        raise UsageError(f"--p/--q: {exc}") from exc
    perm = cm.reversal_permutation(args.p, args.q, args.n)
    if args.format in ("ascii", "tikz"):
        print(render(f, args.format))
    else:
        print(json.dumps({"reversal": _basis(f, args.basis), "permutation": list(perm)}, indent=2))
    return 0


def _parse_word(text: str):
    word = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        try:
            p, q = (int(v) for v in part.split(","))
        except ValueError as exc:
            raise UsageError(f"--word: bad generator {part!r}, expected p,q") from exc
        word.append((p, q))
    return word


def cmd_cactus_check(args) -> int:
    _check_n(args.n, _bound(args, 6))
    word = _parse_word(args.word or "")
    try:
        f, perm = cm.cactus_apply(word, args.n)
    except TLError as exc:
        raise UsageError(f"--word: {exc}") from exc
    crystal = fn.permutation_matrix(cr.hk_cactus_permutation(word, args.n), args.n)
    matches = fn.apply_F(f) == crystal
    rels = vf.cactus_relations(args.n) if args.n >= 2 else {}
    ok = matches and all(rels.values())
    payload = {"ok": ok, "word": [list(w) for w in word], "permutation": list(perm),
               "matches_crystal_action": matches, "relations": rels,
               "morphism": f.to_json()}
    print(json.dumps(payload, indent=2))
    return 0 if ok else 1


def _triple_input(args):
    obj = _read(args.triple, "--triple")
    try:
        return fb.as_qmatrix(obj["b"]), fb.as_qmatrix(obj["t"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--triple: expected {{\"b\": [[...]], \"t\": [[...]]}}: {exc}") from exc


def cmd_fiber_validate(args) -> int:
    b, t = _triple_input(args)
    try:
        rep = fb.triple_report(b, t)
    except TLError as exc:
        raise UsageError(f"--triple: {exc}") from exc
    L, R = fb.radicals(b)
    ok = rep["in_radical_product"] and rep["trace_one"]
    out = {"valid": ok, **fb.report_json(rep),
           "left_radical": [[format_rational(v) for v in vec] for vec in L],
           "right_radical": [[format_rational(v) for v in vec] for vec in R]}
    if not ok:
        try:
            fb.validate_triple(b, t)
        except TLError as exc:
            out["error"] = f"{type(exc).__name__}: {exc}"
    print(json.dumps(out, indent=2))
    return 0 if ok else 1


def cmd_fiber_invariant(args) -> int:
    b, t = _triple_input(args)
    try:
        T = fb.validate_triple(b, t)
        A = fb.radical_matrix(T)
    except TLError as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}))
        return 1
    print(json.dumps({"A": [[format_rational(v) for v in row] for row in A.to_dense()],
                      "charpoly": [format_rational(c) for c in A.charpoly()],
                      "trace": format_rational(A.trace())}, indent=2))
    return 0


def cmd_verify(args) -> int:
    results = vf.run(args.suite, args.max)
    ok = all(r.ok for r in results)
    if args.format == "ascii":
        for r in results:
            for c in r.checks:
                print(f"{'PASS' if c.ok else 'FAIL'} [{r.suite}] {c.name}")
    else:
        print(json.dumps({"ok": ok, "suites": [r.to_json() for r in results]}, indent=2))
    return 0 if ok else 1


def cmd_render(args) -> int:
    obj = _read(args.input, "--input")
    try:
        thing = Morphism.from_json(obj) if isinstance(obj, dict) and "terms" in obj else Diagram.from_json(obj)
    except TLError as exc:
        raise UsageError(f"--input: {exc}") from exc
    print(render(thing, args.format or "json"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", "--render", dest="format", choices=["json", "ascii", "tikz"],
                        default="json")
    common.add_argument("--param", default="0", help="0, generic, a rational, bar:a or tilde:a")
    common.add_argument("--max", type=int, default=None, help="size bound")

    p = argparse.ArgumentParser(prog="tl", parents=[common],
                                description="q=0 Temperley-Lieb calculus and sl2 crystals")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    s = verb("dims", cmd_dims)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s = verb("enumerate", cmd_enumerate)
    s.add_argument("--mode", choices=["hom", "cap"], default="hom")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int, required=True)
    s = verb("compose", cmd_compose)
    s.add_argument("--g", required=True, help="JSON, @file or -")
    s.add_argument("--f", required=True, help="JSON, @file or -")
    s = verb("jw", cmd_jw)
    s.add_argument("--n", type=int, required=True)
    s = verb("hat", cmd_hat)
    s.add_argument("--diagram")
    s.add_argument("--expand")
    s = verb("blocks", cmd_blocks)
    s.add_argument("--m", type=int, required=True)
    s = verb("mobius", cmd_mobius)
    s.add_argument("--diagram", required=True)
    s = verb("crystal-components", cmd_crystal_components)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--edges", action="store_true")
    s = verb("crystal-tensor", cmd_crystal_tensor)
    s.add_argument("--lam", type=int, required=True)
    s.add_argument("--mu", type=int, required=True)
    s = verb("functor-check", cmd_functor_check)
    s.add_argument("--morphism")
    s.add_argument("--projection")
    for name, func in (("sigma", cmd_sigma),):
        s = verb(name, func)
        s.add_argument("--m", type=int, required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--basis", choices=["diagram", "hat"], default="diagram")
    s = verb("interval-reversal", cmd_interval_reversal)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--basis", choices=["diagram", "hat"], default="diagram")
    s = verb("cactus-check", cmd_cactus_check)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--word", help="generators p,q separated by ';', applied left to right")
    s = verb("fiber-validate", cmd_fiber_validate)
    s.add_argument("--triple", required=True, help='{"b": [[...]], "t": [[...]]}')
    s = verb("fiber-invariant", cmd_fiber_invariant)
    s.add_argument("--triple", required=True)
    s = verb("verify", cmd_verify)
    s.add_argument("suite", choices=["all", *vf.SUITES])
    s = verb("render", cmd_render)
    s.add_argument("--input", required=True, help="diagram or morphism JSON, @file or -")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tl {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except TLError as exc:
        print(f"tl {args.verb}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
