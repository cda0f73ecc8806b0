"""``catkit`` command line.

Exit codes: 0 when the command succeeds and the property asked about
holds, 1 when the property fails (the counterexample is printed on
standard output), 2 for usage, parse, input and guard errors.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

from ..errors import CatkitError, DslError, EnumerationTooLarge, NoPathLift
from ..finite import guard, guard_limit
from ..functor import FinFunctor
from ..precat import FinPrecategory, MorRef, classify, is_univalent
from ..yoneda import FinPresheaf
from .dsl import SourceFile, export_dsl, parse_dsl
from .export import export_dot, export_json, parse_json

OK, FAILS, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def load_source(path: str) -> SourceFile:
    """Read a ``.json`` file written by ``export-json``/``saturate``, or DSL source otherwise."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    if path.endswith(".json"):
        try:
            return parse_json(text, path)
        except (ValueError, KeyError, TypeError) as e:
            raise UsageError(f"{path}: not a catkit JSON document: {e}")
    return parse_dsl(text, path)


def _item(sf: SourceFile, name: str, kind: str):
    try:
        return sf.get(name, kind)
    except KeyError as e:
        raise UsageError(e.args[0])


def _require_valid(sf: SourceFile, name: str):
    diags = sf.diagnostics.get(name, [])
    if diags:
        lines = [f"{name} is not a valid {sf.kind(name)}:"] + [f"  {d}" for d in diags]
        raise UsageError("\n".join(lines))


def _valid_item(sf, name, kind):
    item = _item(sf, name, kind)
    _require_valid(sf, name)
    for dep in _dependencies(sf, item):
        _require_valid(sf, dep)
    return item


def _dependencies(sf, item):
    cats = []
    if isinstance(item, FinFunctor):
        cats = [item.dom, item.cod]
    elif isinstance(item, FinPresheaf):
        cats = [item.base]
    return [k for k, v in sf.items.items() if any(v is C for C in cats)]


def _name_of(sf, C):
    return next((k for k, v in sf.items.items() if v is C), "?")


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# --------------------------------------------------------------------------- commands


def cmd_check(args, out):
    sf = load_source(args.file)
    names = [args.name] if args.name else list(sf.items)
    for n in names:
        _item(sf, n, None)
    bad = 0
    for n in names:
        diags = sf.diagnostics.get(n, [])
        if diags:
            bad += 1
            print(f"{n} ({sf.kind(n)}): {len(diags)} violation(s)", file=out)
            for d in diags:
                print(f"  {sf.path}:{d}", file=out)
        else:
            print(f"{n} ({sf.kind(n)}): valid", file=out)
    return FAILS if bad else OK


def cmd_univalent(args, out):
    sf = load_source(args.file)
    C = _valid_item(sf, args.name, "precategory")
    rep = is_univalent(C)
    print(f"{args.name}: {rep.summary(C)}", file=out)
    if rep:
        cl = classify(C)
        print(f"  strict: {_yn(cl.strict)}, gaunt: {_yn(cl.gaunt)}", file=out)
        return OK
    return FAILS


def _yn(b):
    return "yes" if b else "no"


def cmd_saturate(args, out):
    from ..rezk import rezk_completion

    sf = load_source(args.file)
    C = _valid_item(sf, args.name, "precategory")
    Chat, _ = rezk_completion(C)
    result = SourceFile(args.out, "", {args.name: Chat})
    text = export_json(result) if (args.out or "").endswith(".json") else export_dsl(result)
    if args.out:
        _write(args.out, text)
        print(f"{args.name}: Rezk completion written to {args.out}", file=out)
    else:
        out.write(text)
    return OK


def cmd_weq(args, out):
    from ..equiv import is_weak_equivalence

    sf = load_source(args.file)
    F = _valid_item(sf, args.functor, "functor")
    rep = is_weak_equivalence(F)
    print(f"{args.functor}: {'weak equivalence' if rep else 'not a weak equivalence'}", file=out)
    print(f"  faithful: {_yn(rep.ff.faithful)}, full: {_yn(rep.ff.full)}, "
          f"essentially surjective: {_yn(not rep.unreachable)}", file=out)
    A, B = F.dom, F.cod
    for a, b, why in rep.ff.failures:
        print(f"  hom({A.obj_label(a)}, {A.obj_label(b)}): {why}", file=out)
    if rep.unreachable:
        print(f"  not in the essential image: {', '.join(B.obj_label(b) for b in rep.unreachable)}", file=out)
    return OK if rep else FAILS


def cmd_equiv(args, out):
    from ..equiv import check_adjunction, equivalence_from_ffeso
    from ..errors import NotEssentiallySurjective, NotFullyFaithful

    sf = load_source(args.file)
    F = _valid_item(sf, args.functor, "functor")
    try:
        eq = equivalence_from_ffeso(F)
    except (NotFullyFaithful, NotEssentiallySurjective, NoPathLift) as e:
        print(f"{args.functor}: no adjoint inverse equivalence: {e}", file=out)
        return FAILS
    A, B = F.dom, F.cod
    G = eq.G
    print(f"{args.functor}: adjoint equivalence constructed", file=out)
    for b in range(B.n):
        print(f"  G({B.obj_label(b)}) = {A.obj_label(G.obj_map[b])}", file=out)
    for b, e in enumerate(eq.adj.eps.components):
        print(f"  eps at {B.obj_label(b)}: {B.mor_label(MorRef(F.obj_map[G.obj_map[b]], b, e))}", file=out)
    for a, e in enumerate(eq.adj.eta.components):
        print(f"  eta at {A.obj_label(a)}: {A.mor_label(MorRef(a, G.obj_map[F.obj_map[a]], e))}", file=out)
    rep = check_adjunction(eq.adj)
    print(f"  triangle identities: {'hold' if rep.ok else rep.summary()}", file=out)
    return OK if rep.ok else FAILS


def cmd_functor_cat(args, out):
    from ..funcat import functor_category

    sf = load_source(args.file)
    A = _valid_item(sf, args.dom, "precategory")
    B = _valid_item(sf, args.cod, "precategory")
    FC = functor_category(A, B)
    rep = is_univalent(FC)
    print(f"{args.cod}^{args.dom}: {FC.n} functor(s), {FC.morphism_count} natural transformation(s), "
          f"{sum(sum(r) for r in FC.paths.sizes)} functor path(s), {rep.summary(FC).splitlines()[0]}", file=out)
    for x in range(FC.n):
        F = FC.obj_labels[x]
        shown = ", ".join(f"{A.obj_label(a)}->{B.obj_label(b)}" for a, b in enumerate(F.obj_map))
        print(f"  F{x}: {shown}", file=out)
    if args.out:
        name = f"{args.cod}_{args.dom}"
        result = SourceFile(args.out, "", {name: _plain_labels(FC)})
        _write(args.out, export_json(result) if args.out.endswith(".json") else export_dsl(result))
    return OK


def _plain_labels(FC: FinPrecategory) -> FinPrecategory:
    """Replace functor/transformation labels by short names so the result can be exported."""
    n = FC.n
    mor = tuple(tuple(tuple(None if (a == b and i == FC.identity[a]) else f"t{a}_{b}_{i}"
                            for i in range(FC.hom_sizes[a][b])) for b in range(n)) for a in range(n))
    G = FC.paths
    plabels = tuple(tuple(tuple(f"refl(F{a})" if (a == b and p == G.refl[a]) else f"p{a}_{b}_{p}"
                                for p in range(G.sizes[a][b])) for b in range(n)) for a in range(n))
    G2 = type(G)(G.sizes, G.refl, G.comp, G.inv, plabels)
    return FinPrecategory(FC.hom_sizes, FC.identity, FC.comp, G2, FC.transport,
                          tuple(f"F{x}" for x in range(n)), mor)


def cmd_yoneda(args, out):
    from ..equiv import ff_report
    from ..yoneda import (enumerate_presheaf_mors, enumerate_presheaves, presheaf_precategory, yoneda_backward,
                          yoneda_forward, yoneda_functor, yoneda_object)

    sf = load_source(args.file)
    A = _valid_item(sf, args.name, "precategory")
    if args.object is not None:
        objs = [a for a in range(A.n) if A.obj_label(a) == args.object]
        if not objs:
            raise UsageError(f"{args.name} has no object {args.object}")
    else:
        objs = list(range(A.n))
    pres = [(k, P) for k, P in sf.named("presheaf").items() if P.base is A]
    for k, _ in pres:
        _require_valid(sf, k)
    n_decl = len(pres)
    pres += [(f"y({A.obj_label(b)})", yoneda_object(A, b)) for b in range(A.n)]
    if args.max_carrier:
        pres += [(str(P), P) for P in enumerate_presheaves(A, args.max_carrier)]
    n_enum = len(pres) - n_decl - A.n
    bad = []
    for a in objs:
        ya = yoneda_object(A, a)
        for k, P in pres:
            mors = enumerate_presheaf_mors(ya, P)
            fwd = [yoneda_forward(A, a, P, al) for al in mors]
            ok = (sorted(fwd) == list(range(P.carrier[a]))
                  and all(yoneda_backward(A, a, P, x) == al for x, al in zip(fwd, mors)))
            if not ok:
                bad.append((A.obj_label(a), k))
    print(f"{args.name}: Yoneda bijection checked for {len(objs)} object(s) against {len(pres)} presheaf/presheaves"
          f" ({n_decl} declared, {A.n} representable, {n_enum} enumerated)",
          file=out)
    for a, k in bad:
        print(f"  fails at object {a} for presheaf {k}", file=out)
    Y = yoneda_functor(A, presheaf_precategory(A, [yoneda_object(A, b) for b in range(A.n)]))
    ff = ff_report(Y)
    print(f"  Yoneda embedding fully faithful: {_yn(ff.fully_faithful)}", file=out)
    return OK if not bad and ff.fully_faithful else FAILS


def cmd_precompose(args, out):
    from ..harness.suites import check_precomposition

    sf = load_source(args.file)
    H = _valid_item(sf, args.functor, "functor")
    C = _valid_item(sf, args.target, "precategory")
    rep = check_precomposition(H, C)
    d = rep.details
    dom, cod = (_name_of(sf, X) for X in (H.dom, H.cod))
    print(f"(- . {args.functor}): {args.target}^{cod} -> {args.target}^{dom}", file=out)
    print(f"  functors: {d['functors_from_codomain']} from the codomain, {d['functors_from_domain']} from the domain",
          file=out)
    print(f"  natural transformations: {d['morphisms_from_codomain']} and {d['morphisms_from_domain']}", file=out)
    print(f"  faithful: {_yn(d['precomposition_faithful'])}, full: {_yn(d['precomposition_full'])}, "
          f"isomorphism of precategories: {_yn(d['precomposition_iso'])}", file=out)
    for f in rep.failures:
        print(f"  theorem violated: {f['message']}", file=out)
    return OK if d["precomposition_iso"] and rep.ok else FAILS


def cmd_harness(args, out):
    from ..harness import GenBounds, run_theorem_suite

    try:
        b = GenBounds(args.max_objects, args.max_hom, args.max_paths, guard_limit(), args.seed,
                      up_to_iso=not args.all_instances)
    except ValueError as e:
        raise UsageError(str(e))
    reports = run_theorem_suite(b, only=args.suite or None)
    if args.json:
        doc = {"bounds": {"max_objects": b.max_objects, "max_hom": b.max_hom_size, "max_paths": b.max_path_size,
                          "seed": b.seed, "up_to_iso": b.up_to_iso},
               "suites": [r.to_dict(timings=args.timings) for r in reports]}
        print(json.dumps(doc, sort_keys=True, indent=1), file=out)
    else:
        for r in reports:
            t = f" ({r.wall_time:.1f}s)" if args.timings else ""
            print(r.line() + t, file=out)
        for r in reports:
            for f in r.failures:
                print(f"counterexample for {r.theorem}: {json.dumps(f, sort_keys=True)}", file=out)
    return OK if all(r.ok for r in reports) else FAILS


def cmd_export_dot(args, out):
    sf = load_source(args.file)
    out.write(export_dot(_item(sf, args.name, None), args.name))
    return OK


def cmd_export_json(args, out):
    sf = load_source(args.file)
    text = export_json(sf)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text + "\n")
    return OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catkit", description="Finite precategories, univalence and the Rezk completion.")
    p.add_argument("--guard", type=int, help="enumeration guard (default: CATKIT_GUARD or 1000000)")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(fn=fn)
        return s

    s = cmd("check", cmd_check, "validate items against their laws")
    s.add_argument("file")
    s.add_argument("--name")
    s = cmd("univalent", cmd_univalent, "decide univalence of a precategory")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s = cmd("saturate", cmd_saturate, "Rezk completion of a precategory")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s.add_argument("--out", help="write here (.json for JSON, DSL otherwise) instead of standard output")
    s = cmd("weq", cmd_weq, "is a functor a weak equivalence")
    s.add_argument("file")
    s.add_argument("--functor", required=True)
    s = cmd("equiv", cmd_equiv, "build an adjoint inverse equivalence")
    s.add_argument("file")
    s.add_argument("--functor", required=True)
    s = cmd("functor-cat", cmd_functor_cat, "functor category B^A")
    s.add_argument("file")
    s.add_argument("--dom", required=True)
    s.add_argument("--cod", required=True)
    s.add_argument("--out")
    s = cmd("yoneda", cmd_yoneda, "check the Yoneda lemma and embedding")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s.add_argument("--object")
    s.add_argument("--max-carrier", type=int, default=0, help="also test all presheaves with carriers up to K")
    s = cmd("precompose", cmd_precompose, "precomposition with a functor")
    s.add_argument("file")
    s.add_argument("--functor", required=True)
    s.add_argument("--target", required=True)
    s = cmd("harness", cmd_harness, "run the theorem suites on generated instances")
    s.add_argument("--max-objects", type=int, default=2)
    s.add_argument("--max-hom", type=int, default=2)
    s.add_argument("--max-paths", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    s.add_argument("--all-instances", action="store_true", help="do not collapse isomorphic instances")
    s.add_argument("--json", action="store_true")
    s.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical output)")
    s = cmd("export-dot", cmd_export_dot, "DOT rendering of an item")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s = cmd("export-json", cmd_export_json, "lossless JSON of every item in a file")
    s.add_argument("file")
    s.add_argument("--out")
    return p


def run(argv, out, err) -> int:
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    try:
        limit = args.guard if args.guard is not None else guard_limit()
        with guard(limit):
            return args.fn(args, out)
    except DslError as e:
        where = getattr(args, "file", "")
        for d in e.diagnostics:
            print(f"{where}:{d}", file=err)
        return ERROR
    except UsageError as e:
        print(f"catkit: {e}", file=err)
        return ERROR
    except EnumerationTooLarge as e:
        print(f"catkit: {e}; raise the limit with --guard or CATKIT_GUARD", file=err)
        return ERROR
    except (CatkitError, ValueError) as e:
        print(f"catkit: {e}", file=err)
        return ERROR


def run_command(argv) -> tuple[int, str, str]:
    """Run in-process; returns ``(exit code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else list(argv), sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
