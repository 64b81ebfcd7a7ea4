"""Command-line interface: ``verify``, ``construct``, ``search`` and ``corpus``.

Exit codes: 0 everything requested passed, 1 a check (or a construction's
self-verification) failed, 2 usage, parse or validation error, 3 a
precondition of a checker or construction failed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .checkers import CHECKER_NAMES, applicable_checkers, verdict
from .constructions import (
    bhas_from_ns,
    cocycle_from_ns,
    functor_F,
    functor_G,
    ns_bimodule,
    ns_from_bhas_with_bimodule,
    ns_from_gen_nijenhuis,
    ns_from_twisted_rb,
    perturbation_operators,
    perturbation_product,
    split_null_extension,
    tridend_embed_ns,
    yau_twist_ns,
)
from .documents import canonical_json, digest, parse_presentation, report_document, serialize
from .errors import BiHomError, ConstructionFailed, ParseError, PrerequisiteFailed, ValidationError
from .multilinear import LinearMap, Vector
from .operators import GenNijInstance, TwistedRBInstance
from .structures import AlgebraPresentation, BimodulePresentation, check_bihom_associative, check_bimodule

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
CORPUS_ENV = "BIHOMNS_CORPUS"

KIND_CHECKERS = {
    "Algebra": "associative",
    "BiHomAssociative": "bihom_associative",
    "NS": "ns",
    "BiHomNS": "bihom_ns",
    "BiHomTridendriform": "bihom_tridendriform",
    "Reynolds": "reynolds",
    "Nijenhuis": "nijenhuis",
    "GenNijenhuis": "gen_nijenhuis",
    "Bimodule": "bimodule",
    "BimoduleAlgebra": "bimodule_algebra",
    "HochschildCocycle": "hochschild_2cocycle",
    "TwistedRB": "twisted_rb",
}

CONSTRUCTIONS = (
    "star_sum", "ns_bimodule", "ns_from_bimodule", "yau_twist", "split_null_extension", "tridend_embed_ns",
    "ns_from_twisted_rb", "functor_F", "functor_G", "cocycle_from_ns", "ns_from_gen_nijenhuis", "perturbation",
)


def _read(path: str):
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_presentation(text)


def _kind_of(obj) -> str | None:
    if isinstance(obj, AlgebraPresentation):
        return obj.kind
    if isinstance(obj, TwistedRBInstance):
        return "TwistedRB"
    if isinstance(obj, tuple):
        return "HochschildCocycle"
    return "BimoduleAlgebra" if obj.bullet is not None else "Bimodule"


def _parse_renames(items) -> dict[str, str]:
    out = {}
    for item in items or ():
        old, sep, new = item.partition("=")
        if not sep or not old or not new:
            raise ValidationError(f"--rename expects old=new, got {item!r}")
        out[old] = new
    return out


def cmd_verify(args) -> int:
    obj = _read(args.file)
    renames = _parse_renames(args.rename)
    if renames:
        if not isinstance(obj, AlgebraPresentation):
            raise ValidationError("--rename applies to algebra presentations only")
        obj = obj.renamed(renames)
    checks = args.check
    if not checks:
        kind = _kind_of(obj)
        checks = [KIND_CHECKERS[kind]] if kind in KIND_CHECKERS else applicable_checkers(obj)
    for name in checks:
        if name not in CHECKER_NAMES:
            raise ValidationError(f"unknown checker {name!r}; choose from {', '.join(CHECKER_NAMES)}")
    reports = {name: verdict(name, obj) for name in checks}
    doc = report_document(reports, digest(obj))
    text = canonical_json(doc)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    outcomes = [r["verdict"] for r in reports.values()]
    if "fail" in outcomes:
        return EXIT_FAIL
    if "precondition" in outcomes:
        return EXIT_PRECONDITION
    return EXIT_PASS


def _read_map(path: str, preferred: str) -> LinearMap:
    obj = _read(path)
    if not isinstance(obj, AlgebraPresentation):
        raise ValidationError(f"{path}: expected a document holding a map")
    if preferred in obj.maps:
        return obj.maps[preferred]
    if len(obj.maps) == 1:
        return next(iter(obj.maps.values()))
    raise ValidationError(f"{path}: no map named {preferred!r} and not exactly one map")


def _need(obj, cls, name: str):
    if not isinstance(obj, cls):
        raise ValidationError(f"{name} expects a {cls.__name__} document")
    return obj


def _construct(name: str, inputs: list, args):
    """Returns ``(output object, verification report)``."""
    first = inputs[0]
    if name == "star_sum":
        p = bhas_from_ns(_need(first, AlgebraPresentation, name))
        return p, check_bihom_associative(p)
    if name == "ns_bimodule":
        b = ns_bimodule(_need(first, AlgebraPresentation, name))
        return b, check_bimodule(b)
    if name == "ns_from_bimodule":
        r = ns_from_bhas_with_bimodule(_need(first, BimodulePresentation, name))
        return r.output, r.verification
    if name == "yau_twist":
        if not args.alpha or not args.beta:
            raise ValidationError("yau_twist needs --alpha and --beta")
        r = yau_twist_ns(_need(first, AlgebraPresentation, name), _read_map(args.alpha, "alpha"),
                         _read_map(args.beta, "beta"))
        return r.output, r.verification
    if name == "split_null_extension":
        r = split_null_extension(_need(first, BimodulePresentation, name))
        return r.output, r.verification
    if name == "tridend_embed_ns":
        r = tridend_embed_ns(_need(first, AlgebraPresentation, name))
        return r.output, r.verification
    if name == "ns_from_twisted_rb":
        r = ns_from_twisted_rb(_need(first, TwistedRBInstance, name))
        return r.output, r.verification
    if name == "functor_F":
        from .operators import check_twisted_rb
        t = functor_F(_need(first, AlgebraPresentation, name))
        return t, check_twisted_rb(t)
    if name == "functor_G":
        from .structures import check_bihom_ns
        p = functor_G(_need(first, TwistedRBInstance, name))
        return p, check_bihom_ns(p)
    if name == "cocycle_from_ns":
        from .structures import check_hochschild_2cocycle
        b, H = cocycle_from_ns(_need(first, AlgebraPresentation, name))
        return (b, H), check_hochschild_2cocycle(b, H)
    if name == "ns_from_gen_nijenhuis":
        g = GenNijInstance.from_presentation(_need(first, AlgebraPresentation, name))
        r = ns_from_gen_nijenhuis(g)
        return r.output, r.verification
    if name == "perturbation":
        p = _need(first, AlgebraPresentation, name)
        if not args.vector:
            raise ValidationError("perturbation needs --vector, e.g. --vector 0,1")
        v = Vector(p.field, [p.field.parse_value(t) for t in args.vector.split(",")])
        perturbation_operators(p, v)
        alpha, beta = p.map("alpha"), p.map("beta")
        out = AlgebraPresentation(p.dim, p.field, {"mu": perturbation_product(p, v)},
                                  {"alpha": alpha.power(2), "beta": beta.power(2)}, "BiHomAssociative")
        return out, check_bihom_associative(out)
    raise ValidationError(f"unknown construction {name!r}")


def cmd_construct(args) -> int:
    inputs = [_read(path) for path in args.inputs]
    try:
        out, report = _construct(args.name, inputs, args)
    except ConstructionFailed as exc:
        print(f"{args.name}: {exc.report}")
        return EXIT_FAIL
    provenance = {"construction": args.name, "inputs": [digest(x) for x in inputs]}
    Path(args.output).write_text(serialize(out, provenance), encoding="utf-8")
    print(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_search(args) -> int:
    from .search import load_spec, run_search, write_entries
    spec = load_spec(args.spec)
    if args.seed is not None:
        spec = spec.with_seed(args.seed)
    outcome = run_search(spec, args.checker)
    root = args.corpus or os.environ.get(CORPUS_ENV, "corpus")
    written = write_entries(root, outcome.entries)
    summary = dict(outcome.counts, examined=outcome.examined, written=len(written))
    sys.stdout.write(canonical_json(summary))
    return EXIT_PASS


def cmd_corpus(args) -> int:
    from .corpus import DEFAULT_SEED, write_corpus
    root = args.out or os.environ.get(CORPUS_ENV, "corpus")
    corpus = write_corpus(root, DEFAULT_SEED if args.seed is None else args.seed)
    sys.stdout.write(canonical_json(corpus.counts()))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bihomns", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run checkers on a presentation document")
    v.add_argument("file")
    v.add_argument("--check", action="append", metavar="NAME", help="checker to run (repeatable)")
    v.add_argument("--rename", action="append", metavar="OLD=NEW", help="rename an op or map first, e.g. dot=vee")
    v.add_argument("--report", metavar="PATH", help="also write the report document here")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="apply a construction and write its verified output")
    c.add_argument("name", choices=CONSTRUCTIONS)
    c.add_argument("inputs", nargs="+")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--alpha", metavar="PATH")
    c.add_argument("--beta", metavar="PATH")
    c.add_argument("--vector", metavar="V", help="comma-separated coordinates for perturbation")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="run a search spec and store passing candidates")
    s.add_argument("spec")
    s.add_argument("--seed", type=int)
    s.add_argument("--checker")
    s.add_argument("--corpus", metavar="DIR", help=f"corpus root (default ${CORPUS_ENV} or ./corpus)")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("corpus", help="build the full deterministic corpus")
    k.add_argument("--seed", type=int)
    k.add_argument("--out", metavar="DIR")
    k.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except PrerequisiteFailed as exc:
        print(f"precondition failed: {exc.label}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BiHomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
