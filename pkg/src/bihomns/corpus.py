"""Deterministic corpus of small verified (and deliberately broken) instances.

Everything is built from a handful of classical associative algebras over
GF(2), GF(3) and Q in dimensions 1 to 3: operators on them are found by
exhaustive search, twisted into BiHom form by commuting endomorphisms, and
pushed through the constructions.  All random choices come from one
:class:`~bihomns.search.SplitMix64` stream seeded by the caller, so a seed
determines the corpus byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .checkers import verdict_map
from .constructions import (
    functor_F,
    ns_from_gen_nijenhuis,
    ns_from_twisted_rb,
    perturbation_operators,
    tridend_embed_ns,
    yau_twist_ns,
)
from .documents import canonical_json, digest
from .errors import BiHomError, ConstructionFailed, PrerequisiteFailed
from .multilinear import Axiom, BilinearOp, LinearMap, Vector, apply_linear, compose_all, is_multiplicative, lin, maps_commute, mul, run_axioms, transform_op
from .operators import GenNijInstance, TwistedRBInstance, check_gen_nijenhuis, reynolds_instance
from .report import CheckReport
from .scalars import GF2, GF3, QQ, Field
from .search import CorpusEntry, SearchSpec, SplitMix64, enumerate_candidates, run_search, write_entries
from .structures import (
    AlgebraPresentation,
    BimodulePresentation,
    check_bihom_associative,
    check_bihom_tridendriform,
    check_ns,
    regular_bimodule,
    zero_bimodule,
)

DEFAULT_SEED = 20240611

# name -> (dim, {(i, j): {k: c}}) with e_i e_j = sum_k c e_k
BASE_ALGEBRAS: dict[str, tuple[int, dict]] = {
    "field": (1, {(0, 0): {0: 1}}),
    "zero1": (1, {}),
    "dual_numbers": (2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}),
    "product": (2, {(0, 0): {0: 1}, (1, 1): {1: 1}}),
    "square_zero": (2, {(0, 0): {1: 1}}),
    "left_zero": (2, {(i, j): {i: 1} for i in range(2) for j in range(2)}),
    "upper_triangular": (3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}),
    "truncated_cubic": (3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (1, 0): {1: 1}, (2, 0): {2: 1},
                            (1, 1): {2: 1}}),
}

FIELD_ALGEBRAS = {
    "GF(2)": ["field", "zero1", "dual_numbers", "product", "square_zero", "left_zero", "upper_triangular",
              "truncated_cubic"],
    "GF(3)": ["field", "zero1", "dual_numbers", "product", "square_zero", "left_zero", "upper_triangular"],
    "Q": ["field", "dual_numbers", "product", "square_zero", "upper_triangular"],
}

OPERATOR_ALGEBRAS = 7  # per field, algebras that get operator searches

RB_WEIGHTS = {"GF(2)": (0, 1), "GF(3)": (0, 1, 2), "Q": (0, 1)}


def base_algebra(name: str, field: Field, with_maps: bool = True) -> AlgebraPresentation:
    n, table = BASE_ALGEBRAS[name]
    t = field.zeros((n, n, n))
    for (i, j), out in table.items():
        for k, c in out.items():
            t[i, j, k] = field.element(c)
    I = LinearMap.identity(field, n)
    maps = {"alpha": I, "beta": I} if with_maps else {}
    return AlgebraPresentation(n, field, {"mu": BilinearOp(field, t)}, maps,
                               "BiHomAssociative" if with_maps else "Algebra")


def map_search_spec(field: Field, dim: int, name: str, fixed: AlgebraPresentation, target: str) -> SearchSpec:
    """Candidate space for one unknown map: full over small prime fields, restricted otherwise."""
    if not field.is_rational and dim <= 2:
        return SearchSpec(field, dim, target, ((name, "full"),), fixed)
    if not field.is_rational:
        return SearchSpec(field, dim, target, ((name, "full"),), fixed, values=("0", "1"))
    if dim <= 2:
        return SearchSpec(field, dim, target, ((name, "full"),), fixed, values=("-1", "0", "1"))
    return SearchSpec(field, dim, target, ((name, "diagonal"),), fixed, values=("-1", "0", "1"))


def candidate_maps(p: AlgebraPresentation) -> list[LinearMap]:
    spec = map_search_spec(p.field, p.dim, "X", AlgebraPresentation(p.dim, p.field), "associative")
    return [c.maps["X"] for _, c in enumerate_candidates(spec)]


def endomorphisms(p: AlgebraPresentation, op_names, candidates=None) -> list[LinearMap]:
    """Candidate maps multiplicative for every op in ``op_names``."""
    cands = candidate_maps(p) if candidates is None else candidates
    return [f for f in cands if all(is_multiplicative(f, p.op(o)) for o in op_names)]


def pick(rng: SplitMix64, items: list, k: int) -> list:
    """``k`` items chosen without replacement, in a seed-determined order."""
    items = list(items)
    out = []
    while items and len(out) < k:
        out.append(items.pop(rng.below(len(items))))
    return out


def commuting_pairs(maps: list[LinearMap], rng: SplitMix64, k: int) -> list[tuple[LinearMap, LinearMap]]:
    n = maps[0].n_in
    I = LinearMap.identity(maps[0].field, n)
    pairs = [(a, b) for a in maps for b in maps if maps_commute(a, b) and not (a == I and b == I)]
    return pick(rng, pairs, k)


def check_rota_baxter(p: AlgebraPresentation, P: LinearMap, weight) -> CheckReport:
    """``P(x)P(y) = P(P(x)y + xP(y) + weight xy)`` on a classical algebra."""
    mu, n = p.op("mu"), p.dim
    w = p.field.element(weight)

    def residual(x, y):
        inner = mul(mu, lin(P, x), y) + mul(mu, x, lin(P, y)) + w * mul(mu, x, y)
        return mul(mu, lin(P, x), lin(P, y)) - lin(P, inner)

    return run_axioms("rota_baxter", p.field, [Axiom("rota_baxter", (n, n), n, residual)])


def tridendriform_from_rota_baxter(p: AlgebraPresentation, P: LinearMap, weight) -> AlgebraPresentation:
    """``x < y = xP(y)``, ``x > y = P(x)y``, ``x . y = weight xy`` with identity structure maps."""
    mu = p.op("mu")
    I = p.identity()
    return AlgebraPresentation(p.dim, p.field, {
        "prec": transform_op(mu, None, P),
        "succ": transform_op(mu, P, None),
        "dot": p.field.element(weight) * mu,
    }, {"alpha": I, "beta": I}, "BiHomTridendriform")


def ns_from_nijenhuis(p: AlgebraPresentation, N: LinearMap) -> AlgebraPresentation:
    """``x < y = xN(y)``, ``x > y = N(x)y``, ``x v y = -N(xy)`` with the algebra's structure maps."""
    mu = p.op("mu")
    return AlgebraPresentation(p.dim, p.field, {
        "prec": transform_op(mu, None, N),
        "succ": transform_op(mu, N, None),
        "vee": -transform_op(mu, None, None, N),
    }, {"alpha": p.map("alpha"), "beta": p.map("beta")}, "BiHomNS")


def yau_twist_algebra(p: AlgebraPresentation, a: LinearMap, b: LinearMap) -> AlgebraPresentation:
    return AlgebraPresentation(p.dim, p.field, {"mu": transform_op(p.op("mu"), a, b)},
                               {"alpha": a, "beta": b}, "BiHomAssociative")


def classical_part(p: AlgebraPresentation, names) -> AlgebraPresentation:
    kind = "NS" if "vee" in names else None
    return AlgebraPresentation(p.dim, p.field, {k: p.op(k) for k in names}, {}, kind)


@dataclass
class Corpus:
    seed: int
    entries: list[CorpusEntry] = dc_field(default_factory=list)
    yau_inputs: list[tuple] = dc_field(default_factory=list)
    morphism_triples: list[tuple] = dc_field(default_factory=list)
    bimodule_tuples: list[BimodulePresentation] = dc_field(default_factory=list)
    _seen: set = dc_field(default_factory=set)

    def add(self, obj, kind: str, provenance: dict | None = None, discovery: dict | None = None,
            verdicts: dict | None = None) -> bool:
        entry = CorpusEntry(obj, verdicts if verdicts is not None else verdict_map(obj), discovery, provenance, kind)
        key = (kind, entry.digest)
        if key in self._seen:
            return False
        self._seen.add(key)
        self.entries.append(entry)
        return True

    def of_kind(self, kind: str) -> list:
        return [e.obj for e in self.entries if e.directory == kind]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.directory] = out.get(e.directory, 0) + 1
        return dict(sorted(out.items()))

    def write(self, root: str | os.PathLike) -> list[Path]:
        return write_entries(root, self.entries)

    def report(self) -> dict:
        """Digest and verdict summary of every entry, in build order."""
        return {
            "seed": self.seed,
            "counts": self.counts(),
            "entries": [{"kind": e.directory, "digest": e.digest,
                         "verdicts": {k: v["verdict"] for k, v in e.verdicts.items()}} for e in self.entries],
        }

    def report_json(self) -> str:
        return canonical_json(self.report())


def _prov(name: str, *inputs, **extra) -> dict:
    out = {"construction": name, "inputs": [digest(x) for x in inputs]}
    out.update(extra)
    return out


def build_corpus(seed: int = DEFAULT_SEED) -> Corpus:
    rng = SplitMix64(seed)
    corpus = Corpus(seed)
    for field in (GF2, GF3, QQ):
        _build_field(corpus, field, rng)
    return corpus


def _build_field(corpus: Corpus, F: Field, rng: SplitMix64) -> None:
    bihom_algebras: list[AlgebraPresentation] = []
    for name in FIELD_ALGEBRAS[F.name]:
        A = base_algebra(name, F)
        n = A.dim
        corpus.add(A, "BiHomAssociative", {"construction": "base_algebra", "name": name})
        bihom_algebras.append(A)
        cands = candidate_maps(A)
        endos = endomorphisms(A, ("mu",), cands)
        for a, b in commuting_pairs(endos, rng, 1):
            B = yau_twist_algebra(A, a, b)
            if check_bihom_associative(B) and corpus.add(B, "BiHomAssociative", _prov("yau_twist_algebra", A)):
                bihom_algebras.append(B)

        ns_classical: list[AlgebraPresentation] = []
        # classical NS structures from Nijenhuis operators
        spec = map_search_spec(F, n, "N", A, "nijenhuis")
        for e in pick(rng, [e for e in run_search(spec, full_verdicts=False).entries if any(e.obj.map("N").matrix.flat)], 1):
            corpus.add(e.obj, "Nijenhuis", discovery=e.discovery)
            ns = ns_from_nijenhuis(A, e.obj.map("N"))
            ns_classical.append(ns)
        # classical tridendriform structures from Rota-Baxter operators of each weight
        for w in pick(rng, RB_WEIGHTS[F.name], 1):
            rbs = [P for P in cands if check_rota_baxter(A, P, w)]
            for P in pick(rng, [P for P in rbs if any(P.matrix.flat)], 1):
                T = tridendriform_from_rota_baxter(A, P, w)
                if not check_bihom_tridendriform(T):
                    continue
                corpus.add(T, "BiHomTridendriform", _prov("rota_baxter_tridendriform", A, weight=str(w)))
                ns_classical.append(tridend_embed_ns(T).output)
                tri_endos = endomorphisms(T, ("prec", "succ", "dot"), cands)
                for a, b in commuting_pairs(tri_endos, rng, 1):
                    ops = {k: transform_op(T.op(k), a, b) for k in ("prec", "succ", "dot")}
                    TT = AlgebraPresentation(n, F, ops, {"alpha": a, "beta": b}, "BiHomTridendriform")
                    if check_bihom_tridendriform(TT):
                        corpus.add(TT, "BiHomTridendriform", _prov("yau_twist_tridendriform", T))

        for ns in ns_classical:
            base = classical_part(ns, ("prec", "succ", "vee"))
            if not check_ns(base):
                continue
            corpus.add(base, "NS", {"construction": "classical_ns"})
            corpus.add(ns, "BiHomNS", _prov("identity_structure_maps", base))
            ns_endos = endomorphisms(ns, ("prec", "succ", "vee"), cands)
            for a, b in commuting_pairs(ns_endos, rng, 1):
                result = yau_twist_ns(base, a, b)
                corpus.yau_inputs.append((base, a, b))
                if result.passed:
                    corpus.add(result.output, "BiHomNS", result.provenance)
                # an NS endomorphism commuting with both twisting maps transports along the twist
                for f in ns_endos:
                    if maps_commute(f, a) and maps_commute(f, b) and f != ns.identity() and any(f.matrix.flat):
                        corpus.morphism_triples.append((f, base, a, b, base, a, b))
                        break

    small = [B for B in bihom_algebras if B.dim <= 2]
    for B in small[:1] + pick(rng, small[1:], OPERATOR_ALGEBRAS - 1):
        _operators_on(corpus, B, rng)
    for B in bihom_algebras:
        _bimodule_tuples(corpus, B, rng)

    for p in [e.obj for e in corpus.entries if e.directory == "BiHomNS" and e.obj.field == F]:
        t = functor_F(p)
        corpus.add(t, "TwistedRB", _prov("functor_F", p))


def _operators_on(corpus: Corpus, B: AlgebraPresentation, rng: SplitMix64) -> None:
    F, n = B.field, B.dim
    # Reynolds operators, stored both as presentations and as twisted RB operators with H = -mu
    spec = map_search_spec(F, n, "R", B, "reynolds")
    for e in pick(rng, run_search(spec, full_verdicts=False).entries, 1):
        corpus.add(e.obj, "Reynolds", discovery=e.discovery)
        t = reynolds_instance(B, e.obj.map("R"))
        corpus.add(t, "TwistedRB", _prov("reynolds_instance", e.obj))
        result = ns_from_twisted_rb(t)
        if result.passed:
            corpus.add(result.output, "BiHomNS", result.provenance)

    a, b, I = B.map("alpha"), B.map("beta"), B.identity()
    shapes = [(I, I, I, I), (I, a, b, I), (a, I, I, b), (a, a, b, b)]
    for sigma, gamma, tau, delta in pick(rng, shapes, 2):
        fixed = B.with_components(maps={"sigma": sigma, "gamma": gamma, "tau": tau, "delta": delta})
        spec = map_search_spec(F, n, "N", fixed, "gen_nijenhuis")
        for e in pick(rng, [e for e in run_search(spec, full_verdicts=False).entries if any(e.obj.map("N").matrix.flat)], 1):
            g = GenNijInstance.from_presentation(e.obj)
            corpus.add(g.to_presentation(), "GenNijenhuis", discovery=e.discovery)
            result = ns_from_gen_nijenhuis(g)
            if result.passed:
                corpus.add(result.output, "BiHomNS", result.provenance)

    # perturbation operators N1, N2 for vectors fixed by alpha^2 and beta^2
    fixed_vectors = [v for v in _small_vectors(F, n) if any(v.coords)
                     and apply_linear(a.power(2), v) == v and apply_linear(b.power(2), v) == v]
    for v in pick(rng, fixed_vectors, 1):
        try:
            N1, N2 = perturbation_operators(B, v)
        except (PrerequisiteFailed, ConstructionFailed):
            continue
        for N, shape in ((N1, (I, a, b, I)), (N2, (a, I, I, b))):
            g = GenNijInstance(B, *shape, N)
            if check_gen_nijenhuis(g):
                corpus.add(g.to_presentation(), "GenNijenhuis", _prov("perturbation_operator", B, vector=v.to_strings()))
                result = ns_from_gen_nijenhuis(g)
                if result.passed:
                    corpus.add(result.output, "BiHomNS", result.provenance)


def _small_vectors(F: Field, n: int) -> list[Vector]:
    vals = [F.element(v) for v in ((-1, 0, 1) if F.is_rational else range(F.p))]
    out = [[]]
    for _ in range(n):
        out = [c + [v] for c in out for v in vals]
    return [Vector(F, c) for c in out]


def _corrupt(rng: SplitMix64, b: BimodulePresentation) -> BimodulePresentation:
    """Add one to a random entry of one module component."""
    F = b.field
    target = rng.choice(["l", "r", "bullet", "alpha_M", "beta_M"])
    obj = getattr(b, target)
    arr = (obj.tensor if isinstance(obj, BilinearOp) else obj.matrix).copy()
    idx = tuple(rng.below(s) for s in arr.shape)
    arr[idx] = arr[idx] + F.element(1)
    new = type(obj)(F, arr)
    parts = {k: getattr(b, k) for k in ("l", "r", "alpha_M", "beta_M", "bullet")}
    parts[target] = new
    return BimodulePresentation(b.algebra, b.dim_M, **parts)


def _bimodule_tuples(corpus: Corpus, B: AlgebraPresentation, rng: SplitMix64) -> None:
    F = B.field
    mu = B.op("mu")
    reg = regular_bimodule(B)
    good = [
        BimodulePresentation(B, B.dim, mu, mu, reg.alpha_M, reg.beta_M, mu),
        BimodulePresentation(B, B.dim, mu, mu, reg.alpha_M, reg.beta_M, BilinearOp.zero(F, B.dim)),
    ]
    z = zero_bimodule(B, 1)
    good.append(BimodulePresentation(B, 1, z.l, z.r, z.alpha_M, z.beta_M, BilinearOp(F, [[[1]]])))
    for b in pick(rng, good, 2):
        for candidate in (b, _corrupt(rng, b)):
            corpus.bimodule_tuples.append(candidate)
            corpus.add(candidate, "BimoduleAlgebra", _prov("bimodule_algebra_candidate", B))


def write_corpus(root: str | os.PathLike, seed: int = DEFAULT_SEED) -> Corpus:
    corpus = build_corpus(seed)
    corpus.write(root)
    Path(root).mkdir(parents=True, exist_ok=True)
    (Path(root) / "report.json").write_text(corpus.report_json(), encoding="utf-8")
    return corpus
