"""Constructions between presentations, each re-verifying its own output.

A construction whose output fails its verification has either met an
input that violates a hypothesis or exposed a bug; the attached report
says which axiom broke and where.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .documents import digest
from .errors import ConstructionFailed, DimensionMismatch, PrerequisiteFailed
from .multilinear import BilinearOp, LinearMap, Vector, apply_linear, compose_all, maps_commute, transform_op
from .operators import (
    GenNijInstance,
    TwistedRBInstance,
    check_gen_nijenhuis,
    check_twisted_rb,
    specialize_corollary_1,
    specialize_corollary_2,
)
from .report import CheckReport
from .structures import (
    AlgebraPresentation,
    BimodulePresentation,
    _require_bihom_associative,
    check_bihom_associative,
    check_bihom_ns,
    check_bihom_tridendriform,
    check_bimodule,
    check_hochschild_2cocycle,
    check_morphism,
    check_ns,
)


@dataclass(frozen=True)
class ConstructionResult:
    output: Any
    verification: CheckReport
    provenance: dict
    extras: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verification.passed


def _provenance(name: str, *inputs) -> dict:
    return {"construction": name, "inputs": [digest(x) if not isinstance(x, LinearMap) else _map_digest(x) for x in inputs]}


def _map_digest(f: LinearMap) -> str:
    holder = AlgebraPresentation(f.n_in, f.field, maps={"map": f}) if f.is_square else None
    if holder is None:
        raise DimensionMismatch("provenance digests are defined for square maps only")
    return digest(holder)


def _require(report: CheckReport, label: str | None = None) -> None:
    if not report:
        raise PrerequisiteFailed(label or report.checker, report)


def _ensure(name: str, report: CheckReport) -> None:
    if not report:
        raise ConstructionFailed(name, report)


def star_sum(p: AlgebraPresentation) -> BilinearOp:
    """``x * y = x < y + x > y + x v y``."""
    return p.op("prec") + p.op("succ") + p.op("vee")


def bhas_from_ns(p: AlgebraPresentation) -> AlgebraPresentation:
    return AlgebraPresentation(p.dim, p.field, {"mu": star_sum(p)},
                               {"alpha": p.map("alpha"), "beta": p.map("beta")}, "BiHomAssociative")


def ns_bimodule(p: AlgebraPresentation) -> BimodulePresentation:
    """``(A, >, <, alpha, beta)`` over ``(A, *, alpha, beta)``."""
    return BimodulePresentation(bhas_from_ns(p), p.dim, p.op("succ"), p.op("prec"), p.map("alpha"), p.map("beta"))


def ns_to_bhas_with_bimodule(p: AlgebraPresentation) -> tuple[AlgebraPresentation, BimodulePresentation]:
    """The sum algebra and the ``(succ, prec)`` bimodule over it, both verified."""
    _require(check_bihom_ns(p))
    bimodule = ns_bimodule(p)
    _ensure("ns_to_bhas_with_bimodule", check_bihom_associative(bimodule.algebra))
    _ensure("ns_to_bhas_with_bimodule", check_bimodule(bimodule))
    return bimodule.algebra, bimodule


def ns_from_bhas_with_bimodule(b: BimodulePresentation) -> ConstructionResult:
    """Converse direction: ``prec = r``, ``succ = l``, ``vee = mu - l - r`` on ``M = A``.

    Requires the bimodule to live on the algebra itself with the same
    structure maps.  The verification is :func:`check_bihom_ns`.
    """
    A = b.algebra
    if b.dim_M != A.dim or b.alpha_M != A.map("alpha") or b.beta_M != A.map("beta"):
        raise PrerequisiteFailed("regular_shape", message="bimodule must be A itself with A's structure maps")
    _require(check_bihom_associative(A))
    _require(check_bimodule(b))
    mu = A.op("mu")
    out = AlgebraPresentation(A.dim, A.field, {"prec": b.r, "succ": b.l, "vee": mu - b.l - b.r},
                              {"alpha": A.map("alpha"), "beta": A.map("beta")}, "BiHomNS")
    return ConstructionResult(out, check_bihom_ns(out), _provenance("ns_from_bhas_with_bimodule", b))


def twist_ops(p: AlgebraPresentation, a: LinearMap, b: LinearMap, names) -> dict[str, BilinearOp]:
    return {name: transform_op(p.op(name), a, b) for name in names}


def yau_twist_ns(p: AlgebraPresentation, a: LinearMap, b: LinearMap) -> ConstructionResult:
    """``x <' y = a(x) < b(y)`` (and likewise for succ, vee) with structure maps ``a, b``."""
    _require(check_ns(p))
    _require(check_morphism(p, p, a), "endomorphism:alpha")
    _require(check_morphism(p, p, b), "endomorphism:beta")
    if not maps_commute(a, b):
        raise PrerequisiteFailed("commute:alpha,beta", message="twisting maps do not commute")
    out = AlgebraPresentation(p.dim, p.field, twist_ops(p, a, b, ("prec", "succ", "vee")),
                              {"alpha": a, "beta": b}, "BiHomNS")
    return ConstructionResult(out, check_bihom_ns(out), _provenance("yau_twist_ns", _ns_part(p), a, b))


def _ns_part(p: AlgebraPresentation) -> AlgebraPresentation:
    return AlgebraPresentation(p.dim, p.field, {k: p.op(k) for k in ("prec", "succ", "vee")}, {}, "NS")


def yau_twist_morphism_transport(f: LinearMap, src: AlgebraPresentation, a: LinearMap, b: LinearMap,
                                 dst: AlgebraPresentation, a2: LinearMap, b2: LinearMap) -> CheckReport:
    """Check that an NS-morphism intertwining the twisting pairs is a morphism of the twists."""
    _require(check_morphism(_ns_part(src), _ns_part(dst), f), "ns_morphism")
    for label, lhs, rhs in (("intertwine:alpha", a2 @ f, f @ a), ("intertwine:beta", b2 @ f, f @ b)):
        if lhs != rhs:
            raise PrerequisiteFailed(label, message=f"{label}: f does not intertwine the twisting maps")
    t1 = yau_twist_ns(src, a, b)
    t2 = yau_twist_ns(dst, a2, b2)
    return check_morphism(t1.output, t2.output, f)


def _block_diag(field, f: LinearMap, g: LinearMap) -> LinearMap:
    n1, n2 = f.n_in, g.n_in
    m = field.zeros((n1 + n2, n1 + n2))
    m[:n1, :n1] = f.matrix
    m[n1:, n1:] = g.matrix
    return LinearMap(field, m)


def extension_presentation(b: BimodulePresentation) -> AlgebraPresentation:
    """``A + M`` with ``(x,m)(x',m') = (xx', x.m' + m.x' [+ m * m'])``; basis of A first."""
    A, F = b.algebra, b.field
    nA, nM = A.dim, b.dim_M
    n = nA + nM
    t = F.zeros((n, n, n))
    t[:nA, :nA, :nA] = A.op("mu").tensor
    t[:nA, nA:, nA:] = b.l.tensor
    t[nA:, :nA, nA:] = b.r.tensor
    if b.bullet is not None:
        t[nA:, nA:, nA:] = b.bullet.tensor
    return AlgebraPresentation(n, F, {"mu": BilinearOp(F, t)},
                               {"alpha": _block_diag(F, A.map("alpha"), b.alpha_M),
                                "beta": _block_diag(F, A.map("beta"), b.beta_M)},
                               "BiHomAssociative")


def split_null_extension(b: BimodulePresentation) -> ConstructionResult:
    """Split null extension (or the bullet-twisted one); verified for BiHom-associativity."""
    out = extension_presentation(b)
    return ConstructionResult(out, check_bihom_associative(out), _provenance("split_null_extension", b))


def tridend_embed_ns(p: AlgebraPresentation) -> ConstructionResult:
    """Rename ``dot`` to ``vee``; nothing else changes."""
    _require(check_bihom_tridendriform(p))
    out = p.renamed({"dot": "vee"}, kind="BiHomNS")
    return ConstructionResult(out, check_bihom_ns(out), _provenance("tridend_embed_ns", p))


def ns_from_twisted_rb(t: TwistedRBInstance) -> ConstructionResult:
    """``m < n = m . pi(n)``, ``m > n = pi(m) . n``, ``m v n = H(pi(m), pi(n))`` on M."""
    _require(check_twisted_rb(t))
    b, pi = t.bimodule, t.pi
    out = AlgebraPresentation(
        b.dim_M, b.field,
        {"prec": transform_op(b.r, None, pi), "succ": transform_op(b.l, pi, None), "vee": transform_op(t.H, pi, pi)},
        {"alpha": b.alpha_M, "beta": b.beta_M},
        "BiHomNS",
    )
    return ConstructionResult(out, check_bihom_ns(out), _provenance("ns_from_twisted_rb", t))


def cocycle_from_ns(p: AlgebraPresentation) -> tuple[BimodulePresentation, BilinearOp]:
    """The ``(succ, prec)`` bimodule over the sum algebra and ``H = vee``."""
    _require(check_bihom_ns(p))
    b = ns_bimodule(p)
    H = p.op("vee")
    _ensure("cocycle_from_ns", check_hochschild_2cocycle(b, H))
    return b, H


def functor_F(p: AlgebraPresentation) -> TwistedRBInstance:
    """The identity map as an ``H = vee`` twisted Rota-Baxter operator."""
    b, H = cocycle_from_ns(p)
    t = TwistedRBInstance(b, H, p.identity())
    _ensure("functor_F", check_twisted_rb(t))
    return t


def functor_G(t: TwistedRBInstance) -> AlgebraPresentation:
    result = ns_from_twisted_rb(t)
    _ensure("functor_G", result.verification)
    return result.output


def ns_from_gen_nijenhuis(g: GenNijInstance) -> ConstructionResult:
    """``x < y = sg(x) dN(y)``, ``x > y = gN(x) td(y)``, ``x v y = -N(g(x) d(y))``.

    Structure maps are the explicit products ``alpha sigma gamma`` and
    ``beta tau delta``.  ``extras["star"]`` is the sum product and
    ``extras["star_verification"]`` its BiHom-associativity report.
    """
    _require(check_gen_nijenhuis(g))
    p = g.algebra
    mu = p.op("mu")
    c = compose_all
    prec = transform_op(mu, c(g.sigma, g.gamma), c(g.delta, g.N))
    succ = transform_op(mu, c(g.gamma, g.N), c(g.tau, g.delta))
    vee = -transform_op(mu, g.gamma, g.delta, g.N)
    maps = {"alpha": c(p.map("alpha"), g.sigma, g.gamma), "beta": c(p.map("beta"), g.tau, g.delta)}
    out = AlgebraPresentation(p.dim, p.field, {"prec": prec, "succ": succ, "vee": vee}, maps, "BiHomNS")
    star = prec + succ + vee
    star_alg = AlgebraPresentation(p.dim, p.field, {"mu": star}, maps, "BiHomAssociative")
    star_report = check_bihom_associative(star_alg)
    report = check_bihom_ns(out)
    if report and not star_report:
        report = star_report
    return ConstructionResult(out, report, _provenance("ns_from_gen_nijenhuis", g),
                              {"star": star, "star_verification": star_report})


def left_right_multiplication(p: AlgebraPresentation, v: Vector) -> tuple[LinearMap, LinearMap]:
    """Matrices of ``x -> v x`` and ``x -> x v``."""
    mu = p.op("mu").tensor
    F = p.field
    left = F.einsum("b,bik->ki", v.coords, mu)
    right = F.einsum("b,ibk->ki", v.coords, mu)
    return LinearMap(F, left), LinearMap(F, right)


def perturbation_operators(p: AlgebraPresentation, a: Vector) -> tuple[LinearMap, LinearMap]:
    """``N1(x) = alpha(a) x`` and ``N2(x) = x alpha(a)`` for ``alpha^2(a) = beta^2(a) = a``.

    Raises :class:`ConstructionFailed` if N1 fails the gN1/gN2 identities
    or N2 fails gN3/gN4.
    """
    _require_bihom_associative(p)
    alpha, beta = p.map("alpha"), p.map("beta")
    if apply_linear(alpha.power(2), a) != a:
        raise PrerequisiteFailed("fixed:alpha^2", message="alpha^2(a) != a")
    if apply_linear(beta.power(2), a) != a:
        raise PrerequisiteFailed("fixed:beta^2", message="beta^2(a) != a")
    N1, _ = left_right_multiplication(p, apply_linear(alpha, a))
    _, N2 = left_right_multiplication(p, apply_linear(alpha, a))
    _ensure("perturbation_operators", specialize_corollary_1(p, N1)[1])
    _ensure("perturbation_operators", specialize_corollary_2(p, N2)[1])
    return N1, N2


def perturbation_product(p: AlgebraPresentation, a: Vector) -> BilinearOp:
    """Direct tensor of ``x * y = alpha(x)(alpha(a) y)``."""
    left, _ = left_right_multiplication(p, apply_linear(p.map("alpha"), a))
    return transform_op(p.op("mu"), p.map("alpha"), left)


def ops_identical(p: AlgebraPresentation, q: AlgebraPresentation) -> bool:
    """Entrywise equality of every op and map, ignoring kind claims."""
    return (p.dim == q.dim and p.field == q.field and p.ops.keys() == q.ops.keys() and p.maps.keys() == q.maps.keys()
            and all(np.array_equal(p.ops[k].tensor, q.ops[k].tensor) for k in p.ops)
            and all(np.array_equal(p.maps[k].matrix, q.maps[k].matrix) for k in p.maps))
