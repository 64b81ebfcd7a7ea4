"""Algebra and bimodule presentations and their axiom checkers.

Every checker evaluates its axioms in a fixed order and returns the first
failure (see :func:`bihomns.multilinear.run_axioms`).  Axiom labels follow
the equation labels of the theory: ``eqasso``, ``NS1``..``NS4``,
``BiHomNS0``..``BiHomNS6``, ``BiHomtridend1``..``BiHomtridend14``,
``lmod``/``rmod``/``bimod``, ``extra1``..``extra3``, ``Hoc1``, ``cocycle``.
Sub-labels after a colon name the map or operation involved, e.g.
``BiHomNS1:vee`` or ``eqalfabeta:beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Mapping

from .errors import DimensionMismatch, FieldMismatch, KindMismatch, MissingComponent, PrerequisiteFailed, ValidationError
from .multilinear import (
    Axiom,
    BilinearOp,
    LinearMap,
    commute_axiom,
    lin,
    mul,
    multiplicative_axiom,
    run_axioms,
)
from .report import CheckReport
from .scalars import Field

# kind -> (required ops, required maps)
KINDS: dict[str, tuple[frozenset[str], frozenset[str]]] = {
    "Algebra": (frozenset({"mu"}), frozenset()),
    "BiHomAssociative": (frozenset({"mu"}), frozenset({"alpha", "beta"})),
    "NS": (frozenset({"prec", "succ", "vee"}), frozenset()),
    "BiHomNS": (frozenset({"prec", "succ", "vee"}), frozenset({"alpha", "beta"})),
    "BiHomTridendriform": (frozenset({"prec", "succ", "dot"}), frozenset({"alpha", "beta"})),
    "Reynolds": (frozenset({"mu"}), frozenset({"alpha", "beta", "R"})),
    "Nijenhuis": (frozenset({"mu"}), frozenset({"alpha", "beta", "N"})),
    "GenNijenhuis": (frozenset({"mu"}), frozenset({"alpha", "beta", "sigma", "gamma", "tau", "delta", "N"})),
}

# kinds carried by a BimodulePresentation document
MODULE_KINDS = {
    "Bimodule": (frozenset({"mu", "l", "r"}), frozenset({"alpha", "beta", "alpha_M", "beta_M"})),
    "BimoduleAlgebra": (frozenset({"mu", "l", "r", "bullet"}), frozenset({"alpha", "beta", "alpha_M", "beta_M"})),
    "HochschildCocycle": (frozenset({"mu", "l", "r", "H"}), frozenset({"alpha", "beta", "alpha_M", "beta_M"})),
    "TwistedRB": (frozenset({"mu", "l", "r", "H"}), frozenset({"alpha", "beta", "alpha_M", "beta_M", "pi"})),
}


@dataclass(frozen=True)
class AlgebraPresentation:
    """A finite-dimensional space with named bilinear ops and linear maps."""

    dim: int
    field: Field
    ops: Mapping[str, BilinearOp] = dc_field(default_factory=dict)
    maps: Mapping[str, LinearMap] = dc_field(default_factory=dict)
    kind: str | None = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValidationError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "ops", dict(sorted(self.ops.items())))
        object.__setattr__(self, "maps", dict(sorted(self.maps.items())))
        n = self.dim
        for name, op in self.ops.items():
            if op.field != self.field:
                raise FieldMismatch(f"op {name!r} is over {op.field}, presentation over {self.field}")
            if op.shape != (n, n, n):
                raise DimensionMismatch(f"op {name!r} has shape {op.shape}, expected {(n, n, n)}")
        for name, f in self.maps.items():
            if f.field != self.field:
                raise FieldMismatch(f"map {name!r} is over {f.field}, presentation over {self.field}")
            if f.matrix.shape != (n, n):
                raise DimensionMismatch(f"map {name!r} has shape {f.matrix.shape}, expected {(n, n)}")
        if self.kind is not None:
            if self.kind not in KINDS:
                raise ValidationError(f"unknown kind {self.kind!r}")
            need_ops, need_maps = KINDS[self.kind]
            missing = sorted((need_ops - self.ops.keys()) | (need_maps - self.maps.keys()))
            if missing:
                raise MissingComponent(f"kind {self.kind} requires {missing}")

    @classmethod
    def build(cls, field: Field, dim: int, ops=None, maps=None, kind: str | None = None) -> AlgebraPresentation:
        """Convenience constructor taking nested lists as well as typed objects."""
        ops = {k: v if isinstance(v, BilinearOp) else BilinearOp(field, v) for k, v in (ops or {}).items()}
        maps = {k: v if isinstance(v, LinearMap) else LinearMap(field, v) for k, v in (maps or {}).items()}
        return cls(dim, field, ops, maps, kind)

    def op(self, name: str) -> BilinearOp:
        try:
            return self.ops[name]
        except KeyError:
            raise MissingComponent(f"presentation has no op {name!r}") from None

    def map(self, name: str) -> LinearMap:
        try:
            return self.maps[name]
        except KeyError:
            raise MissingComponent(f"presentation has no map {name!r}") from None

    def identity(self) -> LinearMap:
        return LinearMap.identity(self.field, self.dim)

    def with_components(self, ops=None, maps=None, kind: str | None = None, drop=()) -> AlgebraPresentation:
        new_ops = {k: v for k, v in self.ops.items() if k not in drop}
        new_maps = {k: v for k, v in self.maps.items() if k not in drop}
        new_ops.update(ops or {})
        new_maps.update(maps or {})
        return replace(self, ops=new_ops, maps=new_maps, kind=kind)

    def renamed(self, renames: Mapping[str, str], kind: str | None = None) -> AlgebraPresentation:
        ops = {renames.get(k, k): v for k, v in self.ops.items()}
        maps = {renames.get(k, k): v for k, v in self.maps.items()}
        return replace(self, ops=ops, maps=maps, kind=kind)


@dataclass(frozen=True)
class BimodulePresentation:
    """``(M, l, r, alpha_M, beta_M)`` over an algebra carrying mu, alpha, beta.

    ``l`` has shape ``n_A x n_M x n_M``, ``r`` has ``n_M x n_A x n_M`` and
    the optional ``bullet`` product on M has ``n_M x n_M x n_M``.
    Commutation of ``alpha_M`` and ``beta_M`` is checked by
    :func:`check_bimodule` rather than enforced here, so corrupted inputs
    can still be represented and diagnosed.
    """

    algebra: AlgebraPresentation
    dim_M: int
    l: BilinearOp
    r: BilinearOp
    alpha_M: LinearMap
    beta_M: LinearMap
    bullet: BilinearOp | None = None

    def __post_init__(self):
        A = self.algebra
        nA, nM = A.dim, self.dim_M
        if not isinstance(nM, int) or nM < 1:
            raise ValidationError(f"dim_M must be a positive integer, got {nM!r}")
        for name in ("mu",):
            A.op(name)
        for name in ("alpha", "beta"):
            A.map(name)
        expected = {"l": (nA, nM, nM), "r": (nM, nA, nM), "bullet": (nM, nM, nM)}
        for name, shape in expected.items():
            op = getattr(self, name)
            if op is None:
                continue
            if op.field != A.field:
                raise FieldMismatch(f"{name} is over {op.field}, algebra over {A.field}")
            if op.shape != shape:
                raise DimensionMismatch(f"{name} has shape {op.shape}, expected {shape}")
        for name in ("alpha_M", "beta_M"):
            f = getattr(self, name)
            if f.field != A.field:
                raise FieldMismatch(f"{name} is over {f.field}, algebra over {A.field}")
            if f.matrix.shape != (nM, nM):
                raise DimensionMismatch(f"{name} has shape {f.matrix.shape}, expected {(nM, nM)}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim_A(self) -> int:
        return self.algebra.dim


def regular_bimodule(p: AlgebraPresentation, bullet: bool = False) -> BimodulePresentation:
    """``M = A`` with ``l = r = mu`` and the algebra's structure maps."""
    mu = p.op("mu")
    return BimodulePresentation(p, p.dim, mu, mu, p.map("alpha"), p.map("beta"), mu if bullet else None)


def zero_bimodule(p: AlgebraPresentation, dim_M: int) -> BimodulePresentation:
    F = p.field
    return BimodulePresentation(
        p, dim_M,
        BilinearOp.zero(F, p.dim, dim_M, dim_M),
        BilinearOp.zero(F, dim_M, p.dim, dim_M),
        LinearMap.identity(F, dim_M), LinearMap.identity(F, dim_M),
    )


# -- axiom builders -------------------------------------------------------


def bihom_associative_axioms(mu: BilinearOp, alpha: LinearMap, beta: LinearMap, prefix: str = "") -> list[Axiom]:
    n = mu.shape[0]

    def eqasso(x, y, z):
        return mul(mu, lin(alpha, x), mul(mu, y, z)) - mul(mu, mul(mu, x, y), lin(beta, z))

    return [
        commute_axiom(prefix + "commute", alpha, beta),
        multiplicative_axiom(prefix + "eqalfabeta:alpha", alpha, mu),
        multiplicative_axiom(prefix + "eqalfabeta:beta", beta, mu),
        Axiom(prefix + "eqasso", (n, n, n), n, eqasso),
    ]


def _star(prec: BilinearOp, succ: BilinearOp, third: BilinearOp) -> BilinearOp:
    return prec + succ + third


def _ns_axioms(prec, succ, vee, alpha: LinearMap | None, beta: LinearMap | None, label: str) -> list[Axiom]:
    """Axioms 3-6 of the BiHom-NS family (or NS1-NS4 when alpha, beta are None)."""
    n = prec.shape[0]
    star = _star(prec, succ, vee)
    a = (lambda v: v) if alpha is None else (lambda v: lin(alpha, v))
    b = (lambda v: v) if beta is None else (lambda v: lin(beta, v))

    def ax3(x, y, z):
        return mul(prec, mul(prec, x, y), b(z)) - mul(prec, a(x), mul(star, y, z))

    def ax4(x, y, z):
        return mul(prec, mul(succ, x, y), b(z)) - mul(succ, a(x), mul(prec, y, z))

    def ax5(x, y, z):
        return mul(succ, mul(star, x, y), b(z)) - mul(succ, a(x), mul(succ, y, z))

    def ax6(x, y, z):
        lhs = mul(prec, mul(vee, x, y), b(z)) + mul(vee, mul(star, x, y), b(z))
        rhs = mul(succ, a(x), mul(vee, y, z)) + mul(vee, a(x), mul(star, y, z))
        return lhs - rhs

    shape = (n, n, n)
    labels = label.split(",")
    return [Axiom(lab, shape, n, fn) for lab, fn in zip(labels, (ax3, ax4, ax5, ax6))]


def _structure_map_axioms(p: AlgebraPresentation, op_names: tuple[str, ...], labels: tuple[str, str, str]) -> list[Axiom]:
    alpha, beta = p.map("alpha"), p.map("beta")
    out = [commute_axiom(labels[0], alpha, beta)]
    for f, lab in ((alpha, labels[1]), (beta, labels[2])):
        for oname in op_names:
            out.append(multiplicative_axiom(f"{lab}:{oname}", f, p.op(oname)))
    return out


# -- checkers ---------------------------------------------------------------


def check_bihom_associative(p: AlgebraPresentation) -> CheckReport:
    """Commuting structure maps, multiplicativity, and ``alpha(x)(yz) = (xy)beta(z)``."""
    return run_axioms("bihom_associative", p.field,
                      bihom_associative_axioms(p.op("mu"), p.map("alpha"), p.map("beta")))


def check_associative(p: AlgebraPresentation) -> CheckReport:
    mu = p.op("mu")
    n = p.dim
    return run_axioms("associative", p.field, [
        Axiom("associativity", (n, n, n), n, lambda x, y, z: mul(mu, mul(mu, x, y), z) - mul(mu, x, mul(mu, y, z)))
    ])


def check_ns(p: AlgebraPresentation) -> CheckReport:
    prec, succ, vee = p.op("prec"), p.op("succ"), p.op("vee")
    return run_axioms("ns", p.field, _ns_axioms(prec, succ, vee, None, None, "NS1,NS2,NS3,NS4"))


def check_bihom_ns(p: AlgebraPresentation) -> CheckReport:
    prec, succ, vee = p.op("prec"), p.op("succ"), p.op("vee")
    axioms = _structure_map_axioms(p, ("prec", "succ", "vee"), ("BiHomNS0", "BiHomNS1", "BiHomNS2"))
    axioms += _ns_axioms(prec, succ, vee, p.map("alpha"), p.map("beta"), "BiHomNS3,BiHomNS4,BiHomNS5,BiHomNS6")
    return run_axioms("bihom_ns", p.field, axioms)


def check_bihom_tridendriform(p: AlgebraPresentation) -> CheckReport:
    prec, succ, dot = p.op("prec"), p.op("succ"), p.op("dot")
    alpha, beta = p.map("alpha"), p.map("beta")
    n = p.dim
    star = _star(prec, succ, dot)
    a = lambda v: lin(alpha, v)  # noqa: E731
    b = lambda v: lin(beta, v)  # noqa: E731
    ternary = {
        "BiHomtridend8": lambda x, y, z: mul(prec, mul(prec, x, y), b(z)) - mul(prec, a(x), mul(star, y, z)),
        "BiHomtridend9": lambda x, y, z: mul(prec, mul(succ, x, y), b(z)) - mul(succ, a(x), mul(prec, y, z)),
        "BiHomtridend10": lambda x, y, z: mul(succ, a(x), mul(succ, y, z)) - mul(succ, mul(star, x, y), b(z)),
        "BiHomtridend11": lambda x, y, z: mul(dot, a(x), mul(succ, y, z)) - mul(dot, mul(prec, x, y), b(z)),
        "BiHomtridend12": lambda x, y, z: mul(succ, a(x), mul(dot, y, z)) - mul(dot, mul(succ, x, y), b(z)),
        "BiHomtridend13": lambda x, y, z: mul(dot, a(x), mul(prec, y, z)) - mul(prec, mul(dot, x, y), b(z)),
        "BiHomtridend14": lambda x, y, z: mul(dot, a(x), mul(dot, y, z)) - mul(dot, mul(dot, x, y), b(z)),
    }
    axioms = _structure_map_axioms(p, ("prec", "succ", "dot"), ("BiHomtridend1", "BiHomtridend4", "BiHomtridend5"))
    axioms += [Axiom(lab, (n, n, n), n, fn) for lab, fn in ternary.items()]
    return run_axioms("bihom_tridendriform", p.field, axioms)


def bimodule_axioms(b: BimodulePresentation) -> list[Axiom]:
    A = b.algebra
    mu, aA, bA = A.op("mu"), A.map("alpha"), A.map("beta")
    l, r, aM, bM = b.l, b.r, b.alpha_M, b.beta_M
    nA, nM = A.dim, b.dim_M
    return [
        commute_axiom("commute_M", aM, bM),
        multiplicative_axiom("lmod:alpha", aM, l, aA, aM),
        multiplicative_axiom("lmod:beta", bM, l, bA, bM),
        multiplicative_axiom("rmod:alpha", aM, r, aM, aA),
        multiplicative_axiom("rmod:beta", bM, r, bM, bA),
        Axiom("lmod", (nA, nA, nM), nM,
              lambda x, y, m: mul(l, lin(aA, x), mul(l, y, m)) - mul(l, mul(mu, x, y), lin(bM, m))),
        Axiom("rmod", (nM, nA, nA), nM,
              lambda m, x, y: mul(r, lin(aM, m), mul(mu, x, y)) - mul(r, mul(r, m, x), lin(bA, y))),
        Axiom("bimod", (nA, nM, nA), nM,
              lambda x, m, y: mul(l, lin(aA, x), mul(r, m, y)) - mul(r, mul(l, x, m), lin(bA, y))),
    ]


def _require_bihom_associative(p: AlgebraPresentation) -> None:
    base = check_bihom_associative(p)
    if not base:
        raise PrerequisiteFailed("bihom_associative", base)


def check_bimodule(b: BimodulePresentation) -> CheckReport:
    """Module axioms over a BiHom-associative algebra (checked first)."""
    _require_bihom_associative(b.algebra)
    return run_axioms("bimodule", b.field, bimodule_axioms(b))


def check_bimodule_algebra(b: BimodulePresentation) -> CheckReport:
    """Bimodule axioms, BiHom-associativity of the bullet product, then extra1-extra3."""
    if b.bullet is None:
        raise MissingComponent("bimodule algebra needs a bullet product")
    _require_bihom_associative(b.algebra)
    A = b.algebra
    aA, bA = A.map("alpha"), A.map("beta")
    l, r, dot, aM, bM = b.l, b.r, b.bullet, b.alpha_M, b.beta_M
    nA, nM = A.dim, b.dim_M
    axioms = bimodule_axioms(b)
    axioms += bihom_associative_axioms(dot, aM, bM, prefix="bullet:")[1:]
    axioms += [
        Axiom("extra1", (nA, nM, nM), nM,
              lambda x, m, k: mul(l, lin(aA, x), mul(dot, m, k)) - mul(dot, mul(l, x, m), lin(bM, k))),
        Axiom("extra2", (nM, nM, nA), nM,
              lambda m, k, x: mul(dot, lin(aM, m), mul(r, k, x)) - mul(r, mul(dot, m, k), lin(bA, x))),
        Axiom("extra3", (nM, nA, nM), nM,
              lambda m, x, k: mul(dot, lin(aM, m), mul(l, x, k)) - mul(dot, mul(r, m, x), lin(bM, k))),
    ]
    return run_axioms("bimodule_algebra", b.field, axioms)


def check_hochschild_2cocycle(b: BimodulePresentation, H: BilinearOp) -> CheckReport:
    """``H`` intertwines the structure maps and kills the 4-term coboundary."""
    A = b.algebra
    nA, nM = A.dim, b.dim_M
    if H.field != A.field:
        raise FieldMismatch(f"H over {H.field}, algebra over {A.field}")
    if H.shape != (nA, nA, nM):
        raise DimensionMismatch(f"H has shape {H.shape}, expected {(nA, nA, nM)}")
    mod = check_bimodule(b)
    if not mod:
        raise PrerequisiteFailed("bimodule", mod)
    mu, aA, bA = A.op("mu"), A.map("alpha"), A.map("beta")
    l, r = b.l, b.r

    def cocycle(x, y, z):
        return (mul(l, lin(aA, x), mul(H, y, z)) - mul(H, mul(mu, x, y), lin(bA, z))
                + mul(H, lin(aA, x), mul(mu, y, z)) - mul(r, mul(H, x, y), lin(bA, z)))

    return run_axioms("hochschild_2cocycle", A.field, [
        Axiom("Hoc1:alpha", (nA, nA), nM, lambda x, y: mul(H, lin(aA, x), lin(aA, y)) - lin(b.alpha_M, mul(H, x, y))),
        Axiom("Hoc1:beta", (nA, nA), nM, lambda x, y: mul(H, lin(bA, x), lin(bA, y)) - lin(b.beta_M, mul(H, x, y))),
        Axiom("cocycle", (nA, nA, nA), nM, cocycle),
    ])


def check_morphism(src: AlgebraPresentation, dst: AlgebraPresentation, f: LinearMap) -> CheckReport:
    """``f`` intertwines every named map and is multiplicative for every named op."""
    if src.kind is not None and dst.kind is not None and src.kind != dst.kind:
        raise KindMismatch(f"{src.kind} vs {dst.kind}")
    if src.ops.keys() != dst.ops.keys() or src.maps.keys() != dst.maps.keys():
        raise KindMismatch(
            f"component names differ: {sorted(src.ops)}/{sorted(src.maps)} vs {sorted(dst.ops)}/{sorted(dst.maps)}"
        )
    if f.matrix.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"morphism has shape {f.matrix.shape}, expected {(dst.dim, src.dim)}")
    axioms = []
    for name in src.maps:
        m, m2 = src.maps[name], dst.maps[name]
        axioms.append(Axiom(f"morphism:{name}", (src.dim,), dst.dim,
                            lambda x, m=m, m2=m2: lin(m2, lin(f, x)) - lin(f, lin(m, x))))
    for name in src.ops:
        o, o2 = src.ops[name], dst.ops[name]
        axioms.append(Axiom(f"morphism:{name}", (src.dim, src.dim), dst.dim,
                            lambda x, y, o=o, o2=o2: lin(f, mul(o, x, y)) - mul(o2, lin(f, x), lin(f, y))))
    return run_axioms("morphism", src.field, axioms)
