"""Twisted Rota-Baxter, Reynolds, Nijenhuis and generalized Nijenhuis operators.

Operators are plain :class:`~bihomns.multilinear.LinearMap` objects.
Hypotheses of each notion are verified before the defining identity and a
broken hypothesis raises :class:`~bihomns.errors.PrerequisiteFailed`
naming it, so identity failures and hypothesis failures stay distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ConsistencyError, DimensionMismatch, FieldMismatch, PrerequisiteFailed
from .multilinear import (
    Axiom,
    BilinearOp,
    LinearMap,
    commute_axiom,
    compose_all,
    is_multiplicative,
    lin,
    maps_commute,
    mul,
    run_axioms,
)
from .report import CheckReport
from .structures import (
    AlgebraPresentation,
    BimodulePresentation,
    _require_bihom_associative,
    check_hochschild_2cocycle,
    regular_bimodule,
)


@dataclass(frozen=True)
class TwistedRBInstance:
    """``pi: M -> A`` with a 2-cocycle ``H: A x A -> M`` over a bimodule."""

    bimodule: BimodulePresentation
    H: BilinearOp
    pi: LinearMap

    def __post_init__(self):
        b = self.bimodule
        nA, nM = b.dim_A, b.dim_M
        for name, obj in (("H", self.H), ("pi", self.pi)):
            if obj.field != b.field:
                raise FieldMismatch(f"{name} over {obj.field}, bimodule over {b.field}")
        if self.H.shape != (nA, nA, nM):
            raise DimensionMismatch(f"H has shape {self.H.shape}, expected {(nA, nA, nM)}")
        if self.pi.matrix.shape != (nA, nM):
            raise DimensionMismatch(f"pi has shape {self.pi.matrix.shape}, expected {(nA, nM)}")

    @property
    def field(self):
        return self.bimodule.field


GEN_NIJ_MAPS = ("sigma", "gamma", "tau", "delta", "N")


@dataclass(frozen=True)
class GenNijInstance:
    """A BiHom-associative algebra with maps sigma, gamma, tau, delta and N."""

    algebra: AlgebraPresentation
    sigma: LinearMap
    gamma: LinearMap
    tau: LinearMap
    delta: LinearMap
    N: LinearMap

    def __post_init__(self):
        n = self.algebra.dim
        for name in GEN_NIJ_MAPS:
            f = getattr(self, name)
            if f.field != self.algebra.field:
                raise FieldMismatch(f"{name} over {f.field}, algebra over {self.algebra.field}")
            if f.matrix.shape != (n, n):
                raise DimensionMismatch(f"{name} has shape {f.matrix.shape}, expected {(n, n)}")

    @property
    def field(self):
        return self.algebra.field

    @classmethod
    def from_presentation(cls, p: AlgebraPresentation) -> GenNijInstance:
        base = p.with_components(kind=None, drop=GEN_NIJ_MAPS)
        return cls(base, *(p.map(name) for name in GEN_NIJ_MAPS))

    def to_presentation(self) -> AlgebraPresentation:
        maps = {name: getattr(self, name) for name in GEN_NIJ_MAPS}
        return self.algebra.with_components(maps=maps, kind="GenNijenhuis")


def _nijenhuis_type(label, mu, N, P, Q, U, V, W, X, Y, Z) -> Axiom:
    """``P(x)Q(y) = N(U(x)V(y) + W(x)X(y) - N(Y(x)Z(y)))``."""
    n = mu.shape[0]

    def residual(x, y):
        inner = mul(mu, lin(U, x), lin(V, y)) + mul(mu, lin(W, x), lin(X, y)) - lin(N, mul(mu, lin(Y, x), lin(Z, y)))
        return mul(mu, lin(P, x), lin(Q, y)) - lin(N, inner)

    return Axiom(label, (n, n), n, residual)


def check_twisted_rb(t: TwistedRBInstance) -> CheckReport:
    """Cocycle prerequisite, then ``pi`` intertwining and the twisted RB identity."""
    b = t.bimodule
    cocycle = check_hochschild_2cocycle(b, t.H)
    if not cocycle:
        raise PrerequisiteFailed("hochschild_2cocycle", cocycle)
    A = b.algebra
    mu, aA, bA = A.op("mu"), A.map("alpha"), A.map("beta")
    pi, H, l, r = t.pi, t.H, b.l, b.r
    nA, nM = A.dim, b.dim_M

    def trb(m, k):
        pm, pk = lin(pi, m), lin(pi, k)
        inner = mul(l, pm, k) + mul(r, m, pk) + mul(H, pm, pk)
        return mul(mu, pm, pk) - lin(pi, inner)

    return run_axioms("twisted_rb", A.field, [
        Axiom("supTRB:alpha", (nM,), nA, lambda m: lin(pi, lin(b.alpha_M, m)) - lin(aA, lin(pi, m))),
        Axiom("supTRB:beta", (nM,), nA, lambda m: lin(pi, lin(b.beta_M, m)) - lin(bA, lin(pi, m))),
        Axiom("trb", (nM, nM), nA, trb),
    ])


def reynolds_instance(p: AlgebraPresentation, R: LinearMap) -> TwistedRBInstance:
    """The regular bimodule with ``H = -mu`` and ``pi = R``."""
    return TwistedRBInstance(regular_bimodule(p), -p.op("mu"), R)


def check_reynolds(p: AlgebraPresentation, R: LinearMap) -> CheckReport:
    """``R`` commutes with alpha, beta and ``R(x)R(y) = R(R(x)y + xR(y) - R(x)R(y))``.

    Evaluated directly and as a twisted Rota-Baxter operator; the two
    routes must agree on verdict and witness.
    """
    _require_bihom_associative(p)
    mu, alpha, beta = p.op("mu"), p.map("alpha"), p.map("beta")
    n = p.dim

    def identity(x, y):
        rr = mul(mu, lin(R, x), lin(R, y))
        return rr - lin(R, mul(mu, lin(R, x), y) + mul(mu, x, lin(R, y)) - rr)

    direct = run_axioms("reynolds", p.field, [
        Axiom("supTRB:alpha", (n,), n, lambda x: lin(R, lin(alpha, x)) - lin(alpha, lin(R, x))),
        Axiom("supTRB:beta", (n,), n, lambda x: lin(R, lin(beta, x)) - lin(beta, lin(R, x))),
        Axiom("reynolds", (n, n), n, identity),
    ])
    via_trb = check_twisted_rb(reynolds_instance(p, R))
    if (direct.passed, direct.witness, direct.residual) != (via_trb.passed, via_trb.witness, via_trb.residual):
        raise ConsistencyError(f"Reynolds routes disagree: {direct} vs {via_trb}")
    return direct


def check_nijenhuis(p: AlgebraPresentation, N: LinearMap) -> CheckReport:
    """Classical Nijenhuis identity for ``N`` commuting with alpha and beta."""
    _require_bihom_associative(p)
    for name in ("alpha", "beta"):
        rep = run_axioms("nijenhuis", p.field, [commute_axiom(f"commute:N,{name}", N, p.map(name))])
        if not rep:
            raise PrerequisiteFailed(f"commute:N,{name}", rep)
    I = p.identity()
    return run_axioms("nijenhuis", p.field, [_nijenhuis_type("Nijeq", p.op("mu"), N, N, N, I, N, N, I, I, I)])


def _gen_nij_prerequisites(g: GenNijInstance) -> None:
    p = g.algebra
    _require_bihom_associative(p)
    mu = p.op("mu")
    for name in ("sigma", "gamma", "tau", "delta"):
        rep = is_multiplicative(getattr(g, name), mu)
        if not rep:
            raise PrerequisiteFailed(f"multiplicative:{name}", rep)
    named = [("alpha", p.map("alpha")), ("beta", p.map("beta"))] + [(k, getattr(g, k)) for k in ("sigma", "gamma", "tau", "delta")]
    for (n1, f1), (n2, f2) in combinations(named, 2):
        if not maps_commute(f1, f2):
            label = f"commute:{n1},{n2}"
            raise PrerequisiteFailed(label, run_axioms("gen_nijenhuis", p.field, [commute_axiom(label, f1, f2)]))


def check_gen_nijenhuis(g: GenNijInstance) -> CheckReport:
    """extracom1, extracom2, genNij, genNijsup1, genNijsup2 after the hypotheses."""
    _gen_nij_prerequisites(g)
    p = g.algebra
    mu, alpha, beta = p.op("mu"), p.map("alpha"), p.map("beta")
    s, gm, t, d, N = g.sigma, g.gamma, g.tau, g.delta, g.N
    c = compose_all
    asg = c(alpha, s, gm)
    btd = c(beta, t, d)
    axioms = [
        Axiom("extracom1", (p.dim,), p.dim, lambda x: lin(asg, lin(N, x)) - lin(N, lin(asg, x))),
        Axiom("extracom2", (p.dim,), p.dim, lambda x: lin(btd, lin(N, x)) - lin(N, lin(btd, x))),
        _nijenhuis_type("genNij", mu, N,
                        c(s, gm, N), c(t, d, N), c(s, gm), c(d, N), c(gm, N), c(t, d), gm, d),
        _nijenhuis_type("genNijsup1", mu, N,
                        c(alpha, s, gm, gm, N), c(t, d, N), c(alpha, s, gm, gm), c(d, N),
                        c(alpha, gm, gm, N), c(t, d), c(alpha, gm, gm), d),
        _nijenhuis_type("genNijsup2", mu, N,
                        c(s, gm, N), c(beta, t, d, d, N), c(s, gm), c(beta, d, d, N),
                        c(gm, N), c(beta, t, d, d), gm, c(beta, d, d)),
    ]
    return run_axioms("gen_nijenhuis", p.field, axioms)


def _require_square_commutation(p: AlgebraPresentation, N: LinearMap) -> None:
    for name in ("alpha", "beta"):
        sq = p.map(name).power(2)
        if not maps_commute(N, sq):
            label = f"commute:N,{name}^2"
            raise PrerequisiteFailed(label, run_axioms("corollary", p.field, [commute_axiom(label, N, sq)]))


def check_corollary_1(p: AlgebraPresentation, N: LinearMap) -> CheckReport:
    """gN1 and gN2 for ``N`` commuting with alpha^2 and beta^2."""
    _require_bihom_associative(p)
    _require_square_commutation(p, N)
    mu, a, b = p.op("mu"), p.map("alpha"), p.map("beta")
    I, c = p.identity(), compose_all
    return run_axioms("corollary_1", p.field, [
        _nijenhuis_type("gN1", mu, N, c(a, N), c(b, N), a, N, c(a, N), b, a, I),
        _nijenhuis_type("gN2", mu, N, c(a, N), c(b, b, N), a, c(b, N), c(a, N), c(b, b), a, b),
    ])


def check_corollary_2(p: AlgebraPresentation, N: LinearMap) -> CheckReport:
    """gN3 and gN4 for ``N`` commuting with alpha^2 and beta^2."""
    _require_bihom_associative(p)
    _require_square_commutation(p, N)
    mu, a, b = p.op("mu"), p.map("alpha"), p.map("beta")
    I, c = p.identity(), compose_all
    return run_axioms("corollary_2", p.field, [
        _nijenhuis_type("gN3", mu, N, c(a, N), c(b, N), a, c(b, N), N, b, I, b),
        _nijenhuis_type("gN4", mu, N, c(a, a, N), c(b, N), c(a, a), c(b, N), c(a, N), b, a, b),
    ])


def _specialize(p, N, check, sigma, gamma, tau, delta):
    direct = check(p, N)
    instance = GenNijInstance(p, sigma, gamma, tau, delta, N)
    general = check_gen_nijenhuis(instance)
    if direct.passed != general.passed:
        raise ConsistencyError(f"corollary check {direct} disagrees with general check {general}")
    return instance, direct


def specialize_corollary_1(p: AlgebraPresentation, N: LinearMap) -> tuple[GenNijInstance, CheckReport]:
    """Instance with sigma = id, gamma = alpha, tau = beta, delta = id.

    Returns the instance and the gN1/gN2 report, after confirming that the
    general checker reaches the same verdict.
    """
    I = p.identity()
    return _specialize(p, N, check_corollary_1, I, p.map("alpha"), p.map("beta"), I)


def specialize_corollary_2(p: AlgebraPresentation, N: LinearMap) -> tuple[GenNijInstance, CheckReport]:
    """Instance with sigma = alpha, gamma = id, tau = id, delta = beta."""
    I = p.identity()
    return _specialize(p, N, check_corollary_2, p.map("alpha"), I, I, p.map("beta"))
