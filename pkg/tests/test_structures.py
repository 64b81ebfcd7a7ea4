import numpy as np
import pytest

from _util import DUAL, algebra, random_map, random_op, verdict_of
from bihomns import KindMismatch, MissingComponent, PrerequisiteFailed
from bihomns.multilinear import BilinearOp, LinearMap
from bihomns.oracle import oracle_check
from bihomns.scalars import GF2, GF3, QQ
from bihomns.structures import (
    AlgebraPresentation,
    BimodulePresentation,
    check_associative,
    check_bihom_associative,
    check_bihom_ns,
    check_bihom_tridendriform,
    check_bimodule,
    check_bimodule_algebra,
    check_hochschild_2cocycle,
    check_morphism,
    check_ns,
    regular_bimodule,
    zero_bimodule,
)

SWAP = [[0, 1], [1, 0]]


def ns(F, prec, succ, vee, alpha=None, beta=None):
    n = len(prec)
    maps = {}
    if alpha is not None:
        maps = {"alpha": alpha, "beta": beta}
    return AlgebraPresentation.build(F, n, {"prec": prec, "succ": succ, "vee": vee}, maps)


def zeros(n):
    return np.zeros((n, n, n), dtype=int).tolist()


class TestBiHomAssociative:
    def test_zero_product(self):
        assert check_bihom_associative(algebra(QQ, zeros(2), [[2, 0], [0, 3]], [[5, 0], [0, 1]]))

    def test_dual_numbers(self):
        assert check_bihom_associative(algebra(GF3, DUAL))

    def test_literal_example_is_not_associative(self):
        # e0 e1 = e0 only: (e0 e1) e1 = e0 but e0 (e1 e1) = 0
        mu = zeros(2)
        mu[0][1][0] = 1
        r = check_bihom_associative(algebra(QQ, mu))
        assert (r.failed_axiom, r.witness, r.residual) == ("eqasso", (0, 1, 1), ("-1", "0"))

    def test_swap_breaks_multiplicativity(self):
        mu = zeros(2)
        mu[0][0][1] = 1  # e0 e0 = e1, associative
        assert check_bihom_associative(algebra(QQ, mu))
        r = check_bihom_associative(algebra(QQ, mu, alpha=SWAP))
        # alpha(e0 e0) - alpha(e0) alpha(e0) = e0 - e1 e1
        assert (r.failed_axiom, r.witness, r.residual) == ("eqalfabeta:alpha", (0, 0), ("1", "0"))

    def test_non_commuting_maps(self):
        r = check_bihom_associative(algebra(QQ, zeros(2), [[1, 1], [0, 1]], [[1, 0], [1, 1]]))
        assert r.failed_axiom == "commute" and r.witness == (0,)

    def test_missing_component(self):
        p = AlgebraPresentation.build(QQ, 1, {"mu": [[[1]]]})
        with pytest.raises(MissingComponent):
            check_bihom_associative(p)

    def test_degenerates_to_associativity(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            mu = random_op(GF2, 2, rng)
            p = AlgebraPresentation(2, GF2, {"mu": mu}, {"alpha": LinearMap.identity(GF2, 2),
                                                          "beta": LinearMap.identity(GF2, 2)})
            assert check_bihom_associative(p).passed == check_associative(p).passed


class TestNS:
    def test_zero(self):
        assert check_ns(ns(GF2, zeros(2), zeros(2), zeros(2)))
        assert check_bihom_ns(ns(QQ, zeros(2), zeros(2), zeros(2), [[2, 0], [0, 1]], [[1, 0], [0, 3]]))

    def test_prec_associative(self):
        assert check_ns(ns(GF3, DUAL, zeros(2), zeros(2)))

    def test_random_gf2_matches_oracle(self):
        rng = np.random.default_rng(2)
        passes = 0
        for _ in range(300):
            p = AlgebraPresentation(2, GF2, {k: random_op(GF2, 2, rng) for k in ("prec", "succ", "vee")})
            mine = verdict_of(check_ns, p)
            assert mine == verdict_of(oracle_check, "ns", p)
            passes += mine[0] is True
        assert passes == 0 or passes < 300

    def test_bihom_ns_with_identity_maps_degenerates(self):
        rng = np.random.default_rng(3)
        I = LinearMap.identity(GF2, 2)
        seen = set()
        for _ in range(400):
            ops = {k: random_op(GF2, 2, rng) for k in ("prec", "succ", "vee")}
            # sparse tensors pass more often
            ops = {k: BilinearOp(GF2, v.tensor * rng.integers(0, 2, v.tensor.shape)) for k, v in ops.items()}
            a = check_ns(AlgebraPresentation(2, GF2, ops)).passed
            b = check_bihom_ns(AlgebraPresentation(2, GF2, ops, {"alpha": I, "beta": I})).passed
            assert a == b
            seen.add(a)
        assert seen == {True, False}

    def test_random_with_maps_matches_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(150):
            a = random_map(GF3, 2, rng)
            p = AlgebraPresentation(2, GF3, {k: random_op(GF3, 2, rng) for k in ("prec", "succ", "vee")},
                                    {"alpha": a, "beta": a.power(2)})
            assert verdict_of(check_bihom_ns, p) == verdict_of(oracle_check, "bihom_ns", p)


class TestTridendriform:
    def test_zero_and_dot_only(self):
        z = zeros(2)
        I = np.eye(2, dtype=int).tolist()
        assert check_bihom_tridendriform(AlgebraPresentation.build(GF2, 2, {"prec": z, "succ": z, "dot": z},
                                                                   {"alpha": I, "beta": I}))
        p = AlgebraPresentation.build(GF2, 2, {"prec": z, "succ": z, "dot": DUAL}, {"alpha": I, "beta": I})
        assert check_bihom_tridendriform(p)
        assert check_bihom_ns(p.renamed({"dot": "vee"}))

    def test_non_associative_dot_fails_last_axiom(self):
        z = zeros(2)
        dot = zeros(2)
        dot[0][1][0] = 1
        I = np.eye(2, dtype=int).tolist()
        r = check_bihom_tridendriform(AlgebraPresentation.build(QQ, 2, {"prec": z, "succ": z, "dot": dot},
                                                                {"alpha": I, "beta": I}))
        assert r.failed_axiom == "BiHomtridend14" and r.witness == (0, 1, 1)


def _regular(F, mu=DUAL, **kw):
    return regular_bimodule(algebra(F, mu, **kw))


class TestBimodule:
    def test_zero_actions(self):
        assert check_bimodule(zero_bimodule(algebra(GF3, DUAL), 2))

    def test_regular(self):
        assert check_bimodule(_regular(QQ))

    def test_perturbed_regular_fails(self):
        b = _regular(QQ)
        r = b.r.tensor.copy()
        r[1, 1, 0] = 1
        bad = BimodulePresentation(b.algebra, 2, b.l, BilinearOp(QQ, r), b.alpha_M, b.beta_M)
        rep = check_bimodule(bad)
        assert not rep and rep.failed_axiom == "rmod"
        assert verdict_of(check_bimodule, bad) == verdict_of(oracle_check, "bimodule", bad)

    def test_non_associative_base_is_precondition(self):
        mu = zeros(2)
        mu[0][1][0] = 1
        with pytest.raises(PrerequisiteFailed) as exc:
            check_bimodule(regular_bimodule(algebra(QQ, mu)))
        assert exc.value.label == "bihom_associative"


class TestBimoduleAlgebra:
    def test_zero_bullet(self):
        b = _regular(GF3)
        assert check_bimodule_algebra(BimodulePresentation(b.algebra, 2, b.l, b.r, b.alpha_M, b.beta_M,
                                                           BilinearOp.zero(GF3, 2)))

    def test_regular_with_mu(self):
        assert check_bimodule_algebra(regular_bimodule(algebra(GF3, DUAL), bullet=True))

    def test_non_associative_bullet(self):
        z = zero_bimodule(algebra(QQ, DUAL), 2)
        bullet = zeros(2)
        bullet[0][1][0] = 1
        b = BimodulePresentation(z.algebra, 2, z.l, z.r, z.alpha_M, z.beta_M, BilinearOp(QQ, bullet))
        r = check_bimodule_algebra(b)
        assert r.failed_axiom == "bullet:eqasso" and r.witness == (0, 1, 1)

    def test_missing_bullet(self):
        with pytest.raises(MissingComponent):
            check_bimodule_algebra(_regular(QQ))


class TestCocycle:
    def test_zero_and_minus_mu(self):
        b = _regular(QQ)
        assert check_hochschild_2cocycle(b, BilinearOp.zero(QQ, 2))
        assert check_hochschild_2cocycle(b, -b.algebra.op("mu"))

    def test_multiples_of_mu_are_cocycles(self):
        b = _regular(QQ)
        assert check_hochschild_2cocycle(b, 3 * b.algebra.op("mu"))

    def test_non_cocycle(self):
        b = _regular(QQ)
        t = np.zeros((2, 2, 2), dtype=int)
        t[0, 1, 0] = 1  # H(1, x) = 1
        H = BilinearOp(QQ, t)
        r = check_hochschild_2cocycle(b, H)
        assert r.failed_axiom == "cocycle"
        assert verdict_of(check_hochschild_2cocycle, b, H) == verdict_of(oracle_check, "hochschild_2cocycle", (b, H))

    def test_vee_of_ns_algebra(self):
        from bihomns.constructions import cocycle_from_ns
        from bihomns.corpus import base_algebra, ns_from_nijenhuis
        A = base_algebra("dual_numbers", QQ)
        N = LinearMap(QQ, [[1, 0], [0, 0]])
        p = ns_from_nijenhuis(A, N)
        assert check_bihom_ns(p)
        b, H = cocycle_from_ns(p)
        assert check_hochschild_2cocycle(b, H)


class TestMorphism:
    def test_identity_and_zero(self):
        p = algebra(GF3, DUAL)
        assert check_morphism(p, p, p.identity())
        assert check_morphism(p, p, LinearMap.zero(GF3, 2))

    def test_swap_between_different_ops(self):
        p = algebra(QQ, DUAL)
        sq = zeros(2)
        sq[0][0][1] = 1
        q = algebra(QQ, sq)
        r = check_morphism(p, q, LinearMap(QQ, SWAP))
        assert not r and r.failed_axiom == "morphism:mu"

    def test_kind_mismatch(self):
        p = algebra(QQ, DUAL)
        q = ns(QQ, zeros(2), zeros(2), zeros(2), np.eye(2, dtype=int).tolist(), np.eye(2, dtype=int).tolist())
        with pytest.raises(KindMismatch):
            check_morphism(p, q.with_components(kind="BiHomNS"), p.identity())


def test_reports_are_deterministic():
    rng = np.random.default_rng(5)
    p = AlgebraPresentation(3, QQ, {k: random_op(QQ, 3, rng) for k in ("prec", "succ", "vee")},
                            {"alpha": LinearMap.identity(QQ, 3), "beta": LinearMap.identity(QQ, 3)})
    assert check_bihom_ns(p) == check_bihom_ns(p) == oracle_check("bihom_ns", p)
