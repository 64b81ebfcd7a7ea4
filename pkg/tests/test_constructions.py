import numpy as np
import pytest

from _util import DUAL, algebra
from bihomns import PrerequisiteFailed
from bihomns.constructions import (
    bhas_from_ns,
    cocycle_from_ns,
    functor_F,
    functor_G,
    ns_from_gen_nijenhuis,
    ns_from_twisted_rb,
    ns_to_bhas_with_bimodule,
    ops_identical,
    perturbation_operators,
    perturbation_product,
    split_null_extension,
    star_sum,
    tridend_embed_ns,
    yau_twist_morphism_transport,
    yau_twist_ns,
)
from bihomns.corpus import base_algebra, ns_from_nijenhuis, yau_twist_algebra
from bihomns.multilinear import BilinearOp, LinearMap, Vector, apply_bilinear, transform_op
from bihomns.operators import GenNijInstance, TwistedRBInstance, check_twisted_rb, reynolds_instance
from bihomns.scalars import GF2, GF3, QQ
from bihomns.structures import (
    AlgebraPresentation,
    BimodulePresentation,
    check_bihom_associative,
    check_bihom_ns,
    check_hochschild_2cocycle,
    regular_bimodule,
    zero_bimodule,
)

NAMES = ("prec", "succ", "vee")


def zero_ns(F, n, maps=True):
    ops = {k: BilinearOp.zero(F, n) for k in NAMES}
    I = LinearMap.identity(F, n)
    return AlgebraPresentation(n, F, ops, {"alpha": I, "beta": I} if maps else {})


def dual_ns(F):
    """NS structure of the Nijenhuis projection onto span(x) on the dual numbers."""
    return ns_from_nijenhuis(base_algebra("dual_numbers", F), LinearMap(F, [[0, 0], [0, 1]]))


def test_star_sum():
    assert star_sum(zero_ns(QQ, 2)) == BilinearOp.zero(QQ, 2)
    mu = BilinearOp(QQ, DUAL)
    p = zero_ns(QQ, 2).with_components(ops={"prec": mu})
    assert star_sum(p) == mu
    q = dual_ns(QQ)
    assert check_bihom_ns(q) and check_bihom_associative(bhas_from_ns(q))


def test_ns_to_bhas_with_bimodule():
    A, b = ns_to_bhas_with_bimodule(zero_ns(GF2, 2))
    assert A.op("mu") == BilinearOp.zero(GF2, 2) and b.l == b.r == BilinearOp.zero(GF2, 2)
    mu = BilinearOp(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    bad = zero_ns(QQ, 2).with_components(ops={"prec": mu, "succ": mu})
    with pytest.raises(PrerequisiteFailed):
        ns_to_bhas_with_bimodule(bad)


def test_yau_twist_identity_and_zero():
    p = dual_ns(GF3)
    base = AlgebraPresentation(2, GF3, {k: p.op(k) for k in NAMES})
    I = p.identity()
    r = yau_twist_ns(base, I, I)
    assert r.passed and ops_identical(r.output, p)
    a, b = LinearMap(GF3, [[2, 0], [0, 1]]), LinearMap(GF3, [[1, 1], [0, 1]])
    assert yau_twist_ns(zero_ns(GF3, 2, maps=False), a, a.power(2)).passed


def test_yau_twist_gf3_diagonal_pair():
    p = dual_ns(GF3)
    base = AlgebraPresentation(2, GF3, {k: p.op(k) for k in NAMES})
    # x -> cx are NS endomorphisms of this instance
    a, b = LinearMap(GF3, [[1, 0], [0, 2]]), LinearMap(GF3, [[1, 0], [0, 2]])
    r = yau_twist_ns(base, a, b)
    assert r.passed and r.output.map("alpha") == a
    x = Vector.basis(GF3, 2, 1)
    assert apply_bilinear(r.output.op("succ"), x, x) == apply_bilinear(p.op("succ"), a(x), b(x))


def test_yau_twist_rejects_non_endomorphism():
    base = AlgebraPresentation(2, QQ, {k: dual_ns(QQ).op(k) for k in NAMES})
    swap = LinearMap(QQ, [[0, 1], [1, 0]])
    with pytest.raises(PrerequisiteFailed) as exc:
        yau_twist_ns(base, swap, base_algebra("dual_numbers", QQ).identity())
    assert exc.value.label == "endomorphism:alpha"


def test_morphism_transport():
    base = AlgebraPresentation(2, QQ, {k: dual_ns(QQ).op(k) for k in NAMES})
    I = LinearMap.identity(QQ, 2)
    a = LinearMap(QQ, [[1, 0], [0, 5]])
    assert yau_twist_morphism_transport(I, base, a, a, base, a, a)
    assert yau_twist_morphism_transport(LinearMap.zero(QQ, 2), base, a, a, base, a, a)
    assert yau_twist_morphism_transport(LinearMap(QQ, [[1, 0], [0, 2]]), base, a, I, base, a, I)


def test_split_null_extension():
    z = zero_bimodule(algebra(QQ, np.zeros((1, 1, 1), dtype=int).tolist()), 1)
    assert split_null_extension(z).passed
    b = regular_bimodule(algebra(QQ, DUAL))
    out = split_null_extension(b)
    assert out.passed and out.output.dim == 4
    r = b.r.tensor.copy()
    r[1, 1, 0] = 1
    bad = BimodulePresentation(b.algebra, 2, b.l, BilinearOp(QQ, r), b.alpha_M, b.beta_M)
    assert not split_null_extension(bad).passed


def test_tridend_embed():
    I = LinearMap.identity(GF2, 2)
    z = BilinearOp.zero(GF2, 2)
    T = AlgebraPresentation(2, GF2, {"prec": z, "succ": z, "dot": BilinearOp(GF2, DUAL)}, {"alpha": I, "beta": I})
    r = tridend_embed_ns(T)
    assert r.passed and set(r.output.ops) == set(NAMES) and r.output.op("vee") == T.op("dot")


def test_ns_from_twisted_rb_zero():
    b = regular_bimodule(algebra(QQ, DUAL))
    r = ns_from_twisted_rb(TwistedRBInstance(b, BilinearOp.zero(QQ, 2), LinearMap.zero(QQ, 2)))
    assert r.passed and all(r.output.op(k) == BilinearOp.zero(QQ, 2) for k in NAMES)


def test_reynolds_vee_is_minus_product_of_images():
    A = algebra(GF2, DUAL)
    R = LinearMap(GF2, [[1, 1], [0, 0]])
    r = ns_from_twisted_rb(reynolds_instance(A, R))
    assert r.passed
    mu = A.op("mu")
    assert r.output.op("vee") == -transform_op(mu, R, R)


def test_cocycle_from_ns():
    b, H = cocycle_from_ns(zero_ns(QQ, 2))
    assert H == BilinearOp.zero(QQ, 2) and check_hochschild_2cocycle(b, H)
    b, H = cocycle_from_ns(dual_ns(QQ))
    assert check_hochschild_2cocycle(b, H)


def test_functors_round_trip():
    for p in (zero_ns(GF3, 2), dual_ns(GF3), dual_ns(QQ)):
        t = functor_F(p)
        assert check_twisted_rb(t) and t.pi == p.identity()
        assert ops_identical(functor_G(t), p)


def test_f_after_g():
    A = algebra(GF2, DUAL)
    t = reynolds_instance(A, LinearMap(GF2, [[1, 1], [0, 0]]))
    q = functor_G(t)
    t2 = functor_F(q)
    assert t2.pi == q.identity() and ops_identical(functor_G(t2), q)


def test_gen_nijenhuis_construction_classical():
    A = base_algebra("dual_numbers", QQ)
    I = A.identity()
    N = LinearMap(QQ, [[0, 0], [0, 1]])
    assert ns_from_gen_nijenhuis(GenNijInstance(A, I, I, I, I, LinearMap.zero(QQ, 2))).output.op("prec") == \
        BilinearOp.zero(QQ, 2)
    r = ns_from_gen_nijenhuis(GenNijInstance(A, I, I, I, I, N))
    assert r.passed and r.extras["star_verification"]
    mu = A.op("mu")
    out = r.output
    # x < y = x N(y), x > y = N(x) y, x v y = -N(xy)
    assert out.op("prec") == transform_op(mu, None, N)
    assert out.op("succ") == transform_op(mu, N, None)
    assert out.op("vee") == -transform_op(mu, None, None, N)


def test_dual_numbers_perturbation():
    A = base_algebra("dual_numbers", QQ)
    x = Vector(QQ, [0, 1])
    N1, N2 = perturbation_operators(A, x)
    assert N1 == N2 == LinearMap(QQ, [[0, 0], [1, 0]])
    star = perturbation_product(A, x)
    # 1 * 1 = x, every other basis product vanishes
    expected = np.zeros((2, 2, 2), dtype=int)
    expected[0, 0, 1] = 1
    assert star == BilinearOp(QQ, expected)
    assert check_bihom_associative(A.with_components(ops={"mu": star}))
    I = A.identity()
    r1 = ns_from_gen_nijenhuis(GenNijInstance(A, I, I, I, I, N1))
    assert r1.extras["star"] == star


def test_perturbation_zero_vector_and_bad_vector():
    A = base_algebra("dual_numbers", GF3)
    N1, N2 = perturbation_operators(A, Vector.zero(GF3, 2))
    assert N1 == N2 == LinearMap.zero(GF3, 2)
    C = yau_twist_algebra(algebra(QQ, DUAL), LinearMap.identity(QQ, 2), LinearMap(QQ, [[1, 0], [0, 2]]))
    with pytest.raises(PrerequisiteFailed) as exc:
        perturbation_operators(C, Vector(QQ, [0, 1]))
    assert exc.value.label == "fixed:beta^2"
