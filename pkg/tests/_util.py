"""Small builders shared by the test modules."""

import numpy as np

from bihomns.multilinear import BilinearOp, LinearMap
from bihomns.structures import AlgebraPresentation

DUAL = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]  # k[x]/(x^2), basis {1, x}


def algebra(F, mu, alpha=None, beta=None, kind="BiHomAssociative", **maps):
    n = len(mu)
    I = np.eye(n, dtype=int).tolist()
    return AlgebraPresentation.build(F, n, {"mu": mu}, {"alpha": alpha or I, "beta": beta or I, **maps}, kind)


def random_op(F, n, rng, lo=-1, hi=1):
    if F.p:
        return BilinearOp(F, rng.integers(0, F.p, (n, n, n)))
    return BilinearOp(F, rng.integers(lo, hi + 1, (n, n, n)))


def random_map(F, n, rng, lo=-1, hi=1):
    if F.p:
        return LinearMap(F, rng.integers(0, F.p, (n, n)))
    return LinearMap(F, rng.integers(lo, hi + 1, (n, n)))


def verdict_of(fn, *args):
    """``(passed, axiom, witness, residual)`` or ``("pre", label)``."""
    from bihomns.errors import PrerequisiteFailed
    try:
        r = fn(*args)
    except PrerequisiteFailed as exc:
        return ("pre", exc.label)
    return (r.passed, r.failed_axiom, r.witness, r.residual)
