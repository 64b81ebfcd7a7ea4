"""Second, independent evaluator of every registered identity.

Each identity is written out term by term with single-vector
``apply_linear`` / ``apply_bilinear`` calls on one basis tuple at a time.
Nothing here shares identity-assembly code with the batched checkers, so
a transcription slip in either copy shows up as a disagreement.

Every identity is evaluated as left-hand side minus right-hand side of its
displayed equation, which is also the orientation the checkers use.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable

from .errors import PrerequisiteFailed, UnknownChecker, UnknownIdentity
from .multilinear import BilinearOp, LinearMap, Vector, apply_bilinear, apply_linear
from .operators import GenNijInstance, TwistedRBInstance
from .report import CheckReport
from .structures import AlgebraPresentation, BimodulePresentation


class Components:
    """Flat name -> op/map view of any presentation or instance."""

    def __init__(self, obj):
        self.items: dict[str, LinearMap | BilinearOp] = {}
        self.dims: dict[str, int] = {}
        self._absorb(obj)

    def _absorb(self, obj):
        if isinstance(obj, AlgebraPresentation):
            self.items.update(obj.ops)
            self.items.update(obj.maps)
            self.dims["A"] = obj.dim
            self.field = obj.field
        elif isinstance(obj, GenNijInstance):
            self._absorb(obj.to_presentation())
        elif isinstance(obj, BimodulePresentation):
            self._absorb(obj.algebra)
            self.dims["M"] = obj.dim_M
            for name in ("l", "r", "bullet", "alpha_M", "beta_M"):
                if getattr(obj, name) is not None:
                    self.items[name] = getattr(obj, name)
        elif isinstance(obj, TwistedRBInstance):
            self._absorb(obj.bimodule)
            self.items["H"] = obj.H
            self.items["pi"] = obj.pi
        elif isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], BimodulePresentation):
            self._absorb(obj[0])
            self.items["H"] = obj[1]
        elif isinstance(obj, dict):
            for k, v in obj.items():
                self.items[k] = v
        else:
            raise TypeError(f"cannot take components of {type(obj).__name__}")

    def __contains__(self, name):
        return name in self.items

    def L(self, names: str, v: Vector) -> Vector:
        """Apply a composite ``"a b c"`` meaning ``a(b(c(v)))``."""
        for name in reversed(names.split()):
            v = apply_linear(self.items[name], v)
        return v

    def B(self, name: str, x: Vector, y: Vector) -> Vector:
        return apply_bilinear(self.items[name], x, y)

    def star(self, x: Vector, y: Vector, third: str = "vee") -> Vector:
        return self.B("prec", x, y) + self.B("succ", x, y) + self.B(third, x, y)


Identity = tuple[tuple[str, ...], Callable[..., Vector]]
IDENTITIES: dict[str, Identity] = {}


def identity(name: str, *spaces: str):
    def register(fn):
        IDENTITIES[name] = (spaces, fn)
        return fn
    return register


# -- BiHom-associative ------------------------------------------------------------


@identity("commute", "A")
def _(c, x):
    return c.L("alpha beta", x) - c.L("beta alpha", x)


@identity("eqalfabeta:alpha", "A", "A")
def _(c, x, y):
    return c.L("alpha", c.B("mu", x, y)) - c.B("mu", c.L("alpha", x), c.L("alpha", y))


@identity("eqalfabeta:beta", "A", "A")
def _(c, x, y):
    return c.L("beta", c.B("mu", x, y)) - c.B("mu", c.L("beta", x), c.L("beta", y))


@identity("eqasso", "A", "A", "A")
def _(c, x, y, z):
    return c.B("mu", c.L("alpha", x), c.B("mu", y, z)) - c.B("mu", c.B("mu", x, y), c.L("beta", z))


@identity("associativity", "A", "A", "A")
def _(c, x, y, z):
    return c.B("mu", c.B("mu", x, y), z) - c.B("mu", x, c.B("mu", y, z))


# -- NS and BiHom-NS --------------------------------------------------------------


@identity("NS1", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("prec", x, y), z) - c.B("prec", x, c.star(y, z))


@identity("NS2", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("succ", x, y), z) - c.B("succ", x, c.B("prec", y, z))


@identity("NS3", "A", "A", "A")
def _(c, x, y, z):
    return c.B("succ", c.star(x, y), z) - c.B("succ", x, c.B("succ", y, z))


@identity("NS4", "A", "A", "A")
def _(c, x, y, z):
    left = c.B("prec", c.B("vee", x, y), z) + c.B("vee", c.star(x, y), z)
    right = c.B("succ", x, c.B("vee", y, z)) + c.B("vee", x, c.star(y, z))
    return left - right


def _register_structure_map_groups(prefix_commute: str, group_alpha: str, group_beta: str, ops: tuple[str, ...]):
    @identity(prefix_commute, "A")
    def _(c, x):
        return c.L("alpha beta", x) - c.L("beta alpha", x)

    for group, m in ((group_alpha, "alpha"), (group_beta, "beta")):
        for op in ops:
            def fn(c, x, y, m=m, op=op):
                return c.L(m, c.B(op, x, y)) - c.B(op, c.L(m, x), c.L(m, y))
            IDENTITIES[f"{group}:{op}"] = (("A", "A"), fn)


_register_structure_map_groups("BiHomNS0", "BiHomNS1", "BiHomNS2", ("prec", "succ", "vee"))
_register_structure_map_groups("BiHomtridend1", "BiHomtridend4", "BiHomtridend5", ("prec", "succ", "dot"))


@identity("BiHomNS3", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("prec", x, y), c.L("beta", z)) - c.B("prec", c.L("alpha", x), c.star(y, z))


@identity("BiHomNS4", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("succ", x, y), c.L("beta", z)) - c.B("succ", c.L("alpha", x), c.B("prec", y, z))


@identity("BiHomNS5", "A", "A", "A")
def _(c, x, y, z):
    return c.B("succ", c.star(x, y), c.L("beta", z)) - c.B("succ", c.L("alpha", x), c.B("succ", y, z))


@identity("BiHomNS6", "A", "A", "A")
def _(c, x, y, z):
    bz, ax = c.L("beta", z), c.L("alpha", x)
    left = c.B("prec", c.B("vee", x, y), bz) + c.B("vee", c.star(x, y), bz)
    right = c.B("succ", ax, c.B("vee", y, z)) + c.B("vee", ax, c.star(y, z))
    return left - right


# -- BiHom-tridendriform ----------------------------------------------------------


@identity("BiHomtridend8", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("prec", x, y), c.L("beta", z)) - c.B("prec", c.L("alpha", x), c.star(y, z, "dot"))


@identity("BiHomtridend9", "A", "A", "A")
def _(c, x, y, z):
    return c.B("prec", c.B("succ", x, y), c.L("beta", z)) - c.B("succ", c.L("alpha", x), c.B("prec", y, z))


@identity("BiHomtridend10", "A", "A", "A")
def _(c, x, y, z):
    return c.B("succ", c.L("alpha", x), c.B("succ", y, z)) - c.B("succ", c.star(x, y, "dot"), c.L("beta", z))


@identity("BiHomtridend11", "A", "A", "A")
def _(c, x, y, z):
    return c.B("dot", c.L("alpha", x), c.B("succ", y, z)) - c.B("dot", c.B("prec", x, y), c.L("beta", z))


@identity("BiHomtridend12", "A", "A", "A")
def _(c, x, y, z):
    return c.B("succ", c.L("alpha", x), c.B("dot", y, z)) - c.B("dot", c.B("succ", x, y), c.L("beta", z))


@identity("BiHomtridend13", "A", "A", "A")
def _(c, x, y, z):
    return c.B("dot", c.L("alpha", x), c.B("prec", y, z)) - c.B("prec", c.B("dot", x, y), c.L("beta", z))


@identity("BiHomtridend14", "A", "A", "A")
def _(c, x, y, z):
    return c.B("dot", c.L("alpha", x), c.B("dot", y, z)) - c.B("dot", c.B("dot", x, y), c.L("beta", z))


# -- bimodules and bimodule algebras ------------------------------------------------


@identity("commute_M", "M")
def _(c, m):
    return c.L("alpha_M beta_M", m) - c.L("beta_M alpha_M", m)


@identity("lmod:alpha", "A", "M")
def _(c, x, m):
    return c.L("alpha_M", c.B("l", x, m)) - c.B("l", c.L("alpha", x), c.L("alpha_M", m))


@identity("lmod:beta", "A", "M")
def _(c, x, m):
    return c.L("beta_M", c.B("l", x, m)) - c.B("l", c.L("beta", x), c.L("beta_M", m))


@identity("rmod:alpha", "M", "A")
def _(c, m, x):
    return c.L("alpha_M", c.B("r", m, x)) - c.B("r", c.L("alpha_M", m), c.L("alpha", x))


@identity("rmod:beta", "M", "A")
def _(c, m, x):
    return c.L("beta_M", c.B("r", m, x)) - c.B("r", c.L("beta_M", m), c.L("beta", x))


@identity("lmod", "A", "A", "M")
def _(c, x, x2, m):
    return c.B("l", c.L("alpha", x), c.B("l", x2, m)) - c.B("l", c.B("mu", x, x2), c.L("beta_M", m))


@identity("rmod", "M", "A", "A")
def _(c, m, x, x2):
    return c.B("r", c.L("alpha_M", m), c.B("mu", x, x2)) - c.B("r", c.B("r", m, x), c.L("beta", x2))


@identity("bimod", "A", "M", "A")
def _(c, x, m, x2):
    return c.B("l", c.L("alpha", x), c.B("r", m, x2)) - c.B("r", c.B("l", x, m), c.L("beta", x2))


@identity("bullet:eqalfabeta:alpha", "M", "M")
def _(c, m, k):
    return c.L("alpha_M", c.B("bullet", m, k)) - c.B("bullet", c.L("alpha_M", m), c.L("alpha_M", k))


@identity("bullet:eqalfabeta:beta", "M", "M")
def _(c, m, k):
    return c.L("beta_M", c.B("bullet", m, k)) - c.B("bullet", c.L("beta_M", m), c.L("beta_M", k))


@identity("bullet:eqasso", "M", "M", "M")
def _(c, m, k, q):
    return c.B("bullet", c.L("alpha_M", m), c.B("bullet", k, q)) - c.B("bullet", c.B("bullet", m, k), c.L("beta_M", q))


@identity("extra1", "A", "M", "M")
def _(c, x, m, k):
    return c.B("l", c.L("alpha", x), c.B("bullet", m, k)) - c.B("bullet", c.B("l", x, m), c.L("beta_M", k))


@identity("extra2", "M", "M", "A")
def _(c, m, k, x):
    return c.B("bullet", c.L("alpha_M", m), c.B("r", k, x)) - c.B("r", c.B("bullet", m, k), c.L("beta", x))


@identity("extra3", "M", "A", "M")
def _(c, m, x, k):
    return c.B("bullet", c.L("alpha_M", m), c.B("l", x, k)) - c.B("bullet", c.B("r", m, x), c.L("beta_M", k))


# -- cocycles and twisted Rota-Baxter operators -----------------------------------


@identity("Hoc1:alpha", "A", "A")
def _(c, x, y):
    return c.B("H", c.L("alpha", x), c.L("alpha", y)) - c.L("alpha_M", c.B("H", x, y))


@identity("Hoc1:beta", "A", "A")
def _(c, x, y):
    return c.B("H", c.L("beta", x), c.L("beta", y)) - c.L("beta_M", c.B("H", x, y))


@identity("cocycle", "A", "A", "A")
def _(c, x, y, z):
    t1 = c.B("l", c.L("alpha", x), c.B("H", y, z))
    t2 = c.B("H", c.B("mu", x, y), c.L("beta", z))
    t3 = c.B("H", c.L("alpha", x), c.B("mu", y, z))
    t4 = c.B("r", c.B("H", x, y), c.L("beta", z))
    return t1 - t2 + t3 - t4


@identity("supTRB:alpha", "M")
def _(c, m):
    return c.L("pi alpha_M", m) - c.L("alpha pi", m)


@identity("supTRB:beta", "M")
def _(c, m):
    return c.L("pi beta_M", m) - c.L("beta pi", m)


@identity("trb", "M", "M")
def _(c, m, n):
    pm, pn = c.L("pi", m), c.L("pi", n)
    inside = c.B("l", pm, n) + c.B("r", m, pn) + c.B("H", pm, pn)
    return c.B("mu", pm, pn) - c.L("pi", inside)


@identity("reynolds:alpha", "A")
def _(c, x):
    return c.L("R alpha", x) - c.L("alpha R", x)


@identity("reynolds:beta", "A")
def _(c, x):
    return c.L("R beta", x) - c.L("beta R", x)


@identity("reynolds", "A", "A")
def _(c, x, y):
    rr = c.B("mu", c.L("R", x), c.L("R", y))
    inside = c.B("mu", c.L("R", x), y) + c.B("mu", x, c.L("R", y)) - rr
    return rr - c.L("R", inside)


# -- Nijenhuis family -----------------------------------------------------------------


@identity("Nijeq", "A", "A")
def _(c, x, y):
    inside = c.B("mu", x, c.L("N", y)) + c.B("mu", c.L("N", x), y) - c.L("N", c.B("mu", x, y))
    return c.B("mu", c.L("N", x), c.L("N", y)) - c.L("N", inside)


@identity("extracom1", "A")
def _(c, x):
    return c.L("alpha sigma gamma N", x) - c.L("N alpha sigma gamma", x)


@identity("extracom2", "A")
def _(c, x):
    return c.L("beta tau delta N", x) - c.L("N beta tau delta", x)


@identity("genNij", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("sigma gamma N", x), c.L("tau delta N", y))
    inside = (c.B("mu", c.L("sigma gamma", x), c.L("delta N", y))
              + c.B("mu", c.L("gamma N", x), c.L("tau delta", y))
              - c.L("N", c.B("mu", c.L("gamma", x), c.L("delta", y))))
    return lhs - c.L("N", inside)


@identity("genNijsup1", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("alpha sigma gamma gamma N", x), c.L("tau delta N", y))
    inside = (c.B("mu", c.L("alpha sigma gamma gamma", x), c.L("delta N", y))
              + c.B("mu", c.L("alpha gamma gamma N", x), c.L("tau delta", y))
              - c.L("N", c.B("mu", c.L("alpha gamma gamma", x), c.L("delta", y))))
    return lhs - c.L("N", inside)


@identity("genNijsup2", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("sigma gamma N", x), c.L("beta tau delta delta N", y))
    inside = (c.B("mu", c.L("sigma gamma", x), c.L("beta delta delta N", y))
              + c.B("mu", c.L("gamma N", x), c.L("beta tau delta delta", y))
              - c.L("N", c.B("mu", c.L("gamma", x), c.L("beta delta delta", y))))
    return lhs - c.L("N", inside)


@identity("gN1", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("alpha N", x), c.L("beta N", y))
    inside = (c.B("mu", c.L("alpha", x), c.L("N", y)) + c.B("mu", c.L("alpha N", x), c.L("beta", y))
              - c.L("N", c.B("mu", c.L("alpha", x), y)))
    return lhs - c.L("N", inside)


@identity("gN2", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("alpha N", x), c.L("beta beta N", y))
    inside = (c.B("mu", c.L("alpha", x), c.L("beta N", y)) + c.B("mu", c.L("alpha N", x), c.L("beta beta", y))
              - c.L("N", c.B("mu", c.L("alpha", x), c.L("beta", y))))
    return lhs - c.L("N", inside)


@identity("gN3", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("alpha N", x), c.L("beta N", y))
    inside = (c.B("mu", c.L("alpha", x), c.L("beta N", y)) + c.B("mu", c.L("N", x), c.L("beta", y))
              - c.L("N", c.B("mu", x, c.L("beta", y))))
    return lhs - c.L("N", inside)


@identity("gN4", "A", "A")
def _(c, x, y):
    lhs = c.B("mu", c.L("alpha alpha N", x), c.L("beta N", y))
    inside = (c.B("mu", c.L("alpha alpha", x), c.L("beta N", y)) + c.B("mu", c.L("alpha N", x), c.L("beta", y))
              - c.L("N", c.B("mu", c.L("alpha", x), c.L("beta", y))))
    return lhs - c.L("N", inside)


def _register_commutes():
    names = ["alpha", "beta", "sigma", "gamma", "tau", "delta"]
    for a, b in combinations(names, 2):
        IDENTITIES[f"commute:{a},{b}"] = (("A",), lambda c, x, a=a, b=b: c.L(f"{a} {b}", x) - c.L(f"{b} {a}", x))
    for m in ("alpha", "beta"):
        IDENTITIES[f"commute:N,{m}"] = (("A",), lambda c, x, m=m: c.L(f"N {m}", x) - c.L(f"{m} N", x))
        IDENTITIES[f"commute:N,{m}^2"] = (("A",), lambda c, x, m=m: c.L(f"N {m} {m}", x) - c.L(f"{m} {m} N", x))
    for m in ("sigma", "gamma", "tau", "delta"):
        IDENTITIES[f"multiplicative:{m}"] = (
            ("A", "A"), lambda c, x, y, m=m: c.L(m, c.B("mu", x, y)) - c.B("mu", c.L(m, x), c.L(m, y)))


_register_commutes()


# -- evaluation -------------------------------------------------------------------------


def _components(inputs) -> Components:
    return inputs if isinstance(inputs, Components) else Components(inputs)


def oracle_identity_eval(expr: str, inputs, basis_tuple: tuple[int, ...]) -> Vector:
    """Left-minus-right of identity ``expr`` on one tuple of basis indices."""
    if expr not in IDENTITIES:
        raise UnknownIdentity(expr)
    c = _components(inputs)
    spaces, fn = IDENTITIES[expr]
    if len(basis_tuple) != len(spaces):
        raise ValueError(f"{expr} takes {len(spaces)} arguments, got {len(basis_tuple)}")
    args = [Vector.basis(c.field, c.dims[s], i) for s, i in zip(spaces, basis_tuple)]
    return fn(c, *args)


def identity_tuples(expr: str, inputs):
    c = _components(inputs)
    spaces, _ = IDENTITIES[expr]
    return product(*(range(c.dims[s]) for s in spaces))


def first_violation(expr: str, inputs):
    """``(tuple, residual)`` at the first nonzero tuple, or ``None``."""
    c = _components(inputs)
    for t in identity_tuples(expr, c):
        v = oracle_identity_eval(expr, c, t)
        if not v.is_zero():
            return t, v
    return None


# checker -> ordered steps; ("pre", name) runs another oracle checker as a hypothesis,
# ("hyp", identity) is a hypothesis identity, plain strings are the checked identities.
_BHA = ["commute", "eqalfabeta:alpha", "eqalfabeta:beta", "eqasso"]
_BIMOD = ["commute_M", "lmod:alpha", "lmod:beta", "rmod:alpha", "rmod:beta", "lmod", "rmod", "bimod"]
CHECKER_STEPS: dict[str, list] = {
    "associative": ["associativity"],
    "bihom_associative": _BHA,
    "ns": ["NS1", "NS2", "NS3", "NS4"],
    "bihom_ns": ["BiHomNS0"] + [f"BiHomNS{g}:{o}" for g in (1, 2) for o in ("prec", "succ", "vee")]
    + ["BiHomNS3", "BiHomNS4", "BiHomNS5", "BiHomNS6"],
    "bihom_tridendriform": ["BiHomtridend1"] + [f"BiHomtridend{g}:{o}" for g in (4, 5) for o in ("prec", "succ", "dot")]
    + [f"BiHomtridend{k}" for k in range(8, 15)],
    "bimodule": [("pre", "bihom_associative")] + _BIMOD,
    "bimodule_algebra": [("pre", "bihom_associative")] + _BIMOD
    + ["bullet:eqalfabeta:alpha", "bullet:eqalfabeta:beta", "bullet:eqasso", "extra1", "extra2", "extra3"],
    "hochschild_2cocycle": [("pre", "bimodule"), "Hoc1:alpha", "Hoc1:beta", "cocycle"],
    "twisted_rb": [("pre", "hochschild_2cocycle"), "supTRB:alpha", "supTRB:beta", "trb"],
    "reynolds": [("pre", "bihom_associative"), "reynolds:alpha", "reynolds:beta", "reynolds"],
    "nijenhuis": [("pre", "bihom_associative"), ("hyp", "commute:N,alpha"), ("hyp", "commute:N,beta"), "Nijeq"],
    "gen_nijenhuis": [("pre", "bihom_associative")]
    + [("hyp", f"multiplicative:{m}") for m in ("sigma", "gamma", "tau", "delta")]
    + [("hyp", f"commute:{a},{b}") for a, b in combinations(["alpha", "beta", "sigma", "gamma", "tau", "delta"], 2)]
    + ["extracom1", "extracom2", "genNij", "genNijsup1", "genNijsup2"],
    "corollary_1": [("pre", "bihom_associative"), ("hyp", "commute:N,alpha^2"), ("hyp", "commute:N,beta^2"), "gN1", "gN2"],
    "corollary_2": [("pre", "bihom_associative"), ("hyp", "commute:N,alpha^2"), ("hyp", "commute:N,beta^2"), "gN3", "gN4"],
}

# label the checker module uses for the Reynolds identities
_REPORT_LABELS = {"reynolds:alpha": "supTRB:alpha", "reynolds:beta": "supTRB:beta"}


def oracle_check(checker: str, inputs) -> CheckReport:
    """Re-derive a checker's outcome from the oracle identities alone.

    Mirrors the checker's hypothesis handling: a failing hypothesis raises
    :class:`PrerequisiteFailed` with the same label.
    """
    if checker not in CHECKER_STEPS:
        raise UnknownChecker(checker)
    c = _components(inputs)
    for step in CHECKER_STEPS[checker]:
        if isinstance(step, tuple):
            kind, name = step
            if kind == "pre":
                if not oracle_check(name, c):
                    raise PrerequisiteFailed(name)
            elif first_violation(name, c) is not None:
                raise PrerequisiteFailed(name)
            continue
        hit = first_violation(step, c)
        if hit is not None:
            t, v = hit
            return CheckReport.failure(checker, _REPORT_LABELS.get(step, step), t, v.coords, c.field)
    return CheckReport.ok(checker)


def oracle_morphism_check(src: AlgebraPresentation, dst: AlgebraPresentation, f: LinearMap) -> CheckReport:
    """Morphism conditions evaluated tuple by tuple."""
    F = src.field
    for name in sorted(src.maps):
        for i in range(src.dim):
            e = Vector.basis(F, src.dim, i)
            v = apply_linear(dst.maps[name], apply_linear(f, e)) - apply_linear(f, apply_linear(src.maps[name], e))
            if not v.is_zero():
                return CheckReport.failure("morphism", f"morphism:{name}", (i,), v.coords, F)
    for name in sorted(src.ops):
        for i, j in product(range(src.dim), repeat=2):
            x, y = Vector.basis(F, src.dim, i), Vector.basis(F, src.dim, j)
            v = (apply_linear(f, apply_bilinear(src.ops[name], x, y))
                 - apply_bilinear(dst.ops[name], apply_linear(f, x), apply_linear(f, y)))
            if not v.is_zero():
                return CheckReport.failure("morphism", f"morphism:{name}", (i, j), v.coords, F)
    return CheckReport.ok("morphism")
