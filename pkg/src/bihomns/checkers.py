"""Name-based dispatch over every checker, used by search, the corpus and the CLI."""

from __future__ import annotations

from typing import Callable

from .errors import MissingComponent, PrerequisiteFailed, UnknownChecker
from .operators import (
    GenNijInstance,
    TwistedRBInstance,
    check_corollary_1,
    check_corollary_2,
    check_gen_nijenhuis,
    check_nijenhuis,
    check_reynolds,
    check_twisted_rb,
)
from .report import CheckReport
from .structures import (
    AlgebraPresentation,
    BimodulePresentation,
    check_associative,
    check_bihom_associative,
    check_bihom_ns,
    check_bihom_tridendriform,
    check_bimodule,
    check_bimodule_algebra,
    check_hochschild_2cocycle,
    check_ns,
)

_GEN = frozenset({"alpha", "beta", "sigma", "gamma", "tau", "delta", "N"})

# name -> (required ops, required maps, function of an AlgebraPresentation)
ALGEBRA_CHECKERS: dict[str, tuple[frozenset, frozenset, Callable[[AlgebraPresentation], CheckReport]]] = {
    "associative": (frozenset({"mu"}), frozenset(), check_associative),
    "bihom_associative": (frozenset({"mu"}), frozenset({"alpha", "beta"}), check_bihom_associative),
    "ns": (frozenset({"prec", "succ", "vee"}), frozenset(), check_ns),
    "bihom_ns": (frozenset({"prec", "succ", "vee"}), frozenset({"alpha", "beta"}), check_bihom_ns),
    "bihom_tridendriform": (frozenset({"prec", "succ", "dot"}), frozenset({"alpha", "beta"}), check_bihom_tridendriform),
    "reynolds": (frozenset({"mu"}), frozenset({"alpha", "beta", "R"}), lambda p: check_reynolds(p, p.map("R"))),
    "nijenhuis": (frozenset({"mu"}), frozenset({"alpha", "beta", "N"}), lambda p: check_nijenhuis(p, p.map("N"))),
    "gen_nijenhuis": (frozenset({"mu"}), _GEN, lambda p: check_gen_nijenhuis(GenNijInstance.from_presentation(p))),
    "corollary_1": (frozenset({"mu"}), frozenset({"alpha", "beta", "N"}), lambda p: check_corollary_1(p, p.map("N"))),
    "corollary_2": (frozenset({"mu"}), frozenset({"alpha", "beta", "N"}), lambda p: check_corollary_2(p, p.map("N"))),
}

MODULE_CHECKERS = ("bimodule", "bimodule_algebra", "hochschild_2cocycle", "twisted_rb")
CHECKER_NAMES = tuple(sorted(set(ALGEBRA_CHECKERS) | set(MODULE_CHECKERS)))


def applicable_checkers(obj) -> list[str]:
    """Checkers whose required components are all present on ``obj``."""
    if isinstance(obj, GenNijInstance):
        obj = obj.to_presentation()
    if isinstance(obj, AlgebraPresentation):
        return [name for name, (ops, maps, _) in sorted(ALGEBRA_CHECKERS.items())
                if ops <= obj.ops.keys() and maps <= obj.maps.keys()]
    if isinstance(obj, TwistedRBInstance):
        return ["bimodule", "hochschild_2cocycle", "twisted_rb"]
    if isinstance(obj, tuple):
        return ["bimodule", "hochschild_2cocycle"]
    if isinstance(obj, BimodulePresentation):
        return ["bimodule"] + (["bimodule_algebra"] if obj.bullet is not None else [])
    raise TypeError(f"no checkers for {type(obj).__name__}")


def run_checker(name: str, obj) -> CheckReport:
    """Run checker ``name`` on ``obj``; hypotheses failures propagate as :class:`PrerequisiteFailed`."""
    if name not in CHECKER_NAMES:
        raise UnknownChecker(name)
    if isinstance(obj, GenNijInstance):
        obj = obj.to_presentation()
    if name in ALGEBRA_CHECKERS:
        if not isinstance(obj, AlgebraPresentation):
            raise MissingComponent(f"checker {name} needs an algebra presentation")
        return ALGEBRA_CHECKERS[name][2](obj)
    if isinstance(obj, TwistedRBInstance):
        b, H = obj.bimodule, obj.H
    elif isinstance(obj, tuple):
        b, H = obj
    elif isinstance(obj, BimodulePresentation):
        b, H = obj, None
    else:
        raise MissingComponent(f"checker {name} needs a bimodule document")
    if name == "bimodule":
        return check_bimodule(b)
    if name == "bimodule_algebra":
        return check_bimodule_algebra(b)
    if H is None:
        raise MissingComponent(f"checker {name} needs a cocycle H")
    if name == "hochschild_2cocycle":
        return check_hochschild_2cocycle(b, H)
    if not isinstance(obj, TwistedRBInstance):
        raise MissingComponent("checker twisted_rb needs a map pi")
    return check_twisted_rb(obj)


def verdict(name: str, obj) -> dict:
    """Report dictionary, with hypothesis failures recorded as ``"precondition"``."""
    try:
        return run_checker(name, obj).to_dict()
    except PrerequisiteFailed as exc:
        return {"checker": name, "verdict": "precondition", "prerequisite": exc.label}


def verdict_map(obj) -> dict[str, dict]:
    return {name: verdict(name, obj) for name in applicable_checkers(obj)}
