"""Exhaustive and seeded random search for small witness presentations.

A :class:`SearchSpec` fixes some components of an algebra presentation
and lets others range over a finite value set.  Candidates are indexed
by integers: in exhaustive mode the index is the candidate's position in
lexicographic order (free components sorted by name, entries row-major,
values in the listed order, first entry most significant); in random mode
it is the sample number.

Random sampling uses splitmix64::

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)

(all mod 2^64), seeded with the search spec's seed.  A value index below ``q`` is
drawn by rejecting outputs at or above ``2^64 - 2^64 mod q`` and reducing
the rest mod ``q``; each candidate draws its entries in enumeration order.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterator

import numpy as np

from .checkers import CHECKER_NAMES, ALGEBRA_CHECKERS, run_checker, verdict_map
from .documents import canonical_json, decode_array, digest, encode_array, to_document
from .errors import PrerequisiteFailed, SpaceTooLarge, UnknownChecker, ValidationError
from .multilinear import BilinearOp, LinearMap
from .scalars import Field
from .structures import KINDS, AlgebraPresentation

EXHAUSTIVE_CAP = 1 << 24
MASK64 = (1 << 64) - 1
OP_NAMES = frozenset({"mu", "prec", "succ", "vee", "dot"})
PATTERNS = ("full", "scalar", "diagonal")
MODES = ("auto", "exhaustive", "random")

# checker -> kind claim given to passing search results when the components allow it
TARGET_KINDS = {
    "associative": "Algebra",
    "bihom_associative": "BiHomAssociative",
    "ns": "NS",
    "bihom_ns": "BiHomNS",
    "bihom_tridendriform": "BiHomTridendriform",
    "reynolds": "Reynolds",
    "nijenhuis": "Nijenhuis",
    "gen_nijenhuis": "GenNijenhuis",
}


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass(frozen=True)
class SearchSpec:
    field: Field
    dim: int
    target: str
    free: tuple[tuple[str, str], ...]
    fixed: AlgebraPresentation | None = None
    budget: int = EXHAUSTIVE_CAP
    seed: int = 0
    mode: str = "auto"
    values: tuple[str, ...] | None = None
    first_k: int | None = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or not 1 <= self.dim <= 3:
            raise ValidationError(f"dim must be 1, 2 or 3, got {self.dim!r}")
        if not isinstance(self.budget, int) or self.budget <= 0:
            raise ValidationError(f"budget must be a positive integer, got {self.budget!r}")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MASK64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if self.first_k is not None and self.first_k <= 0:
            raise ValidationError("first_k must be positive")
        object.__setattr__(self, "free", tuple(sorted((str(n), str(p)) for n, p in self.free)))
        if not self.free:
            raise ValidationError("a search needs at least one free component")
        names = [n for n, _ in self.free]
        if len(set(names)) != len(names):
            raise ValidationError(f"free components repeat a name: {names}")
        for name, pattern in self.free:
            if pattern not in PATTERNS:
                raise ValidationError(f"unknown pattern {pattern!r} for {name}")
            if name in OP_NAMES and pattern != "full":
                raise ValidationError(f"op {name} only supports the 'full' pattern")
        if self.fixed is not None:
            if self.fixed.dim != self.dim or self.fixed.field != self.field:
                raise ValidationError("fixed components must share the search's field and dimension")
            clash = set(names) & (set(self.fixed.ops) | set(self.fixed.maps))
            if clash:
                raise ValidationError(f"components both fixed and free: {sorted(clash)}")
        if self.values is not None:
            vals = tuple(self.field.format_value(self.field.parse_value(str(v))) for v in self.values)
            if not vals or len(set(vals)) != len(vals):
                raise ValidationError("values must be a nonempty list of distinct scalars")
            object.__setattr__(self, "values", vals)
        elif self.field.is_rational:
            raise ValidationError("searches over Q need an explicit finite list of values")

    # -- derived quantities

    def value_list(self) -> list:
        if self.values is None:
            return list(range(self.field.p))
        return [self.field.parse_value(v) for v in self.values]

    def slot_shapes(self) -> list[tuple[str, str, tuple[int, ...]]]:
        """``(name, pattern, shape of the free entries)`` per free component."""
        n = self.dim
        out = []
        for name, pattern in self.free:
            if name in OP_NAMES:
                shape = (n, n, n)
            elif pattern == "full":
                shape = (n, n)
            elif pattern == "diagonal":
                shape = (n,)
            else:
                shape = (1,)
            out.append((name, pattern, shape))
        return out

    def entry_count(self) -> int:
        return sum(int(np.prod(s)) for _, _, s in self.slot_shapes())

    def candidate_count(self) -> int:
        return len(self.value_list()) ** self.entry_count()

    def is_exhaustive(self) -> bool:
        total = self.candidate_count()
        if self.mode == "exhaustive":
            if total > EXHAUSTIVE_CAP:
                raise SpaceTooLarge(f"{total} candidates exceed the exhaustive cap of {EXHAUSTIVE_CAP}")
            if total > self.budget:
                raise SpaceTooLarge(f"{total} candidates exceed the budget of {self.budget}")
            return True
        if self.mode == "random":
            return False
        return total <= min(self.budget, EXHAUSTIVE_CAP)

    def to_dict(self) -> dict:
        doc = {
            "field": self.field.name,
            "dim": self.dim,
            "target": self.target,
            "free": {name: pattern for name, pattern in self.free},
            "budget": self.budget,
            "seed": self.seed,
            "mode": self.mode,
        }
        if self.fixed is not None:
            fixed = to_document(self.fixed)
            doc["fixed"] = {"ops": fixed["ops"], "maps": fixed["maps"]}
        if self.values is not None:
            doc["values"] = list(self.values)
        if self.first_k is not None:
            doc["first_k"] = self.first_k
        return doc

    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.to_dict()).encode()).hexdigest()

    @classmethod
    def from_dict(cls, doc: dict) -> SearchSpec:
        if not isinstance(doc, dict):
            raise ValidationError("search spec must be a JSON object")
        for key in ("field", "dim", "target", "free"):
            if key not in doc:
                raise ValidationError(f"search spec lacks {key!r}")
        field = Field.parse(doc["field"])
        dim = doc["dim"]
        if not isinstance(dim, int) or not 1 <= dim <= 3:
            raise ValidationError(f"dim must be 1, 2 or 3, got {dim!r}")
        free = doc["free"]
        if isinstance(free, list):
            free = {name: "full" for name in free}
        if not isinstance(free, dict):
            raise ValidationError("free must be an object of name -> pattern or a list of names")
        fixed = None
        if doc.get("fixed"):
            ops = {k: BilinearOp(field, decode_array(field, v, (dim, dim, dim), f"fixed.ops.{k}"))
                   for k, v in doc["fixed"].get("ops", {}).items()}
            maps = {k: LinearMap(field, decode_array(field, v, (dim, dim), f"fixed.maps.{k}"))
                    for k, v in doc["fixed"].get("maps", {}).items()}
            fixed = AlgebraPresentation(dim, field, ops, maps)
        values = doc.get("values")
        return cls(field, dim, str(doc["target"]), tuple(free.items()), fixed,
                   int(doc.get("budget", EXHAUSTIVE_CAP)), int(doc.get("seed", 0)), doc.get("mode", "auto"),
                   tuple(values) if values is not None else None, doc.get("first_k"))

    def with_seed(self, seed: int) -> SearchSpec:
        d = self.__dict__.copy()
        d["seed"] = seed
        return SearchSpec(**d)


def _assemble(spec: SearchSpec, values: list, entries: list) -> AlgebraPresentation:
    F, n = spec.field, spec.dim
    ops = dict(spec.fixed.ops) if spec.fixed is not None else {}
    maps = dict(spec.fixed.maps) if spec.fixed is not None else {}
    pos = 0
    for name, pattern, shape in spec.slot_shapes():
        size = int(np.prod(shape))
        chunk = [values[i] for i in entries[pos:pos + size]]
        pos += size
        if name in OP_NAMES:
            ops[name] = BilinearOp(F, F.array(chunk).reshape(shape))
        elif pattern == "full":
            maps[name] = LinearMap(F, F.array(chunk).reshape(shape))
        else:
            diag = chunk if pattern == "diagonal" else chunk * n
            m = F.zeros((n, n))
            for i in range(n):
                m[i, i] = diag[i]
            maps[name] = LinearMap(F, m)
    kind = TARGET_KINDS.get(spec.target)
    if kind is not None:
        need_ops, need_maps = KINDS[kind]
        if not (need_ops <= ops.keys() and need_maps <= maps.keys()):
            kind = None
    return AlgebraPresentation(n, F, ops, maps, kind)


def enumerate_candidates(spec: SearchSpec) -> Iterator[tuple[int, AlgebraPresentation]]:
    """Yield ``(index, presentation)``; deterministic given the search spec."""
    values = spec.value_list()
    q = len(values)
    width = spec.entry_count()
    if spec.is_exhaustive():
        for index in range(spec.candidate_count()):
            digits, rest = [0] * width, index
            for k in range(width - 1, -1, -1):
                rest, digits[k] = divmod(rest, q)
            yield index, _assemble(spec, values, digits)
    else:
        rng = SplitMix64(spec.seed)
        for index in range(spec.budget):
            yield index, _assemble(spec, values, [rng.below(q) for _ in range(width)])


enumerate = enumerate_candidates  # noqa: A001  (name used by the search documentation)


@dataclass
class CorpusEntry:
    """A stored object with its full verdict map and where it came from."""

    obj: object
    verdicts: dict
    discovery: dict | None = None
    provenance: dict | None = None
    kind: str | None = None

    def document(self) -> dict:
        doc = to_document(self.obj, self.provenance)
        doc["verdicts"] = self.verdicts
        if self.discovery is not None:
            doc["discovery"] = self.discovery
        return doc

    @property
    def digest(self) -> str:
        return digest(self.document())

    @property
    def directory(self) -> str:
        return self.kind or self.document().get("kind") or "Unclassified"


@dataclass
class SearchOutcome:
    entries: list[CorpusEntry]
    counts: dict[str, int] = dc_field(default_factory=dict)
    examined: int = 0


def run_search(spec: SearchSpec, checker: str | None = None, full_verdicts: bool = True) -> SearchOutcome:
    """Evaluate candidates in index order, keeping those that pass ``checker``.

    With ``full_verdicts=False`` entries carry only the searched checker's
    verdict, which is much cheaper when most hits are discarded.
    """
    checker = checker or spec.target
    if checker not in CHECKER_NAMES or checker not in ALGEBRA_CHECKERS:
        raise UnknownChecker(checker)
    spec_digest = spec.digest()
    out = SearchOutcome([], {"pass": 0, "fail": 0, "precondition": 0})
    for index, p in enumerate_candidates(spec):
        out.examined += 1
        try:
            report = run_checker(checker, p)
            ok = report.passed
            out.counts["pass" if ok else "fail"] += 1
        except PrerequisiteFailed:
            ok = False
            out.counts["precondition"] += 1
        if ok:
            verdicts = verdict_map(p) if full_verdicts else {checker: report.to_dict()}
            out.entries.append(CorpusEntry(p, verdicts, {"spec": spec_digest, "index": index}))
            if spec.first_k is not None and len(out.entries) >= spec.first_k:
                break
    return out


def search_witnesses(spec: SearchSpec, checker: str | None = None) -> list[CorpusEntry]:
    return run_search(spec, checker).entries


def load_spec(path: str | os.PathLike) -> SearchSpec:
    from .documents import load_json
    return SearchSpec.from_dict(load_json(Path(path).read_text(encoding="utf-8")))


def write_entries(root: str | os.PathLike, entries) -> list[Path]:
    """Write entries as ``root/<kind>/<digest>.json``; returns the paths written."""
    paths = []
    for e in entries:
        doc = e.document()
        d = Path(root) / e.directory
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"{digest(doc)}.json"
        path.write_text(canonical_json(doc), encoding="utf-8")
        paths.append(path)
    return paths


def spec_json(spec: SearchSpec) -> str:
    return json.dumps(spec.to_dict(), sort_keys=True, indent=2) + "\n"
