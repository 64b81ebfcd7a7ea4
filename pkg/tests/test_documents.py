import json

import pytest

from _util import DUAL, algebra
from bihomns import ParseError, ValidationError
from bihomns.documents import digest, parse_presentation, serialize, to_document
from bihomns.multilinear import BilinearOp, LinearMap
from bihomns.operators import reynolds_instance
from bihomns.scalars import GF3, QQ
from bihomns.structures import AlgebraPresentation, regular_bimodule

ZERO_DOC = {"format_version": 1, "field": "Q", "dim": 1, "kind": "BiHomAssociative",
            "ops": {"mu": [[["0"]]]}, "maps": {"alpha": [["1"]], "beta": [["1"]]}}


def test_zero_algebra_file():
    p = parse_presentation(json.dumps(ZERO_DOC))
    assert isinstance(p, AlgebraPresentation) and p.op("mu") == BilinearOp.zero(QQ, 1)
    assert serialize(p) == serialize(parse_presentation(serialize(p)))


def test_zero_denominator_is_parse_error():
    doc = dict(ZERO_DOC, ops={"mu": [[["1/0"]]]})
    with pytest.raises(ParseError) as exc:
        parse_presentation(json.dumps(doc))
    assert "ops.mu" in str(exc.value)


def test_malformed_json_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_presentation('{\n "dim": 1,\n oops}')
    assert exc.value.line == 3


@pytest.mark.parametrize("patch", [
    {"dim": 0},
    {"format_version": 2},
    {"kind": "Nonsense"},
    {"ops": {"mu": [[["0", "0"]]]}},
    {"field": "GF(4)"},
])
def test_invalid_documents(patch):
    with pytest.raises((ParseError, ValidationError)):
        parse_presentation(json.dumps(dict(ZERO_DOC, **patch)))


def test_missing_kind_component():
    doc = dict(ZERO_DOC, maps={"alpha": [["1"]]})
    with pytest.raises(Exception) as exc:
        parse_presentation(json.dumps(doc))
    assert "beta" in str(exc.value)


def test_round_trip_mixed_objects():
    A = algebra(QQ, [[["1/2", 0], [0, 1]], [[0, 1], [0, 0]]])
    trb = reynolds_instance(algebra(GF3, DUAL), LinearMap(GF3, [[1, 1], [0, 0]]))
    for obj in (A, regular_bimodule(algebra(GF3, DUAL), bullet=True), trb):
        text = serialize(obj)
        again = parse_presentation(text)
        assert serialize(again) == text
        assert digest(again) == digest(obj)


def test_canonical_form_is_idempotent_on_non_canonical_input():
    doc = dict(ZERO_DOC, ops={"mu": [[["2/4"]]]})
    text = json.dumps(doc, indent=None)
    once = serialize(parse_presentation(text))
    assert json.loads(once)["ops"]["mu"] == [[["1/2"]]]
    assert serialize(parse_presentation(once)) == once


def test_corpus_round_trip(corpus):
    for e in corpus.entries:
        text = serialize(e.obj)
        assert serialize(parse_presentation(text)) == text


def test_provenance_is_kept():
    doc = to_document(algebra(QQ, [[[1]]]), {"construction": "x", "inputs": []})
    assert doc["provenance"]["construction"] == "x"
