"""Smoke tests for the Python bindings against the bundled corpus."""

import os

import pytest

import modeuskb

CORPUS = os.environ.get("MODEUSKB_CORPUS", os.path.join(os.path.dirname(__file__), "..", "..", "corpus"))


def corpus_file(name: str) -> str:
    return os.path.join(CORPUS, name)


@pytest.fixture(scope="module")
def engine() -> modeuskb.Engine:
    return modeuskb.Engine([corpus_file("tbox.ofn"), corpus_file("abox.ofn")])


def read(name: str) -> str:
    with open(corpus_file(name), encoding="utf-8") as f:
        return f.read()


def test_counts(engine):
    counts = engine.counts()
    assert counts["individuals"] == 34
    assert counts["asserted_facts"] == 99
    assert counts["classes"] > 0


def test_published_query_1(engine):
    rows = engine.query(read("q23.rq"))
    assert [r["particella"] for r in rows] == [":part5", ":part6"]


def test_published_query_1_strict_literals():
    strict = modeuskb.Engine(
        [corpus_file("tbox.ofn"), corpus_file("abox.ofn")], plain_literals=False
    )
    assert strict.query(read("q23.rq")) == []


def test_published_query_2(engine):
    rows = engine.query(read("q24.rq"))
    assert [r["mappa"] for r in rows] == [":mappa1"]


def test_validate_clean_corpus(engine):
    report = engine.validate()
    assert report["clashes"] == []
    assert report["stats"]["asserted"] == 99
    kinds = {lint["kind"] for lint in report["lints"]}
    assert "missing-mandatory-data-property" in kinds
    assert "exact-cardinality-shortfall" in kinds


def test_explain_inference_chain(engine):
    proof = engine.explain("member(:mappa1, :Unità_di_descrizione)")
    assert proof.count("[R-SUB]") == 2
    assert "[ASSERTED]" in proof
    assert ":Mappa" in proof


def test_explain_not_entailed(engine):
    with pytest.raises(LookupError):
        engine.explain("member(:mappa1, :Acqua)")


def test_no_reasoning_sees_only_asserted(engine):
    query = "PREFIX :<http://modeus.uniroma1.it/ontology#> SELECT ?x WHERE {?x a :Unità_di_descrizione}"
    assert any(r["x"] == ":mappa1" for r in engine.query(query))
    assert engine.query(query, reasoning=False) == []


def test_export_is_deterministic(engine):
    assert engine.export_facts() == engine.export_facts()


def test_parse_and_canonical_serialization():
    text = read("tbox.ofn")
    parsed = modeuskb.parse_ontology(text)
    assert parsed["axioms"] == 960
    assert parsed["warnings"] == []
    canonical = modeuskb.serialize_ontology(text)
    assert modeuskb.serialize_ontology(canonical) == canonical


def test_bad_syntax_raises():
    with pytest.raises(ValueError):
        modeuskb.parse_ontology("Ontology(<http://x>\nSubClassOf(:A")
