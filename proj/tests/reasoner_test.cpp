#include <doctest.h>

#include <random>

#include "modeuskb/corpus.hpp"
#include "modeuskb/report.hpp"
#include "modeuskb/reasoner.hpp"
#include "support/oracles.hpp"

using namespace modeus;

namespace {

const std::string kNs = "http://modeus.uniroma1.it/ontology#";

CorpusData& corpus() {
    static CorpusData data = loadCorpus(MODEUSKB_CORPUS_DIR);
    return data;
}

KnowledgeBase& corpusKb() {
    static KnowledgeBase kb = buildKb({corpus().tbox, corpus().abox});
    return kb;
}

Closure& corpusClosure() {
    static Closure closure = materialize(corpusKb());
    return closure;
}

TermId id(const KnowledgeBase& kb, const std::string& local) {
    auto t = kb.terms.find(kNs + local);
    REQUIRE(t.has_value());
    return *t;
}

/// Parse a tiny ABox against the corpus TBox.
KnowledgeBase kbWithAssertions(const std::string& axioms) {
    std::string text =
        "Prefix(modeus:=<http://modeus.uniroma1.it/ontology#>)\n"
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
        "Ontology(<http://test>\n" +
        axioms + "\n)";
    Ontology extra = parseText(text, ParseMode::Strict).ontology;
    return buildKb({corpus().tbox, extra});
}

/// Re-apply one rule to a premise fact and collect its conclusions.
std::vector<Fact> conclusionsOf(const KnowledgeBase& kb, const Fact& f, RuleId rule) {
    std::vector<Fact> out;
    auto push = [&out](Fact fact) { out.push_back(std::move(fact)); };
    switch (rule) {
        case RuleId::RSub:
            if (f.kind == Fact::Kind::ClassMember) {
                if (auto it = kb.directSuper.find(f.b); it != kb.directSuper.end())
                    for (TermId sup : it->second) push(Fact::member(f.a, sup));
                for (const auto& group : kb.equivalentClassGroups)
                    if (std::find(group.begin(), group.end(), f.b) != group.end())
                        for (TermId other : group)
                            if (!(other == f.b)) push(Fact::member(f.a, other));
            }
            break;
        case RuleId::RUni:
            if (f.kind == Fact::Kind::ClassMember)
                if (auto it = kb.unionSuper.find(f.b); it != kb.unionSuper.end())
                    for (TermId sup : it->second) push(Fact::member(f.a, sup));
            break;
        case RuleId::RDom:
            if (f.kind == Fact::Kind::ObjEdge) {
                if (auto it = kb.objDomain.find(f.a); it != kb.objDomain.end())
                    for (TermId d : it->second) push(Fact::member(f.b, d));
            } else if (f.kind == Fact::Kind::DataVal) {
                if (auto it = kb.dataDomain.find(f.a); it != kb.dataDomain.end())
                    for (TermId d : it->second) push(Fact::member(f.b, d));
            }
            break;
        case RuleId::RRng:
            if (f.kind == Fact::Kind::ObjEdge)
                if (auto it = kb.objRange.find(f.a); it != kb.objRange.end())
                    for (TermId r : it->second) push(Fact::member(f.c, r));
            break;
        case RuleId::RInv:
            if (f.kind == Fact::Kind::ObjEdge)
                for (const SubPropertyEdge& e : kb.subObjectProperty)
                    if (e.sub == f.a && e.inverseTarget) push(Fact::edge(e.sup, f.c, f.b));
            break;
        case RuleId::RSpo:
            if (f.kind == Fact::Kind::ObjEdge) {
                for (const SubPropertyEdge& e : kb.subObjectProperty)
                    if (e.sub == f.a && !e.inverseTarget) push(Fact::edge(e.sup, f.b, f.c));
            } else if (f.kind == Fact::Kind::DataVal) {
                for (const auto& [sub, sup] : kb.subDataProperty)
                    if (sub == f.a) push(Fact::data(sup, f.b, f.lit));
            }
            break;
        case RuleId::RSome:
            if (f.kind == Fact::Kind::ObjEdge) {
                if (auto it = kb.someFwd.find(f.a); it != kb.someFwd.end())
                    for (TermId c : it->second) push(Fact::member(f.b, c));
                if (auto it = kb.someInv.find(f.a); it != kb.someInv.end())
                    for (TermId c : it->second) push(Fact::member(f.c, c));
            } else if (f.kind == Fact::Kind::DataVal) {
                if (auto it = kb.someData.find(f.a); it != kb.someData.end())
                    for (TermId c : it->second) push(Fact::member(f.b, c));
            }
            break;
        case RuleId::REqd:
            if (f.kind == Fact::Kind::DataVal)
                for (const auto& group : kb.equivalentDataGroups)
                    if (std::find(group.begin(), group.end(), f.a) != group.end())
                        for (TermId other : group)
                            if (!(other == f.a)) push(Fact::data(other, f.b, f.lit));
            break;
    }
    return out;
}

bool proofReplays(const KnowledgeBase& kb, const ProofNode& node) {
    if (node.asserted) return node.children.empty();
    if (node.children.size() != 1) return false;
    auto conclusions = conclusionsOf(kb, node.children[0].fact, node.rule);
    if (std::find(conclusions.begin(), conclusions.end(), node.fact) == conclusions.end())
        return false;
    return proofReplays(kb, node.children[0]);
}

}  // namespace

TEST_CASE("classify: Mappa is subsumed by Unità_di_descrizione") {
    const KnowledgeBase& kb = corpusKb();
    Subsumption s = classify(kb);
    CHECK(s.subsumes(id(kb, "Mappa"), id(kb, "Scrittura_impianto_primaria")));
    CHECK(s.subsumes(id(kb, "Mappa"), id(kb, "Unità_di_descrizione")));
    CHECK_FALSE(s.subsumes(id(kb, "Unità_di_descrizione"), id(kb, "Mappa")));
}

TEST_CASE("classify is reflexive") {
    const KnowledgeBase& kb = corpusKb();
    Subsumption s = classify(kb);
    for (TermId cls : kb.classes) CHECK(s.subsumes(cls, cls));
}

TEST_CASE("classify equals the matrix-closure oracle on the corpus") {
    const KnowledgeBase& kb = corpusKb();
    Subsumption s = classify(kb);
    auto expected = oracles::matrixClosure(kb);
    for (const auto& [sub, sups] : expected) {
        auto actual = s.superclasses(sub);
        CHECK(std::set<TermId>(actual.begin(), actual.end()) == sups);
    }
}

TEST_CASE("R-DOM and R-RNG type the endpoints of an asserted edge") {
    KnowledgeBase kb = kbWithAssertions(
        "ObjectPropertyAssertion(modeus:mappa_ha_riproduzione_digitale modeus:m1 modeus:x1)");
    Closure closure = materialize(kb);
    TermId m1 = *kb.terms.find(kNs + "m1");
    TermId x1 = *kb.terms.find(kNs + "x1");
    CHECK(closure.contains(Fact::member(m1, id(kb, "Mappa"))));
    CHECK(closure.contains(Fact::member(x1, id(kb, "Mappa_digitalizzata"))));
}

TEST_CASE("R-SOME types the subject of an existential-equivalent property") {
    KnowledgeBase kb = kbWithAssertions(
        "ObjectPropertyAssertion(modeus:est_geometra_R_di_mappa modeus:g1 modeus:m1)");
    Closure closure = materialize(kb);
    TermId g1 = *kb.terms.find(kNs + "g1");
    TermId m1 = *kb.terms.find(kNs + "m1");
    CHECK(closure.contains(Fact::member(g1, id(kb, "Geometra_R"))));
    // the inverse side of Mappa's equivalences types the object too
    CHECK(closure.contains(Fact::member(m1, id(kb, "Mappa"))));
}

TEST_CASE("R-INV adds the reverse of a symmetric edge") {
    KnowledgeBase kb = kbWithAssertions(
        "ObjectPropertyAssertion(modeus:rappresentazione_particella_confina_con modeus:a "
        "modeus:b)");
    Closure closure = materialize(kb);
    TermId a = *kb.terms.find(kNs + "a");
    TermId b = *kb.terms.find(kNs + "b");
    CHECK(closure.contains(
        Fact::edge(id(kb, "rappresentazione_particella_confina_con"), b, a)));
}

TEST_CASE("empty ABox materializes to an empty fact store") {
    KnowledgeBase kb = buildKb({corpus().tbox});
    // the corpus TBox itself carries a few assertions; strip them
    Closure closure = materializeFacts(kb, {});
    CHECK(closure.facts().empty());
}

TEST_CASE("materialization is idempotent on the corpus") {
    const Closure& closure = corpusClosure();
    Closure again = materializeFacts(corpusKb(), closure.facts());
    CHECK(again.facts().size() == closure.facts().size());
}

TEST_CASE("corpus closure equals the naive apply-everything oracle") {
    CHECK(oracles::closureKeys(corpusClosure()) ==
          oracles::naiveClosure(corpusKb(), corpusKb().assertedFacts));
}

TEST_CASE("materialize twice gives identical facts and proofs") {
    Closure a = materialize(corpusKb());
    Closure b = materialize(corpusKb());
    REQUIRE(a.facts().size() == b.facts().size());
    for (FactId i = 0; i < a.facts().size(); ++i) {
        CHECK(a.facts()[i] == b.facts()[i]);
        CHECK(a.proof(i).asserted == b.proof(i).asserted);
        CHECK(a.proof(i).rule == b.proof(i).rule);
        CHECK(a.proof(i).premise == b.proof(i).premise);
    }
}

TEST_CASE("property: idempotence, monotonicity and oracle equality on random KBs") {
    std::mt19937 rng(424242);
    for (int round = 0; round < 200; ++round) {
        Ontology ont = oracles::randomOntology(rng);
        KnowledgeBase kb = buildKb({ont});
        Closure closure = materialize(kb);

        // oracle equality
        CHECK(oracles::closureKeys(closure) == oracles::naiveClosure(kb, kb.assertedFacts));

        // idempotence: materializing the closure changes nothing
        Closure again = materializeFacts(kb, closure.facts());
        CHECK(again.facts().size() == closure.facts().size());

        // monotonicity: dropping an asserted fact never adds conclusions
        if (!kb.assertedFacts.empty()) {
            std::vector<Fact> fewer(kb.assertedFacts.begin(), kb.assertedFacts.end() - 1);
            Closure smaller = materializeFacts(kb, fewer);
            auto small = oracles::closureKeys(smaller);
            auto big = oracles::closureKeys(closure);
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }

        // no-invention: every individual in the closure is mentioned by a seed fact
        std::set<TermId> seedTerms;
        for (const Fact& f : kb.assertedFacts) {
            seedTerms.insert(f.a);
            seedTerms.insert(f.b);
            if (f.kind == Fact::Kind::ObjEdge) seedTerms.insert(f.c);
        }
        for (const Fact& f : closure.facts()) {
            if (f.kind == Fact::Kind::ClassMember) CHECK(seedTerms.count(f.a));
            if (f.kind == Fact::Kind::ObjEdge) {
                CHECK(seedTerms.count(f.b));
                CHECK(seedTerms.count(f.c));
            }
            if (f.kind == Fact::Kind::DataVal) CHECK(seedTerms.count(f.b));
        }
    }
}

TEST_CASE("inverse symmetry holds across the closure") {
    const KnowledgeBase& kb = corpusKb();
    const Closure& closure = corpusClosure();
    for (const SubPropertyEdge& e : kb.subObjectProperty) {
        if (!e.inverseTarget) continue;
        for (FactId fid : closure.edgesOf(e.sub)) {
            const Fact& f = closure.facts()[fid];
            CHECK(closure.contains(Fact::edge(e.sup, f.c, f.b)));
        }
    }
}

TEST_CASE("explain: the membership chain for mappa1 is two R-SUB steps") {
    const KnowledgeBase& kb = corpusKb();
    ProofNode proof = explain(
        corpusClosure(), Fact::member(id(kb, "mappa1"), id(kb, "Unità_di_descrizione")));
    REQUIRE_FALSE(proof.asserted);
    CHECK(proof.rule == RuleId::RSub);
    REQUIRE(proof.children.size() == 1);
    const ProofNode& mid = proof.children[0];
    REQUIRE_FALSE(mid.asserted);
    CHECK(mid.rule == RuleId::RSub);
    CHECK(mid.fact == Fact::member(id(kb, "mappa1"), id(kb, "Scrittura_impianto_primaria")));
    REQUIRE(mid.children.size() == 1);
    CHECK(mid.children[0].asserted);
    CHECK(mid.children[0].fact == Fact::member(id(kb, "mappa1"), id(kb, "Mappa")));
}

TEST_CASE("explain: an asserted fact is a single leaf") {
    const KnowledgeBase& kb = corpusKb();
    ProofNode proof =
        explain(corpusClosure(), Fact::member(id(kb, "geom1"), id(kb, "Geometra_R")));
    CHECK(proof.asserted);
    CHECK(proof.children.empty());
}

TEST_CASE("explain: a fact outside the closure is not entailed") {
    const KnowledgeBase& kb = corpusKb();
    CHECK_THROWS_AS(
        explain(corpusClosure(), Fact::member(id(kb, "mappa1"), id(kb, "Acqua"))),
        NotEntailed);
}

TEST_CASE("explain soundness: replaying every proof node reproduces it") {
    const KnowledgeBase& kb = corpusKb();
    const Closure& closure = corpusClosure();
    for (const Fact& f : closure.facts()) CHECK(proofReplays(kb, explain(closure, f)));
}

TEST_CASE("the unmodified corpus has zero clashes") {
    CHECK(checkConsistency(corpusKb(), corpusClosure()).empty());
}

TEST_CASE("a double membership in a disjoint pair is exactly one clash") {
    KnowledgeBase kb = kbWithAssertions(
        "ClassAssertion(modeus:Acqua modeus:x)\nClassAssertion(modeus:Strada modeus:x)");
    Closure closure = materialize(kb);
    auto clashes = checkConsistency(kb, closure);
    REQUIRE(clashes.size() == 1);
    CHECK(clashes[0].kind == Clash::Kind::DisjointClasses);
    CHECK(kb.name(clashes[0].individual) == kNs + "x");
}

TEST_CASE("a fourth distinct reproduction is exactly one cardinality clash") {
    KnowledgeBase kb = kbWithAssertions(
        "ClassAssertion(modeus:Mappa modeus:m)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r1)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r2)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r3)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r4)");
    Closure closure = materialize(kb);
    auto clashes = checkConsistency(kb, closure);
    REQUIRE(clashes.size() == 1);
    CHECK(clashes[0].kind == Clash::Kind::MaxCardinality);
    CHECK(clashes[0].successors.size() == 4);
    CHECK(clashes[0].limit == 3);

    // three reproductions satisfy the bound exactly
    KnowledgeBase ok = kbWithAssertions(
        "ClassAssertion(modeus:Mappa modeus:m)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r1)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r2)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r3)");
    CHECK(checkConsistency(ok, materialize(ok)).empty());
}

TEST_CASE("without the unique name assumption the cardinality clash vanishes") {
    KnowledgeBase kb = kbWithAssertions(
        "ClassAssertion(modeus:Mappa modeus:m)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r1)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r2)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r3)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:m modeus:r4)");
    Closure closure = materialize(kb);
    CheckOptions options;
    options.uniqueNameAssumption = false;
    CHECK(checkConsistency(kb, closure, options).empty());
}

TEST_CASE("a pair covered by two overlapping disjoint sets clashes once") {
    // Mappa_copia_scala_originale and Mappetta_carta share two disjointness
    // axioms (the secondary-scripture set and the paper-reproduction set)
    KnowledgeBase kb = kbWithAssertions(
        "ClassAssertion(modeus:Mappa_copia_scala_originale modeus:x)\n"
        "ClassAssertion(modeus:Mappetta_carta modeus:x)");
    auto clashes = checkConsistency(kb, materialize(kb));
    REQUIRE(clashes.size() == 1);
    CHECK(clashes[0].kind == Clash::Kind::DisjointClasses);
}

TEST_CASE("disjoint data properties clash on a shared subject and value") {
    KnowledgeBase kb = kbWithAssertions(
        "DataPropertyAssertion(modeus:indirizzo_sede_principale modeus:s \"via Roma "
        "1\"^^rdfs:Literal)\n"
        "DataPropertyAssertion(modeus:indirizzo_sede_succursale modeus:s \"via Roma "
        "1\"^^rdfs:Literal)");
    auto clashes = checkConsistency(kb, materialize(kb));
    REQUIRE(clashes.size() == 1);
    CHECK(clashes[0].kind == Clash::Kind::DisjointDataProperties);
}

TEST_CASE("corpus lints include the two documented gaps for mappa1") {
    const KnowledgeBase& kb = corpusKb();
    auto lints = lintCompleteness(kb, corpusClosure());
    CHECK_FALSE(lints.empty());
    TermId mappa1 = id(kb, "mappa1");
    bool missingScala = false, shortfall = false;
    for (const Lint& lint : lints) {
        if (!(lint.individual == mappa1)) continue;
        if (lint.kind == Lint::Kind::MissingMandatoryDataProperty &&
            lint.required.size() == 1 && lint.required[0].term == id(kb, "scala_mappa"))
            missingScala = true;
        if (lint.kind == Lint::Kind::ExactCardinalityShortfall &&
            lint.prop == id(kb, "mappa_est_riprodotta_in") && lint.have == 0 &&
            lint.need == 3)
            shortfall = true;
    }
    CHECK(missingScala);
    CHECK(shortfall);
}

TEST_CASE("individuals meeting all their obligations draw no lints") {
    const KnowledgeBase& kb = corpusKb();
    auto lints = lintCompleteness(kb, corpusClosure());
    for (const char* clean : {"sez1", "mappadigit1"}) {
        TermId ind = id(kb, clean);
        for (const Lint& lint : lints) CHECK_FALSE(lint.individual == ind);
    }
}

TEST_CASE("lints never affect clash status") {
    const KnowledgeBase& kb = corpusKb();
    auto clashes = checkConsistency(kb, corpusClosure());
    auto lints = lintCompleteness(kb, corpusClosure());
    CHECK(clashes.empty());
    CHECK_FALSE(lints.empty());
}

TEST_CASE("the optional 1:1 intestazione lint stays off by default") {
    const KnowledgeBase& kb = corpusKb();
    auto lints = lintCompleteness(kb, corpusClosure());
    for (const Lint& lint : lints)
        CHECK_FALSE(lint.kind == Lint::Kind::IntestazioneNotOneToOne);
    CheckOptions options;
    options.lintUniqueIntestazione = true;
    auto strictLints = lintCompleteness(kb, corpusClosure(), options);
    bool found = false;
    for (const Lint& lint : strictLints)
        if (lint.kind == Lint::Kind::IntestazioneNotOneToOne) found = true;
    CHECK(found);  // the ABox titles parcels through the R-variant only
}
