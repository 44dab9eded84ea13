// Acceptance suite: one criterion per function, one pass/fail line each.
// Exits non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "modeuskb/corpus.hpp"
#include "modeuskb/report.hpp"
#include "modeuskb/reasoner.hpp"
#include "modeuskb/sparql.hpp"
#include "../support/oracles.hpp"

using namespace modeus;
namespace fs = std::filesystem;

namespace {

const std::string kNs = "http://modeus.uniroma1.it/ontology#";

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string corpusFile(const char* name) {
    return (fs::path(MODEUSKB_CORPUS_DIR) / name).string();
}

CorpusData& corpus() {
    static CorpusData data = loadCorpus(MODEUSKB_CORPUS_DIR);
    return data;
}

KnowledgeBase& kb() {
    static KnowledgeBase built = buildKb({corpus().tbox, corpus().abox});
    return built;
}

Closure& closure() {
    static Closure built = materialize(kb());
    return built;
}

TermId term(const std::string& local) { return *kb().terms.find(kNs + local); }

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun runCli(const std::string& argsLine) {
    fs::path out = fs::temp_directory_path() / "modeuskb-acceptance-out.txt";
    std::string cmd = std::string("'") + MODEUSKB_CLI_PATH + "' " + argsLine + " > '" +
                      out.string() + "' 2>/dev/null";
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = readTextFile(out);
    return r;
}

std::set<std::string> queryRows(const std::string& queryText, bool plainLiterals) {
    EvalOptions options;
    options.plainLiterals = plainLiterals;
    BindingSet rows = evaluate(parseQuery(queryText), closure(), options);
    std::set<std::string> out;
    for (const auto& row : rows.rows) out.insert(kb().name(std::get<TermId>(row.at(0))));
    return out;
}

KnowledgeBase kbWith(const std::string& axioms) {
    std::string text =
        "Prefix(modeus:=<http://modeus.uniroma1.it/ontology#>)\n"
        "Ontology(<http://inject>\n" +
        axioms + "\n)";
    Ontology extra = parseText(text, ParseMode::Strict).ontology;
    return buildKb({corpus().tbox, corpus().abox, extra});
}

// --------------------------------------------------------------- criteria

Check criterion1_corpusLoad() {
    Check c;
    for (const char* file : {"tbox.ofn", "abox.ofn"}) {
        std::string text = readTextFile(corpusFile(file));
        ParseResult parsed = parseText(text, ParseMode::Strict);
        c.expect(parsed.warnings.empty(), std::string(file) + " parsed with warnings");
        c.expect(parsed.ontology.axioms.size() == oracles::tallyAxioms(text),
                 std::string(file) + " axiom count != keyword tally");
    }
    std::string tbox = readTextFile(corpusFile("tbox.ofn"));
    std::string abox = readTextFile(corpusFile("abox.ofn"));
    auto tally = [&](const char* kind) {
        auto s = oracles::tallyDeclared(tbox, kind);
        auto t = oracles::tallyDeclared(abox, kind);
        s.insert(t.begin(), t.end());
        return s.size();
    };
    c.expect(kb().classes.size() == tally("Class"), "class count != tally");
    c.expect(kb().objectProperties.size() == tally("ObjectProperty"),
             "object property count != tally");
    c.expect(kb().dataProperties.size() == tally("DataProperty"),
             "data property count != tally");
    c.expect(kb().individuals.size() == tally("NamedIndividual"),
             "individual count != tally");
    return c;
}

Check criterion2_query1() {
    Check c;
    std::set<std::string> expected{kNs + "part5", kNs + "part6"};
    c.expect(queryRows(corpus().q23, true) == expected,
             "default rows are not {part5, part6}");
    c.expect(queryRows(corpus().q23, false).empty(), "strict-literal rows are not empty");
    CliRun strict = runCli("query --strict-literals '" + corpusFile("tbox.ofn") + "' '" +
                           corpusFile("abox.ofn") + "' '" + corpusFile("q23.rq") + "'");
    c.expect(strict.status == 0 && strict.out == "?particella\n",
             "--strict-literals CLI output not empty");
    return c;
}

Check criterion3_query2() {
    Check c;
    c.expect(queryRows(corpus().q24, true) == std::set<std::string>{kNs + "mappa1"},
             "rows are not {mappa1}");
    return c;
}

Check criterion4_inferenceChain() {
    Check c;
    Fact fact = Fact::member(term("mappa1"), term("Unità_di_descrizione"));
    c.expect(closure().contains(fact), "membership not entailed");

    ProofNode proof = explain(closure(), fact);
    bool shape = !proof.asserted && proof.rule == RuleId::RSub &&
                 proof.children.size() == 1 && !proof.children[0].asserted &&
                 proof.children[0].rule == RuleId::RSub &&
                 proof.children[0].children.size() == 1 &&
                 proof.children[0].children[0].asserted &&
                 proof.children[0].children[0].fact ==
                     Fact::member(term("mappa1"), term("Mappa"));
    c.expect(shape, "proof is not a 2-step R-SUB chain over ClassAssertion(Mappa, mappa1)");

    // without reasoning the same membership query returns nothing
    auto id = closure().find(fact);
    c.expect(id.has_value() && *id >= closure().assertedCount(),
             "membership unexpectedly asserted");
    EvalOptions asserted;
    asserted.useClosure = false;
    BindingSet rows = evaluate(
        parseQuery("PREFIX :<" + kNs + ">\nSELECT ?x WHERE {?x a :Unità_di_descrizione}"),
        closure(), asserted);
    c.expect(rows.rows.empty(), "--no-reasoning still returns rows");
    return c;
}

Check criterion5_clashes() {
    Check c;
    c.expect(checkConsistency(kb(), closure()).empty(), "unmodified corpus has clashes");

    KnowledgeBase doubled = kbWith(
        "ClassAssertion(modeus:Acqua modeus:injected_x)\n"
        "ClassAssertion(modeus:Strada modeus:injected_x)");
    auto clashes = checkConsistency(doubled, materialize(doubled));
    c.expect(clashes.size() == 1 && clashes[0].kind == Clash::Kind::DisjointClasses,
             "double membership is not exactly one disjoint-classes clash");

    fs::path inject = fs::temp_directory_path() / "modeuskb-acceptance-inject.ofn";
    std::ofstream(inject) << "Prefix(m:=<" + kNs + ">)\nOntology(<http://inject>\n"
                          << "ClassAssertion(m:Acqua m:injected_x)\n"
                          << "ClassAssertion(m:Strada m:injected_x)\n)";
    CliRun validate = runCli("validate '" + corpusFile("tbox.ofn") + "' '" +
                             corpusFile("abox.ofn") + "' '" + inject.string() + "'");
    c.expect(validate.status == 3, "clash exit status is not 3");

    KnowledgeBase fourth = kbWith(
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:mappa1 modeus:rep1)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:mappa1 modeus:rep2)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:mappa1 modeus:rep3)\n"
        "ObjectPropertyAssertion(modeus:mappa_est_riprodotta_in modeus:mappa1 modeus:rep4)");
    auto cardClashes = checkConsistency(fourth, materialize(fourth));
    c.expect(cardClashes.size() == 1 &&
                 cardClashes[0].kind == Clash::Kind::MaxCardinality &&
                 cardClashes[0].successors.size() == 4 && cardClashes[0].limit == 3,
             "4th reproduction is not exactly one max-cardinality clash");
    return c;
}

Check criterion6_lints() {
    Check c;
    auto lints = lintCompleteness(kb(), closure());
    bool missingScala = false, shortfall = false;
    for (const Lint& lint : lints) {
        if (!(lint.individual == term("mappa1"))) continue;
        if (lint.kind == Lint::Kind::MissingMandatoryDataProperty &&
            lint.required.size() == 1 && lint.required[0].term == term("scala_mappa"))
            missingScala = true;
        if (lint.kind == Lint::Kind::ExactCardinalityShortfall &&
            lint.prop == term("mappa_est_riprodotta_in") && lint.have == 0 && lint.need == 3)
            shortfall = true;
    }
    c.expect(missingScala, "missing-mandatory-data-property(mappa1, scala_mappa) absent");
    c.expect(shortfall, "exact-cardinality-shortfall(mappa1, 0 of 3) absent");
    return c;
}

Check criterion7_symmetry() {
    Check c;
    std::mt19937 rng(190819);
    std::vector<std::string> individuals;
    for (TermId i : kb().individuals) individuals.push_back(kb().name(i));
    std::uniform_int_distribution<size_t> pick(0, individuals.size() - 1);
    for (int round = 0; round < 100; ++round) {
        std::string a = individuals[pick(rng)];
        std::string b = individuals[pick(rng)];
        KnowledgeBase injected = kbWith(
            "ObjectPropertyAssertion(modeus:rappresentazione_particella_confina_con <" + a +
            "> <" + b + ">)");
        Closure materialized = materialize(injected);
        TermId prop =
            *injected.terms.find(kNs + "rappresentazione_particella_confina_con");
        Fact reverse = Fact::edge(prop, *injected.terms.find(b), *injected.terms.find(a));
        if (!materialized.contains(reverse)) {
            c.expect(false, "reverse edge missing for " + a + " / " + b);
            break;
        }
    }
    return c;
}

Check criterion8_properties() {
    Check c;

    // materialization idempotence and monotonicity, 200 random KBs
    std::mt19937 rng(88100);
    for (int round = 0; round < 200 && c.ok; ++round) {
        Ontology ont = oracles::randomOntology(rng);
        KnowledgeBase random = buildKb({ont});
        Closure first = materialize(random);
        Closure again = materializeFacts(random, first.facts());
        c.expect(again.facts().size() == first.facts().size(), "idempotence violated");
        if (!random.assertedFacts.empty()) {
            std::vector<Fact> fewer(random.assertedFacts.begin(),
                                    random.assertedFacts.end() - 1);
            auto small = oracles::closureKeys(materializeFacts(random, fewer));
            auto big = oracles::closureKeys(first);
            c.expect(std::includes(big.begin(), big.end(), small.begin(), small.end()),
                     "monotonicity violated");
        }
    }

    // naive-oracle closure equality (instances stay under 20 individuals)
    std::mt19937 rng2(88200);
    for (int round = 0; round < 60 && c.ok; ++round) {
        Ontology ont = oracles::randomOntology(rng2);
        KnowledgeBase random = buildKb({ont});
        c.expect(oracles::closureKeys(materialize(random)) ==
                     oracles::naiveClosure(random, random.assertedFacts),
                 "semi-naive closure != naive oracle");
    }

    // query evaluator vs nested-loop oracle on KBs with <= 50 facts
    std::mt19937 rng3(88300);
    int checked = 0;
    for (int round = 0; round < 40 && c.ok; ++round) {
        oracles::RandomKbConfig cfg;
        cfg.maxIndividuals = 6;
        cfg.maxClasses = 5;
        cfg.maxObjectProps = 3;
        cfg.maxDataProps = 2;
        cfg.tboxAxioms = 6;
        cfg.aboxAxioms = 12;
        Ontology ont = oracles::randomOntology(rng3, cfg);
        KnowledgeBase random = buildKb({ont});
        Closure cl = materialize(random);
        if (cl.facts().size() > 50) continue;
        Query q = parseQuery(
            "PREFIX g:<http://example.org/gen#>\n"
            "SELECT ?x ?y WHERE {?x g:p0 ?y. ?x a g:C0}");
        EvalOptions options;
        auto expected = oracles::nestedLoopEvaluate(q, cl, options);
        std::set<std::vector<std::string>> actual;
        for (const auto& row : oracles::bindingKeys(random, evaluate(q, cl, options)))
            actual.insert(row);
        c.expect(actual == expected, "evaluator != nested-loop oracle");
        ++checked;
    }
    c.expect(checked >= 25, "too few query-oracle instances under the size cap");

    // parser round-trip fixpoint: corpus plus 100 fuzz ontologies
    for (const char* file : {"tbox.ofn", "abox.ofn"}) {
        Ontology once =
            parseText(readTextFile(corpusFile(file)), ParseMode::Strict).ontology;
        Ontology twice = parseText(serialize(once), ParseMode::Strict).ontology;
        c.expect(once == twice, std::string("round-trip fixpoint failed on ") + file);
    }
    std::mt19937 rng4(88400);
    for (int round = 0; round < 100 && c.ok; ++round) {
        Ontology ont = oracles::randomOntology(rng4);
        Ontology reparsed = parseText(serialize(ont), ParseMode::Strict).ontology;
        Ontology again = parseText(serialize(reparsed), ParseMode::Strict).ontology;
        c.expect(reparsed == again, "round-trip fixpoint failed on a fuzz ontology");
    }
    return c;
}

Check criterion9_determinism() {
    Check c;
    fs::path a = fs::temp_directory_path() / "modeuskb-acceptance-facts-a.txt";
    fs::path b = fs::temp_directory_path() / "modeuskb-acceptance-facts-b.txt";
    std::string base = std::string("export '") + corpusFile("tbox.ofn") + "' '" +
                       corpusFile("abox.ofn") + "' --facts ";
    CliRun runA = runCli(base + "'" + a.string() + "'");
    CliRun runB = runCli(base + "'" + b.string() + "'");
    c.expect(runA.status == 0 && runB.status == 0, "export failed");
    c.expect(readTextFile(a) == readTextFile(b), "exports differ between runs");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
        double budgetSeconds;
    };
    const std::vector<Criterion> criteria = {
        {"1 corpus load: strict parse, counts match the tally oracle",
         criterion1_corpusLoad, 1.0},
        {"2 published query 1: {part5, part6}; empty under --strict-literals",
         criterion2_query1, 1.0},
        {"3 published query 2: {mappa1}", criterion3_query2, 1.0},
        {"4 inference chain: 2-step R-SUB proof; nothing without reasoning",
         criterion4_inferenceChain, 60.0},
        {"5 clash detection: one disjointness clash (exit 3); one cardinality clash",
         criterion5_clashes, 60.0},
        {"6 completeness lints: scala_mappa missing; reproduction shortfall 0 of 3",
         criterion6_lints, 60.0},
        {"7 symmetry: 100 random confina_con insertions entail the reverse edge",
         criterion7_symmetry, 60.0},
        {"8 property suites: idempotence, monotonicity, oracle equality, round-trip",
         criterion8_properties, 60.0},
        {"9 determinism: consecutive exports are byte-identical", criterion9_determinism,
         60.0},
    };

    bool allOk = true;
    double total = 0.0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        Check check;
        try {
            check = criterion.run();
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        total += seconds;
        if (seconds > criterion.budgetSeconds) {
            check.ok = false;
            check.detail += (check.detail.empty() ? "" : "; ");
            check.detail += "over time budget";
        }
        std::printf("[%s] criterion %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL",
                    criterion.name, seconds, check.detail.empty() ? "" : " -- ",
                    check.detail.c_str());
        allOk = allOk && check.ok;
    }
    std::printf("%s: %zu criteria, %.2fs total\n", allOk ? "ALL PASS" : "FAILURES",
                criteria.size(), total);
    return allOk ? 0 : 1;
}
