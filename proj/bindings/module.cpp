#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "modeuskb/corpus.hpp"
#include "modeuskb/kb.hpp"
#include "modeuskb/parser.hpp"
#include "modeuskb/report.hpp"
#include "modeuskb/sparql.hpp"
#include "modeuskb/writer.hpp"

namespace py = pybind11;
using namespace modeus;

namespace {

/// Stateful front door mirroring the CLI session: load files, materialize
/// lazily, answer queries and explanations.
class Engine {
public:
    Engine(const std::vector<std::string>& files, bool lax, bool una, bool plainLiterals)
        : mode_(lax ? ParseMode::Lax : ParseMode::Strict), una_(una),
          plainLiterals_(plainLiterals) {
        load(files, lax);
    }

    void load(const std::vector<std::string>& files, bool lax) {
        ParseMode mode = lax ? ParseMode::Lax : mode_;
        for (const std::string& path : files) {
            ParseResult result = parseText(readTextFile(path), mode);
            ontologies_.push_back(std::move(result.ontology));
            for (const ParseWarning& w : result.warnings) warnings_.push_back(w.message);
        }
        kb_.reset();
        closure_.reset();
    }

    py::dict counts() {
        const KnowledgeBase& kb = knowledgeBase();
        py::dict d;
        d["axioms"] = kb.axioms.size();
        d["classes"] = kb.classes.size();
        d["object_properties"] = kb.objectProperties.size();
        d["data_properties"] = kb.dataProperties.size();
        d["individuals"] = kb.individuals.size();
        d["asserted_facts"] = kb.assertedFacts.size();
        return d;
    }

    std::vector<std::string> warnings() const { return warnings_; }

    py::object validate() {
        const KnowledgeBase& kb = knowledgeBase();
        const Closure& closure = materialized();
        CheckOptions options{una_, plainLiterals_, false};
        auto clashes = checkConsistency(kb, closure, options);
        auto lints = lintCompleteness(kb, closure, options);
        std::string json = reportJson(kb, closure, clashes, lints, display());
        return py::module_::import("json").attr("loads")(json);
    }

    py::list query(const std::string& text, bool reasoning) {
        Query q = parseQuery(text);
        EvalOptions options{reasoning, plainLiterals_};
        BindingSet bindings = evaluate(q, materialized(), options);
        const KnowledgeBase& kb = knowledgeBase();
        Display disp = display();
        py::list rows;
        for (const auto& row : bindings.rows) {
            py::dict r;
            for (size_t i = 0; i < bindings.vars.size(); ++i) {
                const Value& v = row[i];
                r[py::str(bindings.vars[i])] =
                    std::holds_alternative<TermId>(v)
                        ? disp.iri(kb, std::get<TermId>(v))
                        : disp.literal(std::get<Literal>(v));
            }
            rows.append(std::move(r));
        }
        return rows;
    }

    std::string explainFact(const std::string& expression, bool reasoning) {
        const KnowledgeBase& kb = knowledgeBase();
        Fact fact = parseFactExpression(expression, kb);
        const Closure& closure = materialized();
        auto id = closure.find(fact);
        if (!id || (!reasoning && *id >= closure.assertedCount()))
            throw NotEntailed("not entailed");
        return renderProof(kb, explain(closure, fact), display());
    }

    std::string exportFactLines() { return exportFacts(materialized()); }

private:
    KnowledgeBase& knowledgeBase() {
        if (!kb_) kb_ = buildKb(ontologies_);
        return *kb_;
    }
    const Closure& materialized() {
        if (!closure_) closure_ = materialize(knowledgeBase());
        return *closure_;
    }
    Display display() { return Display{knowledgeBase().prefixTable(), false}; }

    ParseMode mode_;
    bool una_;
    bool plainLiterals_;
    std::vector<Ontology> ontologies_;
    std::vector<std::string> warnings_;
    std::optional<KnowledgeBase> kb_;
    std::optional<Closure> closure_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "knowledge-base engine for OWL 2 functional-style archival ontologies";

    py::register_exception<ParseError>(m, "OfsParseError", PyExc_ValueError);
    py::register_exception<BuildError>(m, "KbBuildError", PyExc_ValueError);
    py::register_exception<CorpusError>(m, "CorpusError", PyExc_RuntimeError);
    py::register_exception<NotEntailed>(m, "NotEntailed", PyExc_LookupError);

    py::class_<Engine>(m, "Engine")
        .def(py::init<const std::vector<std::string>&, bool, bool, bool>(),
             py::arg("files"), py::arg("lax") = false, py::arg("una") = true,
             py::arg("plain_literals") = true)
        .def("load", &Engine::load, py::arg("files"), py::arg("lax") = false,
             "parse more ontology files into the session")
        .def("counts", &Engine::counts)
        .def("warnings", &Engine::warnings)
        .def("validate", &Engine::validate,
             "materialize and return the clash/lint report as a dict")
        .def("query", &Engine::query, py::arg("text"), py::arg("reasoning") = true,
             "evaluate a SPARQL query; rows come back as dicts of prefixed names")
        .def("explain", &Engine::explainFact, py::arg("fact"), py::arg("reasoning") = true,
             "render the proof tree of member(...)/edge(...)/data(...)")
        .def("export_facts", &Engine::exportFactLines,
             "sorted closure dump, one fact per line");

    m.def(
        "parse_ontology",
        [](const std::string& text, bool lax) {
            ParseResult result = parseText(text, lax ? ParseMode::Lax : ParseMode::Strict);
            py::dict d;
            d["axioms"] = result.ontology.axioms.size();
            d["prefixes"] = result.ontology.prefixes.size();
            py::list warnings;
            for (const ParseWarning& w : result.warnings) warnings.append(w.message);
            d["warnings"] = std::move(warnings);
            return d;
        },
        py::arg("text"), py::arg("lax") = false,
        "parse functional-style syntax and report axiom/prefix counts");

    m.def(
        "serialize_ontology",
        [](const std::string& text) {
            return serialize(parseText(text, ParseMode::Strict).ontology);
        },
        py::arg("text"), "parse and re-serialize into the canonical one-axiom-per-line form");
}
