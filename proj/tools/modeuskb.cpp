#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modeuskb/corpus.hpp"
#include "modeuskb/kb.hpp"
#include "modeuskb/parser.hpp"
#include "modeuskb/report.hpp"
#include "modeuskb/sparql.hpp"
#include "modeuskb/writer.hpp"

namespace {

using namespace modeus;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;     // file/parse errors
constexpr int kExitClashes = 3;   // validate found clashes
constexpr int kExitNotEntailed = 4;

struct Config {
    ParseMode mode = ParseMode::Strict;
    bool una = true;
    bool plainLiterals = true;
    bool reasoning = true;
    bool fullIris = false;
    bool lintIntestazione = false;
};

struct Session {
    Config config;
    std::vector<Ontology> ontologies;
    std::optional<KnowledgeBase> kb;
    std::optional<Closure> closure;

    KnowledgeBase& knowledgeBase() {
        if (!kb) kb = buildKb(ontologies);
        return *kb;
    }
    Closure& materialized() {
        if (!closure) closure = materialize(knowledgeBase());
        return *closure;
    }
    void invalidate() {
        kb.reset();
        closure.reset();
    }
    Display display() {
        return Display{knowledgeBase().prefixTable(), config.fullIris};
    }
    CheckOptions checkOptions() const {
        return {config.una, config.plainLiterals, config.lintIntestazione};
    }
};

int loadFiles(Session& session, const std::vector<std::string>& paths, std::ostream& out,
              std::ostream& err) {
    struct Loaded {
        std::string path;
        size_t axioms;
    };
    std::vector<Loaded> summary;
    std::vector<Ontology> parsed;
    for (const std::string& path : paths) {
        std::string text;
        try {
            text = readTextFile(path);
        } catch (const CorpusError& e) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        try {
            ParseResult result = parseText(text, session.config.mode);
            for (const ParseWarning& w : result.warnings)
                out << "warning: " << path << ":" << w.loc.line << ":" << w.loc.column
                    << ": " << w.message << "\n";
            summary.push_back({path, result.ontology.axioms.size()});
            parsed.push_back(std::move(result.ontology));
        } catch (const ParseError& e) {
            err << path << ":" << e.loc.line << ":" << e.loc.column << ": error: " << e.what()
                << "\n";
            return kExitInput;
        }
    }
    for (Ontology& o : parsed) session.ontologies.push_back(std::move(o));
    session.invalidate();
    try {
        const KnowledgeBase& kb = session.knowledgeBase();
        for (const Loaded& l : summary)
            out << "loaded " << l.path << ": " << l.axioms << " axioms\n";
        out << "classes: " << kb.classes.size()
            << "  object-properties: " << kb.objectProperties.size()
            << "  data-properties: " << kb.dataProperties.size()
            << "  individuals: " << kb.individuals.size() << "\n";
    } catch (const BuildError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

int requireKb(Session& session, std::ostream& err) {
    if (session.ontologies.empty()) {
        err << "error: no ontology loaded\n";
        return kExitInput;
    }
    try {
        session.knowledgeBase();
    } catch (const BuildError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

bool writeOrPrint(const std::string& content, const std::string& outPath, std::ostream& out,
                  std::ostream& err) {
    if (outPath.empty()) {
        out << content;
        return true;
    }
    std::ofstream f(outPath, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << outPath << "\n";
        return false;
    }
    f << content;
    return true;
}

int cmdValidate(Session& session, const std::string& outPath, std::ostream& out,
                std::ostream& err) {
    if (int rc = requireKb(session, err)) return rc;
    const KnowledgeBase& kb = session.knowledgeBase();
    const Closure& closure = session.materialized();
    auto options = session.checkOptions();
    auto clashes = checkConsistency(kb, closure, options);
    auto lints = lintCompleteness(kb, closure, options);
    std::string json = reportJson(kb, closure, clashes, lints, session.display());
    if (!writeOrPrint(json, outPath, out, err)) return kExitInput;
    return clashes.empty() ? kExitOk : kExitClashes;
}

int cmdQuery(Session& session, const std::string& pathOrText, const std::string& outPath,
             bool json, std::ostream& out, std::ostream& err) {
    if (int rc = requireKb(session, err)) return rc;
    std::string text = pathOrText;
    if (std::filesystem::exists(pathOrText)) text = readTextFile(pathOrText);
    Query query;
    try {
        query = parseQuery(text);
    } catch (const ParseError& e) {
        err << "query:" << e.loc.line << ":" << e.loc.column << ": error: " << e.what()
            << "\n";
        return kExitInput;
    }
    const Closure& closure = session.materialized();
    EvalOptions options{session.config.reasoning, session.config.plainLiterals};
    BindingSet bindings = evaluate(query, closure, options);
    const KnowledgeBase& kb = session.knowledgeBase();
    Display display = session.display();

    auto cell = [&](const Value& v) {
        if (std::holds_alternative<TermId>(v)) return display.iri(kb, std::get<TermId>(v));
        return display.literal(std::get<Literal>(v));
    };
    std::string rendered;
    if (json) {
        std::string rows = "[";
        for (size_t r = 0; r < bindings.rows.size(); ++r) {
            rows += r ? ",\n " : "\n ";
            rows += "{";
            for (size_t i = 0; i < bindings.vars.size(); ++i) {
                if (i) rows += ", ";
                std::string value = cell(bindings.rows[r][i]);
                std::string escaped;
                for (char ch : value) {
                    if (ch == '"' || ch == '\\') escaped += '\\';
                    escaped += ch;
                }
                rows += "\"" + bindings.vars[i] + "\": \"" + escaped + "\"";
            }
            rows += "}";
        }
        rows += bindings.rows.empty() ? "]\n" : "\n]\n";
        rendered = rows;
    } else {
        for (size_t i = 0; i < bindings.vars.size(); ++i)
            rendered += (i ? "\t?" : "?") + bindings.vars[i];
        rendered += "\n";
        for (const auto& row : bindings.rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) rendered += "\t";
                rendered += cell(row[i]);
            }
            rendered += "\n";
        }
    }
    if (!writeOrPrint(rendered, outPath, out, err)) return kExitInput;
    return kExitOk;
}

int cmdExplain(Session& session, const std::string& expr, std::ostream& out,
               std::ostream& err) {
    if (int rc = requireKb(session, err)) return rc;
    const KnowledgeBase& kb = session.knowledgeBase();
    Fact fact;
    try {
        fact = parseFactExpression(expr, kb);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const Closure& closure = session.materialized();
    auto id = closure.find(fact);
    if (!id || (!session.config.reasoning && *id >= closure.assertedCount())) {
        err << "not entailed\n";
        return kExitNotEntailed;
    }
    out << renderProof(kb, explain(closure, fact), session.display());
    return kExitOk;
}

int cmdExport(Session& session, const std::string& factsPath, const std::string& reportPath,
              std::ostream& out, std::ostream& err) {
    if (int rc = requireKb(session, err)) return rc;
    const KnowledgeBase& kb = session.knowledgeBase();
    const Closure& closure = session.materialized();
    if (!factsPath.empty()) {
        if (!writeOrPrint(exportFacts(closure), factsPath == "-" ? "" : factsPath, out, err))
            return kExitInput;
    }
    if (!reportPath.empty()) {
        auto options = session.checkOptions();
        auto clashes = checkConsistency(kb, closure, options);
        auto lints = lintCompleteness(kb, closure, options);
        std::string json = reportJson(kb, closure, clashes, lints, session.display());
        if (!writeOrPrint(json, reportPath == "-" ? "" : reportPath, out, err))
            return kExitInput;
    }
    if (factsPath.empty() && reportPath.empty()) {
        err << "error: export needs --facts and/or --report\n";
        return kExitInput;
    }
    return kExitOk;
}

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Strip recognized flags off the front of a raw command remainder, leaving
// the target text untouched (inline queries and fact expressions keep their
// own quoting).
std::string consumeFlags(std::string rest, const std::vector<std::string>& flags,
                         std::vector<std::string>& found) {
    for (;;) {
        rest = trimmed(rest);
        bool any = false;
        for (const std::string& flag : flags) {
            if (rest.rfind(flag, 0) == 0 &&
                (rest.size() == flag.size() || rest[flag.size()] == ' ' ||
                 rest[flag.size()] == '\t')) {
                found.push_back(flag);
                rest = rest.substr(flag.size());
                any = true;
                break;
            }
        }
        if (!any) return rest;
    }
}

// One symmetric layer of wrapping quotes comes off when the interior does
// not use the same quote character.
std::string stripOuterQuotes(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        std::string inner = s.substr(1, s.size() - 2);
        if (inner.find(s.front()) == std::string::npos) return inner;
    }
    return s;
}

// shell-ish splitter for REPL lines; understands "..." and '...'
std::vector<std::string> splitArgs(const std::string& line) {
    std::vector<std::string> args;
    std::string cur;
    bool inArg = false;
    char quote = 0;
    for (char c : line) {
        if (quote) {
            if (c == quote)
                quote = 0;
            else
                cur += c;
            continue;
        }
        if (c == '"' || c == '\'') {
            quote = c;
            inArg = true;
            continue;
        }
        if (c == ' ' || c == '\t') {
            if (inArg) {
                args.push_back(cur);
                cur.clear();
                inArg = false;
            }
            continue;
        }
        cur += c;
        inArg = true;
    }
    if (inArg) args.push_back(cur);
    return args;
}

int runRepl(Session& session, std::istream& in, std::ostream& out, std::ostream& err) {
    std::string line;
    while (true) {
        err << "> " << std::flush;
        if (!std::getline(in, line)) break;
        std::vector<std::string> args = splitArgs(line);
        if (args.empty()) continue;
        const std::string& cmd = args[0];
        if (cmd == "quit" || cmd == "exit") return kExitOk;
        if (cmd == "load") {
            std::vector<std::string> paths;
            ParseMode saved = session.config.mode;
            for (size_t i = 1; i < args.size(); ++i) {
                if (args[i] == "--lax")
                    session.config.mode = ParseMode::Lax;
                else
                    paths.push_back(args[i]);
            }
            if (paths.empty())
                err << "error: load needs at least one file\n";
            else
                loadFiles(session, paths, out, err);
            session.config.mode = saved;
        } else if (cmd == "validate") {
            std::string outPath;
            for (size_t i = 1; i + 1 < args.size(); ++i)
                if (args[i] == "--out") outPath = args[i + 1];
            cmdValidate(session, outPath, out, err);
        } else if (cmd == "query") {
            bool savedReasoning = session.config.reasoning;
            std::vector<std::string> flags;
            std::string target = consumeFlags(line.substr(line.find("query") + 5),
                                              {"--no-reasoning", "--json"}, flags);
            bool json = false;
            for (const std::string& flag : flags) {
                if (flag == "--no-reasoning") session.config.reasoning = false;
                if (flag == "--json") json = true;
            }
            target = stripOuterQuotes(target);
            if (target.empty())
                err << "error: query needs a file or query text\n";
            else
                cmdQuery(session, target, "", json, out, err);
            session.config.reasoning = savedReasoning;
        } else if (cmd == "explain") {
            std::vector<std::string> flags;
            std::string expr =
                consumeFlags(line.substr(line.find("explain") + 7), {}, flags);
            expr = stripOuterQuotes(expr);
            if (expr.empty())
                err << "error: explain needs a fact expression\n";
            else
                cmdExplain(session, expr, out, err);
        } else if (cmd == "export") {
            std::string facts, report;
            for (size_t i = 1; i + 1 < args.size(); ++i) {
                if (args[i] == "--facts") facts = args[i + 1];
                if (args[i] == "--report") report = args[i + 1];
            }
            cmdExport(session, facts, report, out, err);
        } else {
            out << "unknown command: " << cmd << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-base engine for OWL 2 functional-style archival ontologies"};
    app.require_subcommand(1);

    Config config;
    bool lax = false, noUna = false, strictLiterals = false, noReasoning = false;
    bool fullIris = false, json = false, lintIntestazione = false;
    std::string outPath, factsPath, reportPath;
    std::vector<std::string> files;
    std::string queryArg, factArg;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_flag("--lax", lax, "skip unsupported axioms with a warning");
        cmd->add_flag("--no-una", noUna, "drop the unique name assumption");
        cmd->add_flag("--strict-literals", strictLiterals, "disable plain-literal matching");
        cmd->add_flag("--full-iris", fullIris, "print full IRIs instead of prefixed names");
        cmd->add_flag("--lint-intestazione-1to1", lintIntestazione,
                      "enable the optional 1:1 intestazione lint");
    };

    CLI::App* load = app.add_subcommand("load", "parse ontologies and print a summary");
    load->add_option("files", files, "ontology files (.ofn)")->required();
    addCommon(load);

    CLI::App* validate =
        app.add_subcommand("validate", "materialize, then report clashes and lints");
    validate->add_option("files", files, "ontology files (.ofn)")->required();
    validate->add_option("--out", outPath, "write the JSON report to a file");
    addCommon(validate);

    CLI::App* query = app.add_subcommand("query", "run a SPARQL query (file or inline)");
    query->add_option("files", files, "ontology files followed by the query file or text")
        ->required();
    query->add_flag("--no-reasoning", noReasoning, "evaluate over asserted facts only");
    query->add_flag("--json", json, "JSON rows instead of TSV");
    query->add_option("--out", outPath, "write results to a file");
    addCommon(query);

    CLI::App* explainCmd =
        app.add_subcommand("explain", "show the proof of an entailed fact");
    explainCmd
        ->add_option("files", files,
                     "ontology files followed by member(...)/edge(...)/data(...)")
        ->required();
    explainCmd->add_flag("--no-reasoning", noReasoning, "consider asserted facts only");
    addCommon(explainCmd);

    CLI::App* exportCmd = app.add_subcommand("export", "write facts/report files");
    exportCmd->add_option("files", files, "ontology files (.ofn)")->required();
    exportCmd->add_option("--facts", factsPath, "write the sorted fact lines here");
    exportCmd->add_option("--report", reportPath, "write the JSON report here");
    addCommon(exportCmd);

    CLI::App* repl = app.add_subcommand("repl", "interactive session");
    repl->add_option("files", files, "ontology files to load first");
    addCommon(repl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;  // bad arguments are input errors
    }

    config.mode = lax ? ParseMode::Lax : ParseMode::Strict;
    config.una = !noUna;
    config.plainLiterals = !strictLiterals;
    config.reasoning = !noReasoning;
    config.fullIris = fullIris;
    config.lintIntestazione = lintIntestazione;

    Session session;
    session.config = config;
    std::ostream& out = std::cout;
    std::ostream& err = std::cerr;

    try {
        if (load->parsed()) return loadFiles(session, files, out, err);

        if (repl->parsed()) {
            if (!files.empty()) {
                std::ostringstream sink;  // files given on the command line load quietly
                if (int rc = loadFiles(session, files, sink, err)) return rc;
            }
            return runRepl(session, std::cin, out, err);
        }

        // the query / fact expression rides as the last positional
        std::string tail;
        if (query->parsed() || explainCmd->parsed()) {
            if (files.size() < 2) {
                err << "error: expected ontology files followed by an argument\n";
                return kExitInput;
            }
            tail = files.back();
            files.pop_back();
        }
        std::ostringstream sink;
        if (int rc = loadFiles(session, files, sink, err)) return rc;

        if (validate->parsed()) return cmdValidate(session, outPath, out, err);
        if (query->parsed()) return cmdQuery(session, tail, outPath, json, out, err);
        if (explainCmd->parsed()) return cmdExplain(session, tail, out, err);
        if (exportCmd->parsed()) return cmdExport(session, factsPath, reportPath, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
