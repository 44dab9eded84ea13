#ifndef MODEUSKB_SPARQL_HPP
#define MODEUSKB_SPARQL_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modeuskb/reasoner.hpp"

namespace modeus {

/// Subject/object position of a triple pattern.
struct QueryTerm {
    enum class Kind { Variable, IriRef, LiteralValue };
    Kind kind = Kind::Variable;
    std::string var;  // without '?'
    Iri iri;
    Literal lit;
};

/// Predicates are constant in this subset; `a` / rdf:type sets isType.
struct TriplePattern {
    QueryTerm subject;
    Iri predicate;
    bool isType = false;
    QueryTerm object;
};

struct Query {
    std::vector<std::pair<std::string, std::string>> prefixes;
    std::vector<std::string> selectVars;  // order preserved
    std::vector<TriplePattern> patterns;
};

/// PREFIX / SELECT / basic graph patterns. Both literal quote styles are
/// accepted; a trailing '.' is optional and '}' may butt against the last
/// pattern. Throws ParseError (unknown prefix, variable predicate, empty
/// pattern block, unused select variable).
Query parseQuery(std::string_view text);

using Value = std::variant<TermId, Literal>;

/// Deduplicated rows, sorted lexicographically over the serialized terms.
struct BindingSet {
    std::vector<std::string> vars;
    std::vector<std::vector<Value>> rows;
};

struct EvalOptions {
    bool useClosure = true;  // false: asserted facts only
    bool plainLiterals = true;
};

BindingSet evaluate(const Query& query, const Closure& closure, const EvalOptions& options = {});

}  // namespace modeus

#endif
