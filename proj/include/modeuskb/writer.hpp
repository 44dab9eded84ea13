#ifndef MODEUSKB_WRITER_HPP
#define MODEUSKB_WRITER_HPP

#include <string>
#include <utility>
#include <vector>

#include "modeuskb/ast.hpp"

namespace modeus {

/// Maps full IRIs back to prefixed names for output. Longest declared
/// namespace wins; ties go to the lexicographically smallest label.
class PrefixTable {
public:
    PrefixTable() = default;
    explicit PrefixTable(const std::vector<std::pair<std::string, std::string>>& prefixes);

    /// Prefixed form when a declared prefix covers the namespace and the
    /// remainder is a plain local name, else "<full>".
    std::string shorten(const std::string& fullIri) const;

    /// Expand "label:local"; returns false when the label is unknown.
    bool expand(const std::string& prefixedName, std::string& out) const;

private:
    std::vector<std::pair<std::string, std::string>> byNamespace_;  // namespace -> label
};

std::string toString(const PropertyExpression& pe, const PrefixTable& prefixes);
std::string toString(const ClassExpression& ce, const PrefixTable& prefixes);
std::string toString(const Literal& lit, const PrefixTable& prefixes);
std::string toString(const Axiom& axiom, const PrefixTable& prefixes);

/// Canonical full-IRI rendering of an axiom, used as a dedup key.
std::string axiomKey(const Axiom& axiom);

/// Deterministic serialization: prefix block, one axiom per line in stored
/// order, prefixed names wherever the table covers them, double-quoted
/// literals, LF line endings.
std::string serialize(const Ontology& ontology);

}  // namespace modeus

#endif
