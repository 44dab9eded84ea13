#ifndef MODEUSKB_TERM_HPP
#define MODEUSKB_TERM_HPP

#include <compare>
#include <stdexcept>
#include <string>

namespace modeus {

/// An absolute IRI after prefix expansion. Two Iri values are equal iff
/// their expansions are byte-identical.
struct Iri {
    std::string full;

    bool operator==(const Iri&) const = default;
    auto operator<=>(const Iri&) const = default;
    bool empty() const { return full.empty(); }
};

namespace wk {
inline const std::string owlThing = "http://www.w3.org/2002/07/owl#Thing";
inline const std::string rdfsLiteral = "http://www.w3.org/2000/01/rdf-schema#Literal";
inline const std::string xsdString = "http://www.w3.org/2001/XMLSchema#string";
inline const std::string rdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}  // namespace wk

/// A typed literal. Structural equality; value matching with the
/// plain-literal rule lives in matches().
struct Literal {
    std::string lexical;
    Iri datatype;

    bool operator==(const Literal&) const = default;
    auto operator<=>(const Literal&) const = default;
};

/// Value comparison between literals. Under plain-literal matching a literal
/// typed rdfs:Literal matches any literal with the same lexical form, in both
/// directions; two concretely typed literals need identical datatypes.
inline bool matches(const Literal& a, const Literal& b, bool plainLiteralMatching) {
    if (a.lexical != b.lexical) return false;
    if (a.datatype == b.datatype) return true;
    if (!plainLiteralMatching) return false;
    return a.datatype.full == wk::rdfsLiteral || b.datatype.full == wk::rdfsLiteral;
}

struct Location {
    int line = 0;
    int column = 0;
};

/// Lexing or parsing failure, with the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, Location where)
        : std::runtime_error(message), loc(where) {}
    Location loc;
};

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace modeus

#endif
