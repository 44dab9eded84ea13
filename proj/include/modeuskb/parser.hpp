#ifndef MODEUSKB_PARSER_HPP
#define MODEUSKB_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "modeuskb/ast.hpp"
#include "modeuskb/lexer.hpp"

namespace modeus {

enum class ParseMode { Strict, Lax };

struct ParseWarning {
    std::string message;
    Location loc;
};

struct ParseResult {
    Ontology ontology;
    std::vector<ParseWarning> warnings;  // lax mode: skipped axiom heads
};

/// Parse a token stream into an Ontology. In strict mode any unsupported
/// axiom head is an error; in lax mode the balanced group is skipped and a
/// warning recorded.
ParseResult parseOntology(const std::vector<Token>& tokens, ParseMode mode);

/// tokenize + parseOntology.
ParseResult parseText(std::string_view source, ParseMode mode);

}  // namespace modeus

#endif
