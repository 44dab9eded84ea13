#ifndef MODEUSKB_LEXER_HPP
#define MODEUSKB_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "modeuskb/term.hpp"

namespace modeus {

enum class TokenKind {
    Keyword,         // bare word: axiom keywords, local names, integers
    PrefixedName,    // contains ':' outside <>/quotes, e.g. modeus:Mappa, owl:, :part1
    FullIri,         // <...>
    StringLiteral,   // "..." or '...'
    DatatypeMarker,  // ^^
    Punct,           // ( ) =
    Comment,         // # to end of line
};

struct Token {
    TokenKind kind;
    std::string lexeme;  // exact source text, including quotes/brackets
    int line = 1;
    int column = 1;  // 1-based, counted in code points
};

/// Lex functional-style syntax. Comments are kept as tokens; whitespace is
/// skipped. Concatenating lexemes plus the skipped whitespace reproduces the
/// source. Throws ParseError on unterminated strings/IRIs and illegal
/// characters.
std::vector<Token> tokenize(std::string_view source);

/// Unquoted, unescaped content of a StringLiteral token.
std::string stringValue(const Token& token);

/// IRI text inside a FullIri token's angle brackets.
std::string iriValue(const Token& token);

}  // namespace modeus

#endif
