#include <doctest.h>

#include "modeuskb/lexer.hpp"

using namespace modeus;

TEST_CASE("prefix declaration lexes into keyword, puncts, prefixed name and IRI") {
    auto tokens = tokenize("Prefix(owl:=<http://www.w3.org/2002/07/owl#>)");
    REQUIRE(tokens.size() == 6);
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[0].lexeme == "Prefix");
    CHECK(tokens[1].lexeme == "(");
    CHECK(tokens[2].kind == TokenKind::PrefixedName);
    CHECK(tokens[2].lexeme == "owl:");
    CHECK(tokens[3].lexeme == "=");
    CHECK(tokens[4].kind == TokenKind::FullIri);
    CHECK(iriValue(tokens[4]) == "http://www.w3.org/2002/07/owl#");
    CHECK(tokens[5].lexeme == ")");
}

TEST_CASE("empty input gives an empty token list") { CHECK(tokenize("").empty()); }

TEST_CASE("typed literal lexes as string, marker, datatype") {
    auto tokens = tokenize("\"Tivoli\"^^rdfs:Literal");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].kind == TokenKind::StringLiteral);
    CHECK(stringValue(tokens[0]) == "Tivoli");
    CHECK(tokens[1].kind == TokenKind::DatatypeMarker);
    CHECK(tokens[2].kind == TokenKind::PrefixedName);
    CHECK(tokens[2].lexeme == "rdfs:Literal");
}

TEST_CASE("single-quoted literals are accepted") {
    auto tokens = tokenize("'Poggi'^^xsd:string");
    REQUIRE(tokens.size() == 3);
    CHECK(stringValue(tokens[0]) == "Poggi");
}

TEST_CASE("comments are kept as tokens") {
    auto tokens = tokenize("# Individual: :Catastino1\nClassAssertion");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].kind == TokenKind::Comment);
    CHECK(tokens[0].lexeme == "# Individual: :Catastino1");
    CHECK(tokens[1].lexeme == "ClassAssertion");
    CHECK(tokens[1].line == 2);
}

TEST_CASE("accented local names lex as one token") {
    auto tokens = tokenize("modeus:Unità_di_descrizione");
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].kind == TokenKind::PrefixedName);
    CHECK(tokens[0].lexeme == "modeus:Unità_di_descrizione");
}

TEST_CASE("unterminated string literal reports its position") {
    try {
        tokenize("ClassAssertion \"broken");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unterminated string") != std::string::npos);
        CHECK(e.loc.line == 1);
        CHECK(e.loc.column == 16);
    }
}

TEST_CASE("illegal characters report line and column") {
    try {
        tokenize("Declaration(\n  @bad)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("illegal character") != std::string::npos);
        CHECK(e.loc.line == 2);
        CHECK(e.loc.column == 3);
    }
}

TEST_CASE("lexemes plus skipped whitespace reproduce the source") {
    std::string source =
        "Prefix(modeus:=<http://modeus.uniroma1.it/ontology#>)\n"
        "Ontology(<http://modeus.uniroma1.it/ontology>\n"
        "# comment with trailing spaces   \n"
        "ClassAssertion(modeus:Mappa modeus:mappa1)\n"
        "DataPropertyAssertion(modeus:scala_mappa modeus:mappa1 \"1:2000\"^^rdfs:Literal)\n"
        ")\n";
    auto tokens = tokenize(source);
    std::string rebuilt;
    size_t cursor = 0;
    for (const Token& t : tokens) {
        size_t at = source.find(t.lexeme, cursor);
        REQUIRE(at != std::string::npos);
        for (size_t i = cursor; i < at; ++i) {
            char c = source[i];
            bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
            CHECK(ws);
        }
        rebuilt += source.substr(cursor, at - cursor) + t.lexeme;
        cursor = at + t.lexeme.size();
    }
    rebuilt += source.substr(cursor);
    CHECK(rebuilt == source);
}
