#include "modeuskb/lexer.hpp"

namespace modeus {

namespace {

// Name characters: ASCII letters, digits, underscore, and any non-ASCII
// byte (the corpus uses accented Italian local names).
bool isNameChar(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

bool isContinuationByte(unsigned char c) { return (c & 0xC0) == 0x80; }

class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    bool done() const { return pos_ >= src_.size(); }
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    Location loc() const { return {line_, column_}; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if (!isContinuationByte(static_cast<unsigned char>(c))) {
            ++column_;  // count code points, not bytes
        }
        return c;
    }

    size_t offset() const { return pos_; }
    std::string_view slice(size_t from) const { return src_.substr(from, pos_ - from); }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    Cursor cur(source);

    while (!cur.done()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            cur.advance();
            continue;
        }

        Location start = cur.loc();
        size_t from = cur.offset();

        if (c == '#') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            tokens.push_back({TokenKind::Comment, std::string(cur.slice(from)), start.line,
                              start.column});
            continue;
        }
        if (c == '(' || c == ')' || c == '=') {
            cur.advance();
            tokens.push_back(
                {TokenKind::Punct, std::string(1, c), start.line, start.column});
            continue;
        }
        if (c == '^') {
            cur.advance();
            if (cur.peek() != '^')
                throw ParseError("illegal character '^'", start);
            cur.advance();
            tokens.push_back({TokenKind::DatatypeMarker, "^^", start.line, start.column});
            continue;
        }
        if (c == '<') {
            cur.advance();
            while (!cur.done() && cur.peek() != '>' && cur.peek() != '\n') cur.advance();
            if (cur.done() || cur.peek() != '>')
                throw ParseError("unterminated IRI", start);
            cur.advance();
            tokens.push_back(
                {TokenKind::FullIri, std::string(cur.slice(from)), start.line, start.column});
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            cur.advance();
            while (!cur.done() && cur.peek() != quote) {
                if (cur.peek() == '\\') {
                    cur.advance();
                    if (cur.done()) break;
                }
                cur.advance();
            }
            if (cur.done())
                throw ParseError("unterminated string literal", start);
            cur.advance();
            tokens.push_back({TokenKind::StringLiteral, std::string(cur.slice(from)),
                              start.line, start.column});
            continue;
        }
        if (isNameChar(static_cast<unsigned char>(c)) || c == ':') {
            bool hasColon = false;
            while (!cur.done() &&
                   (isNameChar(static_cast<unsigned char>(cur.peek())) || cur.peek() == ':')) {
                if (cur.peek() == ':') {
                    if (hasColon) break;  // one colon per prefixed name
                    hasColon = true;
                }
                cur.advance();
            }
            tokens.push_back({hasColon ? TokenKind::PrefixedName : TokenKind::Keyword,
                              std::string(cur.slice(from)), start.line, start.column});
            continue;
        }
        throw ParseError(std::string("illegal character '") + c + "'", start);
    }
    return tokens;
}

std::string stringValue(const Token& token) {
    const std::string& s = token.lexeme;
    std::string out;
    out.reserve(s.size());
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '\\' && i + 2 < s.size()) ++i;
        out += s[i];
    }
    return out;
}

std::string iriValue(const Token& token) {
    return token.lexeme.substr(1, token.lexeme.size() - 2);
}

}  // namespace modeus
