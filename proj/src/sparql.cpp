#include "modeuskb/sparql.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modeus {

namespace {

struct QToken {
    enum class Kind { Word, Variable, PrefixedName, FullIri, Literal, Punct, End };
    Kind kind = Kind::End;
    std::string text;     // word / variable name (no '?') / prefixed name / iri / punct
    Literal lit;          // Literal
    int line = 1, col = 1;
};

class QLexer {
public:
    explicit QLexer(std::string_view src) : src_(src) {}

    QToken next() {
        skipSpace();
        QToken t;
        t.line = line_;
        t.col = col_;
        if (done()) return t;
        char c = peek();
        if (c == '{' || c == '}' || c == '.') {
            advance();
            t.kind = QToken::Kind::Punct;
            t.text = std::string(1, c);
            return t;
        }
        if (c == '?' || c == '$') {
            advance();
            std::string name;
            while (!done() && isNameChar(peek())) name += advance();
            if (name.empty()) throw ParseError("empty variable name", {t.line, t.col});
            t.kind = QToken::Kind::Variable;
            t.text = name;
            return t;
        }
        if (c == '<') {
            advance();
            std::string iri;
            while (!done() && peek() != '>' && peek() != '\n') iri += advance();
            if (done() || peek() != '>')
                throw ParseError("unterminated IRI", {t.line, t.col});
            advance();
            t.kind = QToken::Kind::FullIri;
            t.text = iri;
            return t;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            advance();
            std::string value;
            while (!done() && peek() != quote) {
                if (peek() == '\\') {
                    advance();
                    if (done()) break;
                }
                value += advance();
            }
            if (done()) throw ParseError("unterminated string literal", {t.line, t.col});
            advance();
            t.kind = QToken::Kind::Literal;
            t.lit.lexical = value;
            t.lit.datatype = Iri{wk::xsdString};
            if (peek() == '^' && peekAt(1) == '^') {
                advance();
                advance();
                QToken dt = next();
                if (dt.kind == QToken::Kind::FullIri)
                    t.lit.datatype = Iri{dt.text};
                else if (dt.kind == QToken::Kind::PrefixedName)
                    t.lit.datatype = Iri{};  // resolved by the parser
                else
                    throw ParseError("expected a datatype after ^^", {dt.line, dt.col});
                t.text = dt.kind == QToken::Kind::PrefixedName ? dt.text : "";
            }
            return t;
        }
        if (isNameChar(c) || c == ':') {
            std::string word;
            bool colon = false;
            while (!done() && (isNameChar(peek()) || (peek() == ':' && !colon))) {
                if (peek() == ':') colon = true;
                word += advance();
            }
            t.kind = colon ? QToken::Kind::PrefixedName : QToken::Kind::Word;
            t.text = word;
            return t;
        }
        throw ParseError(std::string("illegal character '") + c + "'", {t.line, t.col});
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    static bool isNameChar(unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c >= 0x80;
    }
    bool done() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char peekAt(size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;
        }
        return c;
    }
    void skipSpace() {
        while (!done()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            if (c == '#') {  // comment to end of line
                while (!done() && peek() != '\n') advance();
                continue;
            }
            break;
        }
    }
};

bool equalsIgnoreCase(const std::string& a, const char* b) {
    size_t n = 0;
    for (; n < a.size() && b[n]; ++n)
        if (std::tolower(static_cast<unsigned char>(a[n])) !=
            std::tolower(static_cast<unsigned char>(b[n])))
            return false;
    return n == a.size() && !b[n];
}

class QParser {
public:
    explicit QParser(std::string_view text) : lexer_(text) { advance(); }

    Query run() {
        while (cur_.kind == QToken::Kind::Word && equalsIgnoreCase(cur_.text, "prefix"))
            parsePrefix();
        if (!(cur_.kind == QToken::Kind::Word && equalsIgnoreCase(cur_.text, "select")))
            throw ParseError("expected SELECT", {cur_.line, cur_.col});
        advance();
        while (cur_.kind == QToken::Kind::Variable) {
            query_.selectVars.push_back(cur_.text);
            advance();
        }
        if (query_.selectVars.empty())
            throw ParseError("SELECT needs at least one variable", {cur_.line, cur_.col});
        if (!(cur_.kind == QToken::Kind::Word && equalsIgnoreCase(cur_.text, "where")))
            throw ParseError("expected WHERE", {cur_.line, cur_.col});
        advance();
        expectPunct("{");
        while (!(cur_.kind == QToken::Kind::Punct && cur_.text == "}")) {
            if (cur_.kind == QToken::Kind::End)
                throw ParseError("missing closing '}'", {cur_.line, cur_.col});
            parsePattern();
            if (cur_.kind == QToken::Kind::Punct && cur_.text == ".") advance();
        }
        advance();  // '}'
        if (query_.patterns.empty())
            throw ParseError("empty pattern block", {cur_.line, cur_.col});
        for (const std::string& var : query_.selectVars) {
            bool used = false;
            for (const TriplePattern& p : query_.patterns) {
                if (p.subject.kind == QueryTerm::Kind::Variable && p.subject.var == var)
                    used = true;
                if (p.object.kind == QueryTerm::Kind::Variable && p.object.var == var)
                    used = true;
            }
            if (!used)
                throw ParseError("selected variable ?" + var + " not used in any pattern",
                                 {1, 1});
        }
        return std::move(query_);
    }

private:
    QLexer lexer_;
    QToken cur_;
    Query query_;
    std::map<std::string, std::string> prefixes_;

    void advance() { cur_ = lexer_.next(); }
    void expectPunct(const char* p) {
        if (!(cur_.kind == QToken::Kind::Punct && cur_.text == p))
            throw ParseError(std::string("expected '") + p + "'", {cur_.line, cur_.col});
        advance();
    }

    std::string expand(const QToken& t) {
        size_t colon = t.text.find(':');
        std::string label = t.text.substr(0, colon);
        auto it = prefixes_.find(label);
        if (it == prefixes_.end())
            throw ParseError("unknown prefix label '" + label + ":'", {t.line, t.col});
        return it->second + t.text.substr(colon + 1);
    }

    void parsePrefix() {
        advance();  // PREFIX
        std::string label;
        if (cur_.kind == QToken::Kind::PrefixedName) {
            if (cur_.text.back() != ':')
                throw ParseError("malformed prefix label", {cur_.line, cur_.col});
            label = cur_.text.substr(0, cur_.text.size() - 1);
            advance();
        }
        if (cur_.kind != QToken::Kind::FullIri)
            throw ParseError("expected a namespace IRI", {cur_.line, cur_.col});
        prefixes_[label] = cur_.text;
        query_.prefixes.emplace_back(label, cur_.text);
        advance();
    }

    QueryTerm term() {
        QueryTerm t;
        switch (cur_.kind) {
            case QToken::Kind::Variable:
                t.kind = QueryTerm::Kind::Variable;
                t.var = cur_.text;
                break;
            case QToken::Kind::FullIri:
                t.kind = QueryTerm::Kind::IriRef;
                t.iri = Iri{cur_.text};
                break;
            case QToken::Kind::PrefixedName:
                t.kind = QueryTerm::Kind::IriRef;
                t.iri = Iri{expand(cur_)};
                break;
            case QToken::Kind::Literal:
                t.kind = QueryTerm::Kind::LiteralValue;
                t.lit = cur_.lit;
                if (t.lit.datatype.empty()) t.lit.datatype = Iri{expand(cur_)};
                break;
            default:
                throw ParseError("expected a term", {cur_.line, cur_.col});
        }
        advance();
        return t;
    }

    void parsePattern() {
        TriplePattern p;
        p.subject = term();
        if (p.subject.kind == QueryTerm::Kind::LiteralValue)
            throw ParseError("literal subject not supported", {cur_.line, cur_.col});
        if (cur_.kind == QToken::Kind::Variable)
            throw ParseError("variable predicate not supported in this subset",
                             {cur_.line, cur_.col});
        if (cur_.kind == QToken::Kind::Word && cur_.text == "a") {
            p.isType = true;
            advance();
        } else {
            QToken t = cur_;
            if (t.kind == QToken::Kind::FullIri)
                p.predicate = Iri{t.text};
            else if (t.kind == QToken::Kind::PrefixedName)
                p.predicate = Iri{expand(t)};
            else
                throw ParseError("expected a predicate", {t.line, t.col});
            advance();
            if (p.predicate.full == wk::rdfType) p.isType = true;
        }
        p.object = term();
        query_.patterns.push_back(std::move(p));
    }
};

struct BoundTerm {
    bool isLiteral = false;
    TermId id;
    Literal lit;

    bool operator==(const BoundTerm&) const = default;
};

std::string valueKey(const KnowledgeBase& kb, const BoundTerm& v) {
    if (v.isLiteral) return "\"" + v.lit.lexical + "\"^^<" + v.lit.datatype.full + ">";
    return "<" + kb.name(v.id) + ">";
}

using Row = std::map<std::string, BoundTerm>;

// A constant literal in the query matches fact values under the
// plain-literal rule; a variable already bound to a literal joins only on
// the identical term, keeping the row set independent of pattern order.
bool termMatches(const QueryTerm& qt, const BoundTerm& value, const Row& row,
                 bool plainLiterals) {
    switch (qt.kind) {
        case QueryTerm::Kind::Variable: {
            auto it = row.find(qt.var);
            if (it == row.end()) return true;
            return it->second == value;
        }
        case QueryTerm::Kind::IriRef:
            return !value.isLiteral;  // id equality handled by the caller's candidate set
        case QueryTerm::Kind::LiteralValue:
            return value.isLiteral && matches(qt.lit, value.lit, plainLiterals);
    }
    return false;
}

void bind(Row& row, const QueryTerm& qt, const BoundTerm& value) {
    if (qt.kind == QueryTerm::Kind::Variable) row.emplace(qt.var, value);
}

}  // namespace

Query parseQuery(std::string_view text) { return QParser(text).run(); }

BindingSet evaluate(const Query& query, const Closure& closure, const EvalOptions& options) {
    const KnowledgeBase& kb = closure.kb();
    bool entailed = options.useClosure;

    // resolve constant IRIs; an unknown IRI matches nothing
    auto resolve = [&kb](const Iri& iri) { return kb.terms.find(iri.full); };

    std::vector<Row> rows{Row{}};
    for (const TriplePattern& pattern : query.patterns) {
        std::optional<TermId> predicate;
        if (!pattern.isType) {
            predicate = resolve(pattern.predicate);
            if (!predicate) {
                rows.clear();
                break;
            }
        }
        std::optional<TermId> constSubject, constObject;
        if (pattern.subject.kind == QueryTerm::Kind::IriRef) {
            constSubject = resolve(pattern.subject.iri);
            if (!constSubject) {
                rows.clear();
                break;
            }
        }
        if (pattern.object.kind == QueryTerm::Kind::IriRef) {
            constObject = resolve(pattern.object.iri);
            if (!constObject) {
                rows.clear();
                break;
            }
        }

        // candidate facts for this pattern
        std::vector<std::pair<BoundTerm, BoundTerm>> candidates;  // subject, object
        if (pattern.isType) {
            if (constObject) {
                for (FactId id : closure.membersOf(*constObject, entailed))
                    candidates.push_back({{false, closure.facts()[id].a, {}},
                                          {false, closure.facts()[id].b, {}}});
            } else {
                for (FactId id : closure.allMembers()) {
                    if (!entailed && id >= closure.assertedCount()) continue;
                    candidates.push_back({{false, closure.facts()[id].a, {}},
                                          {false, closure.facts()[id].b, {}}});
                }
            }
        } else {
            for (FactId id : closure.edgesOf(*predicate, entailed))
                candidates.push_back({{false, closure.facts()[id].b, {}},
                                      {false, closure.facts()[id].c, {}}});
            for (FactId id : closure.dataOf(*predicate, entailed))
                candidates.push_back({{false, closure.facts()[id].b, {}},
                                      {true, {}, closure.facts()[id].lit}});
        }

        std::vector<Row> next;
        for (const Row& row : rows) {
            for (const auto& [subject, object] : candidates) {
                if (constSubject && !(subject.id == *constSubject)) continue;
                if (constObject && (object.isLiteral || !(object.id == *constObject)))
                    continue;
                Row extended = row;
                if (!termMatches(pattern.subject, subject, extended, options.plainLiterals))
                    continue;
                bind(extended, pattern.subject, subject);
                if (!termMatches(pattern.object, object, extended, options.plainLiterals))
                    continue;
                bind(extended, pattern.object, object);
                next.push_back(std::move(extended));
            }
        }
        rows = std::move(next);
        if (rows.empty()) break;
    }

    BindingSet result;
    result.vars = query.selectVars;
    std::set<std::string> seen;
    std::vector<std::pair<std::string, std::vector<Value>>> keyed;
    for (const Row& row : rows) {
        std::vector<Value> projected;
        std::string key;
        for (const std::string& var : query.selectVars) {
            auto it = row.find(var);
            if (it == row.end()) break;  // unbound select variable: skip row
            const BoundTerm& v = it->second;
            projected.push_back(v.isLiteral ? Value{v.lit} : Value{v.id});
            key += valueKey(kb, v);
            key += '\t';
        }
        if (projected.size() != query.selectVars.size()) continue;
        if (seen.insert(key).second) keyed.emplace_back(std::move(key), std::move(projected));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [_, projected] : keyed) result.rows.push_back(std::move(projected));
    return result;
}

}  // namespace modeus
