#include "modeuskb/parser.hpp"

#include <charconv>
#include <map>

namespace modeus {

namespace {

class Parser {
public:
    Parser(const std::vector<Token>& tokens, ParseMode mode) : mode_(mode) {
        tokens_.reserve(tokens.size());
        for (const Token& t : tokens)
            if (t.kind != TokenKind::Comment) tokens_.push_back(&t);
    }

    ParseResult run() {
        while (atKeyword("Prefix")) parsePrefix();
        expectKeyword("Ontology");
        expectPunct('(');
        result_.ontology.iri = Iri{iriToken()};
        while (!atPunct(')')) parseAxiom();
        expectPunct(')');
        if (pos_ != tokens_.size())
            throw ParseError("trailing input after Ontology(...)", loc());
        return std::move(result_);
    }

private:
    std::vector<const Token*> tokens_;
    size_t pos_ = 0;
    ParseMode mode_;
    ParseResult result_;
    std::map<std::string, std::string> prefixMap_;

    Location loc() const {
        if (pos_ < tokens_.size()) return {tokens_[pos_]->line, tokens_[pos_]->column};
        if (!tokens_.empty()) return {tokens_.back()->line, tokens_.back()->column};
        return {1, 1};
    }

    const Token& peek() const {
        if (pos_ >= tokens_.size())
            throw ParseError("unbalanced parentheses: unexpected end of input", loc());
        return *tokens_[pos_];
    }
    const Token& next() {
        const Token& t = peek();
        ++pos_;
        return t;
    }

    bool atPunct(char c) const {
        return pos_ < tokens_.size() && tokens_[pos_]->kind == TokenKind::Punct &&
               tokens_[pos_]->lexeme[0] == c;
    }
    bool atKeyword(std::string_view kw) const {
        return pos_ < tokens_.size() && tokens_[pos_]->kind == TokenKind::Keyword &&
               tokens_[pos_]->lexeme == kw;
    }
    void expectPunct(char c) {
        if (!atPunct(c)) {
            if (c == ')' || c == '(')
                throw ParseError("unbalanced parentheses", loc());
            throw ParseError(std::string("expected '") + c + "'", loc());
        }
        ++pos_;
    }
    void expectKeyword(std::string_view kw) {
        if (!atKeyword(kw))
            throw ParseError("expected keyword '" + std::string(kw) + "'", loc());
        ++pos_;
    }

    std::string iriToken() {
        const Token& t = next();
        if (t.kind == TokenKind::FullIri) return iriValue(t);
        throw ParseError("expected an IRI", {t.line, t.column});
    }

    Iri iri() {
        const Token& t = next();
        if (t.kind == TokenKind::FullIri) return Iri{iriValue(t)};
        if (t.kind == TokenKind::PrefixedName) return expand(t);
        throw ParseError("expected an IRI or prefixed name", {t.line, t.column});
    }

    Iri expand(const Token& t) {
        size_t colon = t.lexeme.find(':');
        std::string label = t.lexeme.substr(0, colon);
        std::string local = t.lexeme.substr(colon + 1);
        auto it = prefixMap_.find(label);
        if (it == prefixMap_.end())
            throw ParseError("unknown prefix label '" + label + ":'", {t.line, t.column});
        return Iri{it->second + local};
    }

    void parsePrefix() {
        expectKeyword("Prefix");
        expectPunct('(');
        std::string label;
        if (peek().kind == TokenKind::PrefixedName) {
            const Token& t = next();
            if (t.lexeme.back() != ':')
                throw ParseError("malformed prefix label", {t.line, t.column});
            label = t.lexeme.substr(0, t.lexeme.size() - 1);
        }
        expectPunct('=');
        std::string ns = iriToken();
        expectPunct(')');
        prefixMap_[label] = ns;
        result_.ontology.prefixes.emplace_back(label, ns);
    }

    unsigned cardinality() {
        const Token& t = next();
        unsigned n = 0;
        auto [p, ec] = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), n);
        if (ec != std::errc() || p != t.lexeme.data() + t.lexeme.size())
            throw ParseError("expected a non-negative cardinality", {t.line, t.column});
        return n;
    }

    Literal literal() {
        const Token& t = next();
        if (t.kind != TokenKind::StringLiteral)
            throw ParseError("expected a literal", {t.line, t.column});
        Literal lit;
        lit.lexical = stringValue(t);
        if (pos_ < tokens_.size() && tokens_[pos_]->kind == TokenKind::DatatypeMarker) {
            ++pos_;
            lit.datatype = iri();
        } else {
            lit.datatype = Iri{wk::xsdString};
        }
        return lit;
    }

    PropertyExpression propertyExpression() {
        if (atKeyword("ObjectInverseOf")) {
            ++pos_;
            expectPunct('(');
            Iri p = iri();
            expectPunct(')');
            return {p, true};
        }
        return {iri(), false};
    }

    ClassExpression classExpression() {
        const Token& t = peek();
        if (t.kind == TokenKind::Keyword) {
            std::string head = t.lexeme;
            Location at{t.line, t.column};
            ++pos_;
            expectPunct('(');
            ClassExpression ce;
            if (head == "ObjectUnionOf" || head == "ObjectIntersectionOf") {
                ce.kind = head == "ObjectUnionOf" ? ClassExpression::Kind::Union
                                                  : ClassExpression::Kind::Intersection;
                while (!atPunct(')')) ce.operands.push_back(classExpression());
                if (ce.operands.size() < 2)
                    throw ParseError("arity violation: " + head + " needs at least 2 members",
                                     at);
            } else if (head == "ObjectSomeValuesFrom") {
                ce.kind = ClassExpression::Kind::SomeValues;
                ce.prop = propertyExpression();
                ce.operands.push_back(classExpression());
            } else if (head == "DataSomeValuesFrom") {
                ce.kind = ClassExpression::Kind::DataSomeValues;
                ce.iri = iri();
                ce.dataRange = iri();
            } else if (head == "ObjectMinCardinality" || head == "ObjectMaxCardinality") {
                ce.kind = head == "ObjectMinCardinality" ? ClassExpression::Kind::MinCard
                                                         : ClassExpression::Kind::MaxCard;
                ce.cardinality = cardinality();
                ce.prop = propertyExpression();
            } else {
                throw ParseError("unknown class expression '" + head + "'", at);
            }
            expectPunct(')');
            return ce;
        }
        Iri name = iri();
        if (name.full == wk::owlThing) {
            ClassExpression ce;
            ce.kind = ClassExpression::Kind::Thing;
            return ce;
        }
        return ClassExpression::named(std::move(name));
    }

    void skipBalanced(Location at) {
        expectPunct('(');
        int depth = 1;
        while (depth > 0) {
            const Token& t = next();
            if (t.kind == TokenKind::Punct) {
                if (t.lexeme[0] == '(') ++depth;
                if (t.lexeme[0] == ')') --depth;
            }
            (void)at;
        }
    }

    void parseAxiom() {
        const Token& head = peek();
        if (head.kind != TokenKind::Keyword)
            throw ParseError("expected an axiom keyword", {head.line, head.column});
        std::string kw = head.lexeme;
        Location at{head.line, head.column};
        ++pos_;

        Axiom ax;
        ax.loc = at;

        if (kw == "Declaration") {
            expectPunct('(');
            const Token& kindTok = peek();
            std::string kind = kindTok.lexeme;
            if (kind == "Class")
                ax.entity = EntityKind::OntologyClass;
            else if (kind == "ObjectProperty")
                ax.entity = EntityKind::ObjectProperty;
            else if (kind == "DataProperty")
                ax.entity = EntityKind::DataProperty;
            else if (kind == "NamedIndividual")
                ax.entity = EntityKind::NamedIndividual;
            else if (mode_ == ParseMode::Lax) {
                result_.warnings.push_back(
                    {"skipped unsupported declaration kind '" + kind + "'", at});
                ++pos_;
                skipBalanced(at);
                expectPunct(')');
                return;
            } else {
                throw ParseError("unknown declaration kind '" + kind + "'",
                                 {kindTok.line, kindTok.column});
            }
            ++pos_;
            expectPunct('(');
            ax.iris.push_back(iri());
            expectPunct(')');
            expectPunct(')');
            ax.kind = AxiomKind::Declaration;
        } else if (kw == "SubClassOf") {
            expectPunct('(');
            ax.classes.push_back(classExpression());
            ax.classes.push_back(classExpression());
            expectPunct(')');
            ax.kind = AxiomKind::SubClassOf;
        } else if (kw == "EquivalentClasses" || kw == "DisjointClasses") {
            expectPunct('(');
            while (!atPunct(')')) ax.classes.push_back(classExpression());
            expectPunct(')');
            if (ax.classes.size() < 2)
                throw ParseError("arity violation: " + kw + " needs at least 2 members", at);
            ax.kind = kw == "EquivalentClasses" ? AxiomKind::EquivalentClasses
                                                : AxiomKind::DisjointClasses;
        } else if (kw == "SubObjectPropertyOf") {
            expectPunct('(');
            ax.subProp = propertyExpression();
            ax.superProp = propertyExpression();
            expectPunct(')');
            ax.kind = AxiomKind::SubObjectPropertyOf;
        } else if (kw == "ObjectPropertyDomain" || kw == "ObjectPropertyRange" ||
                   kw == "DataPropertyDomain") {
            expectPunct('(');
            ax.property = iri();
            ax.classes.push_back(classExpression());
            expectPunct(')');
            ax.kind = kw == "ObjectPropertyDomain" ? AxiomKind::ObjectPropertyDomain
                      : kw == "ObjectPropertyRange" ? AxiomKind::ObjectPropertyRange
                                                    : AxiomKind::DataPropertyDomain;
        } else if (kw == "SubDataPropertyOf") {
            expectPunct('(');
            ax.iris.push_back(iri());
            ax.iris.push_back(iri());
            expectPunct(')');
            ax.kind = AxiomKind::SubDataPropertyOf;
        } else if (kw == "EquivalentDataProperties" || kw == "DisjointDataProperties") {
            expectPunct('(');
            while (!atPunct(')')) ax.iris.push_back(iri());
            expectPunct(')');
            if (ax.iris.size() < 2)
                throw ParseError("arity violation: " + kw + " needs at least 2 members", at);
            ax.kind = kw == "EquivalentDataProperties" ? AxiomKind::EquivalentDataProperties
                                                       : AxiomKind::DisjointDataProperties;
        } else if (kw == "ClassAssertion") {
            expectPunct('(');
            ax.classes.push_back(classExpression());
            ax.iris.push_back(iri());
            expectPunct(')');
            ax.kind = AxiomKind::ClassAssertion;
        } else if (kw == "ObjectPropertyAssertion") {
            expectPunct('(');
            ax.property = iri();
            ax.iris.push_back(iri());
            ax.iris.push_back(iri());
            expectPunct(')');
            ax.kind = AxiomKind::ObjectPropertyAssertion;
        } else if (kw == "DataPropertyAssertion") {
            expectPunct('(');
            ax.property = iri();
            ax.iris.push_back(iri());
            ax.value = literal();
            expectPunct(')');
            ax.kind = AxiomKind::DataPropertyAssertion;
        } else if (mode_ == ParseMode::Lax) {
            result_.warnings.push_back({"skipped unsupported axiom '" + kw + "'", at});
            skipBalanced(at);
            return;
        } else {
            throw ParseError("unknown axiom keyword '" + kw + "'", at);
        }
        result_.ontology.axioms.push_back(std::move(ax));
    }
};

}  // namespace

ParseResult parseOntology(const std::vector<Token>& tokens, ParseMode mode) {
    return Parser(tokens, mode).run();
}

ParseResult parseText(std::string_view source, ParseMode mode) {
    return parseOntology(tokenize(source), mode);
}

}  // namespace modeus
