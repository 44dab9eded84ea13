#include "modeuskb/report.hpp"

#include <algorithm>

#include <json.hpp>

#include "modeuskb/lexer.hpp"

namespace modeus {

using ordered_json = nlohmann::ordered_json;

std::string Display::iri(const KnowledgeBase& kb, TermId id) const {
    const std::string& full = kb.name(id);
    if (fullIris) return "<" + full + ">";
    return prefixes.shorten(full);
}

std::string Display::literal(const Literal& lit) const {
    std::string out = "\"";
    for (char c : lit.lexical) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"^^";
    out += fullIris ? "<" + lit.datatype.full + ">" : prefixes.shorten(lit.datatype.full);
    return out;
}

std::string factLine(const KnowledgeBase& kb, const Fact& fact) {
    auto iri = [&kb](TermId t) { return "<" + kb.name(t) + ">"; };
    switch (fact.kind) {
        case Fact::Kind::ClassMember:
            return "member(" + iri(fact.a) + ", " + iri(fact.b) + ")";
        case Fact::Kind::ObjEdge:
            return "edge(" + iri(fact.a) + ", " + iri(fact.b) + ", " + iri(fact.c) + ")";
        case Fact::Kind::DataVal: {
            std::string lit = "\"";
            for (char c : fact.lit.lexical) {
                if (c == '"' || c == '\\') lit += '\\';
                lit += c;
            }
            lit += "\"^^<" + fact.lit.datatype.full + ">";
            return "data(" + iri(fact.a) + ", " + iri(fact.b) + ", " + lit + ")";
        }
    }
    return {};
}

std::string factText(const KnowledgeBase& kb, const Fact& fact, const Display& display) {
    switch (fact.kind) {
        case Fact::Kind::ClassMember:
            return "member(" + display.iri(kb, fact.a) + ", " + display.iri(kb, fact.b) + ")";
        case Fact::Kind::ObjEdge:
            return "edge(" + display.iri(kb, fact.a) + ", " + display.iri(kb, fact.b) + ", " +
                   display.iri(kb, fact.c) + ")";
        case Fact::Kind::DataVal:
            return "data(" + display.iri(kb, fact.a) + ", " + display.iri(kb, fact.b) + ", " +
                   display.literal(fact.lit) + ")";
    }
    return {};
}

std::string exportFacts(const Closure& closure) {
    std::vector<std::string> lines;
    lines.reserve(closure.facts().size());
    for (const Fact& fact : closure.facts()) lines.push_back(factLine(closure.kb(), fact));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

Fact parseFactExpression(const std::string& text, const KnowledgeBase& kb) {
    // the fact grammar separates arguments with commas; drop them outside quotes
    std::string cleaned;
    cleaned.reserve(text.size());
    char quote = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quote) {
            cleaned += c;
            if (c == '\\' && i + 1 < text.size())
                cleaned += text[++i];
            else if (c == quote)
                quote = 0;
            continue;
        }
        if (c == '"' || c == '\'') quote = c;
        cleaned += c == ',' && !quote ? ' ' : c;
    }
    std::vector<Token> tokens = tokenize(cleaned);
    size_t pos = 0;
    auto loc = [&]() -> Location {
        if (pos < tokens.size()) return {tokens[pos].line, tokens[pos].column};
        return {1, 1};
    };
    auto next = [&]() -> const Token& {
        if (pos >= tokens.size()) throw ParseError("unexpected end of fact expression", loc());
        return tokens[pos++];
    };
    auto expectPunct = [&](char c) {
        const Token& t = next();
        if (t.kind != TokenKind::Punct || t.lexeme[0] != c)
            throw ParseError(std::string("expected '") + c + "' in fact expression",
                             {t.line, t.column});
    };
    PrefixTable prefixes(kb.prefixes);
    auto term = [&]() -> TermId {
        const Token& t = next();
        std::string full;
        if (t.kind == TokenKind::FullIri) {
            full = iriValue(t);
        } else if (t.kind == TokenKind::PrefixedName) {
            if (!prefixes.expand(t.lexeme, full))
                throw ParseError("unknown prefix in '" + t.lexeme + "'", {t.line, t.column});
        } else {
            throw ParseError("expected an IRI in fact expression", {t.line, t.column});
        }
        auto id = kb.terms.find(full);
        if (!id) throw ParseError("unknown term '" + full + "'", {t.line, t.column});
        return *id;
    };

    const Token& head = next();
    if (head.kind != TokenKind::Keyword)
        throw ParseError("expected member(...), edge(...) or data(...)",
                         {head.line, head.column});
    std::string kind = head.lexeme;
    expectPunct('(');
    Fact fact;
    if (kind == "member") {
        TermId ind = term();
        TermId cls = term();
        fact = Fact::member(ind, cls);
    } else if (kind == "edge") {
        TermId p = term();
        TermId s = term();
        TermId o = term();
        fact = Fact::edge(p, s, o);
    } else if (kind == "data") {
        TermId d = term();
        TermId s = term();
        const Token& litTok = next();
        if (litTok.kind != TokenKind::StringLiteral)
            throw ParseError("expected a literal", {litTok.line, litTok.column});
        Literal lit;
        lit.lexical = stringValue(litTok);
        lit.datatype = Iri{wk::xsdString};
        if (pos < tokens.size() && tokens[pos].kind == TokenKind::DatatypeMarker) {
            ++pos;
            const Token& dt = next();
            std::string full;
            if (dt.kind == TokenKind::FullIri)
                full = iriValue(dt);
            else if (dt.kind == TokenKind::PrefixedName && prefixes.expand(dt.lexeme, full)) {
            } else {
                throw ParseError("bad datatype in fact expression", {dt.line, dt.column});
            }
            lit.datatype = Iri{full};
        }
        fact = Fact::data(d, s, lit);
    } else {
        throw ParseError("expected member(...), edge(...) or data(...)",
                         {head.line, head.column});
    }
    expectPunct(')');
    if (pos != tokens.size()) throw ParseError("trailing input in fact expression", loc());
    return fact;
}

namespace {

void renderNode(const KnowledgeBase& kb, const ProofNode& node, const Display& display,
                int depth, std::string& out) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += factText(kb, node.fact, display);
    out += node.asserted ? "  [ASSERTED]" : std::string("  [") + ruleName(node.rule) + "]";
    out += '\n';
    for (const ProofNode& child : node.children)
        renderNode(kb, child, display, depth + 1, out);
}

std::string patternText(const KnowledgeBase& kb, const ParticipationPattern& p,
                        const Display& display) {
    switch (p.kind) {
        case ParticipationPattern::Kind::ObjSucc:
            return "some " + display.iri(kb, p.term) + " successor";
        case ParticipationPattern::Kind::ObjPred:
            return "object of some " + display.iri(kb, p.term);
        case ParticipationPattern::Kind::DataVal:
            return "a " + display.iri(kb, p.term) + " value";
        case ParticipationPattern::Kind::Member:
            return "membership in " + display.iri(kb, p.term);
    }
    return {};
}

std::string triggerText(const KnowledgeBase& kb, const Lint& lint, const Display& display) {
    switch (lint.triggerKind) {
        case Participation::Trigger::ClassMembership:
            return display.iri(kb, lint.triggerTerm);
        case Participation::Trigger::DataSubject:
            return "subject of " + display.iri(kb, lint.triggerTerm);
        case Participation::Trigger::EdgeSubject:
            return "subject of " + display.iri(kb, lint.triggerTerm);
    }
    return {};
}

}  // namespace

std::string renderProof(const KnowledgeBase& kb, const ProofNode& node,
                        const Display& display) {
    std::string out;
    renderNode(kb, node, display, 0, out);
    return out;
}

std::string clashKindName(Clash::Kind kind) {
    switch (kind) {
        case Clash::Kind::DisjointClasses: return "disjoint-classes";
        case Clash::Kind::DisjointDataProperties: return "disjoint-data-properties";
        case Clash::Kind::MaxCardinality: return "max-cardinality";
    }
    return {};
}

std::string lintKindName(Lint::Kind kind) {
    switch (kind) {
        case Lint::Kind::MissingMandatoryObjectParticipation:
            return "missing-mandatory-object-participation";
        case Lint::Kind::MissingMandatoryDataProperty:
            return "missing-mandatory-data-property";
        case Lint::Kind::AtLeastOneOfUnsatisfied: return "at-least-one-of-unsatisfied";
        case Lint::Kind::ExactCardinalityShortfall: return "exact-cardinality-shortfall";
        case Lint::Kind::RangeUnionUntyped: return "range-union-untyped";
        case Lint::Kind::IntestazioneNotOneToOne: return "intestazione-not-one-to-one";
    }
    return {};
}

std::string reportJson(const KnowledgeBase& kb, const Closure& closure,
                       const std::vector<Clash>& clashes, const std::vector<Lint>& lints,
                       const Display& display) {
    ordered_json doc;
    doc["clashes"] = ordered_json::array();
    for (const Clash& clash : clashes) {
        ordered_json c;
        c["kind"] = clashKindName(clash.kind);
        c["individual"] = display.iri(kb, clash.individual);
        switch (clash.kind) {
            case Clash::Kind::DisjointClasses:
                c["classes"] = {display.iri(kb, clash.clsA), display.iri(kb, clash.clsB)};
                break;
            case Clash::Kind::DisjointDataProperties:
                c["properties"] = {display.iri(kb, clash.propA), display.iri(kb, clash.propB)};
                c["value"] = display.literal(clash.sharedValue);
                break;
            case Clash::Kind::MaxCardinality: {
                c["property"] = display.iri(kb, clash.prop);
                c["max"] = clash.limit;
                c["count"] = clash.successors.size();
                ordered_json succ = ordered_json::array();
                for (TermId s : clash.successors) succ.push_back(display.iri(kb, s));
                c["successors"] = std::move(succ);
                break;
            }
        }
        ordered_json proofs = ordered_json::array();
        for (FactId id : clash.culprits)
            proofs.push_back(
                renderProof(kb, explain(closure, closure.facts()[id]), display));
        c["proofs"] = std::move(proofs);
        doc["clashes"].push_back(std::move(c));
    }

    doc["lints"] = ordered_json::array();
    for (const Lint& lint : lints) {
        ordered_json l;
        l["kind"] = lintKindName(lint.kind);
        l["individual"] = display.iri(kb, lint.individual);
        switch (lint.kind) {
            case Lint::Kind::ExactCardinalityShortfall:
            case Lint::Kind::IntestazioneNotOneToOne:
                l["class"] = display.iri(kb, lint.triggerTerm);
                l["property"] = display.iri(kb, lint.prop);
                l["have"] = lint.have;
                l["need"] = lint.need;
                break;
            case Lint::Kind::RangeUnionUntyped: {
                l["property"] = display.iri(kb, lint.prop);
                ordered_json allowed = ordered_json::array();
                for (const ParticipationPattern& p : lint.required)
                    allowed.push_back(display.iri(kb, p.term));
                l["allowed"] = std::move(allowed);
                break;
            }
            default: {
                l["trigger"] = triggerText(kb, lint, display);
                ordered_json require = ordered_json::array();
                for (const ParticipationPattern& p : lint.required)
                    require.push_back(patternText(kb, p, display));
                l["require"] = std::move(require);
                break;
            }
        }
        doc["lints"].push_back(std::move(l));
    }

    doc["stats"] = {{"asserted", closure.assertedCount()},
                    {"derived", closure.derivedCount()},
                    {"classes", kb.classes.size()}};
    return doc.dump(2) + "\n";
}

}  // namespace modeus
