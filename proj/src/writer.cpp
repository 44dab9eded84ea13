#include "modeuskb/writer.hpp"

#include <algorithm>

namespace modeus {

namespace {

bool isLocalNameChar(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

std::string escapeString(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string entityKeyword(EntityKind kind) {
    switch (kind) {
        case EntityKind::OntologyClass: return "Class";
        case EntityKind::ObjectProperty: return "ObjectProperty";
        case EntityKind::DataProperty: return "DataProperty";
        case EntityKind::NamedIndividual: return "NamedIndividual";
    }
    return "Class";
}

}  // namespace

PrefixTable::PrefixTable(const std::vector<std::pair<std::string, std::string>>& prefixes) {
    for (const auto& [label, ns] : prefixes) {
        auto it = std::find_if(byNamespace_.begin(), byNamespace_.end(),
                               [&](const auto& p) { return p.first == ns; });
        if (it == byNamespace_.end())
            byNamespace_.emplace_back(ns, label);
        else if (label < it->second)
            it->second = label;  // smallest label wins on ties
    }
}

std::string PrefixTable::shorten(const std::string& fullIri) const {
    size_t bestLen = 0;
    const std::string* bestLabel = nullptr;
    for (const auto& [ns, label] : byNamespace_) {
        if (ns.size() <= bestLen || fullIri.size() < ns.size()) continue;
        if (fullIri.compare(0, ns.size(), ns) != 0) continue;
        std::string_view local(fullIri.data() + ns.size(), fullIri.size() - ns.size());
        bool ok = true;
        for (unsigned char c : local)
            if (!isLocalNameChar(c)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        bestLen = ns.size();
        bestLabel = &label;
    }
    if (!bestLabel) return "<" + fullIri + ">";
    return *bestLabel + ":" + fullIri.substr(bestLen);
}

bool PrefixTable::expand(const std::string& prefixedName, std::string& out) const {
    size_t colon = prefixedName.find(':');
    if (colon == std::string::npos) return false;
    std::string label = prefixedName.substr(0, colon);
    for (const auto& [ns, lbl] : byNamespace_)
        if (lbl == label) {
            out = ns + prefixedName.substr(colon + 1);
            return true;
        }
    return false;
}

std::string toString(const PropertyExpression& pe, const PrefixTable& prefixes) {
    if (pe.inverse) return "ObjectInverseOf(" + prefixes.shorten(pe.iri.full) + ")";
    return prefixes.shorten(pe.iri.full);
}

std::string toString(const ClassExpression& ce, const PrefixTable& prefixes) {
    using Kind = ClassExpression::Kind;
    switch (ce.kind) {
        case Kind::Named: return prefixes.shorten(ce.iri.full);
        case Kind::Thing: return prefixes.shorten(wk::owlThing);
        case Kind::Union:
        case Kind::Intersection: {
            std::string out =
                ce.kind == Kind::Union ? "ObjectUnionOf(" : "ObjectIntersectionOf(";
            for (size_t i = 0; i < ce.operands.size(); ++i) {
                if (i) out += ' ';
                out += toString(ce.operands[i], prefixes);
            }
            return out + ")";
        }
        case Kind::SomeValues:
            return "ObjectSomeValuesFrom(" + toString(ce.prop, prefixes) + " " +
                   toString(ce.operands.at(0), prefixes) + ")";
        case Kind::DataSomeValues:
            return "DataSomeValuesFrom(" + prefixes.shorten(ce.iri.full) + " " +
                   prefixes.shorten(ce.dataRange.full) + ")";
        case Kind::MinCard:
        case Kind::MaxCard:
            return std::string(ce.kind == Kind::MinCard ? "ObjectMinCardinality("
                                                        : "ObjectMaxCardinality(") +
                   std::to_string(ce.cardinality) + " " + toString(ce.prop, prefixes) + ")";
    }
    return {};
}

std::string toString(const Literal& lit, const PrefixTable& prefixes) {
    return escapeString(lit.lexical) + "^^" + prefixes.shorten(lit.datatype.full);
}

std::string toString(const Axiom& ax, const PrefixTable& p) {
    auto iri = [&](const Iri& i) { return p.shorten(i.full); };
    switch (ax.kind) {
        case AxiomKind::Declaration:
            return "Declaration(" + entityKeyword(ax.entity) + "(" + iri(ax.iris[0]) + "))";
        case AxiomKind::SubClassOf:
            return "SubClassOf(" + toString(ax.classes[0], p) + " " +
                   toString(ax.classes[1], p) + ")";
        case AxiomKind::EquivalentClasses:
        case AxiomKind::DisjointClasses: {
            std::string out = ax.kind == AxiomKind::EquivalentClasses ? "EquivalentClasses("
                                                                      : "DisjointClasses(";
            for (size_t i = 0; i < ax.classes.size(); ++i) {
                if (i) out += ' ';
                out += toString(ax.classes[i], p);
            }
            return out + ")";
        }
        case AxiomKind::SubObjectPropertyOf:
            return "SubObjectPropertyOf(" + toString(ax.subProp, p) + " " +
                   toString(ax.superProp, p) + ")";
        case AxiomKind::ObjectPropertyDomain:
            return "ObjectPropertyDomain(" + iri(ax.property) + " " +
                   toString(ax.classes[0], p) + ")";
        case AxiomKind::ObjectPropertyRange:
            return "ObjectPropertyRange(" + iri(ax.property) + " " +
                   toString(ax.classes[0], p) + ")";
        case AxiomKind::SubDataPropertyOf:
            return "SubDataPropertyOf(" + iri(ax.iris[0]) + " " + iri(ax.iris[1]) + ")";
        case AxiomKind::EquivalentDataProperties:
        case AxiomKind::DisjointDataProperties: {
            std::string out = ax.kind == AxiomKind::EquivalentDataProperties
                                  ? "EquivalentDataProperties("
                                  : "DisjointDataProperties(";
            for (size_t i = 0; i < ax.iris.size(); ++i) {
                if (i) out += ' ';
                out += iri(ax.iris[i]);
            }
            return out + ")";
        }
        case AxiomKind::DataPropertyDomain:
            return "DataPropertyDomain(" + iri(ax.property) + " " +
                   toString(ax.classes[0], p) + ")";
        case AxiomKind::ClassAssertion:
            return "ClassAssertion(" + toString(ax.classes[0], p) + " " + iri(ax.iris[0]) +
                   ")";
        case AxiomKind::ObjectPropertyAssertion:
            return "ObjectPropertyAssertion(" + iri(ax.property) + " " + iri(ax.iris[0]) +
                   " " + iri(ax.iris[1]) + ")";
        case AxiomKind::DataPropertyAssertion:
            return "DataPropertyAssertion(" + iri(ax.property) + " " + iri(ax.iris[0]) + " " +
                   toString(ax.value, p) + ")";
    }
    return {};
}

std::string axiomKey(const Axiom& axiom) {
    static const PrefixTable empty;  // full-IRI rendering
    return toString(axiom, empty);
}

std::string serialize(const Ontology& ontology) {
    std::string out;
    for (const auto& [label, ns] : ontology.prefixes)
        out += "Prefix(" + label + ":=<" + ns + ">)\n";
    out += "Ontology(<" + ontology.iri.full + ">\n";
    PrefixTable prefixes(ontology.prefixes);
    for (const Axiom& ax : ontology.axioms) out += toString(ax, prefixes) + "\n";
    out += ")\n";
    return out;
}

}  // namespace modeus
