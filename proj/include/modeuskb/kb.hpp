#ifndef MODEUSKB_KB_HPP
#define MODEUSKB_KB_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "modeuskb/ast.hpp"
#include "modeuskb/writer.hpp"

namespace modeus {

/// Dense handle for an interned IRI.
struct TermId {
    uint32_t value = 0;
    bool operator==(const TermId&) const = default;
    auto operator<=>(const TermId&) const = default;
};

class TermTable {
public:
    TermId intern(std::string_view iri);
    std::optional<TermId> find(std::string_view iri) const;
    const std::string& name(TermId id) const { return names_.at(id.value); }
    size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, uint32_t> ids_;
};

/// Ground atom in the fact store.
struct Fact {
    enum class Kind : uint8_t { ClassMember, ObjEdge, DataVal };

    Kind kind = Kind::ClassMember;
    TermId a;  // ClassMember: individual; ObjEdge: property; DataVal: data property
    TermId b;  // ClassMember: class;      ObjEdge: subject;  DataVal: subject
    TermId c;  // ObjEdge: object
    Literal lit;  // DataVal value

    bool operator==(const Fact&) const = default;

    static Fact member(TermId individual, TermId cls) {
        return {Kind::ClassMember, individual, cls, {}, {}};
    }
    static Fact edge(TermId property, TermId subject, TermId object) {
        return {Kind::ObjEdge, property, subject, object, {}};
    }
    static Fact data(TermId property, TermId subject, Literal value) {
        return {Kind::DataVal, property, subject, {}, std::move(value)};
    }
};

struct FactHash {
    size_t operator()(const Fact& f) const {
        size_t h = static_cast<size_t>(f.kind);
        auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(f.a.value);
        mix(f.b.value);
        mix(f.c.value);
        mix(std::hash<std::string>{}(f.lit.lexical));
        mix(std::hash<std::string>{}(f.lit.datatype.full));
        return h;
    }
};

/// One alternative inside a mandatory-participation constraint.
struct ParticipationPattern {
    enum class Kind {
        ObjSucc,  // has a p-successor
        ObjPred,  // is the object of some p-edge
        DataVal,  // has a d value
        Member,   // belongs to a class
    };
    Kind kind = Kind::ObjSucc;
    TermId term;

    bool operator==(const ParticipationPattern&) const = default;
};

/// Closed-world obligation: whenever the trigger holds for an individual, at
/// least one of the patterns must hold too. Never used for derivation.
struct Participation {
    enum class Trigger {
        ClassMembership,  // triggerTerm is a class
        DataSubject,      // individual carries a triggerTerm data value
        EdgeSubject,      // individual has a triggerTerm successor
    };
    Trigger trigger = Trigger::ClassMembership;
    TermId triggerTerm;
    std::vector<ParticipationPattern> anyOf;
};

struct CardinalityBound {
    TermId cls;
    TermId prop;
    bool isMax = false;
    unsigned bound = 0;
};

/// Objects of prop must belong to one of the classes (advisory).
struct RangeUnion {
    TermId prop;
    std::vector<TermId> classes;
};

struct SubPropertyEdge {
    TermId sub;
    TermId sup;
    bool inverseTarget = false;  // sub ⊑ inverse(sup)
};

/// Indexed, deduplicated view of one or more parsed ontologies. Immutable
/// after build(); every index is a pure function of `axioms`.
struct KnowledgeBase {
    TermTable terms;
    std::vector<std::string> ontologyIris;
    std::vector<std::pair<std::string, std::string>> prefixes;  // merged, first wins
    std::vector<Axiom> axioms;                                  // deduplicated, source order

    // declared vocabulary (punned IRIs appear in several sets)
    std::set<TermId> classes, objectProperties, dataProperties, individuals;
    std::set<TermId> mentionedClasses;  // named classes appearing in any axiom

    // TBox indices
    std::map<TermId, std::vector<TermId>> directSuper;  // SubClassOf, union-LHS flattened
    std::vector<std::vector<TermId>> equivalentClassGroups;
    std::map<TermId, std::vector<TermId>> objDomain, objRange, dataDomain;
    std::map<TermId, std::vector<TermId>> someFwd;   // p: classes C with C ≡ ∃p.⊤
    std::map<TermId, std::vector<TermId>> someInv;   // p: classes C with C ≡ ∃p⁻.⊤
    std::map<TermId, std::vector<TermId>> someData;  // d: classes C with C ≡ ∃d.Literal
    std::vector<SubPropertyEdge> subObjectProperty;
    std::vector<std::pair<TermId, TermId>> subDataProperty;
    std::vector<std::vector<TermId>> disjointClassSets;
    std::vector<std::pair<TermId, TermId>> disjointDataProperties;
    std::vector<std::vector<TermId>> equivalentDataGroups;
    std::vector<CardinalityBound> cardinalityBounds;
    std::map<TermId, std::vector<TermId>> unionSuper;  // member ⊑ C from C ≡ Union(...)
    std::vector<Participation> participations;
    std::vector<RangeUnion> rangeUnions;

    // ABox
    std::vector<Fact> assertedFacts;

    const std::string& name(TermId id) const { return terms.name(id); }

    /// Named superclasses: SubClassOf targets (after union-LHS flattening)
    /// plus both directions of named-named EquivalentClasses.
    /// Throws BuildError for a term that is not a known ontology class.
    std::vector<TermId> directSuperclasses(TermId cls) const;

    /// Constraints triggered by membership in cls.
    std::vector<Participation> mandatoryParticipations(TermId cls) const;

    /// Rank of each term in IRI-sorted order; stable under TermId renaming.
    std::vector<uint32_t> sortRanks() const;

    PrefixTable prefixTable() const { return PrefixTable(prefixes); }
};

/// Merge, deduplicate and index. Rejects a ClassAssertion with a complex
/// class expression and an IRI declared as both object- and data-property.
KnowledgeBase buildKb(const std::vector<Ontology>& ontologies);

}  // namespace modeus

#endif
