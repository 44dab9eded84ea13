#ifndef MODEUSKB_REASONER_HPP
#define MODEUSKB_REASONER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modeuskb/kb.hpp"

namespace modeus {

/// The fixed Horn rule set. No rule invents individuals.
enum class RuleId : uint8_t {
    RSub,   // subclass propagation
    RDom,   // domain typing (object and data)
    RRng,   // range typing
    RInv,   // inverse / symmetric edge
    RSpo,   // sub-property propagation (object and data)
    RSome,  // membership from C ≡ ∃R.⊤ / C ≡ ∃d.Literal
    REqd,   // equivalent-data-property value copy
    RUni,   // member ⊑ C from C ≡ Union(...)
};

const char* ruleName(RuleId rule);

using FactId = uint32_t;

/// One way a fact was produced. Every rule has a single fact premise.
struct Derivation {
    RuleId rule;
    FactId premise;
    bool operator==(const Derivation&) const = default;
};

struct ProofStep {
    bool asserted = true;
    RuleId rule = RuleId::RSub;
    FactId premise = 0;
};

class NotEntailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
class ClosureBuilder;
}

/// Materialized fact store. Asserted facts occupy ids [0, assertedCount).
class Closure {
public:
    const KnowledgeBase& kb() const { return *kb_; }
    const std::vector<Fact>& facts() const { return facts_; }
    size_t assertedCount() const { return assertedCount_; }
    size_t derivedCount() const { return facts_.size() - assertedCount_; }

    std::optional<FactId> find(const Fact& fact) const;
    bool contains(const Fact& fact) const { return find(fact).has_value(); }
    const ProofStep& proof(FactId id) const { return proofs_.at(id); }
    const std::vector<Derivation>& derivations(FactId id) const { return derivations_.at(id); }

    /// Fact ids for lookups; `entailed` false restricts to asserted facts.
    std::vector<FactId> membersOf(TermId cls, bool entailed = true) const;
    std::vector<FactId> classesOf(TermId individual, bool entailed = true) const;
    std::vector<FactId> edgesOf(TermId property, bool entailed = true) const;
    std::vector<FactId> dataOf(TermId property, bool entailed = true) const;
    const std::vector<FactId>& allMembers() const { return memberFacts_; }
    const std::vector<FactId>& allEdges() const { return edgeFacts_; }
    const std::vector<FactId>& allData() const { return dataFacts_; }

    bool hasEdgeFrom(TermId property, TermId subject) const;
    bool hasEdgeTo(TermId property, TermId object) const;
    bool hasDataFrom(TermId property, TermId subject) const;
    bool isMember(TermId individual, TermId cls) const;
    std::vector<TermId> distinctObjects(TermId property, TermId subject) const;

private:
    friend class detail::ClosureBuilder;

    const KnowledgeBase* kb_ = nullptr;
    std::vector<Fact> facts_;
    size_t assertedCount_ = 0;
    std::unordered_map<Fact, FactId, FactHash> index_;
    std::vector<std::vector<Derivation>> derivations_;
    std::vector<ProofStep> proofs_;
    std::map<TermId, std::vector<FactId>> byClass_, byIndividual_, byEdgeProp_, byDataProp_;
    std::vector<FactId> memberFacts_, edgeFacts_, dataFacts_;
};

/// Least fixpoint of the rule set over the KB's asserted facts. Semi-naive;
/// the resulting fact set does not depend on rule application order.
Closure materialize(const KnowledgeBase& kb);

/// Same fixpoint over an explicit seed (idempotence/monotonicity testing).
Closure materializeFacts(const KnowledgeBase& kb, const std::vector<Fact>& seed);

/// Reflexive-transitive subsumption over named classes; equivalence groups
/// collapse to mutual subsumption. Cycles are legal.
class Subsumption {
public:
    bool subsumes(TermId sub, TermId sup) const;
    std::vector<TermId> superclasses(TermId cls) const;  // includes cls

private:
    friend Subsumption classify(const KnowledgeBase&);
    std::map<TermId, std::vector<TermId>> supers_;
};

Subsumption classify(const KnowledgeBase& kb);

struct Clash {
    enum class Kind { DisjointClasses, DisjointDataProperties, MaxCardinality };
    Kind kind = Kind::DisjointClasses;
    TermId individual;
    TermId clsA, clsB;          // DisjointClasses
    TermId propA, propB;        // DisjointDataProperties
    Literal sharedValue;        //   and the shared literal
    TermId prop;                // MaxCardinality
    unsigned limit = 0;
    std::vector<TermId> successors;
    std::vector<FactId> culprits;  // the clashing facts, each with a proof
};

struct Lint {
    enum class Kind {
        MissingMandatoryObjectParticipation,
        MissingMandatoryDataProperty,
        AtLeastOneOfUnsatisfied,
        ExactCardinalityShortfall,
        RangeUnionUntyped,
        IntestazioneNotOneToOne,  // optional rule, off by default
    };
    Kind kind = Kind::MissingMandatoryObjectParticipation;
    TermId individual;
    // constraint reference
    Participation::Trigger triggerKind = Participation::Trigger::ClassMembership;
    TermId triggerTerm;
    std::vector<ParticipationPattern> required;
    TermId prop;  // cardinality / range lints
    unsigned have = 0, need = 0;
};

struct CheckOptions {
    bool uniqueNameAssumption = true;  // off: max-cardinality clashes unprovable
    bool plainLiterals = true;
    bool lintUniqueIntestazione = false;
};

/// Open-world contradictions. Clashes never halt materialization.
std::vector<Clash> checkConsistency(const KnowledgeBase& kb, const Closure& closure,
                                    const CheckOptions& options = {});

/// Closed-world completeness gaps. Advisory only.
std::vector<Lint> lintCompleteness(const KnowledgeBase& kb, const Closure& closure,
                                   const CheckOptions& options = {});

struct ProofNode {
    Fact fact;
    bool asserted = true;
    RuleId rule = RuleId::RSub;
    std::vector<ProofNode> children;
};

/// Proof tree of an entailed fact; leaves are asserted facts. Throws
/// NotEntailed when the fact is not in the closure.
ProofNode explain(const Closure& closure, const Fact& fact);

}  // namespace modeus

#endif
