#include "modeuskb/kb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace modeus {

TermId TermTable::intern(std::string_view iri) {
    auto it = ids_.find(std::string(iri));
    if (it != ids_.end()) return TermId{it->second};
    uint32_t id = static_cast<uint32_t>(names_.size());
    names_.emplace_back(iri);
    ids_.emplace(names_.back(), id);
    return TermId{id};
}

std::optional<TermId> TermTable::find(std::string_view iri) const {
    auto it = ids_.find(std::string(iri));
    if (it == ids_.end()) return std::nullopt;
    return TermId{it->second};
}

namespace {

class Builder {
public:
    explicit Builder(const std::vector<Ontology>& ontologies) : ontologies_(ontologies) {}

    KnowledgeBase run() {
        mergeDocuments();
        for (const Axiom& ax : kb_.axioms) indexAxiom(ax);
        mergeEquivalenceGroups();
        checkConflicts();
        return std::move(kb_);
    }

private:
    const std::vector<Ontology>& ontologies_;
    KnowledgeBase kb_;
    std::vector<std::pair<TermId, TermId>> namedEquivalences_;

    TermId intern(const Iri& iri) { return kb_.terms.intern(iri.full); }

    void mergeDocuments() {
        std::unordered_set<std::string> seenAxioms;
        std::unordered_set<std::string> seenPrefixLabels;
        for (const Ontology& ont : ontologies_) {
            kb_.ontologyIris.push_back(ont.iri.full);
            for (const auto& [label, ns] : ont.prefixes)
                if (seenPrefixLabels.insert(label).second)
                    kb_.prefixes.emplace_back(label, ns);
            for (const Axiom& ax : ont.axioms)
                if (seenAxioms.insert(axiomKey(ax)).second) kb_.axioms.push_back(ax);
        }
    }

    void collectNamed(const ClassExpression& ce) {
        using Kind = ClassExpression::Kind;
        if (ce.kind == Kind::Named) kb_.mentionedClasses.insert(intern(ce.iri));
        for (const ClassExpression& op : ce.operands) collectNamed(op);
    }

    std::optional<ParticipationPattern> patternOf(const ClassExpression& ce) {
        using Kind = ClassExpression::Kind;
        switch (ce.kind) {
            case Kind::Named:
                return ParticipationPattern{ParticipationPattern::Kind::Member, intern(ce.iri)};
            case Kind::SomeValues:
                return ParticipationPattern{ce.prop.inverse
                                                ? ParticipationPattern::Kind::ObjPred
                                                : ParticipationPattern::Kind::ObjSucc,
                                            intern(ce.prop.iri)};
            case Kind::DataSomeValues:
                return ParticipationPattern{ParticipationPattern::Kind::DataVal, intern(ce.iri)};
            default:
                return std::nullopt;
        }
    }

    // All disjuncts must be expressible, otherwise the constraint would be
    // stronger than the axiom and produce false lints.
    std::optional<std::vector<ParticipationPattern>> patternsOf(const ClassExpression& ce) {
        std::vector<ParticipationPattern> out;
        if (ce.kind == ClassExpression::Kind::Union) {
            for (const ClassExpression& member : ce.operands) {
                auto p = patternOf(member);
                if (!p) return std::nullopt;
                out.push_back(*p);
            }
            return out;
        }
        auto p = patternOf(ce);
        if (!p) return std::nullopt;
        out.push_back(*p);
        return out;
    }

    void addParticipation(Participation::Trigger trigger, TermId term,
                          std::vector<ParticipationPattern> anyOf) {
        kb_.participations.push_back({trigger, term, std::move(anyOf)});
    }

    bool allNamed(const ClassExpression& un) {
        return std::all_of(un.operands.begin(), un.operands.end(), [](const auto& m) {
            return m.kind == ClassExpression::Kind::Named;
        });
    }

    // C is named, expr is not. Handles both reading directions of C ≡ expr.
    void equivalenceNamedExpr(TermId c, const ClassExpression& expr) {
        using Kind = ClassExpression::Kind;
        switch (expr.kind) {
            case Kind::SomeValues: {
                TermId p = intern(expr.prop.iri);
                bool thingFiller = expr.operands.at(0).kind == Kind::Thing;
                if (thingFiller)  // ∃R.⊤ ⊑ C is Horn; other fillers are not
                    (expr.prop.inverse ? kb_.someInv[p] : kb_.someFwd[p]).push_back(c);
                addParticipation(Participation::Trigger::ClassMembership, c,
                                 {*patternOf(expr)});
                break;
            }
            case Kind::DataSomeValues: {
                TermId d = intern(expr.iri);
                kb_.someData[d].push_back(c);
                addParticipation(Participation::Trigger::ClassMembership, c,
                                 {*patternOf(expr)});
                break;
            }
            case Kind::Union: {
                for (const ClassExpression& member : expr.operands) {
                    if (member.kind == Kind::Named) {
                        kb_.unionSuper[intern(member.iri)].push_back(c);
                    } else if (member.kind == Kind::SomeValues &&
                               member.operands.at(0).kind == Kind::Thing) {
                        TermId p = intern(member.prop.iri);
                        (member.prop.inverse ? kb_.someInv[p] : kb_.someFwd[p]).push_back(c);
                    }
                }
                if (auto pats = patternsOf(expr))
                    addParticipation(Participation::Trigger::ClassMembership, c,
                                     std::move(*pats));
                break;
            }
            default:
                break;  // outside the Horn fragment and the lint vocabulary
        }
    }

    // Neither side named: Union(...) ≡ expr (the provenance axioms).
    void equivalenceUnionExpr(const ClassExpression& un, const ClassExpression& expr) {
        using Kind = ClassExpression::Kind;
        auto exprPattern = patternOf(expr);
        if (exprPattern) {
            // each disjunct carries the obligation of the right-hand side
            for (const ClassExpression& member : un.operands) {
                if (member.kind == Kind::Named) {
                    addParticipation(Participation::Trigger::ClassMembership,
                                     intern(member.iri), {*exprPattern});
                } else if (member.kind == Kind::SomeValues && !member.prop.inverse) {
                    addParticipation(Participation::Trigger::EdgeSubject,
                                     intern(member.prop.iri), {*exprPattern});
                }
            }
        }
        // reverse direction: whatever satisfies expr must fall into the union
        auto pats = patternsOf(un);
        if (!pats) return;
        if (expr.kind == Kind::SomeValues) {
            TermId p = intern(expr.prop.iri);
            if (expr.prop.inverse && allNamed(un)) {
                RangeUnion ru{p, {}};
                for (const ClassExpression& m : un.operands) ru.classes.push_back(intern(m.iri));
                kb_.rangeUnions.push_back(std::move(ru));
            } else if (!expr.prop.inverse) {
                addParticipation(Participation::Trigger::EdgeSubject, p, std::move(*pats));
            }
        } else if (expr.kind == Kind::DataSomeValues) {
            addParticipation(Participation::Trigger::DataSubject, intern(expr.iri),
                             std::move(*pats));
        }
    }

    void indexEquivalentClasses(const Axiom& ax) {
        std::vector<TermId> named;
        std::vector<const ClassExpression*> complex;
        for (const ClassExpression& ce : ax.classes) {
            if (ce.kind == ClassExpression::Kind::Named)
                named.push_back(intern(ce.iri));
            else
                complex.push_back(&ce);
        }
        for (size_t i = 1; i < named.size(); ++i)
            namedEquivalences_.emplace_back(named[0], named[i]);
        for (TermId c : named)
            for (const ClassExpression* expr : complex) equivalenceNamedExpr(c, *expr);
        if (named.empty() && complex.size() >= 2) {
            for (size_t i = 0; i < complex.size(); ++i)
                for (size_t j = 0; j < complex.size(); ++j) {
                    if (i == j) continue;
                    if (complex[i]->kind == ClassExpression::Kind::Union)
                        equivalenceUnionExpr(*complex[i], *complex[j]);
                }
        }
    }

    // SubClassOf with a named (or flattened-union) left-hand side.
    void subClassFrom(TermId sub, const ClassExpression& sup) {
        using Kind = ClassExpression::Kind;
        switch (sup.kind) {
            case Kind::Named:
                kb_.directSuper[sub].push_back(intern(sup.iri));
                break;
            case Kind::Thing:
                break;
            case Kind::Intersection:
                for (const ClassExpression& part : sup.operands) subClassFrom(sub, part);
                break;
            case Kind::MinCard:
            case Kind::MaxCard:
                if (!sup.prop.inverse)
                    kb_.cardinalityBounds.push_back({sub, intern(sup.prop.iri),
                                                     sup.kind == Kind::MaxCard,
                                                     sup.cardinality});
                break;
            case Kind::SomeValues:
            case Kind::DataSomeValues:
            case Kind::Union:
                if (auto pats = patternsOf(sup))
                    addParticipation(Participation::Trigger::ClassMembership, sub,
                                     std::move(*pats));
                break;
        }
    }

    void indexSubClassOf(const Axiom& ax) {
        const ClassExpression& lhs = ax.classes[0];
        const ClassExpression& rhs = ax.classes[1];
        if (lhs.kind == ClassExpression::Kind::Named) {
            subClassFrom(intern(lhs.iri), rhs);
        } else if (lhs.kind == ClassExpression::Kind::Union) {
            // Union(C1..Cn) ⊑ D contributes D to every named Ci
            for (const ClassExpression& member : lhs.operands)
                if (member.kind == ClassExpression::Kind::Named)
                    subClassFrom(intern(member.iri), rhs);
        }
    }

    void domainOrRange(const Axiom& ax, bool isRange, bool isData) {
        TermId p = intern(ax.property);
        const ClassExpression& ce = ax.classes[0];
        using Kind = ClassExpression::Kind;
        if (ce.kind == Kind::Named) {
            auto& idx = isData ? kb_.dataDomain : (isRange ? kb_.objRange : kb_.objDomain);
            idx[p].push_back(intern(ce.iri));
            return;
        }
        if (ce.kind == Kind::Thing) return;
        if (isRange) {
            if (ce.kind == Kind::Union && allNamed(ce)) {
                RangeUnion ru{p, {}};
                for (const ClassExpression& m : ce.operands) ru.classes.push_back(intern(m.iri));
                kb_.rangeUnions.push_back(std::move(ru));
            }
            return;
        }
        // complex domain: closed-world obligation on the property's subjects
        if (auto pats = patternsOf(ce))
            addParticipation(isData ? Participation::Trigger::DataSubject
                                    : Participation::Trigger::EdgeSubject,
                             p, std::move(*pats));
    }

    void indexAxiom(const Axiom& ax) {
        for (const ClassExpression& ce : ax.classes) collectNamed(ce);
        switch (ax.kind) {
            case AxiomKind::Declaration: {
                TermId id = intern(ax.iris[0]);
                switch (ax.entity) {
                    case EntityKind::OntologyClass: kb_.classes.insert(id); break;
                    case EntityKind::ObjectProperty: kb_.objectProperties.insert(id); break;
                    case EntityKind::DataProperty: kb_.dataProperties.insert(id); break;
                    case EntityKind::NamedIndividual: kb_.individuals.insert(id); break;
                }
                break;
            }
            case AxiomKind::SubClassOf:
                indexSubClassOf(ax);
                break;
            case AxiomKind::EquivalentClasses:
                indexEquivalentClasses(ax);
                break;
            case AxiomKind::DisjointClasses: {
                std::vector<TermId> set;
                for (const ClassExpression& ce : ax.classes) {
                    if (ce.kind != ClassExpression::Kind::Named)
                        throw BuildError("DisjointClasses with a complex class expression");
                    set.push_back(intern(ce.iri));
                }
                kb_.disjointClassSets.push_back(std::move(set));
                break;
            }
            case AxiomKind::SubObjectPropertyOf: {
                PropertyExpression sub = ax.subProp, sup = ax.superProp;
                if (sub.inverse) {  // inv(p) ⊑ q  ⟺  p ⊑ inv(q)
                    sub.inverse = false;
                    sup.inverse = !sup.inverse;
                }
                kb_.subObjectProperty.push_back(
                    {intern(sub.iri), intern(sup.iri), sup.inverse});
                break;
            }
            case AxiomKind::ObjectPropertyDomain: domainOrRange(ax, false, false); break;
            case AxiomKind::ObjectPropertyRange: domainOrRange(ax, true, false); break;
            case AxiomKind::DataPropertyDomain: domainOrRange(ax, false, true); break;
            case AxiomKind::SubDataPropertyOf:
                kb_.subDataProperty.emplace_back(intern(ax.iris[0]), intern(ax.iris[1]));
                break;
            case AxiomKind::EquivalentDataProperties: {
                std::vector<TermId> group;
                for (const Iri& i : ax.iris) group.push_back(intern(i));
                kb_.equivalentDataGroups.push_back(std::move(group));
                break;
            }
            case AxiomKind::DisjointDataProperties:
                for (size_t i = 0; i < ax.iris.size(); ++i)
                    for (size_t j = i + 1; j < ax.iris.size(); ++j)
                        kb_.disjointDataProperties.emplace_back(intern(ax.iris[i]),
                                                                intern(ax.iris[j]));
                break;
            case AxiomKind::ClassAssertion: {
                if (ax.classes[0].kind != ClassExpression::Kind::Named)
                    throw BuildError("ClassAssertion with a complex class expression");
                kb_.assertedFacts.push_back(
                    Fact::member(intern(ax.iris[0]), intern(ax.classes[0].iri)));
                break;
            }
            case AxiomKind::ObjectPropertyAssertion:
                kb_.assertedFacts.push_back(Fact::edge(
                    intern(ax.property), intern(ax.iris[0]), intern(ax.iris[1])));
                break;
            case AxiomKind::DataPropertyAssertion:
                kb_.assertedFacts.push_back(
                    Fact::data(intern(ax.property), intern(ax.iris[0]), ax.value));
                break;
        }
    }

    void mergeEquivalenceGroups() {
        // union-find over the named-named equivalences
        std::map<TermId, TermId> parent;
        std::function<TermId(TermId)> findRoot = [&](TermId x) {
            auto it = parent.find(x);
            if (it == parent.end() || it->second == x) return x;
            TermId root = findRoot(it->second);
            parent[x] = root;
            return root;
        };
        for (auto [a, b] : namedEquivalences_) {
            parent.try_emplace(a, a);
            parent.try_emplace(b, b);
            TermId ra = findRoot(a), rb = findRoot(b);
            if (!(ra == rb)) parent[ra] = rb;
        }
        std::map<TermId, std::vector<TermId>> groups;
        for (auto& [node, _] : parent) groups[findRoot(node)].push_back(node);
        for (auto& [_, members] : groups)
            if (members.size() > 1) {
                std::sort(members.begin(), members.end());
                kb_.equivalentClassGroups.push_back(members);
            }
    }

    void checkConflicts() {
        for (TermId p : kb_.objectProperties)
            if (kb_.dataProperties.count(p))
                throw BuildError("conflicting declaration: '" + kb_.terms.name(p) +
                                 "' is both an object property and a data property");
    }
};

}  // namespace

std::vector<TermId> KnowledgeBase::directSuperclasses(TermId cls) const {
    if (!classes.count(cls) && !mentionedClasses.count(cls))
        throw BuildError("unknown term: " + terms.name(cls));
    std::vector<TermId> out;
    auto it = directSuper.find(cls);
    if (it != directSuper.end()) out = it->second;
    for (const auto& group : equivalentClassGroups) {
        if (std::find(group.begin(), group.end(), cls) == group.end()) continue;
        for (TermId other : group)
            if (!(other == cls)) out.push_back(other);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Participation> KnowledgeBase::mandatoryParticipations(TermId cls) const {
    std::vector<Participation> out;
    for (const Participation& p : participations)
        if (p.trigger == Participation::Trigger::ClassMembership && p.triggerTerm == cls)
            out.push_back(p);
    return out;
}

std::vector<uint32_t> KnowledgeBase::sortRanks() const {
    std::vector<uint32_t> ids(terms.size());
    std::iota(ids.begin(), ids.end(), 0u);
    std::stable_sort(ids.begin(), ids.end(), [this](uint32_t a, uint32_t b) {
        return terms.name(TermId{a}) < terms.name(TermId{b});
    });
    std::vector<uint32_t> ranks(terms.size());
    for (uint32_t rank = 0; rank < ids.size(); ++rank) ranks[ids[rank]] = rank;
    return ranks;
}

KnowledgeBase buildKb(const std::vector<Ontology>& ontologies) {
    return Builder(ontologies).run();
}

}  // namespace modeus
