#include "modeuskb/reasoner.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace modeus {

const char* ruleName(RuleId rule) {
    switch (rule) {
        case RuleId::RSub: return "R-SUB";
        case RuleId::RDom: return "R-DOM";
        case RuleId::RRng: return "R-RNG";
        case RuleId::RInv: return "R-INV";
        case RuleId::RSpo: return "R-SPO";
        case RuleId::RSome: return "R-SOME";
        case RuleId::REqd: return "R-EQD";
        case RuleId::RUni: return "R-UNI";
    }
    return "?";
}

std::optional<FactId> Closure::find(const Fact& fact) const {
    auto it = index_.find(fact);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<FactId> filterEntailed(const std::vector<FactId>* ids, bool entailed,
                                   size_t assertedCount) {
    if (!ids) return {};
    if (entailed) return *ids;
    std::vector<FactId> out;
    for (FactId id : *ids)
        if (id < assertedCount) out.push_back(id);
    return out;
}

}  // namespace

std::vector<FactId> Closure::membersOf(TermId cls, bool entailed) const {
    auto it = byClass_.find(cls);
    return filterEntailed(it == byClass_.end() ? nullptr : &it->second, entailed,
                          assertedCount_);
}
std::vector<FactId> Closure::classesOf(TermId individual, bool entailed) const {
    auto it = byIndividual_.find(individual);
    return filterEntailed(it == byIndividual_.end() ? nullptr : &it->second, entailed,
                          assertedCount_);
}
std::vector<FactId> Closure::edgesOf(TermId property, bool entailed) const {
    auto it = byEdgeProp_.find(property);
    return filterEntailed(it == byEdgeProp_.end() ? nullptr : &it->second, entailed,
                          assertedCount_);
}
std::vector<FactId> Closure::dataOf(TermId property, bool entailed) const {
    auto it = byDataProp_.find(property);
    return filterEntailed(it == byDataProp_.end() ? nullptr : &it->second, entailed,
                          assertedCount_);
}

bool Closure::hasEdgeFrom(TermId property, TermId subject) const {
    for (FactId id : edgesOf(property))
        if (facts_[id].b == subject) return true;
    return false;
}
bool Closure::hasEdgeTo(TermId property, TermId object) const {
    for (FactId id : edgesOf(property))
        if (facts_[id].c == object) return true;
    return false;
}
bool Closure::hasDataFrom(TermId property, TermId subject) const {
    for (FactId id : dataOf(property))
        if (facts_[id].b == subject) return true;
    return false;
}
bool Closure::isMember(TermId individual, TermId cls) const {
    return contains(Fact::member(individual, cls));
}
std::vector<TermId> Closure::distinctObjects(TermId property, TermId subject) const {
    std::set<TermId> objects;
    for (FactId id : edgesOf(property))
        if (facts_[id].b == subject) objects.insert(facts_[id].c);
    return {objects.begin(), objects.end()};
}

namespace {

/// Deterministic, rename-stable ordering key for facts.
class FactOrder {
public:
    FactOrder(const KnowledgeBase& kb, const std::vector<Fact>& facts)
        : facts_(facts), ranks_(kb.sortRanks()) {}

    bool less(FactId x, FactId y) const { return key(facts_[x]) < key(facts_[y]); }

private:
    std::tuple<int, uint32_t, uint32_t, uint32_t, const std::string&, const std::string&>
    key(const Fact& f) const {
        static const std::string empty;
        return {static_cast<int>(f.kind), rank(f.a), rank(f.b), rank(f.c),
                f.kind == Fact::Kind::DataVal ? f.lit.lexical : empty,
                f.kind == Fact::Kind::DataVal ? f.lit.datatype.full : empty};
    }
    uint32_t rank(TermId t) const { return t.value < ranks_.size() ? ranks_[t.value] : t.value; }

    const std::vector<Fact>& facts_;
    std::vector<uint32_t> ranks_;
};

}  // namespace

namespace detail {

class ClosureBuilder {
public:
    ClosureBuilder(const KnowledgeBase& kb, const std::vector<Fact>& seed)
        : kb_(kb), seed_(seed) {
        for (const SubPropertyEdge& e : kb.subObjectProperty)
            subPropBySub_[e.sub].push_back(e);
        for (const auto& [sub, sup] : kb.subDataProperty) subDataBySub_[sub].push_back(sup);
        for (const auto& group : kb.equivalentDataGroups)
            for (TermId d : group) dataGroupsByMember_[d].push_back(&group);
    }

    Closure run() {
        closure_.kb_ = &kb_;
        for (const Fact& f : seed_) insert(f, std::nullopt, RuleId::RSub);
        closure_.assertedCount_ = closure_.facts_.size();
        std::deque<FactId> queue;
        for (FactId id = 0; id < closure_.facts_.size(); ++id) queue.push_back(id);
        while (!queue.empty()) {
            FactId id = queue.front();
            queue.pop_front();
            fire(id, queue);
        }
        assignProofs();
        return std::move(closure_);
    }

private:
    const KnowledgeBase& kb_;
    const std::vector<Fact>& seed_;
    Closure closure_;
    std::map<TermId, std::vector<SubPropertyEdge>> subPropBySub_;
    std::map<TermId, std::vector<TermId>> subDataBySub_;
    std::map<TermId, std::vector<const std::vector<TermId>*>> dataGroupsByMember_;

    std::optional<FactId> insert(const Fact& fact, std::optional<FactId> premise,
                                 RuleId rule) {
        auto [it, isNew] = closure_.index_.try_emplace(
            fact, static_cast<FactId>(closure_.facts_.size()));
        FactId id = it->second;
        if (isNew) {
            closure_.facts_.push_back(fact);
            closure_.derivations_.emplace_back();
            switch (fact.kind) {
                case Fact::Kind::ClassMember:
                    closure_.byClass_[fact.b].push_back(id);
                    closure_.byIndividual_[fact.a].push_back(id);
                    closure_.memberFacts_.push_back(id);
                    break;
                case Fact::Kind::ObjEdge:
                    closure_.byEdgeProp_[fact.a].push_back(id);
                    closure_.edgeFacts_.push_back(id);
                    break;
                case Fact::Kind::DataVal:
                    closure_.byDataProp_[fact.a].push_back(id);
                    closure_.dataFacts_.push_back(id);
                    break;
            }
        }
        if (premise) {
            Derivation d{rule, *premise};
            auto& ds = closure_.derivations_[id];
            if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
        }
        return isNew ? std::optional<FactId>(id) : std::nullopt;
    }

    void derive(const Fact& fact, FactId premise, RuleId rule, std::deque<FactId>& queue) {
        if (auto fresh = insert(fact, premise, rule)) queue.push_back(*fresh);
    }

    void fire(FactId id, std::deque<FactId>& queue) {
        const Fact fact = closure_.facts_[id];  // copy: vector may reallocate
        switch (fact.kind) {
            case Fact::Kind::ClassMember: {
                TermId ind = fact.a, cls = fact.b;
                if (auto it = kb_.directSuper.find(cls); it != kb_.directSuper.end())
                    for (TermId sup : it->second)
                        derive(Fact::member(ind, sup), id, RuleId::RSub, queue);
                for (const auto& group : kb_.equivalentClassGroups)
                    if (std::find(group.begin(), group.end(), cls) != group.end())
                        for (TermId other : group)
                            if (!(other == cls))
                                derive(Fact::member(ind, other), id, RuleId::RSub, queue);
                if (auto it = kb_.unionSuper.find(cls); it != kb_.unionSuper.end())
                    for (TermId sup : it->second)
                        derive(Fact::member(ind, sup), id, RuleId::RUni, queue);
                break;
            }
            case Fact::Kind::ObjEdge: {
                TermId p = fact.a, s = fact.b, o = fact.c;
                if (auto it = kb_.objDomain.find(p); it != kb_.objDomain.end())
                    for (TermId d : it->second)
                        derive(Fact::member(s, d), id, RuleId::RDom, queue);
                if (auto it = kb_.objRange.find(p); it != kb_.objRange.end())
                    for (TermId r : it->second)
                        derive(Fact::member(o, r), id, RuleId::RRng, queue);
                if (auto it = subPropBySub_.find(p); it != subPropBySub_.end())
                    for (const SubPropertyEdge& e : it->second) {
                        if (e.inverseTarget)
                            derive(Fact::edge(e.sup, o, s), id, RuleId::RInv, queue);
                        else
                            derive(Fact::edge(e.sup, s, o), id, RuleId::RSpo, queue);
                    }
                if (auto it = kb_.someFwd.find(p); it != kb_.someFwd.end())
                    for (TermId c : it->second)
                        derive(Fact::member(s, c), id, RuleId::RSome, queue);
                if (auto it = kb_.someInv.find(p); it != kb_.someInv.end())
                    for (TermId c : it->second)
                        derive(Fact::member(o, c), id, RuleId::RSome, queue);
                break;
            }
            case Fact::Kind::DataVal: {
                TermId d = fact.a, s = fact.b;
                if (auto it = kb_.dataDomain.find(d); it != kb_.dataDomain.end())
                    for (TermId c : it->second)
                        derive(Fact::member(s, c), id, RuleId::RDom, queue);
                if (auto it = subDataBySub_.find(d); it != subDataBySub_.end())
                    for (TermId sup : it->second)
                        derive(Fact::data(sup, s, fact.lit), id, RuleId::RSpo, queue);
                if (auto it = dataGroupsByMember_.find(d); it != dataGroupsByMember_.end())
                    for (const auto* group : it->second)
                        for (TermId other : *group)
                            if (!(other == d))
                                derive(Fact::data(other, s, fact.lit), id, RuleId::REqd,
                                       queue);
                if (auto it = kb_.someData.find(d); it != kb_.someData.end())
                    for (TermId c : it->second)
                        derive(Fact::member(s, c), id, RuleId::RSome, queue);
                break;
            }
        }
    }

    // Proof choice: asserted facts are leaves; a derived fact takes the proof
    // available at the lowest rule stratum (R-SUB first, in RuleId order),
    // breadth-first within a stratum, ties broken by the premise's
    // rename-stable order. Deterministic and independent of fire order.
    void assignProofs() {
        size_t n = closure_.facts_.size();
        closure_.proofs_.assign(n, ProofStep{});
        std::vector<char> assigned(n, 0);
        for (FactId id = 0; id < closure_.assertedCount_; ++id) assigned[id] = 1;

        FactOrder order(kb_, closure_.facts_);
        std::vector<FactId> pending;
        for (FactId id = static_cast<FactId>(closure_.assertedCount_); id < n; ++id)
            pending.push_back(id);
        std::sort(pending.begin(), pending.end(),
                  [&](FactId a, FactId b) { return order.less(a, b); });

        for (int stratum = 0; stratum <= static_cast<int>(RuleId::RUni); ++stratum) {
            for (;;) {
                std::vector<std::pair<FactId, Derivation>> round;
                for (FactId id : pending) {
                    if (assigned[id]) continue;
                    const Derivation* best = nullptr;
                    for (const Derivation& d : closure_.derivations_[id]) {
                        if (static_cast<int>(d.rule) > stratum) continue;
                        if (!assigned[d.premise]) continue;
                        if (!best || d.rule < best->rule ||
                            (d.rule == best->rule && order.less(d.premise, best->premise)))
                            best = &d;
                    }
                    if (best) round.emplace_back(id, *best);
                }
                if (round.empty()) break;
                for (auto& [id, d] : round) {
                    closure_.proofs_[id] = {false, d.rule, d.premise};
                    assigned[id] = 1;
                }
            }
        }
        assert(std::all_of(assigned.begin(), assigned.end(), [](char c) { return c; }));
    }
};

}  // namespace detail

Closure materializeFacts(const KnowledgeBase& kb, const std::vector<Fact>& seed) {
    return detail::ClosureBuilder(kb, seed).run();
}

Closure materialize(const KnowledgeBase& kb) { return materializeFacts(kb, kb.assertedFacts); }

bool Subsumption::subsumes(TermId sub, TermId sup) const {
    if (sub == sup) return true;
    auto it = supers_.find(sub);
    if (it == supers_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), sup);
}

std::vector<TermId> Subsumption::superclasses(TermId cls) const {
    std::vector<TermId> out;
    auto it = supers_.find(cls);
    if (it != supers_.end()) out = it->second;
    if (!std::binary_search(out.begin(), out.end(), cls)) {
        out.push_back(cls);
        std::sort(out.begin(), out.end());
    }
    return out;
}

Subsumption classify(const KnowledgeBase& kb) {
    std::set<TermId> nodes = kb.classes;
    nodes.insert(kb.mentionedClasses.begin(), kb.mentionedClasses.end());

    auto neighbours = [&kb](TermId cls) {
        std::vector<TermId> out;
        if (auto it = kb.directSuper.find(cls); it != kb.directSuper.end()) out = it->second;
        for (const auto& group : kb.equivalentClassGroups)
            if (std::find(group.begin(), group.end(), cls) != group.end())
                for (TermId other : group)
                    if (!(other == cls)) out.push_back(other);
        return out;
    };

    Subsumption result;
    for (TermId start : nodes) {
        std::set<TermId> reached{start};
        std::deque<TermId> queue{start};
        while (!queue.empty()) {
            TermId cur = queue.front();
            queue.pop_front();
            for (TermId next : neighbours(cur))
                if (reached.insert(next).second) queue.push_back(next);
        }
        result.supers_[start] = {reached.begin(), reached.end()};
    }
    return result;
}

namespace {

bool patternSatisfied(const Closure& closure, TermId individual,
                      const ParticipationPattern& pattern) {
    switch (pattern.kind) {
        case ParticipationPattern::Kind::ObjSucc:
            return closure.hasEdgeFrom(pattern.term, individual);
        case ParticipationPattern::Kind::ObjPred:
            return closure.hasEdgeTo(pattern.term, individual);
        case ParticipationPattern::Kind::DataVal:
            return closure.hasDataFrom(pattern.term, individual);
        case ParticipationPattern::Kind::Member:
            return closure.isMember(individual, pattern.term);
    }
    return false;
}

std::vector<TermId> triggeredIndividuals(const Closure& closure, const Participation& p) {
    std::set<TermId> out;
    switch (p.trigger) {
        case Participation::Trigger::ClassMembership:
            for (FactId id : closure.membersOf(p.triggerTerm))
                out.insert(closure.facts()[id].a);
            break;
        case Participation::Trigger::DataSubject:
            for (FactId id : closure.dataOf(p.triggerTerm))
                out.insert(closure.facts()[id].b);
            break;
        case Participation::Trigger::EdgeSubject:
            for (FactId id : closure.edgesOf(p.triggerTerm))
                out.insert(closure.facts()[id].b);
            break;
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<Clash> checkConsistency(const KnowledgeBase& kb, const Closure& closure,
                                    const CheckOptions& options) {
    std::vector<Clash> clashes;

    auto nameRanks = kb.sortRanks();
    auto byRank = [&nameRanks](TermId a, TermId b) {
        return nameRanks[a.value] < nameRanks[b.value];
    };

    for (const auto& set : kb.disjointClassSets) {
        std::map<TermId, std::vector<std::pair<TermId, FactId>>> byIndividual;
        for (TermId cls : set)
            for (FactId id : closure.membersOf(cls))
                byIndividual[closure.facts()[id].a].emplace_back(cls, id);
        for (auto& [ind, memberships] : byIndividual) {
            std::sort(memberships.begin(), memberships.end());
            memberships.erase(std::unique(memberships.begin(), memberships.end()),
                              memberships.end());
            for (size_t i = 0; i < memberships.size(); ++i)
                for (size_t j = i + 1; j < memberships.size(); ++j) {
                    Clash c;
                    c.kind = Clash::Kind::DisjointClasses;
                    c.individual = ind;
                    c.clsA = memberships[i].first;
                    c.clsB = memberships[j].first;
                    c.culprits = {memberships[i].second, memberships[j].second};
                    if (byRank(c.clsB, c.clsA)) {
                        std::swap(c.clsA, c.clsB);
                        std::swap(c.culprits[0], c.culprits[1]);
                    }
                    clashes.push_back(std::move(c));
                }
        }
    }

    for (const auto& [pa, pb] : kb.disjointDataProperties) {
        for (FactId ida : closure.dataOf(pa))
            for (FactId idb : closure.dataOf(pb)) {
                const Fact& fa = closure.facts()[ida];
                const Fact& fb = closure.facts()[idb];
                if (fa.b != fb.b) continue;
                if (!matches(fa.lit, fb.lit, options.plainLiterals)) continue;
                Clash c;
                c.kind = Clash::Kind::DisjointDataProperties;
                c.individual = fa.b;
                c.propA = pa;
                c.propB = pb;
                c.sharedValue = fa.lit;
                c.culprits = {ida, idb};
                clashes.push_back(std::move(c));
            }
    }

    if (options.uniqueNameAssumption) {
        for (const CardinalityBound& bound : kb.cardinalityBounds) {
            if (!bound.isMax) continue;
            for (FactId memberId : closure.membersOf(bound.cls)) {
                TermId ind = closure.facts()[memberId].a;
                auto objects = closure.distinctObjects(bound.prop, ind);
                if (objects.size() <= bound.bound) continue;
                std::sort(objects.begin(), objects.end(), byRank);
                Clash c;
                c.kind = Clash::Kind::MaxCardinality;
                c.individual = ind;
                c.prop = bound.prop;
                c.limit = bound.bound;
                c.successors = objects;
                for (FactId id : closure.edgesOf(bound.prop))
                    if (closure.facts()[id].b == ind) c.culprits.push_back(id);
                clashes.push_back(std::move(c));
            }
        }
    }

    auto rank = [&nameRanks](TermId t) { return nameRanks[t.value]; };
    auto key = [&rank](const Clash& c) {
        return std::tuple(static_cast<int>(c.kind), rank(c.individual), rank(c.clsA),
                          rank(c.clsB), rank(c.propA), rank(c.propB), rank(c.prop),
                          c.sharedValue);
    };
    std::sort(clashes.begin(), clashes.end(),
              [&](const Clash& a, const Clash& b) { return key(a) < key(b); });
    // overlapping disjointness axioms may report the same conflict twice
    clashes.erase(std::unique(clashes.begin(), clashes.end(),
                              [&](const Clash& a, const Clash& b) {
                                  return key(a) == key(b);
                              }),
                  clashes.end());
    return clashes;
}

std::vector<Lint> lintCompleteness(const KnowledgeBase& kb, const Closure& closure,
                                   const CheckOptions& options) {
    std::vector<Lint> lints;

    for (const Participation& p : kb.participations) {
        for (TermId ind : triggeredIndividuals(closure, p)) {
            bool ok = false;
            for (const ParticipationPattern& pattern : p.anyOf)
                if (patternSatisfied(closure, ind, pattern)) {
                    ok = true;
                    break;
                }
            if (ok) continue;
            Lint lint;
            lint.individual = ind;
            lint.triggerKind = p.trigger;
            lint.triggerTerm = p.triggerTerm;
            lint.required = p.anyOf;
            if (p.anyOf.size() > 1)
                lint.kind = Lint::Kind::AtLeastOneOfUnsatisfied;
            else if (p.anyOf[0].kind == ParticipationPattern::Kind::DataVal)
                lint.kind = Lint::Kind::MissingMandatoryDataProperty;
            else
                lint.kind = Lint::Kind::MissingMandatoryObjectParticipation;
            lints.push_back(std::move(lint));
        }
    }

    for (const CardinalityBound& bound : kb.cardinalityBounds) {
        if (bound.isMax) continue;
        for (FactId memberId : closure.membersOf(bound.cls)) {
            TermId ind = closure.facts()[memberId].a;
            auto objects = closure.distinctObjects(bound.prop, ind);
            if (objects.size() >= bound.bound) continue;
            Lint lint;
            lint.kind = Lint::Kind::ExactCardinalityShortfall;
            lint.individual = ind;
            lint.triggerKind = Participation::Trigger::ClassMembership;
            lint.triggerTerm = bound.cls;
            lint.prop = bound.prop;
            lint.have = static_cast<unsigned>(objects.size());
            lint.need = bound.bound;
            lints.push_back(std::move(lint));
        }
    }

    for (const RangeUnion& ru : kb.rangeUnions) {
        std::set<TermId> flagged;
        for (FactId id : closure.edgesOf(ru.prop)) {
            TermId object = closure.facts()[id].c;
            if (!flagged.insert(object).second) continue;
            bool typed = false;
            for (TermId cls : ru.classes)
                if (closure.isMember(object, cls)) {
                    typed = true;
                    break;
                }
            if (typed) continue;
            Lint lint;
            lint.kind = Lint::Kind::RangeUnionUntyped;
            lint.individual = object;
            lint.triggerKind = Participation::Trigger::EdgeSubject;
            lint.triggerTerm = ru.prop;
            lint.prop = ru.prop;
            for (TermId cls : ru.classes)
                lint.required.push_back({ParticipationPattern::Kind::Member, cls});
            lints.push_back(std::move(lint));
        }
    }

    // optional strictness rule for the 1:1 reading of
    // rappresentazione_particella_ha_intestazione; off by default
    if (options.lintUniqueIntestazione) {
        auto prop = kb.terms.find(
            "http://modeus.uniroma1.it/ontology#rappresentazione_particella_ha_intestazione");
        auto cls =
            kb.terms.find("http://modeus.uniroma1.it/ontology#Rappresentazione_particella");
        if (prop && cls) {
            for (FactId memberId : closure.membersOf(*cls)) {
                TermId ind = closure.facts()[memberId].a;
                auto objects = closure.distinctObjects(*prop, ind);
                if (objects.size() == 1) continue;
                Lint lint;
                lint.kind = Lint::Kind::IntestazioneNotOneToOne;
                lint.individual = ind;
                lint.triggerKind = Participation::Trigger::ClassMembership;
                lint.triggerTerm = *cls;
                lint.prop = *prop;
                lint.have = static_cast<unsigned>(objects.size());
                lint.need = 1;
                lints.push_back(std::move(lint));
            }
        }
    }

    auto ranks = kb.sortRanks();
    auto rank = [&ranks](TermId t) { return ranks[t.value]; };
    auto patternKey = [&](const std::vector<ParticipationPattern>& ps) {
        std::vector<std::pair<int, uint32_t>> key;
        for (const auto& p : ps) key.emplace_back(static_cast<int>(p.kind), rank(p.term));
        return key;
    };
    auto key = [&](const Lint& l) {
        return std::tuple(static_cast<int>(l.kind), rank(l.individual),
                          static_cast<int>(l.triggerKind), rank(l.triggerTerm), rank(l.prop),
                          l.have, l.need, patternKey(l.required));
    };
    std::sort(lints.begin(), lints.end(),
              [&](const Lint& a, const Lint& b) { return key(a) < key(b); });
    lints.erase(std::unique(lints.begin(), lints.end(),
                            [&](const Lint& a, const Lint& b) { return key(a) == key(b); }),
                lints.end());
    return lints;
}

ProofNode explain(const Closure& closure, const Fact& fact) {
    auto id = closure.find(fact);
    if (!id) throw NotEntailed("not entailed");
    ProofNode node;
    node.fact = fact;
    const ProofStep& step = closure.proof(*id);
    node.asserted = step.asserted;
    if (!step.asserted) {
        node.rule = step.rule;
        node.children.push_back(explain(closure, closure.facts()[step.premise]));
    }
    return node;
}

}  // namespace modeus
