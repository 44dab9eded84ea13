#ifndef MODEUSKB_AST_HPP
#define MODEUSKB_AST_HPP

#include <string>
#include <utility>
#include <vector>

#include "modeuskb/term.hpp"

namespace modeus {

enum class EntityKind { OntologyClass, ObjectProperty, DataProperty, NamedIndividual };

/// A named object property or its inverse. Inverses never nest.
struct PropertyExpression {
    Iri iri;
    bool inverse = false;

    bool operator==(const PropertyExpression&) const = default;
};

/// The class-expression forms used by the corpus grammar subset.
struct ClassExpression {
    enum class Kind {
        Named,
        Thing,
        Union,
        Intersection,
        SomeValues,      // ObjectSomeValuesFrom(prop filler)
        DataSomeValues,  // DataSomeValuesFrom(dataProperty range)
        MinCard,
        MaxCard,
    };

    Kind kind = Kind::Named;
    Iri iri;                  // Named: the class; DataSomeValues: the data property
    Iri dataRange;            // DataSomeValues range keyword (rdfs:Literal in the corpus)
    PropertyExpression prop;  // SomeValues / MinCard / MaxCard
    unsigned cardinality = 0;
    std::vector<ClassExpression> operands;  // Union/Intersection members; SomeValues filler at [0]

    bool operator==(const ClassExpression&) const = default;

    static ClassExpression named(Iri iri) {
        ClassExpression ce;
        ce.iri = std::move(iri);
        return ce;
    }
};

enum class AxiomKind {
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    SubObjectPropertyOf,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SubDataPropertyOf,
    EquivalentDataProperties,
    DisjointDataProperties,
    DataPropertyDomain,
    ClassAssertion,
    ObjectPropertyAssertion,
    DataPropertyAssertion,
};

/// One parsed axiom. Field use by kind:
///   Declaration              entity, iris[0]
///   SubClassOf               classes[0] sub, classes[1] sup
///   EquivalentClasses        classes (n-ary)
///   DisjointClasses          classes (n-ary)
///   SubObjectPropertyOf      subProp, superProp
///   ObjectPropertyDomain     property, classes[0]
///   ObjectPropertyRange      property, classes[0]
///   SubDataPropertyOf        iris[0] sub, iris[1] sup
///   EquivalentDataProperties iris (n-ary)
///   DisjointDataProperties   iris (n-ary)
///   DataPropertyDomain       property, classes[0]
///   ClassAssertion           classes[0], iris[0] individual
///   ObjectPropertyAssertion  property, iris[0] subject, iris[1] object
///   DataPropertyAssertion    property, iris[0] subject, value
struct Axiom {
    AxiomKind kind = AxiomKind::Declaration;
    EntityKind entity = EntityKind::OntologyClass;
    std::vector<ClassExpression> classes;
    PropertyExpression subProp, superProp;
    Iri property;
    std::vector<Iri> iris;
    Literal value;
    Location loc;  // not part of equality

    bool operator==(const Axiom& other) const {
        return kind == other.kind && entity == other.entity && classes == other.classes &&
               subProp == other.subProp && superProp == other.superProp &&
               property == other.property && iris == other.iris && value == other.value;
    }
};

/// A parsed ontology document. Axiom order and the prefix table are
/// preserved from the source so serialization is deterministic.
struct Ontology {
    Iri iri;
    std::vector<std::pair<std::string, std::string>> prefixes;  // label -> namespace
    std::vector<Axiom> axioms;

    bool operator==(const Ontology& other) const {
        return iri == other.iri && prefixes == other.prefixes && axioms == other.axioms;
    }
};

}  // namespace modeus

#endif
