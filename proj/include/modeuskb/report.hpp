#ifndef MODEUSKB_REPORT_HPP
#define MODEUSKB_REPORT_HPP

#include <string>
#include <vector>

#include "modeuskb/reasoner.hpp"

namespace modeus {

/// Rendering options for user-facing IRIs.
struct Display {
    PrefixTable prefixes;
    bool fullIris = false;

    std::string iri(const KnowledgeBase& kb, TermId id) const;
    std::string literal(const Literal& lit) const;
};

/// `member(<iri>, <iri>)` / `edge(<p>, <s>, <o>)` / `data(<d>, <s>, "lex"^^<dt>)`.
std::string factLine(const KnowledgeBase& kb, const Fact& fact);

/// Same shapes, but IRIs rendered through a Display (prefixed by default).
std::string factText(const KnowledgeBase& kb, const Fact& fact, const Display& display);

/// One fact per line, sorted lexicographically. Byte-stable across runs.
std::string exportFacts(const Closure& closure);

/// Parse "member(:i, :C)" / "edge(:p, :s, :o)" / "data(:d, :s, lit)" against
/// the KB's prefixes. Throws ParseError on malformed input or unknown names.
Fact parseFactExpression(const std::string& text, const KnowledgeBase& kb);

/// Indented proof rendering; leaves marked ASSERTED, inner nodes show the rule.
std::string renderProof(const KnowledgeBase& kb, const ProofNode& node, const Display& display);

/// {"clashes": [...], "lints": [...], "stats": {...}} with stable key order.
std::string reportJson(const KnowledgeBase& kb, const Closure& closure,
                       const std::vector<Clash>& clashes, const std::vector<Lint>& lints,
                       const Display& display);

std::string lintKindName(Lint::Kind kind);
std::string clashKindName(Clash::Kind kind);

}  // namespace modeus

#endif
