#ifndef UGLR_PHASES_HPP
#define UGLR_PHASES_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uglr/parser.hpp"
#include "uglr/tables.hpp"
#include "uglr/term.hpp"

namespace uglr {

/// One fully constrained reading of a phase-1 skeleton: a source rule or
/// lexical entry chosen per node, with all unifications applied.
struct AnalysisNode {
    using Ptr = std::shared_ptr<const AnalysisNode>;
    Term phrase;
    std::optional<Term> sem;  // phase 3; absent when a rule on the path has no sem
    std::size_t source = 0;   // index into Grammar::rules (Apply/Gap) or lexicon (Leaf)
    const PhaseOneNode* from = nullptr;
    std::vector<Ptr> children;
};

struct Analysis {
    PhaseOneNode::Ptr skeleton;  // keeps `from` pointers alive
    AnalysisNode::Ptr root;
};

/// All source choices for the skeleton that satisfy every rule's full
/// constraints. Phase 3 additionally threads the sem slots.
std::vector<Analysis> phase_two(const ParseTables& t, const PhaseOneNode::Ptr& tree);
std::vector<Analysis> phase_three(const ParseTables& t, const PhaseOneNode::Ptr& tree);

/// Collapses analyses whose root phrase (and sem) are equal up to
/// variable renaming.
void dedupe_analyses(std::vector<Analysis>& as);

std::string analysis_tree_to_string(const ParseTables& t, const Analysis& a);

}  // namespace uglr

#endif
