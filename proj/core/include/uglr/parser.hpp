#ifndef UGLR_PARSER_HPP
#define UGLR_PARSER_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "uglr/tables.hpp"
#include "uglr/term.hpp"

namespace uglr {

/// Phase-1 parse tree over the generalized backbone. `phrase` is the
/// instantiated phrase built by the unification filter; the full source
/// constraints are only applied in phase 2.
struct PhaseOneNode {
    using Ptr = std::shared_ptr<const PhaseOneNode>;
    enum class Kind { Leaf, Apply, Gap };

    Kind kind = Kind::Leaf;
    Term phrase;

    std::string word;         // Leaf
    std::size_t lexeme = 0;   // Leaf: index into ParseTables::lexemes

    int rule = -1;            // Apply and Gap: CF rule id
    std::vector<Ptr> children;

    std::string tag;          // Gap: which gap list supplied the filler
};

/// Structural equality on the context-free skeleton, ignoring the
/// phase-1 instantiations.
bool same_skeleton(const PhaseOneNode::Ptr& a, const PhaseOneNode::Ptr& b);

enum class BackCheckMode { Off, Gaps, All };

struct ParseOptions {
    std::size_t max_solutions = 0;  // 0 = find every parse
    std::size_t max_steps = 1'000'000;
    BackCheckMode back_check = BackCheckMode::Gaps;
    bool intersect_lookaheads = true;  // thread reduce lookahead meets forward
    bool use_full_ug = false;  // branch per source rule instead of the generalization
    bool pure_cf = false;      // context-free skeleton only, no unification
};

struct ParseStats {
    std::size_t steps = 0;
    std::size_t backtracks = 0;
    std::size_t filter_hits = 0;  // phase-1 unification rejections
    std::size_t gap_pushes = 0;
    std::size_t gap_pops = 0;
};

struct PhaseOneResult {
    std::vector<PhaseOneNode::Ptr> trees;
    ParseStats stats;
    bool hit_step_limit = false;
};

std::vector<std::string> split_words(const std::string& sentence);

/// Lexeme candidates per position. Throws UnknownWordError for a word
/// with no lexical entry.
std::vector<std::vector<std::size_t>> lex_all(const ParseTables& t,
                                              const std::vector<std::string>& words);

PhaseOneResult parse_phase1(const ParseTables& t, const std::vector<std::string>& words,
                            const ParseOptions& opts = {});

std::string phase1_tree_to_string(const ParseTables& t, const PhaseOneNode::Ptr& n);

}  // namespace uglr

#endif
