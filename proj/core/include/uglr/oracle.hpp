#ifndef UGLR_ORACLE_HPP
#define UGLR_ORACLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "uglr/parser.hpp"
#include "uglr/tables.hpp"

namespace uglr {

struct OracleOptions {
    std::size_t node_budget = 0;  // per-tree cap; 0 = 4 * max(1, #words)
};

struct OracleResult {
    std::vector<PhaseOneNode::Ptr> trees;  // every backbone skeleton within budget
    bool possibly_incomplete = false;      // some expansion hit the node budget
};

/// Exhaustive context-free skeleton enumerator over the backbone, by
/// recursive descent on spans. Knows nothing about the LR tables, so it
/// cross-checks the whole phase-1 machinery; validate skeletons with
/// phase_two to get the reference answer.
OracleResult oracle_parse(const ParseTables& t, const std::vector<std::string>& words,
                          const OracleOptions& opts = {});

}  // namespace uglr

#endif
