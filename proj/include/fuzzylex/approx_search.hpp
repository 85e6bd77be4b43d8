#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylex/cost_model.hpp"
#include "fuzzylex/lexicon_trie.hpp"

namespace fuzzylex {

struct MatchResult {
    std::string word;             // UTF-8 dictionary entry
    double raw_cost = 0.0;        // accumulated arc cost to the word
    double normalized_cost = 0.0; // raw_cost / query length in symbols
};

struct SearchDiagnostics {
    std::size_t states_expanded = 0;   // (position, node) states settled
    std::size_t states_dominated = 0;  // successors rejected by an existing cheaper state
    std::size_t arcs_considered = 0;   // candidate arcs probed across all expansions
    double worst_case_factor = 0.0;    // see worst_case_factor() below
};

struct SearchResult {
    // Sorted by (normalized_cost, word); every entry's raw cost is strictly
    // below the threshold.
    std::vector<MatchResult> matches;
    SearchDiagnostics diagnostics;
};

// Finds every dictionary word whose adapted distance to `query` is strictly
// below `threshold`, without computing the distance to each word separately.
//
// Lowest-cost-first expansion over states (query position, trie node,
// accumulated cost). A state advances by any admissible arc (left, right):
// `left` must match the query at the current position, `right` must extend
// the current trie path. Block rules are applied from the position where
// their left side starts, so a cheap multi-symbol rule is never lost to
// per-symbol pruning of its prefix. At most one state per (position, node)
// pair is kept, replaced only on strict cost improvement; expansion requires
// cost + arc < threshold, so words at exactly the threshold are excluded.
//
// Throws std::invalid_argument on an empty query or a non-positive threshold.
SearchResult approx_search(const LexTrie& trie, const CostModel& model,
                           std::u32string_view query, double threshold);
SearchResult approx_search(const LexTrie& trie, const CostModel& model,
                           std::string_view query_utf8, double threshold);

// Upper-bound blow-up estimate for a pruned search: how many useless arcs a
// path can carry before pruning (threshold / cheapest arc) exponentiates the
// branching rate, times the number of admissible arc shapes.
double worst_case_factor(double mean_branching, double threshold, double min_nonzero_cost,
                         std::size_t alphabet_size, std::size_t multi_rule_count);

}  // namespace fuzzylex
