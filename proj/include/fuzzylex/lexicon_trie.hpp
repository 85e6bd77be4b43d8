#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylex/cost_model.hpp"

namespace fuzzylex {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TrieArc {
    Symbol symbol;
    NodeId child;
};

enum class LookupOutcome {
    Found,       // reached a final node
    PrefixOnly,  // whole word consumed but the node is not final
    NoPath,      // fell off the tree before consuming the word
};

struct LookupResult {
    bool found = false;
    LookupOutcome outcome = LookupOutcome::NoPath;
    std::size_t arcs_visited = 0;
};

struct BranchingStats {
    double mean = 0.0;        // outgoing arcs per node, averaged over all nodes
    std::size_t max = 0;
    std::size_t node_count = 1;
};

// Immutable prefix tree over a dictionary. Every node is reachable from the
// root by exactly one path; final nodes mark complete words. Read-only after
// build, safe to share across threads.
class LexTrie {
public:
    LexTrie();  // root only, no words

    static LexTrie build(const std::vector<std::string>& utf8_words);
    static LexTrie build(const std::vector<std::u32string>& words);

    NodeId root() const { return 0; }
    std::size_t word_count() const { return word_count_; }
    std::size_t node_count() const { return nodes_.size(); }

    bool is_final(NodeId node) const { return nodes_[node].final; }

    // Outgoing arcs, sorted by symbol.
    std::span<const TrieArc> arcs(NodeId node) const { return nodes_[node].arcs; }

    NodeId child(NodeId node, Symbol symbol) const;

    // Walks the symbols of `block` one arc at a time starting at `from`;
    // kNoNode if any arc is missing. The empty block stays put.
    NodeId follow(NodeId from, std::u32string_view block) const;

    // The unique root-to-node symbol sequence.
    std::u32string encoded_string(NodeId node) const;

    LookupResult exact_search(std::u32string_view word) const;
    LookupResult exact_search(std::string_view utf8_word) const;

    const BranchingStats& branching_stats() const { return stats_; }

    // Every symbol appearing on an arc.
    const std::set<Symbol>& symbols() const { return symbols_; }

private:
    struct Node {
        std::vector<TrieArc> arcs;  // sorted by symbol
        NodeId parent = kNoNode;
        Symbol via = 0;
        bool final = false;
    };

    NodeId insert_child(NodeId node, Symbol symbol);
    void finalize();

    std::vector<Node> nodes_;
    std::set<Symbol> symbols_;
    std::size_t word_count_ = 0;
    BranchingStats stats_;
};

}  // namespace fuzzylex
