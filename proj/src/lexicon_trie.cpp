#include "fuzzylex/lexicon_trie.hpp"

#include <algorithm>

#include "fuzzylex/unicode.hpp"

namespace fuzzylex {

LexTrie::LexTrie() {
    nodes_.emplace_back();
    finalize();
}

LexTrie LexTrie::build(const std::vector<std::string>& utf8_words) {
    std::vector<std::u32string> words;
    words.reserve(utf8_words.size());
    for (const std::string& w : utf8_words) words.push_back(decode_utf8(w));
    return build(words);
}

LexTrie LexTrie::build(const std::vector<std::u32string>& words) {
    LexTrie trie;
    for (const std::u32string& word : words) {
        NodeId node = trie.root();
        for (Symbol s : word) {
            NodeId next = trie.child(node, s);
            if (next == kNoNode) next = trie.insert_child(node, s);
            node = next;
        }
        if (!trie.nodes_[node].final) {
            trie.nodes_[node].final = true;
            ++trie.word_count_;
        }
    }
    trie.finalize();
    return trie;
}

NodeId LexTrie::insert_child(NodeId node, Symbol symbol) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{{}, node, symbol, false});
    auto& arcs = nodes_[node].arcs;
    auto it = std::lower_bound(arcs.begin(), arcs.end(), symbol,
                               [](const TrieArc& a, Symbol s) { return a.symbol < s; });
    arcs.insert(it, TrieArc{symbol, id});
    symbols_.insert(symbol);
    return id;
}

NodeId LexTrie::child(NodeId node, Symbol symbol) const {
    const auto& arcs = nodes_[node].arcs;
    auto it = std::lower_bound(arcs.begin(), arcs.end(), symbol,
                               [](const TrieArc& a, Symbol s) { return a.symbol < s; });
    if (it != arcs.end() && it->symbol == symbol) return it->child;
    return kNoNode;
}

NodeId LexTrie::follow(NodeId from, std::u32string_view block) const {
    NodeId node = from;
    for (Symbol s : block) {
        node = child(node, s);
        if (node == kNoNode) return kNoNode;
    }
    return node;
}

std::u32string LexTrie::encoded_string(NodeId node) const {
    std::u32string out;
    while (node != 0) {
        out.push_back(nodes_[node].via);
        node = nodes_[node].parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

LookupResult LexTrie::exact_search(std::u32string_view word) const {
    LookupResult result;
    NodeId node = root();
    for (Symbol s : word) {
        NodeId next = child(node, s);
        if (next == kNoNode) {
            result.outcome = LookupOutcome::NoPath;
            return result;
        }
        ++result.arcs_visited;
        node = next;
    }
    result.found = is_final(node);
    result.outcome = result.found ? LookupOutcome::Found : LookupOutcome::PrefixOnly;
    return result;
}

LookupResult LexTrie::exact_search(std::string_view utf8_word) const {
    return exact_search(decode_utf8(utf8_word));
}

void LexTrie::finalize() {
    std::size_t total_arcs = 0;
    std::size_t max_arcs = 0;
    for (const Node& node : nodes_) {
        total_arcs += node.arcs.size();
        max_arcs = std::max(max_arcs, node.arcs.size());
    }
    stats_.node_count = nodes_.size();
    stats_.max = max_arcs;
    stats_.mean = static_cast<double>(total_arcs) / static_cast<double>(nodes_.size());
}

}  // namespace fuzzylex
