#include "fuzzylex/approx_search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "fuzzylex/unicode.hpp"

namespace fuzzylex {

namespace {

struct QueueItem {
    double delta;
    std::uint32_t pos;
    NodeId node;
};

// Min-heap on cost; position/node break ties for a deterministic pop order.
struct QueueOrder {
    bool operator()(const QueueItem& a, const QueueItem& b) const {
        if (a.delta != b.delta) return a.delta > b.delta;
        if (a.pos != b.pos) return a.pos > b.pos;
        return a.node > b.node;
    }
};

std::uint64_t state_key(std::uint32_t pos, NodeId node) {
    return (static_cast<std::uint64_t>(pos) << 32) | node;
}

}  // namespace

double worst_case_factor(double mean_branching, double threshold, double min_nonzero_cost,
                         std::size_t alphabet_size, std::size_t multi_rule_count) {
    const double arc_shapes =
        static_cast<double>((alphabet_size + 1) * (alphabet_size + 1) + multi_rule_count) - 1.0;
    return std::pow(mean_branching, threshold / min_nonzero_cost) * arc_shapes;
}

SearchResult approx_search(const LexTrie& trie, const CostModel& model,
                           std::u32string_view query, double threshold) {
    if (query.empty()) throw std::invalid_argument("approx_search: query must not be empty");
    if (!(threshold > 0.0))
        throw std::invalid_argument("approx_search: threshold must be positive");

    const auto n = static_cast<std::uint32_t>(query.size());

    SearchResult result;
    SearchDiagnostics& diag = result.diagnostics;

    std::unordered_map<std::uint64_t, double> best;
    std::priority_queue<QueueItem, std::vector<QueueItem>, QueueOrder> open;
    best.emplace(state_key(0, trie.root()), 0.0);
    open.push({0.0, 0, trie.root()});

    std::vector<std::pair<NodeId, double>> hits;

    auto offer = [&](double base, std::uint32_t pos, NodeId node, double arc_cost) {
        const double delta = base + arc_cost;
        if (!(delta < threshold)) return;  // strict threshold
        const std::uint64_t key = state_key(pos, node);
        auto [it, inserted] = best.emplace(key, delta);
        if (!inserted) {
            if (!(delta < it->second)) {
                ++diag.states_dominated;
                return;
            }
            it->second = delta;
        }
        open.push({delta, pos, node});
    };

    while (!open.empty()) {
        const QueueItem item = open.top();
        open.pop();
        if (item.delta > best[state_key(item.pos, item.node)]) continue;  // superseded
        ++diag.states_expanded;

        // Settled at minimal cost; a complete final state is a match.
        if (item.pos == n && trie.is_final(item.node)) hits.push_back({item.node, item.delta});

        const bool has_query_symbol = item.pos < n;
        const Symbol qs = has_query_symbol ? query[item.pos] : kNoSymbol;

        if (has_query_symbol) {
            ++diag.arcs_considered;
            offer(item.delta, item.pos + 1, item.node, model.symbol_arc_cost(qs, kNoSymbol));
        }
        for (const TrieArc& arc : trie.arcs(item.node)) {
            ++diag.arcs_considered;
            offer(item.delta, item.pos, arc.child, model.symbol_arc_cost(kNoSymbol, arc.symbol));
            if (has_query_symbol) {
                ++diag.arcs_considered;
                offer(item.delta, item.pos + 1, arc.child, model.symbol_arc_cost(qs, arc.symbol));
            }
        }
        if (has_query_symbol) {
            for (const Rule& rule : model.multi_rules_starting(qs)) {
                ++diag.arcs_considered;
                if (query.compare(item.pos, rule.left.size(), rule.left) != 0) continue;
                const NodeId reached = trie.follow(item.node, rule.right);
                if (reached == kNoNode) continue;
                offer(item.delta, item.pos + static_cast<std::uint32_t>(rule.left.size()), reached,
                      rule.cost);
            }
        }
        for (const Rule& rule : model.multi_rules_left_empty()) {
            ++diag.arcs_considered;
            const NodeId reached = trie.follow(item.node, rule.right);
            if (reached == kNoNode) continue;
            offer(item.delta, item.pos, reached, rule.cost);
        }
    }

    result.matches.reserve(hits.size());
    for (const auto& [node, delta] : hits) {
        MatchResult match;
        match.word = encode_utf8(trie.encoded_string(node));
        match.raw_cost = delta;
        match.normalized_cost = delta / static_cast<double>(n);
        result.matches.push_back(std::move(match));
    }
    std::sort(result.matches.begin(), result.matches.end(),
              [](const MatchResult& a, const MatchResult& b) {
                  if (a.normalized_cost != b.normalized_cost)
                      return a.normalized_cost < b.normalized_cost;
                  return a.word < b.word;
              });

    std::set<Symbol> sigma = model.alphabet();
    sigma.insert(trie.symbols().begin(), trie.symbols().end());
    sigma.insert(query.begin(), query.end());
    diag.worst_case_factor =
        worst_case_factor(trie.branching_stats().mean, threshold, model.min_nonzero_cost(),
                          sigma.size(), model.multi_rule_count());
    return result;
}

SearchResult approx_search(const LexTrie& trie, const CostModel& model,
                           std::string_view query_utf8, double threshold) {
    return approx_search(trie, model, decode_utf8(query_utf8), threshold);
}

}  // namespace fuzzylex
