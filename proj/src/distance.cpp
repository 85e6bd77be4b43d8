#include "fuzzylex/distance.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fuzzylex/unicode.hpp"

namespace fuzzylex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool block_matches_at(std::u32string_view text, std::size_t end, const Block& block) {
    if (block.size() > end) return false;
    return text.compare(end - block.size(), block.size(), block) == 0;
}

}  // namespace

DistanceResult block_edit_distance(const CostModel& model, std::u32string_view source,
                                   std::u32string_view target) {
    const std::size_t n = source.size();
    const std::size_t m = target.size();
    const std::size_t width = m + 1;

    std::vector<double> dist((n + 1) * width, kInf);
    // consumed (source, target) lengths of the arc chosen at each cell
    std::vector<std::pair<std::uint16_t, std::uint16_t>> choice((n + 1) * width, {0, 0});
    dist[0] = 0.0;

    const std::vector<Rule>& multi = model.multi_rules();

    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) {
            if (i == 0 && j == 0) continue;
            const std::size_t cell = i * width + j;
            double best = kInf;
            std::pair<std::uint16_t, std::uint16_t> best_choice{0, 0};

            auto consider = [&](std::size_t gl, std::size_t hl, double arc_cost) {
                const double cand = dist[(i - gl) * width + (j - hl)] + arc_cost;
                if (cand < best) {
                    best = cand;
                    best_choice = {static_cast<std::uint16_t>(gl), static_cast<std::uint16_t>(hl)};
                }
            };

            // Candidates in tie-break preference order: block rules (longest
            // first), then substitution, deletion, insertion.
            for (const Rule& rule : multi) {
                if (!block_matches_at(source, i, rule.left)) continue;
                if (!block_matches_at(target, j, rule.right)) continue;
                consider(rule.left.size(), rule.right.size(), rule.cost);
            }
            if (i > 0 && j > 0)
                consider(1, 1, model.symbol_arc_cost(source[i - 1], target[j - 1]));
            if (i > 0) consider(1, 0, model.symbol_arc_cost(source[i - 1], kNoSymbol));
            if (j > 0) consider(0, 1, model.symbol_arc_cost(kNoSymbol, target[j - 1]));

            dist[cell] = best;
            choice[cell] = best_choice;
        }
    }

    DistanceResult result;
    std::size_t i = n, j = m;
    while (i != 0 || j != 0) {
        const auto [gl, hl] = choice[i * width + j];
        TraceSegment seg;
        seg.source = Block(source.substr(i - gl, gl));
        seg.target = Block(target.substr(j - hl, hl));
        seg.cost = *model.arc_cost(seg.source, seg.target);
        result.trace.segments.push_back(std::move(seg));
        i -= gl;
        j -= hl;
    }
    std::reverse(result.trace.segments.begin(), result.trace.segments.end());
    for (const TraceSegment& seg : result.trace.segments) result.trace.total += seg.cost;
    result.value = result.trace.total;
    return result;
}

DistanceResult block_edit_distance(const CostModel& model, std::string_view source_utf8,
                                   std::string_view target_utf8) {
    return block_edit_distance(model, decode_utf8(source_utf8), decode_utf8(target_utf8));
}

namespace {

// Depth-first walk over every paired segmentation. No memoization, no
// pruning: this is the reference the DP is checked against.
struct ExhaustiveWalker {
    const CostModel& model;
    std::u32string_view source;
    std::u32string_view target;

    double best = kInf;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> path;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> best_path;

    void step(std::size_t i, std::size_t j, std::size_t gl, std::size_t hl, double arc_cost,
              double acc) {
        path.push_back({static_cast<std::uint16_t>(gl), static_cast<std::uint16_t>(hl)});
        walk(i + gl, j + hl, acc + arc_cost);
        path.pop_back();
    }

    void walk(std::size_t i, std::size_t j, double acc) {
        if (i == source.size() && j == target.size()) {
            if (acc < best) {
                best = acc;
                best_path = path;
            }
            return;
        }
        if (i < source.size())
            step(i, j, 1, 0, model.symbol_arc_cost(source[i], kNoSymbol), acc);
        if (j < target.size())
            step(i, j, 0, 1, model.symbol_arc_cost(kNoSymbol, target[j]), acc);
        if (i < source.size() && j < target.size())
            step(i, j, 1, 1, model.symbol_arc_cost(source[i], target[j]), acc);
        for (const Rule& rule : model.multi_rules()) {
            if (source.compare(i, rule.left.size(), rule.left) != 0) continue;
            if (target.compare(j, rule.right.size(), rule.right) != 0) continue;
            step(i, j, rule.left.size(), rule.right.size(), rule.cost, acc);
        }
    }
};

}  // namespace

DistanceResult exhaustive_distance(const CostModel& model, std::u32string_view source,
                                   std::u32string_view target) {
    if (source.size() + target.size() > kMaxExhaustive)
        throw std::length_error("exhaustive_distance: combined input length exceeds " +
                                std::to_string(kMaxExhaustive));

    ExhaustiveWalker walker{model, source, target};
    walker.walk(0, 0, 0.0);

    DistanceResult result;
    std::size_t i = 0, j = 0;
    for (const auto& [gl, hl] : walker.best_path) {
        TraceSegment seg;
        seg.source = Block(source.substr(i, gl));
        seg.target = Block(target.substr(j, hl));
        seg.cost = *model.arc_cost(seg.source, seg.target);
        result.trace.segments.push_back(std::move(seg));
        i += gl;
        j += hl;
    }
    for (const TraceSegment& seg : result.trace.segments) result.trace.total += seg.cost;
    result.value = result.trace.total;
    return result;
}

int levenshtein_distance(std::u32string_view a, std::u32string_view b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<int> prev(m + 1), curr(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            const int subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, subst});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

int levenshtein_distance(std::string_view a_utf8, std::string_view b_utf8) {
    return levenshtein_distance(decode_utf8(a_utf8), decode_utf8(b_utf8));
}

}  // namespace fuzzylex
