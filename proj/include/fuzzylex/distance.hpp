#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylex/cost_model.hpp"

namespace fuzzylex {

struct TraceSegment {
    Block source;
    Block target;
    double cost = 0.0;
};

// Witness of a distance value: paired segmentations of the two strings, one
// admissible arc per segment. Concatenating the source (target) sides restores
// the source (target) string; `total` is the sum of segment costs.
struct AlignmentTrace {
    std::vector<TraceSegment> segments;
    double total = 0.0;
};

struct DistanceResult {
    double value = 0.0;
    AlignmentTrace trace;
};

// Minimum total arc cost over all paired segmentations of (source, target),
// computed by dynamic programming over prefix pairs. Symmetric; zero exactly
// when the strings are equal; never above the unit-cost edit distance.
DistanceResult block_edit_distance(const CostModel& model, std::u32string_view source,
                                   std::u32string_view target);
DistanceResult block_edit_distance(const CostModel& model, std::string_view source_utf8,
                                   std::string_view target_utf8);

// Reference implementation: walks every paired segmentation and takes the
// true minimum. Exponential; guarded to |source| + |target| <= kMaxExhaustive
// (throws std::length_error beyond it).
inline constexpr std::size_t kMaxExhaustive = 8;
DistanceResult exhaustive_distance(const CostModel& model, std::u32string_view source,
                                   std::u32string_view target);

// Unit-cost insert/delete/substitute edit distance.
int levenshtein_distance(std::u32string_view a, std::u32string_view b);
int levenshtein_distance(std::string_view a_utf8, std::string_view b_utf8);

}  // namespace fuzzylex
