#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fuzzylex {

using Symbol = char32_t;
using Block = std::u32string;  // a contiguous run of symbols; empty = the neutral block

// Sentinel standing for "no symbol" (the empty side of a single-symbol arc).
// One past the last Unicode scalar value, so it never collides with real text.
inline constexpr Symbol kNoSymbol = 0x110000;

// One confusion rule: replacing `left` by `right` (or vice versa, the table
// is symmetric) costs `cost` instead of the per-symbol default.
struct Rule {
    Block left;
    Block right;
    double cost = 0.0;

    bool operator==(const Rule&) const = default;
};

enum class CostIssueKind {
    MalformedLine,     // wrong field count, unparsable cost
    AxiomViolation,    // cost out of bounds, identity pair rules
    ConflictingCosts,  // same block pair listed twice with different costs
    EmptyPair,         // both sides empty
};

struct CostIssue {
    CostIssueKind kind;
    int line = 0;  // 1-based line in the rule file, 0 for programmatic rules
    std::string message;
};

class CostModelError : public std::runtime_error {
public:
    explicit CostModelError(CostIssue issue);
    const CostIssue& issue() const { return issue_; }

private:
    CostIssue issue_;
};

// Validated, immutable cost table. Stores corpus-specific confusion rules plus
// the alphabet they mention; the implicit arcs (exact match at 0, single-symbol
// insert/delete/substitute at 1) are answered without being stored.
//
// Validation enforces, per rule:
//   - at least one side non-empty
//   - identical sides only for single symbols, and then only at cost 0
//     (such lines are accepted and dropped; the identity arc is implicit)
//   - distinct sides cost strictly more than 0
//   - cost strictly below max(|left|, |right|), i.e. a rule must beat the
//     mechanical symbol-by-symbol replacement it stands in for
//   - no pair listed twice with different costs (mirrored or not)
//
// Only one orientation of a rule needs to be given; the mirror is implied.
class CostModel {
public:
    CostModel() = default;

    // Validates and indexes `rules`. Throws CostModelError on the first bad rule.
    static CostModel from_rules(std::vector<Rule> rules);

    // Cost of the edit arc (left, right): 0 for a single-symbol identity,
    // the stored cost for a rule pair, 1 for any other pair of blocks no
    // longer than one symbol each. nullopt when the pair is not an arc at
    // all (an unlisted pair with a side longer than one symbol, or both
    // sides empty).
    std::optional<double> arc_cost(const Block& left, const Block& right) const;

    // Same contract restricted to sides of length <= 1; kNoSymbol encodes an
    // empty side. Must not be called with both sides empty.
    double symbol_arc_cost(Symbol a, Symbol b) const;

    // Every admissible arc over the current alphabet: all single-symbol pairs
    // (identity, substitution, insert, delete) at their effective cost, plus
    // both orientations of every multi-symbol rule.
    std::vector<Rule> all_arcs() const;

    // Oriented rules with a side longer than one symbol. Both orientations count.
    std::size_t multi_rule_count() const { return multi_oriented_.size(); }

    // Smallest non-zero arc cost in the model (at most the default cost 1).
    double min_nonzero_cost() const { return min_nonzero_cost_; }

    const std::set<Symbol>& alphabet() const { return alphabet_; }

    // Copy of the model whose alphabet additionally covers `symbols`.
    // Rule tables and costs are unchanged.
    CostModel with_symbols(const std::set<Symbol>& symbols) const;

    // Stored rules, one canonical orientation each, sorted. Empty for a model
    // with no confusion table.
    const std::vector<Rule>& rules() const { return rules_; }

    // Both orientations of the multi-symbol rules, longest blocks first.
    const std::vector<Rule>& multi_rules() const { return multi_oriented_; }

    // Multi-symbol rules whose left side starts with `first`, and those whose
    // left side is empty. Buckets for the searcher's arc probing.
    std::span<const Rule> multi_rules_starting(Symbol first) const;
    std::span<const Rule> multi_rules_left_empty() const { return multi_left_empty_; }

    bool operator==(const CostModel& other) const;

private:
    friend CostModel parse_cost_model(std::string_view);
    void index_rules();               // builds the lookup tables from rules_
    static std::uint64_t pair_key(Symbol a, Symbol b);

    std::set<Symbol> alphabet_;
    std::vector<Rule> rules_;          // canonical orientation, sorted by (left, right)
    std::vector<Rule> multi_oriented_; // both orientations, longest first
    std::vector<Rule> multi_left_empty_;
    std::unordered_map<Symbol, std::vector<Rule>> multi_by_first_;
    std::map<std::pair<Block, Block>, double> multi_lookup_;
    std::unordered_map<std::uint64_t, double> single_;  // both orientations
    double min_nonzero_cost_ = 1.0;
};

// Rule file format, UTF-8, one rule per line:
//   left<TAB>right<TAB>cost
// An empty field or a lone `_` is the empty block; a literal underscore is
// written `\_`. Lines starting with `#` and blank lines are ignored. Costs
// use `.` as the decimal separator.
CostModel parse_cost_model(std::string_view text);

// Non-throwing variant for linting: reports every issue found. `model` is
// set only when there are no issues.
struct CostFileReport {
    std::vector<CostIssue> issues;
    std::optional<CostModel> model;
    int rule_lines = 0;  // non-comment, non-blank lines seen
};
CostFileReport inspect_cost_model(std::string_view text);

// Writes the model back in the rule file format; parsing the output yields
// an equal model. Costs are emitted with round-trip precision.
std::string serialize_cost_model(const CostModel& model);

}  // namespace fuzzylex
