#include "fuzzylex/cost_model.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>

#include "fuzzylex/unicode.hpp"

namespace fuzzylex {

namespace {

const char* kind_name(CostIssueKind kind) {
    switch (kind) {
        case CostIssueKind::MalformedLine: return "malformed line";
        case CostIssueKind::AxiomViolation: return "axiom violation";
        case CostIssueKind::ConflictingCosts: return "conflicting costs";
        case CostIssueKind::EmptyPair: return "empty pair";
    }
    return "error";
}

std::string issue_text(const CostIssue& issue) {
    std::string s = kind_name(issue.kind);
    if (issue.line > 0) s += " at line " + std::to_string(issue.line);
    s += ": " + issue.message;
    return s;
}

std::pair<Block, Block> canonical(const Block& a, const Block& b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Shared validation for file-parsed and programmatic rules.
struct ValidationState {
    std::vector<CostIssue> issues;
    std::map<std::pair<Block, Block>, double> seen;
    std::vector<Rule> accepted;  // canonical orientation
    std::set<Symbol> alphabet;

    void fail(CostIssueKind kind, int line, std::string message) {
        issues.push_back({kind, line, std::move(message)});
    }

    void add_rule(Rule rule, int line) {
        alphabet.insert(rule.left.begin(), rule.left.end());
        alphabet.insert(rule.right.begin(), rule.right.end());

        if (rule.left.empty() && rule.right.empty()) {
            fail(CostIssueKind::EmptyPair, line, "both blocks are empty");
            return;
        }
        const std::size_t longest = std::max(rule.left.size(), rule.right.size());
        if (rule.left == rule.right) {
            if (longest > 1) {
                fail(CostIssueKind::AxiomViolation, line,
                     "identical multi-symbol blocks carry no information");
                return;
            }
            if (rule.cost != 0.0) {
                fail(CostIssueKind::AxiomViolation, line,
                     "an identity pair must cost 0");
                return;
            }
            return;  // implicit identity arc, nothing to store
        }
        if (!(rule.cost > 0.0)) {
            fail(CostIssueKind::AxiomViolation, line,
                 "cost must be positive for distinct blocks");
            return;
        }
        if (!(rule.cost < static_cast<double>(longest))) {
            fail(CostIssueKind::AxiomViolation, line,
                 "cost must be below max(|left|, |right|) = " + std::to_string(longest));
            return;
        }

        auto key = canonical(rule.left, rule.right);
        auto [it, inserted] = seen.emplace(key, rule.cost);
        if (!inserted) {
            if (it->second != rule.cost) {
                fail(CostIssueKind::ConflictingCosts, line,
                     "pair already listed with a different cost");
            }
            return;  // exact duplicate, idempotent
        }
        accepted.push_back({key.first, key.second, rule.cost});
    }

    CostModel build() && {
        CostModel model;
        std::sort(accepted.begin(), accepted.end(), [](const Rule& a, const Rule& b) {
            return std::tie(a.left, a.right) < std::tie(b.left, b.right);
        });
        model = CostModel::from_rules(std::move(accepted));
        // from_rules re-derives the alphabet from stored rules only; dropped
        // identity lines still contribute their symbol.
        return model.with_symbols(alphabet);
    }
};

// Raw "_" or an empty field is the empty block; "\_" escapes a literal underscore.
Block decode_field(std::string_view raw) {
    if (raw.empty() || raw == "_") return {};
    std::string bytes;
    bytes.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size() && raw[i + 1] == '_') {
            bytes.push_back('_');
            ++i;
        } else {
            bytes.push_back(raw[i]);
        }
    }
    return decode_utf8(bytes);
}

std::string encode_field(const Block& block) {
    if (block.empty()) return "_";
    std::string out;
    for (Symbol s : block) {
        if (s == U'_') out += "\\_";
        else out += encode_utf8(s);
    }
    return out;
}

}  // namespace

CostModelError::CostModelError(CostIssue issue)
    : std::runtime_error(issue_text(issue)), issue_(std::move(issue)) {}

std::uint64_t CostModel::pair_key(Symbol a, Symbol b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

CostModel CostModel::from_rules(std::vector<Rule> rules) {
    // Rules may arrive unvalidated (programmatic use); run the same checks
    // as the file parser, without line numbers.
    ValidationState state;
    for (const Rule& r : rules) {
        std::size_t before = state.issues.size();
        state.add_rule(r, 0);
        if (state.issues.size() > before)
            throw CostModelError(state.issues.back());
    }

    CostModel model;
    model.alphabet_ = std::move(state.alphabet);
    model.rules_ = std::move(state.accepted);
    std::sort(model.rules_.begin(), model.rules_.end(), [](const Rule& a, const Rule& b) {
        return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });
    model.index_rules();
    return model;
}

void CostModel::index_rules() {
    multi_oriented_.clear();
    multi_left_empty_.clear();
    multi_by_first_.clear();
    multi_lookup_.clear();
    single_.clear();
    min_nonzero_cost_ = 1.0;

    for (const Rule& rule : rules_) {
        min_nonzero_cost_ = std::min(min_nonzero_cost_, rule.cost);
        const Rule mirror{rule.right, rule.left, rule.cost};
        for (const Rule* r : {&rule, &mirror}) {
            if (std::max(r->left.size(), r->right.size()) > 1) {
                multi_oriented_.push_back(*r);
                multi_lookup_.emplace(std::make_pair(r->left, r->right), r->cost);
            } else {
                const Symbol a = r->left.empty() ? kNoSymbol : r->left[0];
                const Symbol b = r->right.empty() ? kNoSymbol : r->right[0];
                single_[pair_key(a, b)] = r->cost;
            }
        }
    }

    // Longest blocks first; the distance DP uses this order to prefer
    // block arcs when costs tie.
    std::sort(multi_oriented_.begin(), multi_oriented_.end(), [](const Rule& a, const Rule& b) {
        const auto ta = a.left.size() + a.right.size();
        const auto tb = b.left.size() + b.right.size();
        if (ta != tb) return ta > tb;
        const auto ma = std::max(a.left.size(), a.right.size());
        const auto mb = std::max(b.left.size(), b.right.size());
        if (ma != mb) return ma > mb;
        return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });

    for (const Rule& r : multi_oriented_) {
        if (r.left.empty()) multi_left_empty_.push_back(r);
        else multi_by_first_[r.left[0]].push_back(r);
    }
}

double CostModel::symbol_arc_cost(Symbol a, Symbol b) const {
    assert(a != kNoSymbol || b != kNoSymbol);
    if (a == b) return 0.0;
    auto it = single_.find(pair_key(a, b));
    if (it != single_.end()) return it->second;
    return 1.0;
}

std::optional<double> CostModel::arc_cost(const Block& left, const Block& right) const {
    if (left.size() <= 1 && right.size() <= 1) {
        if (left.empty() && right.empty()) return std::nullopt;
        const Symbol a = left.empty() ? kNoSymbol : left[0];
        const Symbol b = right.empty() ? kNoSymbol : right[0];
        return symbol_arc_cost(a, b);
    }
    auto it = multi_lookup_.find(std::make_pair(left, right));
    if (it != multi_lookup_.end()) return it->second;
    return std::nullopt;
}

std::vector<Rule> CostModel::all_arcs() const {
    std::vector<Rule> arcs;
    const std::size_t n = alphabet_.size();
    arcs.reserve(n * n + 2 * n + multi_oriented_.size());
    for (Symbol a : alphabet_) {
        for (Symbol b : alphabet_) {
            arcs.push_back({Block(1, a), Block(1, b), symbol_arc_cost(a, b)});
        }
    }
    for (Symbol a : alphabet_) arcs.push_back({Block(1, a), Block(), symbol_arc_cost(a, kNoSymbol)});
    for (Symbol a : alphabet_) arcs.push_back({Block(), Block(1, a), symbol_arc_cost(kNoSymbol, a)});
    arcs.insert(arcs.end(), multi_oriented_.begin(), multi_oriented_.end());
    return arcs;
}

CostModel CostModel::with_symbols(const std::set<Symbol>& symbols) const {
    CostModel copy(*this);
    copy.alphabet_.insert(symbols.begin(), symbols.end());
    return copy;
}

std::span<const Rule> CostModel::multi_rules_starting(Symbol first) const {
    auto it = multi_by_first_.find(first);
    if (it == multi_by_first_.end()) return {};
    return it->second;
}

bool CostModel::operator==(const CostModel& other) const {
    return alphabet_ == other.alphabet_ && rules_ == other.rules_;
}

CostFileReport inspect_cost_model(std::string_view text) {
    CostFileReport report;
    ValidationState state;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        if (pos == text.size() && line_no > 0) break;
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        ++report.rule_lines;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                              : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 3) {
            state.fail(CostIssueKind::MalformedLine, line_no,
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
            continue;
        }

        Rule rule;
        try {
            rule.left = decode_field(fields[0]);
            rule.right = decode_field(fields[1]);
        } catch (const std::invalid_argument& e) {
            state.fail(CostIssueKind::MalformedLine, line_no, e.what());
            continue;
        }

        const std::string_view cost_field = fields[2];
        auto [end, ec] = std::from_chars(cost_field.data(), cost_field.data() + cost_field.size(),
                                         rule.cost);
        if (ec != std::errc{} || end != cost_field.data() + cost_field.size() ||
            !std::isfinite(rule.cost)) {
            state.fail(CostIssueKind::MalformedLine, line_no,
                       "cost is not a finite decimal number");
            continue;
        }

        state.add_rule(std::move(rule), line_no);
    }

    if (state.issues.empty()) {
        report.model = std::move(state).build();
    } else {
        report.issues = std::move(state.issues);
    }
    return report;
}

CostModel parse_cost_model(std::string_view text) {
    CostFileReport report = inspect_cost_model(text);
    if (!report.issues.empty()) throw CostModelError(report.issues.front());
    return std::move(*report.model);
}

std::string serialize_cost_model(const CostModel& model) {
    std::string out;
    for (const Rule& rule : model.rules()) {
        out += encode_field(rule.left);
        out += '\t';
        out += encode_field(rule.right);
        out += '\t';
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), rule.cost);
        (void)ec;
        out.append(buf, end);
        out += '\n';
    }
    return out;
}

}  // namespace fuzzylex
