#include "fuzzylex/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fuzzylex/approx_search.hpp"
#include "fuzzylex/cost_model.hpp"
#include "fuzzylex/distance.hpp"
#include "fuzzylex/lexicon_trie.hpp"
#include "fuzzylex/unicode.hpp"

namespace fuzzylex::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadFile = 1;
constexpr int kExitBadArgs = 2;

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

bool read_file(const std::string& path, std::string& content, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot open '" << path << "'\n";
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    content = buf.str();
    return true;
}

// One entry per line, a single trailing \r stripped, blank lines dropped.
std::vector<std::string> split_lines(std::string_view content) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line =
            content.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? content.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
    }
    return lines;
}

struct CommonOptions {
    std::string dict_path;
    std::string costs_path;
    double threshold = 1.0;
    bool per_symbol_threshold = false;
    bool diagnostics = false;
    bool lowercase = false;
};

struct LoadedIndex {
    LexTrie trie;
    CostModel model;
};

std::optional<CostModel> load_model(const std::string& path, std::ostream& err) {
    if (path.empty()) return CostModel{};
    std::string content;
    if (!read_file(path, content, err)) return std::nullopt;
    CostFileReport report = inspect_cost_model(content);
    if (!report.issues.empty()) {
        for (const CostIssue& issue : report.issues)
            err << path << ": line " << issue.line << ": " << issue.message << "\n";
        return std::nullopt;
    }
    return std::move(report.model);
}

std::optional<LoadedIndex> load_index(const CommonOptions& opt, std::ostream& err) {
    std::string content;
    if (!read_file(opt.dict_path, content, err)) return std::nullopt;

    std::vector<std::u32string> words;
    try {
        for (const std::string& line : split_lines(content)) {
            if (line.empty()) continue;
            std::u32string word = decode_utf8(line);
            words.push_back(opt.lowercase ? lower_all(word) : std::move(word));
        }
    } catch (const std::invalid_argument& e) {
        err << opt.dict_path << ": " << e.what() << "\n";
        return std::nullopt;
    }

    std::optional<CostModel> model = load_model(opt.costs_path, err);
    if (!model) return std::nullopt;

    LoadedIndex index{LexTrie::build(words), std::move(*model)};
    index.model = index.model.with_symbols(index.trie.symbols());
    return index;
}

void print_matches(std::ostream& out, const std::vector<MatchResult>& matches,
                   const std::string* query_prefix) {
    for (const MatchResult& m : matches) {
        if (query_prefix) out << *query_prefix << '\t';
        out << m.word << '\t' << format_number(m.raw_cost) << '\t'
            << format_number(m.normalized_cost) << '\n';
    }
}

void print_search_diagnostics(std::ostream& err, const LoadedIndex& index,
                              const SearchDiagnostics& diag) {
    err << "mean_branching=" << format_number(index.trie.branching_stats().mean)
        << " multi_rules=" << index.model.multi_rule_count()
        << " min_cost=" << format_number(index.model.min_nonzero_cost())
        << " states_expanded=" << diag.states_expanded
        << " worst_case_factor=" << format_number(diag.worst_case_factor) << "\n";
}

int run_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    std::string content;
    if (!read_file(path, content, err)) return kExitBadFile;
    CostFileReport report = inspect_cost_model(content);
    if (!report.issues.empty()) {
        for (const CostIssue& issue : report.issues)
            out << "line " << issue.line << ": " << issue.message << "\n";
        out << "FAIL: " << report.issues.size() << " problem"
            << (report.issues.size() == 1 ? "" : "s") << "\n";
        return kExitBadFile;
    }
    const CostModel& model = *report.model;
    out << "OK rules=" << model.rules().size() << " multi_rules=" << model.multi_rule_count()
        << " min_cost=" << format_number(model.min_nonzero_cost())
        << " alphabet=" << model.alphabet().size() << "\n";
    return kExitOk;
}

int run_search(const CommonOptions& opt, const std::string& query_utf8, std::ostream& out,
               std::ostream& err) {
    if (query_utf8.empty()) {
        err << "error: query must not be empty\n";
        return kExitBadArgs;
    }
    if (!(opt.threshold > 0.0)) {
        err << "error: threshold must be positive\n";
        return kExitBadArgs;
    }
    std::u32string query;
    try {
        query = decode_utf8(query_utf8);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    if (opt.lowercase) query = lower_all(query);

    std::optional<LoadedIndex> index = load_index(opt, err);
    if (!index) return kExitBadFile;

    const double raw_threshold =
        opt.per_symbol_threshold ? opt.threshold * static_cast<double>(query.size())
                                 : opt.threshold;
    SearchResult result = approx_search(index->trie, index->model, query, raw_threshold);
    print_matches(out, result.matches, nullptr);
    if (opt.diagnostics) print_search_diagnostics(err, *index, result.diagnostics);
    return kExitOk;
}

int run_batch(const CommonOptions& opt, const std::string& queries_path, std::ostream& out,
              std::ostream& err) {
    if (!(opt.threshold > 0.0)) {
        err << "error: threshold must be positive\n";
        return kExitBadArgs;
    }

    const auto load_start = Clock::now();
    std::string content;
    if (!read_file(queries_path, content, err)) return kExitBadFile;

    std::vector<std::string> raw_lines = split_lines(content);
    std::vector<std::u32string> queries;
    std::vector<std::string> query_labels;
    for (std::size_t i = 0; i < raw_lines.size(); ++i) {
        if (raw_lines[i].empty()) {
            err << "warning: skipping empty query at line " << (i + 1) << "\n";
            continue;
        }
        std::u32string q;
        try {
            q = decode_utf8(raw_lines[i]);
        } catch (const std::invalid_argument& e) {
            err << queries_path << ": line " << (i + 1) << ": " << e.what() << "\n";
            return kExitBadFile;
        }
        if (opt.lowercase) q = lower_all(q);
        queries.push_back(std::move(q));
        query_labels.push_back(opt.lowercase ? encode_utf8(queries.back()) : raw_lines[i]);
    }

    std::optional<LoadedIndex> index = load_index(opt, err);
    if (!index) return kExitBadFile;
    const long long load_ms = ms_since(load_start);

    // Queries are independent over the shared immutable trie and model;
    // run them concurrently and emit in input order.
    const auto search_start = Clock::now();
    std::vector<SearchResult> results(queries.size());
    if (!queries.empty()) {
        const std::size_t workers =
            std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                  queries.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t k; (k = next.fetch_add(1)) < queries.size();) {
                const double raw_threshold =
                    opt.per_symbol_threshold
                        ? opt.threshold * static_cast<double>(queries[k].size())
                        : opt.threshold;
                results[k] = approx_search(index->trie, index->model, queries[k], raw_threshold);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    const long long search_ms = ms_since(search_start);

    std::size_t matched = 0;
    for (std::size_t k = 0; k < queries.size(); ++k) {
        print_matches(out, results[k].matches, &query_labels[k]);
        if (!results[k].matches.empty()) ++matched;
        if (opt.diagnostics) {
            err << query_labels[k] << ": ";
            print_search_diagnostics(err, *index, results[k].diagnostics);
        }
    }
    out << "# totals queries=" << queries.size() << " matched=" << matched
        << " unmatched=" << (queries.size() - matched) << "\n";
    out << "# timing load_ms=" << load_ms << " search_ms=" << search_ms << "\n";
    return kExitOk;
}

int run_stats(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    if (!(opt.threshold > 0.0)) {
        err << "error: threshold must be positive\n";
        return kExitBadArgs;
    }
    std::optional<LoadedIndex> index = load_index(opt, err);
    if (!index) return kExitBadFile;

    const BranchingStats& stats = index->trie.branching_stats();
    const double factor =
        worst_case_factor(stats.mean, opt.threshold, index->model.min_nonzero_cost(),
                          index->model.alphabet().size(), index->model.multi_rule_count());
    out << "words=" << index->trie.word_count() << "\n";
    out << "nodes=" << index->trie.node_count() << "\n";
    out << "mean_branching=" << format_number(stats.mean) << "\n";
    out << "max_branching=" << stats.max << "\n";
    out << "alphabet=" << index->model.alphabet().size() << "\n";
    out << "multi_rules=" << index->model.multi_rule_count() << "\n";
    out << "min_cost=" << format_number(index->model.min_nonzero_cost()) << "\n";
    out << "threshold=" << format_number(opt.threshold) << "\n";
    out << "worst_case_factor=" << format_number(factor) << "\n";
    return kExitOk;
}

}  // namespace

std::string format_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"approximate dictionary search with corpus-adapted edit costs"};
    app.name("fuzzylex");
    app.require_subcommand(1);

    CommonOptions opt;
    std::string query;
    std::string queries_path;
    std::string validate_path;

    CLI::App* validate = app.add_subcommand("validate", "check a cost rule file");
    validate->add_option("--costs", validate_path, "cost rule file")->required();

    auto add_common = [&opt](CLI::App* cmd, bool with_search_flags) {
        cmd->add_option("--dict", opt.dict_path, "dictionary file, one word per line")->required();
        cmd->add_option("--costs", opt.costs_path, "cost rule file");
        cmd->add_option("--threshold", opt.threshold, "cost threshold (strict upper bound)");
        if (with_search_flags) {
            cmd->add_flag("--per-symbol-threshold", opt.per_symbol_threshold,
                          "scale the threshold by the query length");
            cmd->add_flag("--diagnostics", opt.diagnostics, "search statistics on stderr");
            cmd->add_flag("--lowercase", opt.lowercase, "lowercase dictionary and queries");
        }
    };

    CLI::App* search = app.add_subcommand("search", "find near matches for one query");
    add_common(search, true);
    search->add_option("query", query, "query string")->required();

    CLI::App* batch = app.add_subcommand("batch", "run a file of queries");
    add_common(batch, true);
    batch->add_option("--queries", queries_path, "query file, one query per line")->required();

    CLI::App* stats = app.add_subcommand("stats", "index and model statistics");
    add_common(stats, false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }

    if (validate->parsed()) return run_validate(validate_path, out, err);
    if (search->parsed()) return run_search(opt, query, out, err);
    if (batch->parsed()) return run_batch(opt, queries_path, out, err);
    if (stats->parsed()) return run_stats(opt, out, err);
    return kExitBadArgs;
}

}  // namespace fuzzylex::cli
