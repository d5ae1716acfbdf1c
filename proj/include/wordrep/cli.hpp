#pragma once

// Command-line front end.  run_cli() is the whole program: the binary in
// tools/ only forwards argv and the standard streams, which keeps every
// subcommand testable in-process against string streams.
//
// Subcommands:
//   build      construct a graph and print it (text, json, matrix or dot)
//   represent  produce a representing word, preferring closed-form
//              constructions and falling back to exhaustive search
//   verify     check a word against a graph, listing any violated pairs
//   check      classify one instance (cache/sieve/construction/search)
//   orient     find a semi-transitive orientation, or audit a given one
//   iwr        scan for the index of word-representability
//   scan       classify a whole pattern-length family
//
// Exit codes: 0 success, 1 domain failure (graph not representable, word
// does not represent, budget exhausted, ...), 2 usage error.  `check` is the
// deliberate exception: its verdict is data, so it exits 0 either way.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wordrep/classify.hpp"
#include "wordrep/constructions.hpp"
#include "wordrep/error.hpp"
#include "wordrep/graph.hpp"
#include "wordrep/semitransitive.hpp"
#include "wordrep/words.hpp"

namespace wordrep {

namespace cli_detail {

inline int parse_int_token(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        fail("EdgeListSyntax", "bad " + what + " '" + token + "'");
    }
    if (used != token.size() || value < 1)
        fail("EdgeListSyntax", "bad " + what + " '" + token + "'");
    return value;
}

// "1-2,2-3,3-4" -> {(1,2),(2,3),(3,4)}; `sep` is '-' for undirected edge
// literals and '>' for directed arc literals.
inline std::vector<std::pair<int, int>> parse_pair_list(const std::string& text, char sep) {
    if (text.empty()) fail("EdgeListSyntax", "empty edge list");
    std::vector<std::pair<int, int>> pairs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(start, comma - start);
        std::size_t cut = item.find(sep);
        if (cut == std::string::npos)
            fail("EdgeListSyntax", "expected 'u" + std::string(1, sep) + "v', got '" + item + "'");
        pairs.emplace_back(parse_int_token(item.substr(0, cut), "vertex"),
                           parse_int_token(item.substr(cut + 1), "vertex"));
        start = comma + 1;
    }
    return pairs;
}

// Everything a subcommand might have been given; which fields were actually
// set is tracked by CLI11 and checked per subcommand.
struct Flags {
    std::string pattern;
    std::string riordan;
    std::string g_text;
    std::string f_text;
    std::string edges;
    std::string arcs;
    std::string word;
    std::string format = "text";
    std::string cache_path;
    int n = 0;
    int cap = 0;
    int m = 0;
    int workers = 1;
    std::uint64_t budget = 0;
};

// A family source (for check/iwr, which key the results cache) resolved from
// the flags: either a Toeplitz pattern or a Riordan series pair.
using FamilySource = std::variant<ToeplitzPattern, RiordanSpec>;

template <typename F>
auto with_flag_context(const char* flag, F&& parse_one) {
    try {
        return parse_one();
    } catch (const Error& e) {
        throw Error(e.code(), std::string(flag) + ": " + e.what());
    }
}

inline FamilySource family_from_flags(const Flags& flags, bool has_pattern, bool has_riordan,
                                      bool has_series) {
    if (has_pattern + has_riordan + has_series != 1)
        fail("UsageError", "exactly one of --pattern, --riordan, --g/--f is required");
    if (has_pattern)
        return with_flag_context("--pattern", [&] { return parse_pattern(flags.pattern); });
    if (has_riordan) {
        auto spec = riordan_builtin(flags.riordan);
        if (!spec)
            fail("UsageError",
                 "--riordan: unknown name '" + flags.riordan + "' (pascal, catalan, fibonacci)");
        return *spec;
    }
    return RiordanSpec{
        with_flag_context("--g", [&] { return parse_series_spec(flags.g_text); }),
        with_flag_context("--f", [&] { return parse_series_spec(flags.f_text); })};
}

inline LabeledGraph family_graph(const FamilySource& source, int n) {
    if (const auto* p = std::get_if<ToeplitzPattern>(&source)) return build_toeplitz(*p, n);
    return build_riordan_graph(std::get<RiordanSpec>(source), n);
}

inline std::string family_text(const FamilySource& source) {
    if (const auto* p = std::get_if<ToeplitzPattern>(&source)) return p->text();
    return std::get<RiordanSpec>(source).text();
}

inline SearchOptions search_options(const Flags& flags, bool has_budget) {
    SearchOptions opts;
    opts.workers = flags.workers;
    if (has_budget) opts.budget = flags.budget;
    return opts;
}

inline std::string dot_text(const LabeledGraph& g,
                            const std::vector<std::pair<int, int>>* arcs = nullptr) {
    std::string s = arcs ? "digraph G {\n" : "graph G {\n";
    for (int v = 1; v <= g.size(); ++v) s += "  " + std::to_string(v) + ";\n";
    if (arcs) {
        for (auto [u, v] : *arcs)
            s += "  " + std::to_string(u) + " -> " + std::to_string(v) + ";\n";
    } else {
        for (auto [u, v] : g.edges())
            s += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    }
    s += "}\n";
    return s;
}

inline std::string edge_list_text(const LabeledGraph& g) {
    std::string s;
    for (auto [u, v] : g.edges()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(u) + "-" + std::to_string(v);
    }
    return s;
}

inline void print_record_text(std::ostream& out, const CacheRecord& rec) {
    out << "source: " << rec.source << "\n"
        << "n: " << rec.n << "\n"
        << "status: " << status_text(rec.status) << "\n"
        << "method: " << rec.method << "\n"
        << "elapsed_ms: " << rec.elapsed_ms << "\n";
    if (rec.artifact) out << "artifact: " << *rec.artifact << "\n";
}

// ---------------------------------------------------------------- build ---

inline int do_build(const Flags& flags, const FamilySource& source, std::ostream& out) {
    LabeledGraph g = family_graph(source, flags.n);
    if (flags.format == "matrix") {
        out << to_matrix_text(g);
    } else if (flags.format == "dot") {
        out << dot_text(g);
    } else if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["source"] = family_text(source);
        j["n"] = g.size();
        j["edges"] = nlohmann::ordered_json::array();
        for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
        out << j.dump() << "\n";
    } else {
        out << "vertices: " << g.size() << "\n"
            << "edges: " << edge_list_text(g) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ represent ---

inline int do_represent(const Flags& flags, const std::optional<FamilySource>& source,
                        const LabeledGraph& g, std::ostream& out, std::ostream& err) {
    std::optional<Word> word;
    std::string method;
    if (source) {
        if (const auto* p = std::get_if<ToeplitzPattern>(&*source)) {
            if (auto built = construction_for_pattern(*p, g.size())) {
                word = std::move(built->first);
                method = "construction:" + built->second;
            }
        }
    }
    if (!word) {
        Decision d = decide(g);
        if (d.status == Status::non_representable) {
            err << "error [NotRepresentable]: the graph admits no semi-transitive "
                   "orientation, hence no representing word\n";
            return 1;
        }
        if (g.size() > 6) {
            err << "error [TooLarge]: the graph is representable (a semi-transitive "
                   "orientation exists), but exhaustive word search handles at most 6 "
                   "vertices; no closed-form construction matches this source\n";
            return 1;
        }
        word = brute_force_word_search(g, 3);
        if (!word) {
            err << "error [NoSmallWord]: the graph is representable, but no word using "
                   "at most 3 copies of each letter was found\n";
            return 1;
        }
        method = "word_search";
    }
    const bool ok = verify_representant(*word, g).ok;
    if (!ok)
        fail("ConstructionMismatch", "internal: produced word failed verification");
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        if (source) j["source"] = family_text(*source);
        j["n"] = g.size();
        j["word"] = word_to_string(*word);
        j["method"] = method;
        j["verified"] = ok;
        out << j.dump() << "\n";
    } else {
        out << "word: " << word_to_string(*word) << "\n"
            << "method: " << method << "\n"
            << "verified: ok\n";
    }
    return 0;
}

// --------------------------------------------------------------- verify ---

inline int do_verify(const Flags& flags, const LabeledGraph& g, std::ostream& out) {
    Word word = with_flag_context("--word", [&] { return parse_word(flags.word); });
    VerifyResult result = verify_representant(word, g);
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["ok"] = result.ok;
        j["violations"] = nlohmann::ordered_json::array();
        for (const auto& v : result.violations)
            j["violations"].push_back(
                {{"x", v.x}, {"y", v.y}, {"edge", v.edge}, {"alternates", v.alternates}});
        out << j.dump() << "\n";
    } else if (result.ok) {
        out << "ok\n";
    } else {
        for (const auto& v : result.violations)
            out << v.x << "-" << v.y << ": "
                << (v.edge ? "edge, but the letters do not alternate"
                           : "no edge, but the letters alternate")
                << "\n";
    }
    return result.ok ? 0 : 1;
}

// ---------------------------------------------------------------- check ---

inline int do_check(const Flags& flags, const FamilySource& source, ResultsCache& cache,
                    const SearchOptions& opts, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<CacheRecord> rec = std::visit(
        [&](const auto& src) { return classify(src, flags.n, cache, opts); }, source);
    if (!rec) {
        // budget ran out: report honestly; this line is not valid cache input
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        if (flags.format == "json") {
            nlohmann::ordered_json j;
            j["source"] = family_text(source);
            j["n"] = flags.n;
            j["status"] = "inconclusive";
            j["method"] = "semi_transitive_search";
            j["elapsed_ms"] = ms;
            out << j.dump() << "\n";
        } else {
            out << "source: " << family_text(source) << "\n"
                << "n: " << flags.n << "\n"
                << "status: inconclusive (search budget exhausted)\n"
                << "method: semi_transitive_search\n"
                << "elapsed_ms: " << ms << "\n";
        }
        return 0;
    }
    if (flags.format == "json")
        out << record_to_json(*rec).dump() << "\n";
    else
        print_record_text(out, *rec);
    return 0;
}

// --------------------------------------------------------------- orient ---

inline int do_orient(const Flags& flags, bool audit, const LabeledGraph& g,
                     const SearchOptions& opts, std::ostream& out, std::ostream& err) {
    if (audit) {
        Orientation o{g, parse_pair_list(flags.arcs, '>')};
        auto witness = find_shortcut(o);
        if (flags.format == "json") {
            nlohmann::ordered_json j;
            j["shortcut_free"] = !witness.has_value();
            if (witness) {
                j["edge"] = {witness->from, witness->to};
                j["pair"] = {witness->x, witness->y};
            }
            out << j.dump() << "\n";
        } else if (witness) {
            out << "shortcut: edge " << witness->from << ">" << witness->to
                << ", non-adjacent pair {" << witness->x << "," << witness->y << "}\n";
        } else {
            out << "shortcut-free\n";
        }
        return witness ? 1 : 0;
    }

    SearchResult r = find_semi_transitive_orientation(g, opts);
    if (r.outcome == SearchOutcome::none) {
        err << "error [NotRepresentable]: no semi-transitive orientation exists\n";
        return 1;
    }
    if (r.outcome == SearchOutcome::budget_exhausted) {
        err << "error [BudgetExhausted]: search stopped after the node budget\n";
        return 1;
    }
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["outcome"] = "found";
        j["orientation"] = orientation_to_string(*r.orientation);
        j["nodes_explored"] = r.stats.nodes_explored;
        out << j.dump() << "\n";
    } else if (flags.format == "dot") {
        out << dot_text(g, &r.orientation->directed);
    } else {
        out << orientation_to_string(*r.orientation) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ iwr ---

inline int do_iwr(const Flags& flags, const FamilySource& source, ResultsCache& cache,
                  const SearchOptions& opts, std::ostream& out) {
    IwrResult result = std::visit(
        [&](const auto& src) { return iwr(src, flags.cap, cache, opts); }, source);
    const bool exact = result.kind == IwrResult::Kind::exact;
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["source"] = family_text(source);
        j["cap"] = flags.cap;
        j["kind"] = exact ? "exact" : "at_least";
        j["value"] = result.value;
        j["inconclusive"] = result.inconclusive;
        out << j.dump() << "\n";
    } else {
        out << (exact ? "exact " : "at_least ") << result.value
            << (result.inconclusive ? " (inconclusive: search budget exhausted)" : "") << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- scan ---

inline int do_scan(const Flags& flags, ResultsCache& cache, const SearchOptions& opts,
                   std::ostream& out) {
    ScanSummary s = scan_family(flags.m, flags.n, cache, opts);
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["m"] = s.pattern_length;
        j["n"] = s.vertex_count;
        j["representable"] = s.representable;
        j["non_representable"] = s.non_representable;
        j["inconclusive"] = s.inconclusive;
        j["non_representable_patterns"] = s.non_representable_patterns;
        out << j.dump() << "\n";
    } else {
        out << "patterns: " << (s.representable + s.non_representable + s.inconclusive) << "\n"
            << "representable: " << s.representable << "\n"
            << "non_representable: " << s.non_representable << "\n"
            << "inconclusive: " << s.inconclusive << "\n";
        for (const auto& p : s.non_representable_patterns) out << p << "\n";
    }
    return 0;
}

} // namespace cli_detail

// Parses `args` (argv without the program name) and runs one subcommand,
// writing results to `out` and diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::Flags;
    Flags flags;

    CLI::App app{"word-representable graph toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> graph_formats{"text", "json", "matrix", "dot"};
    const std::vector<std::string> data_formats{"text", "json"};
    const std::vector<std::string> orient_formats{"text", "json", "dot"};

    auto add_source = [&](CLI::App* sub, bool with_edges) {
        sub->add_option("--pattern", flags.pattern, "Toeplitz pattern bits, e.g. 10011111");
        sub->add_option("--riordan", flags.riordan, "builtin series pair: pascal, catalan, fibonacci");
        auto* g_opt = sub->add_option("--g", flags.g_text, "series spec for g");
        auto* f_opt = sub->add_option("--f", flags.f_text, "series spec for f");
        g_opt->needs(f_opt);
        f_opt->needs(g_opt);
        if (with_edges)
            sub->add_option("--edges", flags.edges, "edge list literal, e.g. 1-2,2-3");
    };
    auto add_search_opts = [&](CLI::App* sub) {
        sub->add_option("--workers", flags.workers, "parallel search workers")
            ->check(CLI::Range(1, 256));
        sub->add_option("--budget", flags.budget, "search node budget")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* build = app.add_subcommand("build", "construct a graph and print it");
    add_source(build, false);
    build->add_option("--n", flags.n, "vertex count")->required()->check(CLI::PositiveNumber);
    build->add_option("--format", flags.format)->check(CLI::IsMember(graph_formats));

    CLI::App* represent = app.add_subcommand("represent", "produce a representing word");
    add_source(represent, true);
    represent->add_option("--n", flags.n, "vertex count")->check(CLI::PositiveNumber);
    represent->add_option("--format", flags.format)->check(CLI::IsMember(data_formats));

    CLI::App* verify = app.add_subcommand("verify", "check a word against a graph");
    add_source(verify, true);
    verify->add_option("--n", flags.n, "vertex count")->check(CLI::PositiveNumber);
    verify->add_option("--word", flags.word, "candidate representing word")->required();
    verify->add_option("--format", flags.format)->check(CLI::IsMember(data_formats));

    CLI::App* check = app.add_subcommand("check", "classify one instance");
    add_source(check, false);
    check->add_option("--n", flags.n, "vertex count")->required()->check(CLI::PositiveNumber);
    check->add_option("--cache", flags.cache_path, "JSONL results cache path");
    check->add_option("--format", flags.format)->check(CLI::IsMember(data_formats));
    add_search_opts(check);

    CLI::App* orient = app.add_subcommand("orient", "find or audit a semi-transitive orientation");
    add_source(orient, true);
    orient->add_option("--n", flags.n, "vertex count")->check(CLI::PositiveNumber);
    orient->add_option("--arcs", flags.arcs, "orientation to audit, e.g. 1>2,2>3");
    orient->add_option("--format", flags.format)->check(CLI::IsMember(orient_formats));
    add_search_opts(orient);

    CLI::App* iwr_cmd = app.add_subcommand("iwr", "index of word-representability");
    add_source(iwr_cmd, false);
    iwr_cmd->add_option("--cap", flags.cap, "scan ceiling")->required()->check(CLI::Range(5, 1000000));
    iwr_cmd->add_option("--cache", flags.cache_path, "JSONL results cache path");
    iwr_cmd->add_option("--format", flags.format)->check(CLI::IsMember(data_formats));
    add_search_opts(iwr_cmd);

    CLI::App* scan = app.add_subcommand("scan", "classify a whole pattern family");
    scan->add_option("--m", flags.m, "pattern length")->required()->check(CLI::Range(1, 24));
    scan->add_option("--n", flags.n, "vertex count")->required()->check(CLI::PositiveNumber);
    scan->add_option("--cache", flags.cache_path, "JSONL results cache path");
    scan->add_option("--format", flags.format)->check(CLI::IsMember(data_formats));
    add_search_opts(scan);

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("wordrep");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        using cli_detail::FamilySource;
        CLI::App* sub = app.get_subcommands().front();
        auto given = [&](const char* name) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        const bool has_pattern = given("--pattern");
        const bool has_riordan = given("--riordan");
        const bool has_series = given("--g");
        const bool has_edges = given("--edges");
        const bool has_n = given("--n");
        const bool has_budget = given("--budget");

        auto family = [&]() -> FamilySource {
            return cli_detail::family_from_flags(flags, has_pattern, has_riordan, has_series);
        };
        // A concrete graph, from the family source or an edge-list literal.
        auto graph = [&]() -> std::pair<LabeledGraph, std::optional<FamilySource>> {
            if (has_edges) {
                if (has_pattern || has_riordan || has_series)
                    fail("UsageError", "--edges cannot be combined with a family source");
                auto pairs = cli_detail::with_flag_context(
                    "--edges", [&] { return cli_detail::parse_pair_list(flags.edges, '-'); });
                int top = 0;
                for (auto [u, v] : pairs) top = std::max({top, u, v});
                LabeledGraph g(has_n ? flags.n : top);
                for (auto [u, v] : pairs) g.add_edge(u, v);
                return {g, std::nullopt};
            }
            if (!has_n) fail("UsageError", "--n is required with a family source");
            FamilySource src = family();
            return {cli_detail::family_graph(src, flags.n), std::move(src)};
        };
        // ResultsCache holds a mutex, so pick the backing store in place.
        std::optional<ResultsCache> file_cache;
        ResultsCache memory_cache;
        auto cache_for = [&]() -> ResultsCache& {
            if (flags.cache_path.empty()) return memory_cache;
            return file_cache.emplace(flags.cache_path);
        };
        const SearchOptions opts = cli_detail::search_options(flags, has_budget);

        if (build->parsed()) return cli_detail::do_build(flags, family(), out);
        if (represent->parsed()) {
            auto [g, src] = graph();
            return cli_detail::do_represent(flags, src, g, out, err);
        }
        if (verify->parsed()) return cli_detail::do_verify(flags, graph().first, out);
        if (check->parsed()) return cli_detail::do_check(flags, family(), cache_for(), opts, out);
        if (orient->parsed())
            return cli_detail::do_orient(flags, given("--arcs"), graph().first, opts, out, err);
        if (iwr_cmd->parsed()) return cli_detail::do_iwr(flags, family(), cache_for(), opts, out);
        return cli_detail::do_scan(flags, cache_for(), opts, out);
    } catch (const Error& e) {
        const std::string& code = e.code();
        const bool usage = code == "PatternSyntax" || code == "SeriesSyntax" ||
                           code == "WordSyntax" || code == "EdgeListSyntax" ||
                           code == "UsageError";
        err << "error [" << code << "]: " << e.what() << "\n";
        return usage ? 2 : 1;
    }
}

} // namespace wordrep
