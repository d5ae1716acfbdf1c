#pragma once

// Classification pipeline: given a Toeplitz pattern or a Riordan series pair
// and a vertex count, settle whether the graph is word-representable and
// remember the verdict.  The pieces, in the order a query consults them:
//
//   1. a persistent JSONL results cache (append-only, last record wins),
//   2. the divisor sieve: G_n(a_1…a_m) contains the subsampled instance
//      G_{⌊n/d⌋}(a_d a_{2d} … a_m) as an induced subgraph for every divisor
//      d of m (vertices d, 2d, …, relabelled by i ↦ i/d), so a refuted
//      sub-instance refutes the whole graph,
//   3. the closed-form constructions from constructions.hpp, matched on the
//      shape of the pattern, each answer double-checked by verify_representant,
//   4. exhaustive semi-transitive orientation search as the decision of last
//      resort.
//
// Everything a classification run learns is appended to the cache, so later
// runs (and later processes) start from the accumulated evidence.
//
// iwr() computes the index of word-representability: the largest n for which
// G_n is word-representable.  Because word-representability is hereditary
// (induced subgraphs of representable graphs are representable) and G_{n-1}
// is an induced subgraph of G_n for both source kinds, scanning n = 5, 6, …
// can stop at the first refutation; graphs on five or fewer vertices are
// always representable, so the scan starts at 5.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordrep/constructions.hpp"
#include "wordrep/error.hpp"
#include "wordrep/graph.hpp"
#include "wordrep/semitransitive.hpp"
#include "wordrep/words.hpp"

namespace wordrep {

inline std::string status_text(Status s) {
    switch (s) {
    case Status::representable: return "representable";
    case Status::non_representable: return "non_representable";
    case Status::inconclusive: return "inconclusive";
    }
    fail("InvalidRecord", "unknown status value");
}

inline std::optional<Status> parse_status(const std::string& text) {
    if (text == "representable") return Status::representable;
    if (text == "non_representable") return Status::non_representable;
    return std::nullopt;
}

// One settled fact: the graph named by (source, n) has the given status,
// established by the given method.  `artifact` carries the certificate when
// one exists (a representing word or a semi-transitive orientation), or for
// sieve verdicts the key "<sub-source>@<sub-n>" of the record relied upon.
struct CacheRecord {
    std::string source;
    int n = 0;
    Status status = Status::representable;
    std::string method;
    std::int64_t elapsed_ms = 0;
    std::optional<std::string> artifact;

    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

inline nlohmann::ordered_json record_to_json(const CacheRecord& rec) {
    nlohmann::ordered_json j;
    j["source"] = rec.source;
    j["n"] = rec.n;
    j["status"] = status_text(rec.status);
    j["method"] = rec.method;
    j["elapsed_ms"] = rec.elapsed_ms;
    if (rec.artifact) j["artifact"] = *rec.artifact;
    return j;
}

namespace detail {

// Strict reading of one cache line.  Anything that is not a JSON object with
// exactly the documented fields and types is reported as corrupt.
inline std::optional<CacheRecord> record_from_json_text(const std::string& line) {
    auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    for (const auto& item : j.items()) {
        static const char* known[] = {"source", "n", "status", "method", "elapsed_ms",
                                      "artifact"};
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
            return std::nullopt;
    }
    if (!j.contains("source") || !j["source"].is_string()) return std::nullopt;
    if (!j.contains("n") || !j["n"].is_number_integer()) return std::nullopt;
    if (!j.contains("status") || !j["status"].is_string()) return std::nullopt;
    if (!j.contains("method") || !j["method"].is_string()) return std::nullopt;
    if (!j.contains("elapsed_ms") || !j["elapsed_ms"].is_number_integer()) return std::nullopt;
    if (j.contains("artifact") && !j["artifact"].is_string()) return std::nullopt;

    CacheRecord rec;
    rec.source = j["source"].get<std::string>();
    rec.n = j["n"].get<int>();
    auto status = parse_status(j["status"].get<std::string>());
    if (!status || rec.source.empty() || rec.n < 1) return std::nullopt;
    rec.status = *status;
    rec.method = j["method"].get<std::string>();
    if (rec.method.empty()) return std::nullopt;
    rec.elapsed_ms = j["elapsed_ms"].get<std::int64_t>();
    if (j.contains("artifact")) rec.artifact = j["artifact"].get<std::string>();
    return rec;
}

} // namespace detail

// Append-only store of CacheRecords, one JSON object per line.  A path-backed
// cache loads the whole file up front (later lines shadow earlier ones, so
// re-deciding a key is harmless) and appends each new record immediately;
// a default-constructed cache is purely in-memory.  Reads and writes are
// serialized by a mutex, matching the single-writer/multi-reader contract.
class ResultsCache {
public:
    ResultsCache() = default;

    explicit ResultsCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

    std::optional<CacheRecord> get(const std::string& source, int n) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = newest_.find({source, n});
        if (it == newest_.end()) return std::nullopt;
        return it->second;
    }

    void put(const CacheRecord& rec) {
        if (rec.source.empty() || rec.n < 1 || rec.method.empty())
            fail("InvalidRecord", "cache record needs a source, a positive n and a method");
        if (rec.status == Status::inconclusive)
            fail("InvalidRecord", "only settled verdicts may be cached");
        if (rec.status == Status::non_representable && rec.method != "semi_transitive_search" &&
            rec.method.rfind("sieve:d=", 0) != 0)
            fail("InvalidRecord",
                 "a non-representability verdict needs an exhaustive or sieve method, got " +
                     rec.method);
        std::lock_guard<std::mutex> lock(mutex_);
        newest_[{rec.source, rec.n}] = rec;
        if (path_) {
            std::ofstream out(*path_, std::ios::app);
            if (!out) fail("CacheIo", "cannot append to " + path_->string());
            out << record_to_json(rec).dump() << '\n';
        }
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return newest_.size();
    }

    // Number of lines discarded as corrupt while loading the backing file.
    int skipped_lines() const { return skipped_; }

private:
    void load() {
        std::ifstream in(*path_);
        if (!in) return; // a fresh cache file; created on first put
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto rec = detail::record_from_json_text(line);
            if (!rec) {
                ++skipped_;
                std::cerr << "CorruptRecord: " << path_->string() << ":" << lineno
                          << " skipped\n";
                continue;
            }
            newest_[{rec->source, rec->n}] = *rec;
        }
    }

    mutable std::mutex mutex_;
    std::map<std::pair<std::string, int>, CacheRecord> newest_;
    std::optional<std::filesystem::path> path_;
    int skipped_ = 0;
};

// Picks the closed-form construction matching the pattern's shape, if any.
// Returns the representing word together with the construction's short name.
// Patterns of shape 1^{k-1} 0 1^{m-k} are only covered when (k, m) satisfies
// the construction's side condition; otherwise (like any unmatched shape)
// the caller falls back to exhaustive search.
inline std::optional<std::pair<Word, std::string>> construction_for_pattern(
    const ToeplitzPattern& p, int n) {
    const int m = static_cast<int>(p.period());
    const int ones = static_cast<int>(std::count(p.bits.begin(), p.bits.end(), uint8_t{1}));
    if (ones == 0) return {{represent_0k1l0m(m, 0, 0, n), "0k1l0m"}};
    if (ones == m) return {{represent_0k1l0m(0, m, 0, n), "0k1l0m"}};
    if (ones == 1 && p.bits.back() == 1)
        return {{represent_residue_cliques(m, n), "residue_cliques"}};

    int a = 0;
    while (a < m && p.bits[static_cast<std::size_t>(a)] == 0) ++a;
    int b = 0;
    while (a + b < m && p.bits[static_cast<std::size_t>(a + b)] == 1) ++b;
    if (a + b + std::count(p.bits.begin() + a + b, p.bits.end(), uint8_t{0}) == m) {
        const int c = m - a - b; // pattern is 0^a 1^b 0^c
        if (a > 0 && c > 0) return {{represent_0k1l0m(a, b, c, n), "0k1l0m"}};
        if (a > 0) return {{represent_0k1l(a, b, n), "0k1l"}};
        return {{represent_1l0m(b, c, n), "1l0m"}};
    }

    if (ones == m - 1) {
        const int k = 1 + static_cast<int>(std::find(p.bits.begin(), p.bits.end(), uint8_t{0}) -
                                           p.bits.begin());
        const bool admissible = (m % 2 == 0 && k == m / 2) || std::gcd(k, m) == 1;
        if (k < m && admissible) return {{represent_1k01mk(k, m, n), "1k01mk"}};
    }
    return std::nullopt;
}

struct SieveRefutation {
    int divisor = 0;
    CacheRecord sub_record;
};

inline std::optional<CacheRecord> classify(const ToeplitzPattern& p, int n, ResultsCache& cache,
                                           const SearchOptions& opts = {});

// The decomposition sieve: a refuted subsampled instance refutes (p, n) by
// heredity.  Divisors are tried largest first — the smallest sub-instance is
// the cheapest to settle — and the sieve never proves representability.
inline std::optional<SieveRefutation> sieve(const ToeplitzPattern& p, int n, ResultsCache& cache,
                                            const SearchOptions& opts = {}) {
    const int m = static_cast<int>(p.period());
    for (int d = m; d >= 2; --d) {
        if (m % d != 0 || n / d < 1) continue;
        auto sub = classify(subsample_pattern(p, d), n / d, cache, opts);
        if (sub && sub->status == Status::non_representable) return SieveRefutation{d, *sub};
    }
    return std::nullopt;
}

namespace detail {

inline std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// Shared tail of both classify overloads: everything after the source-specific
// cheap routes has failed and the graph itself must be searched.  Returns
// nullopt when the node budget ran out before the search could settle.
inline std::optional<CacheRecord> classify_by_search(const std::string& source,
                                                     const LabeledGraph& g, int n,
                                                     ResultsCache& cache,
                                                     const SearchOptions& opts,
                                                     std::chrono::steady_clock::time_point t0) {
    Decision d = decide(g, opts);
    if (d.status == Status::inconclusive) return std::nullopt;
    CacheRecord rec{source, n, d.status, d.method, ms_since(t0), std::nullopt};
    if (d.orientation) rec.artifact = orientation_to_string(*d.orientation);
    cache.put(rec);
    return rec;
}

} // namespace detail

// Settles (pattern, n), consulting cache, sieve, constructions and search in
// that order.  Freshly computed verdicts are appended to the cache with the
// method that produced them; answers served from the cache come back with
// method "cache".  Returns nullopt when a node budget stopped the search
// before either verdict was reached (nothing is cached in that case).
inline std::optional<CacheRecord> classify(const ToeplitzPattern& p, int n, ResultsCache& cache,
                                           const SearchOptions& opts) {
    if (n < 1) fail("VertexOutOfRange", "graph order must be at least 1");
    const std::string source = p.text();
    if (auto hit = cache.get(source, n)) {
        hit->method = "cache";
        hit->elapsed_ms = 0;
        return hit;
    }
    const auto t0 = std::chrono::steady_clock::now();

    if (auto refuted = sieve(p, n, cache, opts)) {
        CacheRecord rec{source,
                        n,
                        Status::non_representable,
                        "sieve:d=" + std::to_string(refuted->divisor),
                        detail::ms_since(t0),
                        refuted->sub_record.source + "@" +
                            std::to_string(refuted->sub_record.n)};
        cache.put(rec);
        return rec;
    }

    const LabeledGraph g = build_toeplitz(p, n);
    if (auto built = construction_for_pattern(p, n)) {
        if (!verify_representant(built->first, g).ok)
            fail("ConstructionMismatch", "construction " + built->second +
                                             " produced a non-representing word for " + source +
                                             " at n=" + std::to_string(n));
        CacheRecord rec{source,
                        n,
                        Status::representable,
                        "construction:" + built->second,
                        detail::ms_since(t0),
                        word_to_string(built->first)};
        cache.put(rec);
        return rec;
    }

    return detail::classify_by_search(source, g, n, cache, opts, t0);
}

// Riordan sources have no pattern shape to match and no divisor sieve, so
// after a cache lookup the decision goes straight to exhaustive search.
inline std::optional<CacheRecord> classify(const RiordanSpec& spec, int n, ResultsCache& cache,
                                           const SearchOptions& opts = {}) {
    if (n < 1) fail("VertexOutOfRange", "graph order must be at least 1");
    const std::string source = spec.text();
    if (auto hit = cache.get(source, n)) {
        hit->method = "cache";
        hit->elapsed_ms = 0;
        return hit;
    }
    const auto t0 = std::chrono::steady_clock::now();
    return detail::classify_by_search(source, build_riordan_graph(spec, n), n, cache, opts, t0);
}

// Index of word-representability: either the exact largest representable n,
// or a lower bound when the scan ran out of ceiling (or, flagged by
// `inconclusive`, out of search budget).
struct IwrResult {
    enum class Kind { exact, at_least };
    Kind kind = Kind::at_least;
    int value = 0;
    bool inconclusive = false;

    static IwrResult exact(int n0) { return {Kind::exact, n0, false}; }
    static IwrResult at_least(int v, bool stopped_early = false) {
        return {Kind::at_least, v, stopped_early};
    }

    friend bool operator==(const IwrResult&, const IwrResult&) = default;
};

template <typename Source>
IwrResult iwr(const Source& source, int cap, ResultsCache& cache, const SearchOptions& opts = {}) {
    if (cap < 5)
        fail("CapTooSmall", "the index of word-representability is at least 5; cap must be too");
    for (int n = 5; n <= cap; ++n) {
        auto rec = classify(source, n, cache, opts);
        if (!rec) return IwrResult::at_least(n - 1, true);
        if (rec->status == Status::non_representable) return IwrResult::exact(n - 1);
    }
    return IwrResult::at_least(cap);
}

// Classifies all 2^m patterns of length m at size n (lexicographic order) and
// tallies the verdicts.  Everything lands in the cache, so a scan doubles as
// a seeding pass for later iwr queries.
struct ScanSummary {
    int pattern_length = 0;
    int vertex_count = 0;
    int representable = 0;
    int non_representable = 0;
    int inconclusive = 0;
    std::vector<std::string> non_representable_patterns;
};

inline ScanSummary scan_family(int m, int n, ResultsCache& cache,
                               const SearchOptions& opts = {}) {
    if (m < 1 || m > 24)
        fail("BadPatternLength", "pattern length must be between 1 and 24, got " +
                                     std::to_string(m));
    ScanSummary summary;
    summary.pattern_length = m;
    summary.vertex_count = n;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
        std::string text(static_cast<std::size_t>(m), '0');
        for (int i = 0; i < m; ++i)
            if (bits >> (m - 1 - i) & 1) text[static_cast<std::size_t>(i)] = '1';
        auto rec = classify(parse_pattern(text), n, cache, opts);
        if (!rec) {
            ++summary.inconclusive;
        } else if (rec->status == Status::representable) {
            ++summary.representable;
        } else {
            ++summary.non_representable;
            summary.non_representable_patterns.push_back(text);
        }
    }
    return summary;
}

} // namespace wordrep
