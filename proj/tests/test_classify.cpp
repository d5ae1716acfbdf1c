#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "wordrep/classify.hpp"

using wordrep::CacheRecord;
using wordrep::Error;
using wordrep::IwrResult;
using wordrep::ResultsCache;
using wordrep::SearchOptions;
using wordrep::Status;
using wordrep::ToeplitzPattern;

namespace {

std::filesystem::path fresh_cache_path(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("wordrep_test_" + name + ".jsonl");
    std::filesystem::remove(p);
    return p;
}

ToeplitzPattern pat(const std::string& text) { return wordrep::parse_pattern(text); }

} // namespace

TEST_CASE("subsampling picks every d-th pattern entry", "[classify]") {
    CHECK(wordrep::subsample_pattern(pat("010001010101"), 2).text() == "101111");
    CHECK(wordrep::subsample_pattern(pat("010001010101"), 3).text() == "0101");
    CHECK(wordrep::subsample_pattern(pat("010001010101"), 12).text() == "1");
    CHECK(wordrep::subsample_pattern(pat("10"), 2).text() == "0");
    CHECK(wordrep::subsample_pattern(pat("110"), 1).text() == "110");
    CHECK_THROWS_MATCHES(wordrep::subsample_pattern(pat("110"), 2), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "NotADivisor"; }));
}

TEST_CASE("subsampling composes along divisor chains", "[classify]") {
    std::mt19937 rng(11);
    for (int m = 1; m <= 12; ++m) {
        for (int trial = 0; trial < 8; ++trial) {
            std::string text;
            for (int i = 0; i < m; ++i) text += (rng() & 1) ? '1' : '0';
            auto p = pat(text);
            for (int d = 1; d <= m; ++d) {
                if (m % d != 0) continue;
                for (int dd = d; dd <= m; dd += d) {
                    if (m % dd != 0 || dd % d != 0) continue;
                    CHECK(wordrep::subsample_pattern(wordrep::subsample_pattern(p, d), dd / d) ==
                          wordrep::subsample_pattern(p, dd));
                }
            }
        }
    }
}

TEST_CASE("the subsampled instance is an induced subgraph", "[classify]") {
    // vertices d, 2d, ..., relabelled by i -> i/d, must induce exactly the
    // graph of the subsampled pattern
    for (int m = 1; m <= 6; ++m) {
        for (int bits = 0; bits < (1 << m); ++bits) {
            std::string text;
            for (int i = 0; i < m; ++i) text += (bits >> i & 1) ? '1' : '0';
            auto p = pat(text);
            for (int d = 1; d <= m; ++d) {
                if (m % d != 0) continue;
                for (int n = d; n <= 30; n += 3) {
                    auto g = wordrep::build_toeplitz(p, n);
                    auto sub = wordrep::build_toeplitz(wordrep::subsample_pattern(p, d), n / d);
                    for (int i = 1; i <= n / d; ++i)
                        for (int j = i + 1; j <= n / d; ++j)
                            if (sub.adjacent(i, j) != g.adjacent(i * d, j * d)) {
                                INFO("pattern=" << text << " d=" << d << " n=" << n);
                                REQUIRE(sub.adjacent(i, j) == g.adjacent(i * d, j * d));
                            }
                }
            }
        }
    }
    // the padded pattern from the family scan collapses to the short one
    CHECK(wordrep::build_toeplitz(pat("101111101"), 9) == wordrep::build_toeplitz(pat("101111"), 9));
}

TEST_CASE("cache round-trips records through disk", "[classify]") {
    auto path = fresh_cache_path("roundtrip");
    CacheRecord rec{"110", 20, Status::representable, "construction:1l0m", 3,
                    "some word artifact"};
    {
        ResultsCache cache(path);
        cache.put(rec);
        auto got = cache.get("110", 20);
        REQUIRE(got.has_value());
        CHECK(*got == rec);
    }
    ResultsCache reread(path);
    CHECK(reread.skipped_lines() == 0);
    auto got = reread.get("110", 20);
    REQUIRE(got.has_value());
    CHECK(*got == rec);
    CHECK_FALSE(reread.get("110", 19).has_value());
}

TEST_CASE("newest record wins and appends accumulate", "[classify]") {
    auto path = fresh_cache_path("lastwins");
    {
        ResultsCache cache(path);
        cache.put({"101111", 9, Status::non_representable, "semi_transitive_search", 7,
                   std::nullopt});
        cache.put({"101111", 9, Status::non_representable, "sieve:d=2", 1, "101111@9"});
        auto got = cache.get("101111", 9);
        REQUIRE(got.has_value());
        CHECK(got->method == "sieve:d=2");
    }
    {
        // a second process appends without clobbering the first one's records
        ResultsCache cache(path);
        cache.put({"0", 5, Status::representable, "construction:0k1l0m", 0, "1 1 2 2 3 3 4 4 5 5"});
    }
    ResultsCache reread(path);
    CHECK(reread.size() == 2);
    CHECK(reread.get("101111", 9)->method == "sieve:d=2");
    CHECK(reread.get("0", 5)->status == Status::representable);
}

TEST_CASE("corrupt cache lines are skipped with a warning", "[classify]") {
    auto path = fresh_cache_path("corrupt");
    {
        std::ofstream out(path);
        out << R"({"source":"110","n":6,"status":"representable","method":"construction:1l0m","elapsed_ms":0})"
            << "\n";
        out << "not json at all\n";
        out << R"({"source":"110","n":7,"status":"maybe","method":"x","elapsed_ms":0})" << "\n";
        out << R"({"source":"110","n":8,"status":"representable","method":"x","elapsed_ms":0,"extra":1})"
            << "\n";
        out << R"([1,2,3])" << "\n";
        out << R"({"source":"","n":9,"status":"representable","method":"x","elapsed_ms":0})" << "\n";
        out << R"({"source":"111","n":9,"status":"representable","method":"x","elapsed_ms":0})" << "\n";
    }
    ResultsCache cache(path);
    CHECK(cache.skipped_lines() == 5);
    CHECK(cache.size() == 2);
    CHECK(cache.get("110", 6).has_value());
    CHECK(cache.get("111", 9).has_value());
}

TEST_CASE("the cache rejects malformed records at the source", "[classify]") {
    ResultsCache cache;
    auto code_is = [](const std::string& want) {
        return Catch::Matchers::Predicate<Error>(
            [want](const Error& e) { return e.code() == want; });
    };
    CHECK_THROWS_MATCHES(cache.put({"", 5, Status::representable, "x", 0, std::nullopt}), Error,
                         code_is("InvalidRecord"));
    CHECK_THROWS_MATCHES(cache.put({"110", 0, Status::representable, "x", 0, std::nullopt}),
                         Error, code_is("InvalidRecord"));
    CHECK_THROWS_MATCHES(cache.put({"110", 5, Status::inconclusive, "x", 0, std::nullopt}), Error,
                         code_is("InvalidRecord"));
    // a refutation cannot be justified by a construction
    CHECK_THROWS_MATCHES(
        cache.put({"110", 5, Status::non_representable, "construction:1l0m", 0, std::nullopt}),
        Error, code_is("InvalidRecord"));
    cache.put({"110", 5, Status::non_representable, "semi_transitive_search", 0, std::nullopt});
    cache.put({"110", 6, Status::non_representable, "sieve:d=3", 0, "0@2"});
    CHECK(cache.size() == 2);
}

TEST_CASE("classification picks constructions by pattern shape", "[classify]") {
    ResultsCache cache;
    struct Expect {
        const char* pattern;
        int n;
        const char* method;
    };
    for (auto [pattern, n, method] : {Expect{"0", 7, "construction:0k1l0m"},
                                      Expect{"1", 7, "construction:0k1l0m"},
                                      Expect{"001", 12, "construction:residue_cliques"},
                                      Expect{"011", 12, "construction:0k1l"},
                                      Expect{"110", 20, "construction:1l0m"},
                                      Expect{"0110", 12, "construction:0k1l0m"},
                                      Expect{"10111", 9, "construction:1k01mk"}}) {
        auto rec = wordrep::classify(pat(pattern), n, cache);
        REQUIRE(rec.has_value());
        INFO("pattern=" << pattern);
        CHECK(rec->status == Status::representable);
        CHECK(rec->method == method);
        REQUIRE(rec->artifact.has_value());
        auto word = wordrep::parse_word(*rec->artifact);
        CHECK(wordrep::verify_representant(word, wordrep::build_toeplitz(pat(pattern), n)).ok);
    }
}

TEST_CASE("classification falls back to exhaustive search", "[classify]") {
    ResultsCache cache;
    auto rep = wordrep::classify(pat("1110011"), 8, cache);
    REQUIRE(rep.has_value());
    CHECK(rep->status == Status::representable);
    CHECK(rep->method == "semi_transitive_search");
    REQUIRE(rep->artifact.has_value());
    CHECK(rep->artifact->find('>') != std::string::npos); // an orientation, not a word

    auto refuted = wordrep::classify(pat("101111"), 9, cache);
    REQUIRE(refuted.has_value());
    CHECK(refuted->status == Status::non_representable);
    CHECK(refuted->method == "semi_transitive_search");
    CHECK_FALSE(refuted->artifact.has_value());

    // both verdicts are now served from the cache
    auto again = wordrep::classify(pat("101111"), 9, cache);
    REQUIRE(again.has_value());
    CHECK(again->method == "cache");
    CHECK(again->status == Status::non_representable);
    CHECK(wordrep::classify(pat("1110011"), 8, cache)->method == "cache");
}

TEST_CASE("the sieve refutes via a refuted subsample", "[classify]") {
    SECTION("with the sub-instance already cached") {
        ResultsCache cache;
        REQUIRE(wordrep::classify(pat("101111"), 9, cache)->status == Status::non_representable);
        auto hit = wordrep::sieve(pat("010001010101"), 18, cache);
        REQUIRE(hit.has_value());
        CHECK(hit->divisor == 2);
        CHECK(hit->sub_record.source == "101111");
        CHECK(hit->sub_record.n == 9);
    }
    SECTION("from scratch, recording the chain") {
        ResultsCache cache;
        auto rec = wordrep::classify(pat("010001010101"), 18, cache);
        REQUIRE(rec.has_value());
        CHECK(rec->status == Status::non_representable);
        CHECK(rec->method == "sieve:d=2");
        REQUIRE(rec->artifact.has_value());
        CHECK(*rec->artifact == "101111@9");
        // the sub-instance verdict was cached along the way
        auto sub = cache.get("101111", 9);
        REQUIRE(sub.has_value());
        CHECK(sub->status == Status::non_representable);
    }
    SECTION("sound: the full instance is genuinely non-representable") {
        auto direct = wordrep::decide(wordrep::build_toeplitz(pat("010001010101"), 18));
        CHECK(direct.status == Status::non_representable);
    }
    SECTION("no refutable subsample means no verdict") {
        ResultsCache cache;
        CHECK_FALSE(wordrep::sieve(pat("10"), 10, cache).has_value());
        CHECK_FALSE(wordrep::sieve(pat("1110011"), 9, cache).has_value()); // prime length
    }
}

TEST_CASE("iwr scans upward and stops at the first refutation", "[classify]") {
    ResultsCache cache;
    CHECK(wordrep::iwr(pat("10011111"), 12, cache) == IwrResult::exact(8));
    CHECK(wordrep::iwr(pat("1001111"), 12, cache) == IwrResult::exact(8));
    CHECK(wordrep::iwr(pat("101111"), 12, cache) == IwrResult::exact(8));
    CHECK(wordrep::iwr(pat("110"), 20, cache) == IwrResult::at_least(20));
    CHECK(wordrep::iwr(wordrep::riordan_pascal(), 12, cache) == IwrResult::exact(11));
    CHECK(wordrep::iwr(wordrep::riordan_catalan(), 13, cache) == IwrResult::exact(12));
    CHECK_THROWS_MATCHES(wordrep::iwr(pat("110"), 4, cache), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == "CapTooSmall"; }));
}

TEST_CASE("iwr trusts cached refutations", "[classify]") {
    ResultsCache cache;
    cache.put({"10011111", 9, Status::non_representable, "semi_transitive_search", 0,
               std::nullopt});
    auto result = wordrep::iwr(pat("10011111"), 12, cache);
    CHECK(result == IwrResult::exact(8));
    // the scan classified 5..8 fresh and served 9 from the cache
    CHECK(cache.get("10011111", 8)->status == Status::representable);
}

TEST_CASE("a spent search budget surfaces as an inconclusive bound", "[classify]") {
    ResultsCache cache;
    SearchOptions tiny;
    tiny.budget = 1;
    auto result = wordrep::iwr(pat("1110011"), 12, cache, tiny);
    CHECK(result.kind == IwrResult::Kind::at_least);
    CHECK(result.inconclusive);
    CHECK(result.value == 4);
    // nothing unproven was cached
    CHECK_FALSE(cache.get("1110011", 5).has_value());
}

TEST_CASE("family scans tally every pattern", "[classify]") {
    {
        ResultsCache cache;
        auto s = wordrep::scan_family(1, 6, cache);
        CHECK(s.representable == 2);
        CHECK(s.non_representable == 0);
        CHECK(s.inconclusive == 0);
    }
    {
        ResultsCache cache;
        auto s = wordrep::scan_family(5, 8, cache);
        CHECK(s.representable == 32); // everything this short stays representable at n = 8
        CHECK(s.non_representable_patterns.empty());
    }
}

TEST_CASE("a length-9 scan finds the padded refutation", "[classify]") {
    auto path = fresh_cache_path("scan9");
    {
        ResultsCache cache(path);
        auto s = wordrep::scan_family(9, 9, cache);
        CHECK(s.representable + s.non_representable + s.inconclusive == 512);
        CHECK(s.inconclusive == 0);
        auto& bad = s.non_representable_patterns;
        CHECK(std::find(bad.begin(), bad.end(), "101111101") != bad.end());
        CHECK(std::find(bad.begin(), bad.end(), "101111111") == bad.end()); // spot check
    }
    // records written by the scan are readable by iwr in a fresh process
    ResultsCache reread(path);
    CHECK(reread.skipped_lines() == 0);
    REQUIRE(reread.get("101111101", 9).has_value());
    CHECK(wordrep::iwr(pat("101111101"), 12, reread) == IwrResult::exact(8));
}
