#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wordrep/error.hpp"
#include "wordrep/graph.hpp"

namespace wordrep {

// A finite word over positive integer letters.  Letters name graph vertices.
struct Word {
    std::vector<int> letters;

    std::size_t length() const { return letters.size(); }
    bool contains(int x) const {
        return std::find(letters.begin(), letters.end(), x) != letters.end();
    }

    friend bool operator==(const Word&, const Word&) = default;
};

inline std::string word_to_string(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s.push_back(' ');
        s += std::to_string(w.letters[i]);
    }
    return s;
}

// Space-separated decimal labels.  A compact digit form ("14213243") is
// accepted when there is no whitespace and every character is 1..9; for
// graphs with ten or more vertices the separated form is required.
inline Word parse_word(const std::string& text) {
    bool has_space = text.find_first_of(" \t") != std::string::npos;
    Word w;
    if (!has_space && text.size() >= 2 &&
        std::all_of(text.begin(), text.end(), [](char c) { return c >= '1' && c <= '9'; })) {
        for (char c : text) w.letters.push_back(c - '0');
        return w;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
        const std::string tok = text.substr(i, j - i);
        int v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                fail("WordSyntax", "bad letter '" + tok + "' in word");
            v = v * 10 + (c - '0');
            if (v > 1000000) fail("WordSyntax", "letter out of range: " + tok);
        }
        if (v < 1) fail("WordSyntax", "letters must be positive, got '" + tok + "'");
        w.letters.push_back(v);
        i = j;
    }
    if (w.letters.empty()) fail("WordSyntax", "empty word");
    return w;
}

// Do x and y strictly alternate in w?  Both letters must occur.
inline bool alternate(const Word& w, int x, int y) {
    if (x == y) fail("LabelAbsent", "alternation needs two distinct letters");
    bool seen_x = false, seen_y = false;
    int last = 0;
    bool alternating = true;
    for (int c : w.letters) {
        if (c != x && c != y) continue;
        if (c == x) seen_x = true;
        if (c == y) seen_y = true;
        if (c == last) alternating = false;
        last = c;
    }
    if (!seen_x) fail("LabelAbsent", "letter " + std::to_string(x) + " does not occur");
    if (!seen_y) fail("LabelAbsent", "letter " + std::to_string(y) + " does not occur");
    return alternating;
}

struct VerifyViolation {
    int x = 0;
    int y = 0;
    bool edge = false;       // adjacency in the graph
    bool alternates = false; // behaviour in the word
};

struct VerifyResult {
    bool ok = true;
    std::vector<VerifyViolation> violations;
};

// Check whether w represents g: every vertex occurs, and alternation in w
// coincides with adjacency in g across all vertex pairs.
inline VerifyResult verify_representant(const Word& w, const LabeledGraph& g) {
    int n = g.size();
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (int c : w.letters) {
        if (c < 1 || c > n)
            fail("CoverageError", "letter " + std::to_string(c) + " outside 1.." +
                                      std::to_string(n));
        ++count[static_cast<std::size_t>(c)];
    }
    for (int v = 1; v <= n; ++v)
        if (count[static_cast<std::size_t>(v)] == 0)
            fail("CoverageError", "vertex " + std::to_string(v) + " missing from word");
    VerifyResult r;
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) {
            bool alt = alternate(w, x, y);
            bool edge = g.adjacent(x, y);
            if (alt != edge) {
                r.ok = false;
                r.violations.push_back({x, y, edge, alt});
            }
        }
    return r;
}

// The graph a word defines: an edge wherever the two letters alternate.
// Vertices are 1..n; the word must cover them all.
inline LabeledGraph alternation_graph(const Word& w, int n) {
    LabeledGraph g(n);
    for (int c : w.letters)
        if (c < 1 || c > n)
            fail("CoverageError", "letter " + std::to_string(c) + " outside 1.." +
                                      std::to_string(n));
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            if (alternate(w, x, y)) g.add_edge(x, y);
    return g;
}

// Ascending / descending one-pass words over a vertex set.
inline Word u_word(std::vector<int> set) {
    if (set.empty()) fail("EmptySet", "u-word of an empty set");
    std::sort(set.begin(), set.end());
    return {std::move(set)};
}

inline Word d_word(std::vector<int> set) {
    if (set.empty()) fail("EmptySet", "d-word of an empty set");
    std::sort(set.begin(), set.end(), std::greater<int>());
    return {std::move(set)};
}

// k when every occurring letter occurs exactly k times; nullopt otherwise
// (including the empty word).
inline std::optional<int> is_uniform(const Word& w) {
    if (w.letters.empty()) return std::nullopt;
    std::vector<std::pair<int, int>> counts; // letter -> count, small words
    for (int c : w.letters) {
        auto it = std::find_if(counts.begin(), counts.end(),
                               [c](const auto& p) { return p.first == c; });
        if (it == counts.end())
            counts.emplace_back(c, 1);
        else
            ++it->second;
    }
    int k = counts.front().second;
    for (const auto& [letter, cnt] : counts)
        if (cnt != k) return std::nullopt;
    return k;
}

// Rotate a uniform word so it begins with letter x.  Cyclic shifts of
// uniform words represent the same graph, which makes this safe to use when
// normalising certificates.
inline Word cyclic_shift_to_front(const Word& w, int x) {
    if (!is_uniform(w))
        fail("NotUniform", "cyclic shifts only preserve representation for uniform words");
    auto it = std::find(w.letters.begin(), w.letters.end(), x);
    if (it == w.letters.end())
        fail("LabelAbsent", "letter " + std::to_string(x) + " does not occur");
    Word r;
    r.letters.reserve(w.letters.size());
    r.letters.insert(r.letters.end(), it, w.letters.end());
    r.letters.insert(r.letters.end(), w.letters.begin(), it);
    return r;
}

} // namespace wordrep
