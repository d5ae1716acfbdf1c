#pragma once

// Explicit word-representants for the graph families that admit them:
// periodic-pattern (Toeplitz) graphs of shape 0^k 1^l 0^m and 1^{k-1} 0 1^{m-k},
// residue cliques, forests, and a greedy 3-coloring certificate for graphs
// whose edges connect vertices at one or two fixed distances.
//
// The periodic constructions all work over the residue blocks
//   B_i = { a in [n] : a ≡ i (mod p) },   i = 1..p,
// where p is the pattern length.  Vertices inside one block are pairwise
// adjacent exactly when the pattern's last bit is 1 (distance p), and the
// relation between two blocks depends only on their index distance, which is
// what makes block-merge words work uniformly.

#include <algorithm>
#include <deque>
#include <numeric>
#include <vector>

#include "wordrep/error.hpp"
#include "wordrep/graph.hpp"
#include "wordrep/words.hpp"

namespace wordrep {

struct BlockPartition {
    int modulus = 0;
    std::vector<std::vector<int>> blocks; // blocks[i-1] holds B_i, ascending

    // 1-based accessor matching the B_i notation used throughout.
    const std::vector<int>& block(int i) const {
        return blocks.at(static_cast<std::size_t>(i) - 1);
    }
};

inline BlockPartition blocks(int n, int modulus) {
    if (modulus < 1) fail("BadModulus", "block modulus must be positive");
    if (n < 0) fail("BadVertexCount", "vertex count must be non-negative");
    BlockPartition bp;
    bp.modulus = modulus;
    bp.blocks.resize(static_cast<std::size_t>(modulus));
    for (int i = 1; i <= modulus; ++i)
        for (int a = i; a <= n; a += modulus)
            bp.blocks[static_cast<std::size_t>(i) - 1].push_back(a);
    return bp;
}

namespace detail {

// Union of the cyclic run B_first, B_first+1, ..., `count` blocks long
// (indices wrap p -> 1).  Element order is irrelevant; u/d sort anyway.
inline std::vector<int> block_run(const BlockPartition& bp, int first, int count) {
    std::vector<int> members;
    for (int step = 0; step < count; ++step) {
        const auto& b = bp.blocks[static_cast<std::size_t>((first - 1 + step) % bp.modulus)];
        members.insert(members.end(), b.begin(), b.end());
    }
    return members;
}

// Append u(...) / d(...) of a vertex set, silently dropping empty sets —
// blocks with index > n are empty and contribute nothing.
inline void append_u(Word& out, std::vector<int> members) {
    if (members.empty()) return;
    Word piece = u_word(std::move(members));
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
}

inline void append_d(Word& out, std::vector<int> members) {
    if (members.empty()) return;
    Word piece = d_word(std::move(members));
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
}

inline void append_d_range(Word& out, const BlockPartition& bp, int from, int to) {
    for (int i = from; i <= to; ++i) append_d(out, bp.block(i));
}

// d(B_1) d(B_2) ... d(B_p): one descending run per block.
inline Word block_factor_base(const BlockPartition& bp) {
    Word w;
    append_d_range(w, bp, 1, bp.modulus);
    return w;
}

// The "merge k+1 consecutive blocks starting at B_t" factor.  For
// t <= l+m the run stays inside 1..p and the factor is a permutation of
// [n]; for larger t the run wraps past B_p, the absorbed low blocks are
// also kept in the leading prefix, and every letter occurs exactly twice.
inline Word block_factor_w1(const BlockPartition& bp, int k, int l, int m, int t) {
    const int p = bp.modulus;
    Word w;
    append_d_range(w, bp, 1, t - 1);
    append_d(w, block_run(bp, t, k + 1));
    if (t <= l + m)
        append_d_range(w, bp, t + k + 1, p);
    else
        append_d_range(w, bp, t - l - m + 1, p);
    return w;
}

// The "ascending run of m consecutive blocks ending at B_t" factor.  For
// t >= m the run stays inside 1..p (a permutation of [n]); for smaller t
// it wraps and the factor is 2-uniform.
inline Word block_factor_w2(const BlockPartition& bp, int k, int l, int m, int t) {
    const int p = bp.modulus;
    Word w;
    if (t <= m - 1) {
        append_d_range(w, bp, 1, k + l + t);
        append_u(w, block_run(bp, k + l + t + 1, m));
    } else {
        append_d_range(w, bp, 1, t - m);
        append_u(w, block_run(bp, t - m + 1, m));
    }
    append_d_range(w, bp, t + 1, p);
    return w;
}

inline Word concatenate(const std::vector<Word>& factors) {
    Word out;
    for (const Word& f : factors)
        out.letters.insert(out.letters.end(), f.letters.begin(), f.letters.end());
    return out;
}

} // namespace detail

// Factor list for the 0^k 1^l 0^m representant: the base word, then the
// merge factors w1(1..p), then (when m > 0) the ascending factors w2(1..p).
// Degenerate shapes collapse to a single factor: no 1s means the graph is
// edgeless (1 1 2 2 ... n n); all 1s means it is complete (one permutation).
inline std::vector<Word> represent_0k1l0m_factors(int k, int l, int m, int n) {
    if (k < 0 || l < 0 || m < 0 || n < 1)
        fail("AllZeroLength", "pattern exponents must be non-negative and n positive");
    const int p = k + l + m;
    if (p == 0) fail("AllZeroLength", "pattern 0^k 1^l 0^m requires k+l+m >= 1");
    if (l == 0) {
        Word w;
        for (int x = 1; x <= n; ++x) w.letters.insert(w.letters.end(), {x, x});
        return {w};
    }
    if (k == 0 && m == 0) {
        Word w;
        w.letters.resize(static_cast<std::size_t>(n));
        std::iota(w.letters.begin(), w.letters.end(), 1);
        return {w};
    }
    const BlockPartition bp = blocks(n, p);
    std::vector<Word> factors;
    factors.reserve(static_cast<std::size_t>(1 + p + (m > 0 ? p : 0)));
    factors.push_back(detail::block_factor_base(bp));
    for (int t = 1; t <= p; ++t) factors.push_back(detail::block_factor_w1(bp, k, l, m, t));
    if (m > 0)
        for (int t = 1; t <= p; ++t) factors.push_back(detail::block_factor_w2(bp, k, l, m, t));
    return factors;
}

inline Word represent_0k1l0m(int k, int l, int m, int n) {
    return detail::concatenate(represent_0k1l0m_factors(k, l, m, n));
}

// Shortened word for patterns with no trailing zeros (0^k 1^l): the w2
// factors are unnecessary, so the word is base . w1(1) ... w1(k+l).
inline Word represent_0k1l(int k, int l, int n) {
    if (k < 1 || l < 1 || n < 1)
        fail("ConditionNotMet", "represent_0k1l needs k >= 1, l >= 1, n >= 1");
    return represent_0k1l0m(k, l, 0, n);
}

// Shortened word for patterns with no leading zeros (1^l 0^m): the w1
// factors are unnecessary, so the word is base . w2(1) ... w2(l+m).
inline Word represent_1l0m(int l, int m, int n) {
    if (l < 1 || m < 1 || n < 1)
        fail("ConditionNotMet", "represent_1l0m needs l >= 1, m >= 1, n >= 1");
    const BlockPartition bp = blocks(n, l + m);
    std::vector<Word> factors;
    factors.push_back(detail::block_factor_base(bp));
    for (int t = 1; t <= l + m; ++t)
        factors.push_back(detail::block_factor_w2(bp, 0, l, m, t));
    return detail::concatenate(factors);
}

// Representant for patterns 1^{k-1} 0 1^{m-k} (a single 0 at offset k in a
// window of length m), available when k = m/2 or gcd(k, m) = 1.
//
// k = m/2: interleave the complementary block pairs (B_i, B_{k+i}) twice,
// swapping the order of each pair in the second half.
//
// gcd(k, m) = 1: stepping by k modulo m visits every block once, giving the
// sequence S_j = B_{(jk mod m)+1}, j = 0..m-1, in which consecutive entries
// are non-adjacent block pairs.  The word merges each consecutive pair in
// turn (m-1 permutation factors), closing with a wrapped 2-uniform factor
// that merges the last entry with the first.
inline Word represent_1k01mk(int k, int m, int n) {
    if (k < 1 || m <= k || n < 1)
        fail("ConditionNotMet", "represent_1k01mk needs 1 <= k < m and n >= 1");
    const BlockPartition bp = blocks(n, m);
    if (m % 2 == 0 && k == m / 2) {
        Word w;
        for (int i = 1; i <= k; ++i) {
            detail::append_d(w, bp.block(i));
            detail::append_d(w, bp.block(k + i));
        }
        for (int i = 1; i <= k; ++i) {
            detail::append_d(w, bp.block(k + i));
            detail::append_d(w, bp.block(i));
        }
        return w;
    }
    if (std::gcd(k, m) != 1)
        fail("ConditionNotMet", "pattern requires gcd(k, m) = 1 or k = m/2");
    std::vector<int> seq(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        seq[static_cast<std::size_t>(j)] =
            (j * k) % m + 1; // block index visited at step j
    auto seq_block = [&](int j) { return bp.block(seq[static_cast<std::size_t>(j)]); };
    auto merged = [&](int j1, int j2) {
        std::vector<int> members = seq_block(j1);
        const auto& other = seq_block(j2);
        members.insert(members.end(), other.begin(), other.end());
        return members;
    };
    Word w;
    for (int t = 1; t < m; ++t) {
        for (int j = 0; j <= t - 2; ++j) detail::append_d(w, seq_block(j));
        detail::append_d(w, merged(t - 1, t));
        for (int j = t + 1; j <= m - 1; ++j) detail::append_d(w, seq_block(j));
    }
    for (int j = 0; j <= m - 2; ++j) detail::append_d(w, seq_block(j));
    detail::append_d(w, merged(m - 1, 0));
    for (int j = 1; j <= m - 1; ++j) detail::append_d(w, seq_block(j));
    return w;
}

// Pattern 0^{k-1} 1: vertices are adjacent iff congruent mod k, so the graph
// is a disjoint union of cliques on the residue classes.  Two permutations
// suffice: ascending blocks forward, then the same blocks in reverse order.
// Within a block letters appear in the same relative order both times
// (alternating); across blocks the second pass reverses the order (not).
inline Word represent_residue_cliques(int k, int n) {
    if (k < 1 || n < 1) fail("BadModulus", "represent_residue_cliques needs k, n >= 1");
    const BlockPartition bp = blocks(n, k);
    Word w;
    for (int i = 1; i <= k; ++i) detail::append_u(w, bp.block(i));
    for (int i = k; i >= 1; --i) detail::append_u(w, bp.block(i));
    return w;
}

// 2-uniform representant of a forest.  Each tree grows from its smallest
// vertex: the word starts as "r r", and a leaf v hanging off u is added by
// rotating the word to u's first occurrence (harmless: cyclic shifts of a
// uniform word represent the same graph) and prefixing v u v, which makes
// v alternate with u and with nothing else.  Trees are concatenated, so
// letters from different components never alternate.
inline Word represent_forest(const LabeledGraph& g) {
    const int n = g.size();
    std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
    Word out;
    for (int root = 1; root <= n; ++root) {
        if (visited[root]) continue;
        std::vector<int> order;
        std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
        std::deque<int> queue{root};
        visited[static_cast<std::size_t>(root)] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w = 1; w <= n; ++w) {
                if (!g.adjacent(v, w) || w == parent[static_cast<std::size_t>(v)]) continue;
                if (visited[static_cast<std::size_t>(w)])
                    fail("NotAForest", "graph contains a cycle through vertex " +
                                           std::to_string(w));
                visited[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = v;
                queue.push_back(w);
            }
        }
        std::vector<int> cw = {order[0], order[0]};
        for (std::size_t idx = 1; idx < order.size(); ++idx) {
            int v = order[idx];
            int u = parent[static_cast<std::size_t>(v)];
            auto first_u = std::find(cw.begin(), cw.end(), u);
            std::rotate(cw.begin(), first_u, cw.end());
            std::vector<int> grown;
            grown.reserve(cw.size() + 2);
            grown.push_back(v);
            grown.push_back(u);
            grown.push_back(v);
            grown.insert(grown.end(), cw.begin() + 1, cw.end());
            cw = std::move(grown);
        }
        out.letters.insert(out.letters.end(), cw.begin(), cw.end());
    }
    return out;
}

// True iff directing every edge from the smaller to the larger label yields
// a transitive orientation — a cheap sufficient certificate that the graph
// is a comparability graph (hence representable by permutations).
inline bool label_order_transitive(const LabeledGraph& g) {
    const int n = g.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (!g.adjacent(i, j)) continue;
            for (int k = j + 1; k <= n; ++k)
                if (g.adjacent(j, k) && !g.adjacent(i, k)) return false;
        }
    return true;
}

// Greedy proper 3-coloring of the graph whose vertices i, j are adjacent
// iff |i - j| is s+1 or t+1.  Scanning vertices in increasing order, each
// vertex sees at most two earlier neighbors, so of three colors at least
// one is free; ties pick the smallest color for determinism.
inline std::vector<int> three_color_fixed_distance(int s, int t, int n) {
    if (s < 0 || t <= s) fail("BadDistance", "three_color_fixed_distance needs 0 <= s < t");
    if (n < 0) fail("BadVertexCount", "vertex count must be non-negative");
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
        bool used[4] = {false, false, false, false};
        for (int d : {s + 1, t + 1})
            if (i - d >= 1) used[color[static_cast<std::size_t>(i - d - 1)]] = true;
        int c = 1;
        while (used[c]) ++c;
        color[static_cast<std::size_t>(i) - 1] = c;
    }
    return color;
}

} // namespace wordrep
