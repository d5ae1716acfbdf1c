#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordrep/error.hpp"
#include "wordrep/series.hpp"

namespace wordrep {

// Simple undirected graph on vertices 1..n.  The adjacency matrix is kept
// symmetric with a zero diagonal; vertex arguments are 1-based throughout to
// match the usual labelled-graph conventions in this domain.
class LabeledGraph {
public:
    explicit LabeledGraph(int n) : n_(n) {
        if (n < 0) fail("VertexOutOfRange", "vertex count must be non-negative");
        bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    }

    int size() const { return n_; }

    bool adjacent(int u, int v) const {
        check(u);
        check(v);
        return bits_[idx(u, v)] != 0;
    }

    void add_edge(int u, int v) {
        check(u);
        check(v);
        if (u == v) fail("SelfLoop", "self loops are not allowed");
        bits_[idx(u, v)] = 1;
        bits_[idx(v, u)] = 1;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 1; u <= n_; ++u)
            for (int v = u + 1; v <= n_; ++v)
                if (bits_[idx(u, v)]) e.emplace_back(u, v);
        return e;
    }

    int edge_count() const {
        int c = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = u + 1; v <= n_; ++v) c += bits_[idx(u, v)];
        return c;
    }

    int degree(int v) const {
        check(v);
        int c = 0;
        for (int u = 1; u <= n_; ++u) c += bits_[idx(v, u)];
        return c;
    }

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

private:
    void check(int v) const {
        if (v < 1 || v > n_)
            fail("VertexOutOfRange", "vertex " + std::to_string(v) +
                                         " outside 1.." + std::to_string(n_));
    }
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u - 1) * n_ + static_cast<std::size_t>(v - 1);
    }

    int n_;
    std::vector<uint8_t> bits_;
};

// Periodic 0/1 distance pattern a_1 a_2 ... a_m.
struct ToeplitzPattern {
    std::vector<uint8_t> bits;

    std::size_t period() const { return bits.size(); }
    std::string text() const { return detail::bits_to_text(bits); }

    friend bool operator==(const ToeplitzPattern&, const ToeplitzPattern&) = default;
};

inline ToeplitzPattern parse_pattern(const std::string& text) {
    if (text.empty()) fail("PatternSyntax", "empty Toeplitz pattern");
    ToeplitzPattern p;
    p.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            fail("PatternSyntax", std::string("bad character '") + c + "' in pattern");
        p.bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return p;
}

// A Riordan graph source: the pair of series (g, f).
struct RiordanSpec {
    SeriesSpec g;
    SeriesSpec f;

    std::string text() const { return g.text + "," + f.text; }
};

inline RiordanSpec riordan_pascal() {
    return {parse_series_spec("1/11"), parse_series_spec("01/11")};
}
inline RiordanSpec riordan_catalan() {
    return {SeriesSpec::catalan_g(), SeriesSpec::catalan_f()};
}
inline RiordanSpec riordan_fibonacci() {
    return {parse_series_spec("1/111"), parse_series_spec("01")};
}

inline std::optional<RiordanSpec> riordan_builtin(const std::string& name) {
    if (name == "pascal") return riordan_pascal();
    if (name == "catalan") return riordan_catalan();
    if (name == "fibonacci") return riordan_fibonacci();
    return std::nullopt;
}

// Vertices i > j are adjacent exactly when the z^(i-2) coefficient of
// g * f^(j-1) is 1, i.e. the strictly lower triangle of the adjacency matrix
// is the binary Riordan matrix B(zg, f) read at row i-1, column j-1.
inline LabeledGraph build_riordan_graph(const RiordanSpec& spec, int n) {
    if (n < 1) fail("VertexOutOfRange", "graph order must be at least 1");
    std::size_t order = static_cast<std::size_t>(n);
    Gf2Series f = expand(spec.f, order);
    if (f.coeffs[0] != 0)
        fail("FNotProper", "Riordan graph needs f with constant term 0: " + spec.f.text);
    Gf2Series col = expand(spec.g, order);
    LabeledGraph g(n);
    for (int j = 1; j < n; ++j) {
        for (int i = j + 1; i <= n; ++i)
            if (col.coeffs[static_cast<std::size_t>(i - 2)]) g.add_edge(i, j);
        if (j + 1 < n) col = series_mul(col, f);
    }
    return g;
}

// Distance rule: i ~ j  iff  a_(((|i-j|-1) mod m) + 1) = 1.
inline LabeledGraph build_toeplitz(const ToeplitzPattern& p, int n) {
    if (n < 1) fail("VertexOutOfRange", "graph order must be at least 1");
    if (p.bits.empty()) fail("PatternSyntax", "empty Toeplitz pattern");
    LabeledGraph g(n);
    std::size_t m = p.bits.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (p.bits[static_cast<std::size_t>(j - i - 1) % m]) g.add_edge(i, j);
    return g;
}

// The same graph through the Riordan route:
// G_n(a_1...a_m) = G_n((a_1 + a_2 z + ... + a_m z^(m-1))/(1 - z^m), z).
inline RiordanSpec toeplitz_riordan_spec(const ToeplitzPattern& p) {
    if (p.bits.empty()) fail("PatternSyntax", "empty Toeplitz pattern");
    std::vector<uint8_t> den;
    den.reserve(p.bits.size() + 1);
    den.push_back(1);
    den.insert(den.end(), p.bits.size() - 1, 0);
    den.push_back(1);
    return {SeriesSpec::rational(p.bits, den), SeriesSpec::polynomial({0, 1})};
}

// i ~ j iff |i-j| is one of the given distances.
inline LabeledGraph build_fixed_distance_graph(const std::vector<int>& distances, int n) {
    if (n < 1) fail("VertexOutOfRange", "graph order must be at least 1");
    for (int d : distances)
        if (d < 1) fail("BadDistance", "distances must be positive, got " + std::to_string(d));
    LabeledGraph g(n);
    for (int d : distances)
        for (int i = 1; i + d <= n; ++i) g.add_edge(i, i + d);
    return g;
}

// Induced subgraph with the order-preserving relabelling of `vertices` to
// 1..k; the vertex list must be strictly increasing.
inline LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<int>& vertices) {
    for (std::size_t t = 0; t < vertices.size(); ++t) {
        if (vertices[t] < 1 || vertices[t] > g.size())
            fail("VertexOutOfRange", "vertex " + std::to_string(vertices[t]) +
                                         " outside 1.." + std::to_string(g.size()));
        if (t > 0 && vertices[t] <= vertices[t - 1])
            fail("BadVertexList", "vertex list must be strictly increasing");
    }
    LabeledGraph h(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.adjacent(vertices[a], vertices[b]))
                h.add_edge(static_cast<int>(a + 1), static_cast<int>(b + 1));
    return h;
}

// Keep every d-th pattern entry: (a_d, a_2d, ..., a_m).  Restricting
// G_n(a_1...a_m) to the vertices {d, 2d, ...} gives exactly the Toeplitz
// graph of the subsampled pattern on floor(n/d) vertices.
inline ToeplitzPattern subsample_pattern(const ToeplitzPattern& p, int d) {
    std::size_t m = p.bits.size();
    if (d < 1 || m % static_cast<std::size_t>(d) != 0)
        fail("NotADivisor", std::to_string(d) + " does not divide the pattern length " +
                                std::to_string(m));
    ToeplitzPattern q;
    for (std::size_t i = static_cast<std::size_t>(d); i <= m; i += static_cast<std::size_t>(d))
        q.bits.push_back(p.bits[i - 1]);
    return q;
}

// --- text formats ---------------------------------------------------------

// n lines of n characters '0'/'1', newline after each row.
inline std::string to_matrix_text(const LabeledGraph& g) {
    std::string s;
    s.reserve(static_cast<std::size_t>(g.size()) * (g.size() + 1));
    for (int i = 1; i <= g.size(); ++i) {
        for (int j = 1; j <= g.size(); ++j)
            s.push_back(i != j && g.adjacent(i, j) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

inline LabeledGraph parse_matrix_text(const std::string& text) {
    std::vector<std::string> rows;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty()) rows.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) rows.push_back(cur);
    if (rows.empty()) fail("MatrixSyntax", "empty adjacency matrix");
    int n = static_cast<int>(rows.size());
    LabeledGraph g(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            fail("MatrixSyntax", "row " + std::to_string(i + 1) + " has " +
                                     std::to_string(rows[i].size()) + " columns, expected " +
                                     std::to_string(n));
        for (int j = 0; j < n; ++j) {
            char c = rows[i][j];
            if (c != '0' && c != '1')
                fail("MatrixSyntax", std::string("bad matrix character '") + c + "'");
            if (c == '1' && i == j) fail("MatrixSyntax", "non-zero diagonal entry");
            if (c == '1' && i < j) g.add_edge(i + 1, j + 1);
            if ((c == '1') != (rows[j][i] == '1'))
                fail("MatrixSyntax", "matrix is not symmetric at (" + std::to_string(i + 1) +
                                         "," + std::to_string(j + 1) + ")");
        }
    }
    return g;
}

inline std::string to_dot(const LabeledGraph& g) {
    std::string s = "graph G {\n";
    for (int v = 1; v <= g.size(); ++v) s += "  " + std::to_string(v) + ";\n";
    for (auto [u, v] : g.edges())
        s += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    s += "}\n";
    return s;
}

} // namespace wordrep
