#pragma once

// Semi-transitive orientations.  An acyclic orientation is semi-transitive
// when no directed path v1 -> ... -> vk with the extra edge v1 -> vk carries
// a non-adjacent vertex pair; a graph admits such an orientation exactly
// when it is word-representable, which makes the exhaustive search below a
// decision procedure.
//
// Shortcut detection uses a reachability reduction instead of enumerating
// paths.  Write a ~> b for "a directed path of >= 1 edge".  Claim: a
// shortcut exists iff there are a directed edge u -> v and distinct x, y
// with u ~>* x, x ~> y, y ~>* v and {x,y} not an edge (~>* allows the empty
// path).  One direction is immediate.  For the other, concatenate the three
// segments: in an acyclic digraph every vertex of the u-to-x segment
// precedes x topologically and every vertex of the y-to-v segment follows
// y, so the segments meet only at x and y and the concatenation is a simple
// directed u -> ... -> v path through the non-adjacent pair.  (Pairs that
// are adjacent on such a path are automatically oriented forward along it,
// else they would close a directed cycle, so induced completeness plus
// acyclicity equals transitivity and the non-adjacent pair is the only way
// a shortcut can arise.)  The equivalence is additionally cross-checked in
// the tests against a literal all-paths oracle.
//
// Vertex sets are uint64_t bitmasks throughout, which caps the engine at 64
// vertices — far beyond the 13-vertex instances the search is meant for.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wordrep/error.hpp"
#include "wordrep/graph.hpp"
#include "wordrep/words.hpp"

namespace wordrep {

struct Orientation {
    LabeledGraph base;
    std::vector<std::pair<int, int>> directed; // (u, v) means u -> v
};

inline std::string orientation_to_string(const Orientation& o) {
    std::string out;
    for (auto [u, v] : o.directed) {
        if (!out.empty()) out += ' ';
        out += std::to_string(u) + ">" + std::to_string(v);
    }
    return out;
}

struct ShortcutWitness {
    int from = 0, to = 0; // the directed edge from -> to
    int x = 0, y = 0;     // non-adjacent pair on a directed from-to path
};

struct SearchStats {
    std::uint64_t nodes_explored = 0;
    std::uint64_t prunes = 0;
    std::chrono::milliseconds elapsed{0};
    int parallel_workers = 1;
};

enum class SearchOutcome { found, none, budget_exhausted };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::none;
    std::optional<Orientation> orientation;
    SearchStats stats;
};

struct SearchOptions {
    std::optional<std::uint64_t> budget; // max decision nodes; empty = unlimited
    int workers = 1;
};

enum class Status { representable, non_representable, inconclusive };

struct Decision {
    Status status = Status::inconclusive;
    std::optional<Word> word;
    std::optional<Orientation> orientation;
    std::string method;
    SearchStats stats;
};

namespace detail {

inline constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Strict reachability closures of an explicit orientation (0-based vertex
// ids).  Fails with NotAcyclic on a directed cycle.
inline void reach_closures(int n, const std::vector<std::uint64_t>& out,
                           std::vector<std::uint64_t>& down, std::vector<std::uint64_t>& up) {
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (std::uint64_t m = out[static_cast<std::size_t>(v)]; m; m &= m - 1)
            ++indeg[static_cast<std::size_t>(std::countr_zero(m))];
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (std::uint64_t m = out[static_cast<std::size_t>(order[head])]; m; m &= m - 1) {
            int w = std::countr_zero(m);
            if (--indeg[static_cast<std::size_t>(w)] == 0) order.push_back(w);
        }
    if (order.size() != static_cast<std::size_t>(n))
        fail("NotAcyclic", "orientation contains a directed cycle");
    down.assign(static_cast<std::size_t>(n), 0);
    up.assign(static_cast<std::size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        for (std::uint64_t m = out[static_cast<std::size_t>(*it)]; m; m &= m - 1) {
            int w = std::countr_zero(m);
            down[static_cast<std::size_t>(*it)] |=
                bit(w) | down[static_cast<std::size_t>(w)];
        }
    for (int v : order)
        for (std::uint64_t m = out[static_cast<std::size_t>(v)]; m; m &= m - 1)
            up[static_cast<std::size_t>(std::countr_zero(m))] |=
                bit(v) | up[static_cast<std::size_t>(v)];
}

} // namespace detail

// Scans for a shortcut; nullopt means the orientation is semi-transitive.
// The witness reported is the first in a fixed scan order: directed edges in
// their given order, then candidate x ascending, then y ascending.
inline std::optional<ShortcutWitness> find_shortcut(const Orientation& o) {
    const int n = o.base.size();
    if (n > 64) fail("TooLarge", "orientation checker supports at most 64 vertices");
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : o.base.edges()) {
        adj[static_cast<std::size_t>(u) - 1] |= detail::bit(v - 1);
        adj[static_cast<std::size_t>(v) - 1] |= detail::bit(u - 1);
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::size_t covered = 0;
    for (auto [u, v] : o.directed) {
        if (u < 1 || u > n || v < 1 || v > n || !o.base.adjacent(u, v))
            fail("OrientationMismatch",
                 "directed edge " + std::to_string(u) + "->" + std::to_string(v) +
                     " is not an edge of the base graph");
        char& s = seen[static_cast<std::size_t>(std::min(u, v) - 1) *
                           static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(std::max(u, v) - 1)];
        if (s) fail("OrientationMismatch", "edge directed twice");
        s = 1;
        ++covered;
        out[static_cast<std::size_t>(u) - 1] |= detail::bit(v - 1);
    }
    if (covered != static_cast<std::size_t>(o.base.edge_count()))
        fail("OrientationMismatch", "orientation leaves base edges undirected");

    std::vector<std::uint64_t> down, up;
    detail::reach_closures(n, out, down, up);

    for (auto [u, v] : o.directed) {
        const std::uint64_t from_u =
            detail::bit(u - 1) | down[static_cast<std::size_t>(u) - 1];
        const std::uint64_t into_v =
            detail::bit(v - 1) | up[static_cast<std::size_t>(v) - 1];
        for (std::uint64_t xs = from_u; xs; xs &= xs - 1) {
            int x = std::countr_zero(xs);
            std::uint64_t bad = down[static_cast<std::size_t>(x)] &
                                ~adj[static_cast<std::size_t>(x)] & into_v;
            if (bad)
                return ShortcutWitness{u, v, x + 1, std::countr_zero(bad) + 1};
        }
    }
    return std::nullopt;
}

inline bool is_shortcut_free(const Orientation& o) { return !find_shortcut(o).has_value(); }

namespace detail {

// Shared, mostly read-only search coordination state.
struct SearchShared {
    int n = 0;
    std::vector<std::uint64_t> adj;          // undirected adjacency, 0-based
    std::vector<std::pair<int, int>> edges;  // 0-based endpoints, lex order
    bool limited = false;
    std::atomic<std::int64_t> budget{0};     // counts down when limited
    std::atomic<bool> stop{false};
    std::atomic<bool> out_of_budget{false};
    std::mutex found_mutex;
    std::optional<std::vector<std::int8_t>> found_dirs;
};

// One backtracking engine instance; workers own one each.  The engine
// assigns directions to edges in the fixed lexicographic order, keeps
// strict up/down reachability closures incrementally, forces any edge whose
// endpoints are already ordered by reachability (the other direction would
// close a cycle), and prunes as soon as the partial orientation contains a
// shortcut.  One direction of the very first edge is skipped: reversing
// every edge of a semi-transitive orientation yields a semi-transitive
// orientation, so the half of the space explored decides found-vs-none.
class SearchEngine {
  public:
    explicit SearchEngine(SearchShared* shared)
        : sh_(shared), n_(shared->n), edge_count_(static_cast<int>(shared->edges.size())) {
        down_.assign(static_cast<std::size_t>(n_), 0);
        up_.assign(static_cast<std::size_t>(n_), 0);
        out_.assign(static_cast<std::size_t>(n_), 0);
        dir_.assign(static_cast<std::size_t>(edge_count_), 0);
        const std::size_t levels = static_cast<std::size_t>(edge_count_) + 2;
        mask_stack_.assign(levels * 3 * static_cast<std::size_t>(n_), 0);
        dir_stack_.assign(levels * static_cast<std::size_t>(edge_count_), 0);
    }

    std::uint64_t nodes = 0;
    std::uint64_t prunes = 0;

    // Explore the whole tree (used by the single-worker path and by prefix
    // generation).  Returns true when unwinding on found/stop/budget.
    bool run() { return propagate() ? dfs(0) : (++prunes, false); }

    // Re-apply a recorded decision script, then search below it.
    void run_task(const std::vector<std::pair<int, std::int8_t>>& script) {
        reset();
        if (!propagate()) return; // cannot happen: the empty prefix propagates trivially
        int depth = 0;
        for (auto [e, d] : script) {
            if (!apply(e, d) || !propagate()) return; // stale only if a sibling task found
            ++depth;
        }
        dfs(depth);
    }

    // Enumerate viable decision prefixes of the given depth; complete
    // assignments encountered along the way are reported as found.
    void collect_tasks(int depth_limit,
                       std::vector<std::vector<std::pair<int, std::int8_t>>>& tasks) {
        reset();
        script_.clear();
        if (!propagate()) return;
        collect(0, depth_limit, tasks);
    }

  private:
    SearchShared* sh_;
    int n_;
    int edge_count_;
    std::vector<std::uint64_t> down_, up_, out_;
    std::vector<std::int8_t> dir_; // 0 undecided, 1 lower->higher, 2 higher->lower
    std::vector<std::uint64_t> mask_stack_;
    std::vector<std::int8_t> dir_stack_;
    std::vector<std::pair<int, std::int8_t>> script_;

    void reset() {
        std::fill(down_.begin(), down_.end(), 0);
        std::fill(up_.begin(), up_.end(), 0);
        std::fill(out_.begin(), out_.end(), 0);
        std::fill(dir_.begin(), dir_.end(), 0);
    }

    void save(int level) {
        std::uint64_t* slot = &mask_stack_[static_cast<std::size_t>(level) * 3 *
                                           static_cast<std::size_t>(n_)];
        std::copy(down_.begin(), down_.end(), slot);
        std::copy(up_.begin(), up_.end(), slot + n_);
        std::copy(out_.begin(), out_.end(), slot + 2 * n_);
        std::copy(dir_.begin(), dir_.end(),
                  dir_stack_.begin() +
                      static_cast<std::size_t>(level) * static_cast<std::size_t>(edge_count_));
    }

    void restore(int level) {
        const std::uint64_t* slot = &mask_stack_[static_cast<std::size_t>(level) * 3 *
                                                 static_cast<std::size_t>(n_)];
        std::copy(slot, slot + n_, down_.begin());
        std::copy(slot + n_, slot + 2 * n_, up_.begin());
        std::copy(slot + 2 * n_, slot + 3 * n_, out_.begin());
        auto d = dir_stack_.begin() +
                 static_cast<std::size_t>(level) * static_cast<std::size_t>(edge_count_);
        std::copy(d, d + edge_count_, dir_.begin());
    }

    // Orient edge e in direction d, update the closures, and reject if the
    // new reachability completes a shortcut.  Any shortcut created by this
    // step must route its u -> ... -> v chain through the new arc a -> b
    // (otherwise it existed before, and the invariant says it did not), so
    // its edge u -> v satisfies u ~>* a and b ~>* v; only those directed
    // edges need rechecking.
    bool apply(int e, std::int8_t d) {
        auto [p, q] = sh_->edges[static_cast<std::size_t>(e)];
        const int a = d == 1 ? p : q;
        const int b = d == 1 ? q : p;
        if (down_[static_cast<std::size_t>(b)] >> a & 1) return false; // directed cycle
        dir_[static_cast<std::size_t>(e)] = d;
        const std::uint64_t above = bit(a) | up_[static_cast<std::size_t>(a)];
        const std::uint64_t below = bit(b) | down_[static_cast<std::size_t>(b)];
        for (std::uint64_t m = above; m; m &= m - 1)
            down_[static_cast<std::size_t>(std::countr_zero(m))] |= below;
        for (std::uint64_t m = below; m; m &= m - 1)
            up_[static_cast<std::size_t>(std::countr_zero(m))] |= above;
        out_[static_cast<std::size_t>(a)] |= bit(b);

        for (std::uint64_t us = above; us; us &= us - 1) {
            const int u = std::countr_zero(us);
            std::uint64_t vs = out_[static_cast<std::size_t>(u)] & below;
            if (!vs) continue;
            const std::uint64_t from_u = bit(u) | down_[static_cast<std::size_t>(u)];
            for (; vs; vs &= vs - 1) {
                const int v = std::countr_zero(vs);
                const std::uint64_t into_v = bit(v) | up_[static_cast<std::size_t>(v)];
                for (std::uint64_t xs = from_u; xs; xs &= xs - 1) {
                    const int x = std::countr_zero(xs);
                    if (down_[static_cast<std::size_t>(x)] &
                        ~sh_->adj[static_cast<std::size_t>(x)] & into_v)
                        return false;
                }
            }
        }
        return true;
    }

    // Orient every edge whose direction is already determined by
    // reachability, to a fixpoint.  False on a contradiction.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int e = 0; e < edge_count_; ++e) {
                if (dir_[static_cast<std::size_t>(e)]) continue;
                auto [p, q] = sh_->edges[static_cast<std::size_t>(e)];
                const bool pq = down_[static_cast<std::size_t>(p)] >> q & 1;
                const bool qp = down_[static_cast<std::size_t>(q)] >> p & 1;
                if (!pq && !qp) continue;
                if (!apply(e, pq ? std::int8_t{1} : std::int8_t{2})) return false;
                changed = true;
            }
        }
        return true;
    }

    int next_undecided() const {
        for (int e = 0; e < edge_count_; ++e)
            if (!dir_[static_cast<std::size_t>(e)]) return e;
        return -1;
    }

    bool budget_spent() {
        if (!sh_->limited) return false;
        if (sh_->budget.fetch_sub(1, std::memory_order_relaxed) > 0) return false;
        sh_->out_of_budget.store(true, std::memory_order_relaxed);
        return true;
    }

    void report_found() {
        std::lock_guard<std::mutex> lock(sh_->found_mutex);
        if (!sh_->found_dirs) sh_->found_dirs = dir_;
        sh_->stop.store(true, std::memory_order_relaxed);
    }

    bool dfs(int level) {
        if (sh_->stop.load(std::memory_order_relaxed)) return true;
        ++nodes;
        if (budget_spent()) return true;
        const int e = next_undecided();
        if (e < 0) {
            report_found();
            return true;
        }
        save(level);
        const bool whole_space = level == 0 && e == 0; // reversal symmetry: skip d = 2
        for (std::int8_t d = 1; d <= (whole_space ? 1 : 2); ++d) {
            if (apply(e, d) && propagate()) {
                if (dfs(level + 1)) return true;
            } else {
                ++prunes;
            }
            restore(level);
        }
        return false;
    }

    void collect(int level, int depth_limit,
                 std::vector<std::vector<std::pair<int, std::int8_t>>>& tasks) {
        if (sh_->stop.load(std::memory_order_relaxed)) return;
        const int e = next_undecided();
        if (e < 0) {
            report_found();
            return;
        }
        if (level >= depth_limit) {
            tasks.push_back(script_);
            return;
        }
        save(level);
        const bool whole_space = level == 0 && e == 0;
        for (std::int8_t d = 1; d <= (whole_space ? 1 : 2); ++d) {
            if (apply(e, d) && propagate()) {
                script_.emplace_back(e, d);
                collect(level + 1, depth_limit, tasks);
                script_.pop_back();
            }
            restore(level);
        }
    }
};

} // namespace detail

inline SearchResult find_semi_transitive_orientation(const LabeledGraph& g,
                                                     const SearchOptions& opts = {}) {
    const int n = g.size();
    if (n > 64) fail("TooLarge", "search engine supports at most 64 vertices");
    if (opts.workers < 1) fail("BadWorkerCount", "worker count must be positive");
    const auto start = std::chrono::steady_clock::now();

    detail::SearchShared shared;
    shared.n = n;
    shared.adj.assign(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        shared.adj[static_cast<std::size_t>(u) - 1] |= detail::bit(v - 1);
        shared.adj[static_cast<std::size_t>(v) - 1] |= detail::bit(u - 1);
        shared.edges.emplace_back(u - 1, v - 1);
    }
    shared.limited = opts.budget.has_value();
    if (shared.limited)
        shared.budget.store(static_cast<std::int64_t>(
            std::min<std::uint64_t>(*opts.budget, std::uint64_t{1} << 62)));

    SearchResult result;
    result.stats.parallel_workers = opts.workers;

    auto finish = [&](std::uint64_t nodes, std::uint64_t prunes) {
        result.stats.nodes_explored = nodes;
        result.stats.prunes = prunes;
        result.stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        if (shared.found_dirs) {
            Orientation o{g, {}};
            for (std::size_t e = 0; e < shared.edges.size(); ++e) {
                auto [p, q] = shared.edges[e];
                if ((*shared.found_dirs)[e] == 1)
                    o.directed.emplace_back(p + 1, q + 1);
                else
                    o.directed.emplace_back(q + 1, p + 1);
            }
            result.orientation = std::move(o);
            result.outcome = SearchOutcome::found;
        } else if (shared.out_of_budget.load()) {
            result.outcome = SearchOutcome::budget_exhausted;
        } else {
            result.outcome = SearchOutcome::none;
        }
    };

    if (opts.workers == 1) {
        detail::SearchEngine engine(&shared);
        engine.run();
        finish(engine.nodes, engine.prunes);
        return result;
    }

    // Multi-worker: enumerate viable decision prefixes, then let workers
    // claim them from a shared queue.  The union of the subtrees equals the
    // single-worker tree, so found-vs-none cannot depend on scheduling;
    // which certificate is reported first (and the node statistics) can.
    std::vector<std::vector<std::pair<int, std::int8_t>>> tasks;
    std::uint64_t total_nodes = 0, total_prunes = 0;
    {
        detail::SearchEngine generator(&shared);
        const int depth = std::min<int>(10, static_cast<int>(shared.edges.size()));
        generator.collect_tasks(depth, tasks);
        total_nodes += generator.nodes;
        total_prunes += generator.prunes;
    }
    std::atomic<std::size_t> next_task{0};
    std::mutex totals_mutex;
    auto worker_main = [&]() {
        detail::SearchEngine engine(&shared);
        while (!shared.stop.load(std::memory_order_relaxed)) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) break;
            engine.run_task(tasks[t]);
        }
        std::lock_guard<std::mutex> lock(totals_mutex);
        total_nodes += engine.nodes;
        total_prunes += engine.prunes;
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(opts.workers));
    for (int w = 0; w < opts.workers; ++w) pool.emplace_back(worker_main);
    for (auto& th : pool) th.join();
    finish(total_nodes, total_prunes);
    return result;
}

inline Decision decide(const LabeledGraph& g, const SearchOptions& opts = {}) {
    Decision d;
    SearchResult r = find_semi_transitive_orientation(g, opts);
    d.stats = r.stats;
    d.method = "semi_transitive_search";
    switch (r.outcome) {
    case SearchOutcome::found:
        d.status = Status::representable;
        d.orientation = std::move(r.orientation);
        break;
    case SearchOutcome::none:
        d.status = Status::non_representable;
        break;
    case SearchOutcome::budget_exhausted:
        d.status = Status::inconclusive;
        break;
    }
    return d;
}

// Bounded brute-force search for a k-uniform representing word, k = 1 up to
// max_uniformity.  Words are enumerated in first-occurrence canonical form
// (letter j+1 first appears after letter j), which kills relabelling
// symmetry; candidates are therefore matched against every relabelling of
// the target, and a hit is mapped back through the inverse relabelling
// before being returned.  A nullopt is evidence of nothing: the caller must
// use decide() for refutations.
inline std::optional<Word> brute_force_word_search(const LabeledGraph& g, int max_uniformity,
                                                   int max_vertices = 6) {
    const int n = g.size();
    if (n > max_vertices)
        fail("TooLarge", "brute-force word search is limited to " +
                             std::to_string(max_vertices) + " vertices");
    if (n == 0) return Word{};
    if (max_uniformity < 1) return std::nullopt;

    const int pair_count = n * (n - 1) / 2;
    auto pair_index = [n](int x, int y) { // 0-based letters, x < y
        return x * n - x * (x + 1) / 2 + (y - x - 1);
    };

    // All relabellings of the target, deduplicated, each remembering one
    // relabelling that produces it.
    std::vector<std::uint32_t> target_mask;
    std::vector<std::vector<int>> target_inverse; // canonical letter -> g vertex (0-based)
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::uint32_t mask = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (g.adjacent(u + 1, v + 1)) {
                    int a = perm[static_cast<std::size_t>(u)];
                    int b = perm[static_cast<std::size_t>(v)];
                    mask |= std::uint32_t{1} << pair_index(std::min(a, b), std::max(a, b));
                }
        if (std::find(target_mask.begin(), target_mask.end(), mask) == target_mask.end()) {
            target_mask.push_back(mask);
            std::vector<int> inv(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = v;
            target_inverse.push_back(std::move(inv));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::size_t target_count = target_mask.size();
    const std::size_t alive_words = (target_count + 63) / 64;
    // For each vertex pair, the set of targets in which it is an edge.
    std::vector<std::uint64_t> with_edge(static_cast<std::size_t>(pair_count) * alive_words, 0);
    for (std::size_t t = 0; t < target_count; ++t)
        for (int p = 0; p < pair_count; ++p)
            if (target_mask[t] >> p & 1)
                with_edge[static_cast<std::size_t>(p) * alive_words + t / 64] |=
                    std::uint64_t{1} << (t % 64);

    for (int k = 1; k <= max_uniformity; ++k) {
        const int length = n * k;
        std::vector<int> word(static_cast<std::size_t>(length), 0);
        std::vector<int> count(static_cast<std::size_t>(n), 0);
        // Per-pair state: which of the two letters occurred last (-1 none),
        // and whether the pair's verdict is already fixed.
        std::vector<int> last(static_cast<std::size_t>(pair_count), -1);
        std::vector<char> decided(static_cast<std::size_t>(pair_count), 0);
        // alive-target sets, snapshotted per depth
        std::vector<std::uint64_t> alive((static_cast<std::size_t>(length) + 1) * alive_words, 0);
        for (std::size_t t = 0; t < target_count; ++t)
            alive[t / 64] |= std::uint64_t{1} << (t % 64);
        // pairs whose verdict was fixed at each depth, for undo
        std::vector<std::vector<int>> touched_decided(static_cast<std::size_t>(length));

        // undo log: (pair, previous `last` holder) per depth
        std::vector<std::vector<std::pair<int, int>>> last_log(static_cast<std::size_t>(length));

        int used = 0;
        std::optional<Word> found;

        auto alive_at = [&](int depth) { return &alive[static_cast<std::size_t>(depth) * alive_words]; };
        auto any_alive = [&](const std::uint64_t* a) {
            for (std::size_t i = 0; i < alive_words; ++i)
                if (a[i]) return true;
            return false;
        };

        // Place letter x (0-based) at position depth.  A pair's verdict
        // becomes final either when its letters go out of alternation (two
        // x in a row: never an edge) or when both letters are exhausted
        // while still alternating (an edge); each final verdict narrows the
        // alive-target set.  Returns false when no target remains.
        auto place = [&](int depth, int x) {
            word[static_cast<std::size_t>(depth)] = x;
            ++count[static_cast<std::size_t>(x)];
            std::uint64_t* a = alive_at(depth + 1);
            std::copy(alive_at(depth), alive_at(depth) + alive_words, a);
            auto& lg = last_log[static_cast<std::size_t>(depth)];
            auto& td = touched_decided[static_cast<std::size_t>(depth)];
            lg.clear();
            td.clear();
            for (int y = 0; y < n; ++y) {
                if (y == x) continue;
                const int p = pair_index(std::min(x, y), std::max(x, y));
                if (decided[static_cast<std::size_t>(p)]) continue;
                bool verdict_fixed;
                bool is_edge = false;
                if (last[static_cast<std::size_t>(p)] == x) {
                    verdict_fixed = true;
                } else {
                    lg.emplace_back(p, last[static_cast<std::size_t>(p)]);
                    last[static_cast<std::size_t>(p)] = x;
                    verdict_fixed = count[static_cast<std::size_t>(x)] == k &&
                                    count[static_cast<std::size_t>(y)] == k;
                    is_edge = verdict_fixed;
                }
                if (verdict_fixed) {
                    decided[static_cast<std::size_t>(p)] = 1;
                    td.push_back(p);
                    const std::uint64_t* we = &with_edge[static_cast<std::size_t>(p) * alive_words];
                    for (std::size_t i = 0; i < alive_words; ++i)
                        a[i] &= is_edge ? we[i] : ~we[i];
                }
            }
            return any_alive(a);
        };
        auto unplace = [&](int depth) {
            const int x = word[static_cast<std::size_t>(depth)];
            --count[static_cast<std::size_t>(x)];
            auto& lg = last_log[static_cast<std::size_t>(depth)];
            for (auto it = lg.rbegin(); it != lg.rend(); ++it)
                last[static_cast<std::size_t>(it->first)] = it->second;
            for (int p : touched_decided[static_cast<std::size_t>(depth)])
                decided[static_cast<std::size_t>(p)] = 0;
        };

        std::function<bool(int)> extend = [&](int depth) -> bool {
            if (depth == length) {
                const std::uint64_t* a = alive_at(depth);
                for (std::size_t i = 0; i < alive_words; ++i)
                    if (a[i]) {
                        const std::size_t t = i * 64 +
                                              static_cast<std::size_t>(std::countr_zero(a[i]));
                        const auto& inv = target_inverse[t];
                        Word w;
                        w.letters.reserve(static_cast<std::size_t>(length));
                        for (int c : word)
                            w.letters.push_back(inv[static_cast<std::size_t>(c)] + 1);
                        if (verify_representant(w, g).ok) {
                            found = std::move(w);
                            return true;
                        }
                        return false; // cannot happen: alive targets match exactly
                    }
                return false;
            }
            const int letter_limit = std::min(n - 1, used); // next fresh letter is `used`
            for (int x = 0; x <= letter_limit; ++x) {
                if (count[static_cast<std::size_t>(x)] == k) continue;
                const bool fresh = x == used;
                if (fresh) ++used;
                if (place(depth, x)) {
                    if (extend(depth + 1)) return true;
                }
                unplace(depth);
                if (fresh) --used;
            }
            return false;
        };

        if (extend(0)) return found;
    }
    return std::nullopt;
}

} // namespace wordrep
