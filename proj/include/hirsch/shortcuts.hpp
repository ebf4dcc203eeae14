#pragma once

#include <functional>
#include <optional>

#include "hirsch/chirotope.hpp"
#include "hirsch/path_complex.hpp"

namespace hirsch {

// Pivot graph on the d-subsets of a vertex label set: two nodes are adjacent
// iff they differ in exactly one element. Nodes are never materialized.
struct PivotGraph {
    int d = 0;
    VertexSet labels = 0;

    using Node = VertexSet;

    bool adjacent(VertexSet a, VertexSet b) const { return set_size(a ^ b) == 2; }

    // half the symmetric difference = graph distance
    int distance(VertexSet a, VertexSet b) const { return set_size(a ^ b) / 2; }

    template <typename Fn>
    void for_neighbors(VertexSet node, Fn&& fn) const {
        VertexSet in = node, outside = labels & ~node;
        for (VertexSet i = in; i; i &= i - 1) {
            VertexSet leave_bit = i & (~i + 1);
            for (VertexSet o = outside; o; o &= o - 1) {
                VertexSet enter_bit = o & (~o + 1);
                fn((node & ~leave_bit) | enter_bit);
            }
        }
    }
};

// Simple undirected graph for the generic inclusion-minimal path search;
// nodes are 1-based.
struct AdjacencyGraph {
    std::vector<VertexSet> adj;

    using Node = int;

    bool adjacent(int a, int b) const { return set_contains(adj[static_cast<size_t>(a)], b); }
    int distance(int, int) const { return 0; }  // no useful lower bound

    template <typename Fn>
    void for_neighbors(int node, Fn&& fn) const {
        for (VertexSet m = adj[static_cast<size_t>(node)]; m; m &= m - 1) {
            fn(std::countr_zero(m) + 1);
        }
    }
};

// Every inclusion-minimal (s,t)-path of length <= max_len, depth first in
// neighbor order: a prefix extends to inclusion-minimal paths iff each new
// node is adjacent to the previous node only. g.distance() must be a lower
// bound on the true graph distance; branches that cannot reach t in the
// remaining budget are cut.
template <typename Graph, typename Yield, typename Node = typename Graph::Node>
void enumerate_inclusion_minimal(const Graph& g, Node s, Node t, int max_len, Yield&& yield) {
    if (s == t) throw std::invalid_argument("enumerate_inclusion_minimal: s == t");
    if (max_len < 1) return;
    std::vector<Node> path{s};
    auto extend = [&](auto&& self) -> void {
        const Node last = path.back();
        const int used = static_cast<int>(path.size()) - 1;
        g.for_neighbors(last, [&](Node next) {
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (next == path[i] || g.adjacent(path[i], next)) return;
            if (next == t) {
                path.push_back(next);
                yield(path);
                path.pop_back();
                return;
            }
            if (used + 1 >= max_len) return;
            if (g.distance(next, t) > max_len - used - 1) return;
            path.push_back(next);
            self(self);
            path.pop_back();
        });
    };
    extend(extend);
}

// All inclusion-minimal paths between the end facets of `pc` in the pivot
// graph on pc's vertex set, using at most length(pc) - 1 pivots. These are
// the shortcut candidates for the eager encoding.
void for_each_shortcut_candidate(const PathComplex& pc,
                                 const std::function<void(const std::vector<VertexSet>&)>& yield);

int64_t count_shortcut_candidates(const PathComplex& pc);

// Shortest facet path between pc's end facets realized in the boundary of
// `chi`, if it beats pc's length; ties broken by lexicographically smallest
// facet sequence. nullopt means pc is geodesic in chi.
std::optional<std::vector<VertexSet>> find_realized_shortcut(const Chirotope& chi,
                                                             const PathComplex& pc);

// All simple paths of length < length(pc) between pc's end facets through
// facets of `chi`, up to `max_paths`. Every returned path violates its
// forbid-clause pair under the model that produced chi.
std::vector<std::vector<VertexSet>> collect_realized_shortcuts(const Chirotope& chi,
                                                               const PathComplex& pc,
                                                               size_t max_paths);

}  // namespace hirsch
