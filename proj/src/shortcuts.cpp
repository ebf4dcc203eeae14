#include "hirsch/shortcuts.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hirsch {

namespace {

VertexSet used_labels(const PathComplex& pc) {
    VertexSet all = 0;
    for (VertexSet f : pc.facets) all |= f;
    return all;
}

std::vector<int> facet_key(VertexSet f) { return set_elements(f); }

}  // namespace

void for_each_shortcut_candidate(const PathComplex& pc,
                                 const std::function<void(const std::vector<VertexSet>&)>& yield) {
    if (!pc.end_disjoint())
        throw std::invalid_argument("shortcut candidates need an end-disjoint path complex");
    if (pc.length() < 2) return;
    PivotGraph g{pc.d, used_labels(pc)};
    enumerate_inclusion_minimal<PivotGraph>(g, pc.facets.front(), pc.facets.back(),
                                            pc.length() - 1, yield);
}

int64_t count_shortcut_candidates(const PathComplex& pc) {
    int64_t n = 0;
    for_each_shortcut_candidate(pc, [&](const std::vector<VertexSet>&) { ++n; });
    return n;
}

std::optional<std::vector<VertexSet>> find_realized_shortcut(const Chirotope& chi,
                                                             const PathComplex& pc) {
    std::vector<VertexSet> facets = chi.facets();
    auto index_of = [&](VertexSet f) -> size_t {
        auto it = std::lower_bound(facets.begin(), facets.end(), f);
        if (it == facets.end() || *it != f)
            throw std::runtime_error("find_realized_shortcut: path end is not a facet of the model");
        return static_cast<size_t>(it - facets.begin());
    };
    const size_t src = index_of(pc.facets.front());
    const size_t dst = index_of(pc.facets.back());
    const int r = chi.r();

    // adjacency in the boundary dual graph
    std::vector<std::vector<size_t>> adj(facets.size());
    for (size_t i = 0; i < facets.size(); ++i)
        for (size_t j = i + 1; j < facets.size(); ++j)
            if (set_size(facets[i] & facets[j]) == r - 2) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }

    // distances from the destination
    std::vector<int> dist(facets.size(), -1);
    std::deque<size_t> queue;
    dist[dst] = 0;
    queue.push_back(dst);
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        for (size_t next : adj[cur])
            if (dist[next] < 0) {
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
    }
    if (dist[src] < 0)
        throw std::runtime_error("find_realized_shortcut: boundary dual graph is disconnected");
    if (dist[src] >= pc.length()) return std::nullopt;  // pc is geodesic here

    // walk forward, always through the lexicographically smallest facet that
    // stays on a shortest path
    std::vector<VertexSet> path{facets[src]};
    size_t cur = src;
    while (cur != dst) {
        size_t best = SIZE_MAX;
        for (size_t next : adj[cur]) {
            if (dist[next] != dist[cur] - 1) continue;
            if (best == SIZE_MAX || facet_key(facets[next]) < facet_key(facets[best])) best = next;
        }
        cur = best;
        path.push_back(facets[cur]);
    }
    return path;
}

std::vector<std::vector<VertexSet>> collect_realized_shortcuts(const Chirotope& chi,
                                                               const PathComplex& pc,
                                                               size_t max_paths) {
    std::vector<VertexSet> facets = chi.facets();
    auto index_of = [&](VertexSet f) -> size_t {
        auto it = std::lower_bound(facets.begin(), facets.end(), f);
        if (it == facets.end() || *it != f)
            throw std::runtime_error("collect_realized_shortcuts: path end is not a facet");
        return static_cast<size_t>(it - facets.begin());
    };
    const size_t src = index_of(pc.facets.front());
    const size_t dst = index_of(pc.facets.back());
    const int r = chi.r();
    const int max_len = pc.length() - 1;

    std::vector<std::vector<size_t>> adj(facets.size());
    for (size_t i = 0; i < facets.size(); ++i)
        for (size_t j = i + 1; j < facets.size(); ++j)
            if (set_size(facets[i] & facets[j]) == r - 2) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    std::vector<int> dist(facets.size(), -1);
    std::deque<size_t> queue;
    dist[dst] = 0;
    queue.push_back(dst);
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        for (size_t next : adj[cur])
            if (dist[next] < 0) {
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
    }
    std::vector<std::vector<VertexSet>> out;
    if (dist[src] < 0 || dist[src] > max_len) return out;

    std::vector<size_t> path{src};
    std::vector<uint8_t> on_path(facets.size(), 0);
    on_path[src] = 1;
    auto dfs = [&](auto&& self) -> void {
        if (out.size() >= max_paths) return;
        size_t last = path.back();
        int used = static_cast<int>(path.size()) - 1;
        for (size_t next : adj[last]) {
            if (out.size() >= max_paths) return;
            if (on_path[next]) continue;
            if (next == dst) {
                if (used + 1 > max_len) continue;
                std::vector<VertexSet> found;
                found.reserve(path.size() + 1);
                for (size_t i : path) found.push_back(facets[i]);
                found.push_back(facets[dst]);
                out.push_back(std::move(found));
                continue;
            }
            if (used + 1 + dist[next] > max_len) continue;
            path.push_back(next);
            on_path[next] = 1;
            self(self);
            on_path[next] = 0;
            path.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

}  // namespace hirsch
