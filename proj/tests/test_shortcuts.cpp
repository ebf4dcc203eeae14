#include <doctest.h>

#include <random>
#include <set>

#include "hirsch/enumerate.hpp"
#include "hirsch/shortcuts.hpp"

using namespace hirsch;

namespace {

AdjacencyGraph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    AdjacencyGraph g;
    g.adj.assign(static_cast<size_t>(n) + 1, 0);
    for (auto [a, b] : edges) {
        g.adj[static_cast<size_t>(a)] = set_add(g.adj[static_cast<size_t>(a)], b);
        g.adj[static_cast<size_t>(b)] = set_add(g.adj[static_cast<size_t>(b)], a);
    }
    return g;
}

using Path = std::vector<int>;

std::multiset<Path> inclusion_minimal_paths(const AdjacencyGraph& g, int s, int t, int max_len) {
    std::multiset<Path> out;
    enumerate_inclusion_minimal<AdjacencyGraph>(g, s, t, max_len,
                                                [&](const Path& p) { out.insert(p); });
    return out;
}

// oracle: all simple paths, then filter by the definition — no proper subset
// of the path's vertex set carries an (s,t)-path
std::multiset<Path> brute_inclusion_minimal(const AdjacencyGraph& g, int s, int t, int max_len) {
    int n = static_cast<int>(g.adj.size()) - 1;
    std::vector<Path> simple;
    Path cur{s};
    auto dfs = [&](auto&& self) -> void {
        if (cur.back() == t) {
            simple.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) > max_len) return;
        g.for_neighbors(cur.back(), [&](int v) {
            if (std::find(cur.begin(), cur.end(), v) != cur.end()) return;
            cur.push_back(v);
            self(self);
            cur.pop_back();
        });
    };
    dfs(dfs);

    auto subset_has_path = [&](VertexSet verts) {
        // is there an (s,t)-path visiting exactly the vertices of `verts`?
        Path walk{s};
        auto rec = [&](auto&& self, VertexSet left) -> void {
            if (left == 0 && walk.back() == t) throw true;
            g.for_neighbors(walk.back(), [&](int v) {
                if (!set_contains(left, v)) return;
                walk.push_back(v);
                self(self, set_remove(left, v));
                walk.pop_back();
            });
        };
        try {
            rec(rec, set_remove(verts, s));
        } catch (bool) {
            return true;
        }
        return false;
    };

    std::multiset<Path> out;
    for (const Path& p : simple) {
        VertexSet verts = 0;
        for (int v : p) verts = set_add(verts, v);
        bool minimal = true;
        // proper subsets containing both endpoints
        std::vector<int> interior;
        for (int v : p)
            if (v != s && v != t) interior.push_back(v);
        for (uint32_t mask = 0; minimal && mask + 1 < (1u << interior.size()); ++mask) {
            VertexSet sub = set_add(set_add(VertexSet{0}, s), t);
            for (size_t i = 0; i < interior.size(); ++i)
                if (mask & (1u << i)) sub = set_add(sub, interior[i]);
            if (subset_has_path(sub)) minimal = false;
        }
        (void)n;
        if (minimal) out.insert(p);
    }
    return out;
}

}  // namespace

TEST_CASE("triangle with chord keeps only the direct edge") {
    // s=1, a=2, t=3, edges forming a triangle
    AdjacencyGraph g = make_graph(3, {{1, 2}, {2, 3}, {1, 3}});
    auto paths = inclusion_minimal_paths(g, 1, 3, 3);
    REQUIRE(paths.size() == 1);
    CHECK(*paths.begin() == Path{1, 3});
}

TEST_CASE("chordless path graph is inclusion-minimal") {
    AdjacencyGraph g = make_graph(3, {{1, 2}, {2, 3}});
    auto paths = inclusion_minimal_paths(g, 1, 3, 3);
    REQUIRE(paths.size() == 1);
    CHECK(*paths.begin() == Path{1, 2, 3});
}

TEST_CASE("matches the brute-force definition on random graphs") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + static_cast<int>(rng() % 6);  // up to 10 nodes
        AdjacencyGraph g;
        g.adj.assign(static_cast<size_t>(n) + 1, 0);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (rng() % 100 < 35) {
                    g.adj[static_cast<size_t>(a)] = set_add(g.adj[static_cast<size_t>(a)], b);
                    g.adj[static_cast<size_t>(b)] = set_add(g.adj[static_cast<size_t>(b)], a);
                }
        int max_len = 2 + static_cast<int>(rng() % (static_cast<unsigned>(n) - 1));
        CHECK(inclusion_minimal_paths(g, 1, n, max_len) ==
              brute_inclusion_minimal(g, 1, n, max_len));
    }
}

TEST_CASE("every yield is inclusion-minimal and duplicate-free") {
    AdjacencyGraph g = make_graph(
        8, {{1, 2}, {2, 3}, {3, 8}, {1, 4}, {4, 5}, {5, 8}, {2, 5}, {4, 7}, {7, 8}, {1, 6}, {6, 8}});
    std::set<Path> seen;
    enumerate_inclusion_minimal<AdjacencyGraph>(g, 1, 8, 5, [&](const Path& p) {
        CHECK(seen.insert(p).second);
        for (size_t i = 0; i + 1 < p.size(); ++i) CHECK(g.adjacent(p[i], p[i + 1]));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 2; j < p.size(); ++j) CHECK(!g.adjacent(p[i], p[j]));
    });
    CHECK(!seen.empty());
}

TEST_CASE("adjacent end facets admit no shortcut") {
    PathComplex pc{3, 6,
                   {set_of(std::vector<int>{1, 2, 3}), set_of(std::vector<int>{2, 3, 4})}};
    CHECK_THROWS_AS(count_shortcut_candidates(pc), std::invalid_argument);  // not end-disjoint
    PathComplex ok{2, 4,
                   {set_of(std::vector<int>{1, 2}), set_of(std::vector<int>{2, 3}),
                    set_of(std::vector<int>{3, 4})}};
    // length 2: shortcuts would need a single pivot between disjoint facets
    CHECK(count_shortcut_candidates(ok) == 0);
}

TEST_CASE("shortcut candidates for the (6,12) case are the Johnson geodesics") {
    auto cands = enumerate_candidates(6, 12, 7, 1, 6);
    PathComplex pc = expand_to_facets(cands[0], 12);
    CHECK(count_shortcut_candidates(pc) == 518400);  // (6!)^2 monotone swap orders
}

TEST_CASE("candidate stream is deterministic") {
    auto cands = enumerate_candidates(4, 11, 7, 0, 5);
    PathComplex pc = expand_to_facets(cands[0], 11);
    std::vector<std::vector<VertexSet>> first, second;
    for_each_shortcut_candidate(pc, [&](const std::vector<VertexSet>& sc) { first.push_back(sc); });
    for_each_shortcut_candidate(pc, [&](const std::vector<VertexSet>& sc) { second.push_back(sc); });
    CHECK(first == second);
    CHECK(!first.empty());
    for (const auto& sc : first) {
        CHECK(sc.front() == pc.facets.front());
        CHECK(sc.back() == pc.facets.back());
        CHECK(static_cast<int>(sc.size()) - 1 < pc.length());
    }
}

TEST_CASE("geodesic shortcut counts on a small case") {
    // d=3 path of length 4 between end facets at pivot distance 3: the
    // shortcut candidates are exactly the monotone swap sequences, (3!)^2
    PathComplex pc{3, 7,
                   {set_of(std::vector<int>{1, 2, 3}), set_of(std::vector<int>{2, 3, 4}),
                    set_of(std::vector<int>{2, 4, 5}), set_of(std::vector<int>{2, 5, 6}),
                    set_of(std::vector<int>{5, 6, 7})}};
    REQUIRE(!check_path_property(pc).has_value());
    REQUIRE(pc.end_disjoint());
    CHECK(count_shortcut_candidates(pc) == 36);
}

TEST_CASE("realized shortcut detection") {
    // heptagon chirotope: edges of the 7-gon, diameter 3
    std::vector<std::vector<int64_t>> cols;
    for (int64_t t = 1; t <= 7; ++t) cols.push_back({t, t * t, 1});
    Chirotope chi = Chirotope::from_points(cols);

    // actual boundary path 12 - 23 - 34 - 45 walked the long way is beaten by
    // the direct route only if shorter; here distance(12, 45) = 3 = length
    PathComplex geodesic{2, 7,
                         {set_of(std::vector<int>{1, 2}), set_of(std::vector<int>{2, 3}),
                          set_of(std::vector<int>{3, 4}), set_of(std::vector<int>{4, 5})}};
    CHECK(!find_realized_shortcut(chi, geodesic).has_value());

    // walk all the way around: 12 - 71 - 67 - 56 - 45 has length 4, but the
    // direct route 12 - 23 - 34 - 45 is shorter
    PathComplex detour{2, 7,
                       {set_of(std::vector<int>{1, 2}), set_of(std::vector<int>{1, 7}),
                        set_of(std::vector<int>{6, 7}), set_of(std::vector<int>{5, 6}),
                        set_of(std::vector<int>{4, 5})}};
    REQUIRE(!check_path_property(detour).has_value());
    auto sc = find_realized_shortcut(chi, detour);
    REQUIRE(sc.has_value());
    CHECK(sc->size() == 4);
    CHECK((*sc)[0] == set_of(std::vector<int>{1, 2}));
    CHECK((*sc)[1] == set_of(std::vector<int>{2, 3}));
    CHECK((*sc)[3] == set_of(std::vector<int>{4, 5}));

    std::vector<std::vector<VertexSet>> all = collect_realized_shortcuts(chi, detour, 100);
    CHECK(all.size() == 1);
    CHECK(all[0] == *sc);
}

TEST_CASE("ends adjacent in a simplex-like boundary") {
    std::vector<std::vector<int64_t>> cols{
        {0, 0, 0, 1}, {9, 0, 0, 1}, {0, 9, 0, 1}, {0, 0, 9, 1}, {1, 1, 1, 1}};
    // 4-simplex with an interior point: facets are 3-subsets of {1..4}
    Chirotope chi = Chirotope::from_points(cols);
    PathComplex pc{3, 5,
                   {set_of(std::vector<int>{1, 2, 3}), set_of(std::vector<int>{1, 2, 4}),
                    set_of(std::vector<int>{1, 3, 4})}};
    auto sc = find_realized_shortcut(chi, pc);
    REQUIRE(sc.has_value());
    CHECK(sc->size() == 2);  // the two end facets are adjacent
}

TEST_CASE("detour around a heptagon realizes no path longer than the walk") {
    std::vector<std::vector<int64_t>> cols;
    for (int64_t t = 1; t <= 7; ++t) cols.push_back({t, t * t, 1});
    Chirotope chi = Chirotope::from_points(cols);
    PathComplex detour{2, 7,
                       {set_of(std::vector<int>{1, 2}), set_of(std::vector<int>{1, 7}),
                        set_of(std::vector<int>{6, 7}), set_of(std::vector<int>{5, 6}),
                        set_of(std::vector<int>{4, 5})}};
    // consistency with the distance query
    CHECK(chi.dual_graph_distance(detour.facets.front(), detour.facets.back()) == 3);
}
