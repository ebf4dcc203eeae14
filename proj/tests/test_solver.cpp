#include <doctest.h>

#include <random>
#include <tuple>

#include "hirsch/sat/solver.hpp"

using namespace hirsch;

namespace {

bool brute_force_sat(const CnfFormula& f) {
    int n = f.num_vars();
    REQUIRE(n <= 20);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<uint8_t> a(static_cast<size_t>(n) + 1, 0);
        for (int v = 1; v <= n; ++v) a[static_cast<size_t>(v)] = (mask >> (v - 1)) & 1;
        if (f.satisfied_by(a)) return true;
    }
    return false;
}

CnfFormula pigeonhole(int pigeons, int holes) {
    // variable p_{i,j}: pigeon i sits in hole j
    auto var = [&](int i, int j) { return static_cast<int32_t>(i * holes + j + 1); };
    CnfFormula f(pigeons * holes);
    for (int i = 0; i < pigeons; ++i) {
        std::vector<int32_t> some;
        for (int j = 0; j < holes; ++j) some.push_back(var(i, j));
        f.add_clause(some);
    }
    for (int j = 0; j < holes; ++j)
        for (int i = 0; i < pigeons; ++i)
            for (int k = i + 1; k < pigeons; ++k) f.add_clause({-var(i, j), -var(k, j)});
    return f;
}

}  // namespace

TEST_CASE("trivial formulas") {
    sat::Solver s;
    CnfFormula f;
    f.add_clause({1});
    f.add_clause({-1, 2});
    s.add_formula(f);
    REQUIRE(s.solve() == sat::Result::sat);
    CHECK(s.model()[1] == 1);
    CHECK(s.model()[2] == 1);

    sat::Solver u;
    CnfFormula g;
    g.add_clause({1, 2});
    g.add_clause({-1, 2});
    g.add_clause({1, -2});
    g.add_clause({-1, -2});
    u.add_formula(g);
    CHECK(u.solve() == sat::Result::unsat);
}

TEST_CASE("pigeonhole instances") {
    for (int holes = 2; holes <= 5; ++holes) {
        sat::Solver s;
        s.add_formula(pigeonhole(holes + 1, holes));
        CHECK(s.solve() == sat::Result::unsat);

        sat::Solver t;
        t.add_formula(pigeonhole(holes, holes));
        CHECK(t.solve() == sat::Result::sat);
    }
}

TEST_CASE("random 3-SAT agrees with exhaustive search") {
    std::mt19937_64 rng(71);
    int sat_count = 0, unsat_count = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 6 + static_cast<int>(rng() % 7);
        int m = static_cast<int>(4.0 * n);
        CnfFormula f(n);
        for (int c = 0; c < m; ++c) {
            std::vector<int32_t> clause;
            while (clause.size() < 3) {
                int32_t v = 1 + static_cast<int32_t>(rng() % static_cast<uint64_t>(n));
                int32_t lit = rng() % 2 ? v : -v;
                bool dup = false;
                for (int32_t l : clause) dup |= std::abs(l) == v;
                if (!dup) clause.push_back(lit);
            }
            f.add_clause(clause);
        }
        sat::Solver s;
        s.add_formula(f);
        sat::Result r = s.solve();
        bool expect = brute_force_sat(f);
        CHECK(r == (expect ? sat::Result::sat : sat::Result::unsat));
        if (expect) {
            ++sat_count;
            CHECK(f.satisfied_by(s.model()));
        } else {
            ++unsat_count;
        }
    }
    // the mix should exercise both outcomes
    CHECK(sat_count > 5);
    CHECK(unsat_count > 5);
}

TEST_CASE("models are total assignments") {
    sat::Solver s;
    CnfFormula f;
    f.add_clause({1, 2});
    s.add_formula(f);
    s.ensure_vars(5);
    REQUIRE(s.solve() == sat::Result::sat);
    CHECK(s.model().size() == 6);
}

TEST_CASE("incremental clause addition strengthens the instance") {
    sat::Solver s;
    CnfFormula f(3);
    f.add_clause({1, 2, 3});
    s.add_formula(f);
    REQUIRE(s.solve() == sat::Result::sat);

    // forbid the current model, repeatedly; 8 assignments total
    int models = 0;
    while (s.solve() == sat::Result::sat) {
        ++models;
        REQUIRE(models <= 7);
        std::vector<int32_t> block;
        for (int v = 1; v <= 3; ++v)
            block.push_back(s.model()[static_cast<size_t>(v)] ? -v : v);
        if (!s.add_clause(block)) break;
    }
    CHECK(models == 7);  // every assignment except all-false
}

TEST_CASE("determinism across runs") {
    auto run = [] {
        std::mt19937_64 rng(97);
        CnfFormula f(40);
        for (int c = 0; c < 170; ++c) {
            std::vector<int32_t> clause;
            while (clause.size() < 3) {
                int32_t v = 1 + static_cast<int32_t>(rng() % 40);
                bool dup = false;
                for (int32_t l : clause) dup |= std::abs(l) == v;
                if (!dup) clause.push_back(rng() % 2 ? v : -v);
            }
            f.add_clause(clause);
        }
        sat::Solver s;
        s.add_formula(f);
        sat::Result r = s.solve();
        return std::make_tuple(r, r == sat::Result::sat ? s.model() : std::vector<uint8_t>{},
                               s.conflicts, s.decisions);
    };
    auto a = run();
    auto b = run();
    CHECK(a == b);
}

TEST_CASE("time budget produces unknown") {
    // a hard pigeonhole instance cannot finish in zero time
    sat::Solver s;
    s.add_formula(pigeonhole(9, 8));
    CHECK(s.solve(0.0) == sat::Result::unknown);
}
