#include <doctest.h>

#include <set>
#include <stdexcept>

#include "hirsch/rgs.hpp"

using namespace hirsch;

namespace {

// independent oracle: enumerate set partitions of {1..n} into k blocks and
// convert each to its growth string
void partitions_to_rgs(int n, int k, std::set<std::string>& out) {
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int elem) -> void {
        if (elem > n) {
            if (static_cast<int>(blocks.size()) != k) return;
            RestrictedGrowthString s;
            s.alphabet_size = k;
            s.symbols.assign(static_cast<size_t>(n), 0);
            for (size_t b = 0; b < blocks.size(); ++b)
                for (int e : blocks[b]) s.symbols[static_cast<size_t>(e - 1)] = static_cast<int>(b) + 1;
            out.insert(s.str());
            return;
        }
        for (auto& block : blocks) {
            block.push_back(elem);
            self(self, elem + 1);
            block.pop_back();
        }
        blocks.push_back({elem});
        self(self, elem + 1);
        blocks.pop_back();
    };
    rec(rec, 1);
}

int64_t stirling2(int n, int k) {
    if (n == 0 || k == 0) return n == 0 && k == 0;
    std::vector<std::vector<int64_t>> s(static_cast<size_t>(n) + 1,
                                        std::vector<int64_t>(static_cast<size_t>(k) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            s[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                s[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
                j * s[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
    return s[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

}  // namespace

TEST_CASE("forced singletons") {
    auto one = enumerate_rgs(1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].str() == "1");

    auto diag = enumerate_rgs(4, 4);
    REQUIRE(diag.size() == 1);
    CHECK(diag[0].str() == "1234");
}

TEST_CASE("length 3 alphabet 2") {
    auto s = enumerate_rgs(3, 2);
    REQUIRE(s.size() == 3);
    CHECK(s[0].str() == "112");
    CHECK(s[1].str() == "121");
    CHECK(s[2].str() == "122");
}

TEST_CASE("degenerate parameters give empty streams") {
    CHECK(enumerate_rgs(2, 3).empty());
    CHECK(enumerate_rgs(3, 0).empty());
}

TEST_CASE("counts and contents match the set-partition oracle") {
    for (int n = 1; n <= 6; ++n) {
        for (int k = 1; k <= n; ++k) {
            std::set<std::string> expect;
            partitions_to_rgs(n, k, expect);
            auto got = enumerate_rgs(n, k);
            CHECK(static_cast<int64_t>(got.size()) == stirling2(n, k));
            std::set<std::string> got_set;
            std::string prev;
            for (const auto& s : got) {
                CHECK(is_valid_rgs(s));
                CHECK(prev < s.str());  // lexicographic order, no duplicates
                prev = s.str();
                got_set.insert(s.str());
            }
            CHECK(got_set == expect);
        }
    }
}

TEST_CASE("rank construction on small examples") {
    RestrictedGrowthString s1{{1}, 1};
    auto p1 = rgs_to_pivot_columns(s1, 3);
    CHECK(p1.columns == std::vector<int>{1, 2});

    RestrictedGrowthString s2{{1, 2}, 2};
    auto p2 = rgs_to_pivot_columns(s2, 3);
    CHECK(p2.columns == std::vector<int>{1, 2, 3});
}

TEST_CASE("ill-formed strings are rejected") {
    RestrictedGrowthString bad{{1, 3}, 3};  // 3 exceeds running max + 1
    CHECK(!is_valid_rgs(bad));
    CHECK_THROWS_AS(rgs_to_pivot_columns(bad, 4), std::invalid_argument);
    RestrictedGrowthString wide{{1, 2, 3}, 3};
    CHECK_THROWS_AS(rgs_to_pivot_columns(wide, 3), std::invalid_argument);  // alphabet > d-1
}

TEST_CASE("round trip over every enumerated input") {
    for (int d = 2; d <= 6; ++d) {
        for (int len = 1; len <= 7; ++len) {
            for (int k = 1; k <= std::min(len, d - 1); ++k) {
                for (const auto& s : enumerate_rgs(len, k)) {
                    ColumnPivotSequence p = rgs_to_pivot_columns(s, d);
                    CHECK(is_canonical_column_sequence(p));
                    CHECK(static_cast<int>(p.columns.size()) == len + 1);
                    CHECK(pivot_columns_to_rgs(p) == s);
                }
            }
        }
    }
}
