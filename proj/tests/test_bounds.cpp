#include <doctest.h>

#include <stdexcept>

#include "hirsch/bounds.hpp"

using namespace hirsch;

namespace {

void check_cell(const BoundsTable& t, int d, int n, int lo, int hi) {
    REQUIRE(t.contains(d, n));
    const DiameterBound& b = t.at(d, n);
    CHECK(b.lo == lo);
    REQUIRE(b.hi.has_value());
    CHECK(*b.hi == hi);
}

}  // namespace

TEST_CASE("the before table") {
    BoundsTable t = propagate(standard_base_facts(), {}, 7, 7);
    check_cell(t, 4, 8, 4, 4);
    check_cell(t, 4, 9, 5, 5);
    check_cell(t, 4, 10, 5, 5);
    check_cell(t, 4, 11, 6, 7);
    check_cell(t, 5, 9, 4, 4);
    check_cell(t, 5, 10, 5, 5);
    check_cell(t, 5, 11, 6, 6);
    check_cell(t, 5, 12, 7, 9);
    check_cell(t, 6, 10, 4, 4);
    check_cell(t, 6, 11, 5, 5);
    check_cell(t, 6, 12, 6, 7);
    check_cell(t, 6, 13, 7, 9);
    check_cell(t, 7, 11, 4, 4);
    check_cell(t, 7, 12, 5, 5);
    check_cell(t, 7, 13, 6, 7);
    check_cell(t, 7, 14, 7, 10);
}

TEST_CASE("the after table") {
    std::vector<DiameterFact> computed{{6, 12, 6, 6, "computed"}, {4, 11, 6, 6, "computed"}};
    BoundsTable t = propagate(standard_base_facts(), computed, 7, 7);
    check_cell(t, 4, 11, 6, 6);
    check_cell(t, 5, 12, 7, 8);  // the tightening from 9 to 8
    check_cell(t, 6, 12, 6, 6);
    check_cell(t, 7, 13, 6, 6);
    check_cell(t, 6, 13, 7, 9);
    check_cell(t, 7, 14, 7, 10);
    // unchanged cells
    check_cell(t, 4, 10, 5, 5);
    check_cell(t, 5, 11, 6, 6);
}

TEST_CASE("dimension three formula") {
    BoundsTable t = propagate(standard_base_facts(), {}, 7, 7);
    check_cell(t, 3, 9, 5, 5);
    check_cell(t, 3, 10, 5, 5);
    check_cell(t, 3, 8, 4, 4);
}

TEST_CASE("adding facts never widens intervals") {
    BoundsTable before = propagate(standard_base_facts(), {}, 7, 7);
    std::vector<DiameterFact> computed{{6, 12, 6, 6, "computed"}, {4, 11, 6, 6, "computed"}};
    BoundsTable after = propagate(standard_base_facts(), computed, 7, 7);
    for (const auto& [key, b] : before.entries()) {
        const DiameterBound& a = after.at(key.first, key.second);
        CHECK(a.lo >= b.lo);
        if (b.hi) {
            REQUIRE(a.hi.has_value());
            CHECK(*a.hi <= *b.hi);
        }
    }
}

TEST_CASE("contradictory facts raise an error naming the cell") {
    std::vector<DiameterFact> bogus{{6, 12, std::nullopt, 5, "bogus"}};
    CHECK_THROWS_WITH_AS(propagate(standard_base_facts(), bogus, 7, 7),
                         doctest::Contains("bounds contradiction"), std::runtime_error);
}

TEST_CASE("grey cells equal their d-step partners") {
    BoundsTable t = propagate(standard_base_facts(), {}, 7, 7);
    // the grey entries follow from the d-step identity alone
    const std::pair<int, int> grey[] = {{5, 9}, {6, 10}, {6, 11}, {7, 11}, {7, 12}, {7, 13}};
    for (auto [d, n] : grey) {
        int dd = n - d;
        const DiameterBound& cell = t.at(d, n);
        const DiameterBound& diag = t.at(dd, 2 * dd);
        CHECK(cell.lo == diag.lo);
        REQUIRE(cell.hi.has_value());
        REQUIRE(diag.hi.has_value());
        CHECK(*cell.hi == *diag.hi);
    }
}

TEST_CASE("rendering notation") {
    CHECK(format_bound({6, 6, "", ""}) == "6");
    CHECK(format_bound({6, 7, "", ""}) == "{6,7}");
    CHECK(format_bound({7, 9, "", ""}) == "[7,9]");
    CHECK(format_bound({7, std::nullopt, "", ""}) == "7+");

    BoundsTable t = propagate(standard_base_facts(), {}, 7, 7);
    std::string table = render_table(t, 4, 7, 4, 7);
    CHECK(table.find("{6,7}") != std::string::npos);
    CHECK(table.find("[7,10]") != std::string::npos);
}

TEST_CASE("fixpoint is stable under re-propagation") {
    BoundsTable t = propagate(standard_base_facts(), {}, 7, 7);
    std::vector<DiameterFact> as_facts;
    for (const auto& [key, b] : t.entries())
        as_facts.push_back({key.first, key.second, b.lo, b.hi, "replay"});
    BoundsTable u = propagate(as_facts, {}, 7, 7);
    for (const auto& [key, b] : t.entries()) {
        CHECK(u.at(key.first, key.second).lo == b.lo);
        CHECK(u.at(key.first, key.second).hi == b.hi);
    }
}
