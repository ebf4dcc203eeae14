#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hirsch/combinatorics.hpp"

namespace hirsch {

// Uniform chirotope of rank r on {1..n}: a total sign mapping on sorted
// r-subsets, extended to arbitrary tuples by the alternating rule. Immutable
// after construction; all queries are read-only.
class Chirotope {
  public:
    // `signs` indexed by colex rank of the sorted r-subset, entries +1/-1.
    Chirotope(int n, int r, std::vector<int8_t> signs);

    // Signs from exact determinants of an r x n integer matrix given as n
    // column vectors; throws if some r columns are singular.
    static Chirotope from_points(const std::vector<std::vector<int64_t>>& columns);

    int n() const { return n_; }
    int r() const { return r_; }
    int64_t basis_count() const { return static_cast<int64_t>(signs_.size()); }

    int sign_at_rank(int64_t rank) const { return signs_[static_cast<size_t>(rank)]; }
    int sign_sorted(std::span<const int> sorted_basis) const;

    // tau(Y) * sign of sorted(Y); throws on repeated elements.
    int evaluate(std::span<const int> tuple) const;

    struct AxiomViolation {
        std::vector<int> sigma;        // the (r-2)-subset
        std::array<int, 4> quadruple;  // x1 < x2 < x3 < x4
    };
    // nullopt iff the three-term sign conditions hold for every (sigma,
    // quadruple); otherwise the first violating witness.
    std::optional<AxiomViolation> verify_axioms() const;

    // Facets of the matroid polytope: (r-1)-subsets F such that the sign of
    // (F, e) is constant over e outside F.
    std::vector<VertexSet> facets() const;

    // Elements lying on no facet (empty iff this is a matroid polytope).
    std::vector<int> elements_off_boundary() const;

    // Shortest path length between two facets in the graph whose edges join
    // facets sharing r-2 elements. Throws if A, B are not facets or are not
    // connected.
    int dual_graph_distance(VertexSet a, VertexSet b) const;

    Chirotope negated() const;

    void write(std::ostream& out) const;
    static Chirotope read(std::istream& in);

    bool operator==(const Chirotope&) const = default;

  private:
    int n_;
    int r_;
    std::vector<int8_t> signs_;
};

// Sign of the determinant of a square integer matrix (exact, fraction-free).
int determinant_sign(std::vector<std::vector<int64_t>> m);

}  // namespace hirsch
