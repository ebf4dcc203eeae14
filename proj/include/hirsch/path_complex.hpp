#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hirsch/combinatorics.hpp"
#include "hirsch/rgs.hpp"

namespace hirsch {

// One pivot: `leave` exits the facet, `enter` replaces it.
struct Pivot {
    int leave = 0;
    int enter = 0;
    bool operator==(const Pivot&) const = default;
    auto operator<=>(const Pivot&) const = default;
};

// A revisit loop over pivot positions [start, end] (1-based, inclusive): the
// vertex leaving at `start` re-enters at `end`.
struct Loop {
    int start = 0;
    int end = 0;
    bool operator==(const Loop&) const = default;
    auto operator<=>(const Loop&) const = default;
};

// Pivot sequence of a path complex starting from the facet {1..d}. Vertex
// labels follow the fixed convention: entering vertices are d+1, d+2, ... in
// order of first appearance, and a revisit reuses the label of the vertex it
// identifies with.
struct PivotSequence {
    int d = 0;
    std::vector<Pivot> pivots;
    std::vector<int> columns;  // column index of each pivot in the d-wide table
    std::vector<Loop> loops;   // revisit markers, disjoint and ordered

    int length() const { return static_cast<int>(pivots.size()); }
    int vertex_count() const { return d + length() - static_cast<int>(loops.size()); }
    std::string str() const;  // "(l,e) (l,e) ..."
    bool operator==(const PivotSequence&) const = default;
};

// Assigns vertex labels to a canonical column sequence with revisit loops.
// Loops must be disjoint ordered intervals of length >= 2.
PivotSequence build_pivot_sequence(const ColumnPivotSequence& cols,
                                   const std::vector<Loop>& loops);

PivotSequence parse_pivot_sequence(const std::string& line, int d);

// Ordered facet list whose dual graph is expected to be a path.
struct PathComplex {
    int d = 0;
    int n = 0;
    std::vector<VertexSet> facets;

    int length() const { return static_cast<int>(facets.size()) - 1; }
    bool end_disjoint() const { return (facets.front() & facets.back()) == 0; }
    bool operator==(const PathComplex&) const = default;
};

struct PathViolation {
    int i = 0, j = 0;  // offending facet pair
    std::string what;
};

// Facet expansion without the path-property check; throws only if a pivot is
// inconsistent (leaving vertex absent or entering vertex present).
PathComplex facets_of_pivots(const PivotSequence& p, int n);

// nullopt if `pc` is a valid path complex: consecutive facets share exactly
// d-1 vertices and non-consecutive ones share at most d-2.
std::optional<PathViolation> check_path_property(const PathComplex& pc);

// Expansion plus validation; throws std::invalid_argument on any violation.
PathComplex expand_to_facets(const PivotSequence& p, int n);

// Recomputes the canonical pivot-sequence encoding of a path complex: the
// columns of the first facet are ordered by leave time and entering vertices
// are relabelled by first appearance. All vertices of the first facet must
// eventually leave (true for end-disjoint complexes).
PivotSequence canonical_encoding(const PathComplex& pc);

// The same complex walked from the other end.
PathComplex reversed(const PathComplex& pc);

// Direction-symmetry normal form of a canonical column sequence: reverse and
// relabel columns by first occurrence.
ColumnPivotSequence reversed_canonical_columns(const ColumnPivotSequence& p);

}  // namespace hirsch
