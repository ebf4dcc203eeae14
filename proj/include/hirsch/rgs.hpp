#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hirsch {

// Restricted growth string: symbols from {1..alphabet_size}, first symbol 1,
// each symbol at most 1 + max of all preceding symbols, and every value in
// 1..alphabet_size occurs at least once. These are in bijection with
// partitions of {1..length} into alphabet_size blocks.
struct RestrictedGrowthString {
    std::vector<int> symbols;
    int alphabet_size = 0;

    bool operator==(const RestrictedGrowthString&) const = default;
    std::string str() const;
};

bool is_valid_rgs(const RestrictedGrowthString& s);

// Yields every RGS of the given length using exactly alphabet_size symbols,
// in lexicographic order. length < alphabet_size yields nothing.
void for_each_rgs(int length, int alphabet_size,
                  const std::function<void(const RestrictedGrowthString&)>& fn);

std::vector<RestrictedGrowthString> enumerate_rgs(int length, int alphabet_size);

// Column indices of successive pivots of a facet path, values in 1..d with
// successive entries distinct. Canonical means the first occurrences of the
// column indices appear in increasing order.
struct ColumnPivotSequence {
    std::vector<int> columns;
    int d = 0;

    bool operator==(const ColumnPivotSequence&) const = default;
};

bool is_canonical_column_sequence(const ColumnPivotSequence& p);

// Rank construction: p_1 = 1, p_2 = 2, and for j >= 3 the column p_j is the
// s_{j-1}-th smallest element of {1..d} \ {p_{j-1}}. Output length is
// length(s) + 1. Requires alphabet_size <= d - 1.
ColumnPivotSequence rgs_to_pivot_columns(const RestrictedGrowthString& s, int d);

// Inverse of rgs_to_pivot_columns.
RestrictedGrowthString pivot_columns_to_rgs(const ColumnPivotSequence& p);

}  // namespace hirsch
