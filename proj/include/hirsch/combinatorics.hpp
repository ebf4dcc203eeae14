#pragma once

#include <cstdint>
#include <bit>
#include <span>
#include <stdexcept>
#include <vector>

namespace hirsch {

// Vertex labels are 1-based throughout. Sets of vertices are bitmasks with
// bit (v-1) for vertex v; everything in this project lives on ground sets
// with n <= 31.
using VertexSet = uint32_t;

inline constexpr int kMaxGroundSet = 31;

inline bool set_contains(VertexSet s, int v) { return (s >> (v - 1)) & 1u; }
inline VertexSet set_add(VertexSet s, int v) { return s | (VertexSet{1} << (v - 1)); }
inline VertexSet set_remove(VertexSet s, int v) { return s & ~(VertexSet{1} << (v - 1)); }
inline int set_size(VertexSet s) { return std::popcount(s); }

inline VertexSet full_set(int n) {
    return n == 32 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline VertexSet set_of(std::span<const int> elems) {
    VertexSet s = 0;
    for (int v : elems) s = set_add(s, v);
    return s;
}

inline std::vector<int> set_elements(VertexSet s) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(set_size(s)));
    while (s) {
        int b = std::countr_zero(s);
        out.push_back(b + 1);
        s &= s - 1;
    }
    return out;
}

// Binomial coefficients up to C(63, k), exact in int64.
int64_t binomial(int n, int k);

// Rank of a sorted k-subset of {1..n} in colexicographic order, 0-based:
// rank(b_1 < ... < b_k) = sum_i C(b_i - 1, i).
int64_t colex_rank(std::span<const int> sorted_subset);

// Inverse of colex_rank for subsets of size k.
std::vector<int> colex_unrank(int64_t rank, int k);

// Visit all k-subsets of {1..n} in colexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i + 1;
    if (k == 0) {
        fn(std::span<const int>(c));
        return;
    }
    while (true) {
        fn(std::span<const int>(c));
        // colex successor: bump the lowest element whose slot above is free
        int i = 0;
        while (i + 1 < k && c[static_cast<size_t>(i)] + 1 == c[static_cast<size_t>(i) + 1]) ++i;
        if (i == k - 1 && c[static_cast<size_t>(i)] >= n) break;
        c[static_cast<size_t>(i)] += 1;
        for (int j = 0; j < i; ++j) c[static_cast<size_t>(j)] = j + 1;
    }
}

// Parity of the permutation sorting `tuple` ascending: +1 for even, -1 for
// odd. Throws on repeated elements.
int tau(std::span<const int> tuple);

}  // namespace hirsch
