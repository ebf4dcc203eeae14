#include "hirsch/combinatorics.hpp"

#include <array>

namespace hirsch {

namespace {

struct BinomialTable {
    std::array<std::array<int64_t, 64>, 64> c{};
    BinomialTable() {
        for (int n = 0; n < 64; ++n) {
            c[static_cast<size_t>(n)][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                    c[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
                    c[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
        }
    }
};

const BinomialTable& table() {
    static const BinomialTable t;
    return t;
}

}  // namespace

int64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (n >= 64) throw std::out_of_range("binomial: n >= 64");
    return table().c[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

int64_t colex_rank(std::span<const int> sorted_subset) {
    int64_t rank = 0;
    for (size_t i = 0; i < sorted_subset.size(); ++i) {
        if (i > 0 && sorted_subset[i] <= sorted_subset[i - 1])
            throw std::invalid_argument("colex_rank: subset not strictly increasing");
        rank += binomial(sorted_subset[i] - 1, static_cast<int>(i) + 1);
    }
    return rank;
}

std::vector<int> colex_unrank(int64_t rank, int k) {
    std::vector<int> out(static_cast<size_t>(k));
    for (int i = k; i >= 1; --i) {
        // largest b with C(b-1, i) <= rank
        int b = i;
        while (binomial(b, i) <= rank) ++b;
        out[static_cast<size_t>(i - 1)] = b;
        rank -= binomial(b - 1, i);
    }
    return out;
}

int tau(std::span<const int> tuple) {
    int inversions = 0;
    for (size_t i = 0; i < tuple.size(); ++i) {
        for (size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) throw std::invalid_argument("tau: degenerate tuple");
            if (tuple[i] > tuple[j]) ++inversions;
        }
    }
    return (inversions % 2 == 0) ? +1 : -1;
}

}  // namespace hirsch
