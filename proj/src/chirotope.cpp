#include "hirsch/chirotope.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hirsch {

Chirotope::Chirotope(int n, int r, std::vector<int8_t> signs)
    : n_(n), r_(r), signs_(std::move(signs)) {
    if (n < r || r < 1 || n > kMaxGroundSet)
        throw std::invalid_argument("Chirotope: need 1 <= r <= n <= 31");
    if (static_cast<int64_t>(signs_.size()) != binomial(n, r))
        throw std::invalid_argument("Chirotope: sign table has wrong size");
    for (int8_t s : signs_)
        if (s != 1 && s != -1)
            throw std::invalid_argument("Chirotope: signs must be +1/-1 (uniform)");
}

int determinant_sign(std::vector<std::vector<int64_t>> m) {
    // Bareiss fraction-free elimination in 128-bit intermediates. Inputs the
    // size of coordinates we use stay far below overflow.
    const size_t k = m.size();
    std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k));
    for (size_t i = 0; i < k; ++i) {
        if (m[i].size() != k) throw std::invalid_argument("determinant_sign: matrix not square");
        for (size_t j = 0; j < k; ++j) a[i][j] = m[i][j];
    }
    int sign = 1;
    __int128 prev = 1;
    for (size_t c = 0; c < k; ++c) {
        size_t pivot = c;
        while (pivot < k && a[pivot][c] == 0) ++pivot;
        if (pivot == k) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            sign = -sign;
        }
        for (size_t i = c + 1; i < k; ++i) {
            for (size_t j = c + 1; j < k; ++j)
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    __int128 det = a[k - 1][k - 1];
    if (det == 0) return 0;
    return (det > 0 ? sign : -sign);
}

Chirotope Chirotope::from_points(const std::vector<std::vector<int64_t>>& columns) {
    const int n = static_cast<int>(columns.size());
    if (n == 0) throw std::invalid_argument("from_points: no columns");
    const int r = static_cast<int>(columns[0].size());
    for (const auto& col : columns)
        if (static_cast<int>(col.size()) != r)
            throw std::invalid_argument("from_points: ragged columns");
    std::vector<int8_t> signs(static_cast<size_t>(binomial(n, r)));
    std::vector<std::vector<int64_t>> minor(static_cast<size_t>(r),
                                            std::vector<int64_t>(static_cast<size_t>(r)));
    int64_t rank = 0;
    bool degenerate = false;
    std::vector<int> bad;
    for_each_subset(n, r, [&](std::span<const int> basis) {
        if (degenerate) return;
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i)
                minor[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    columns[static_cast<size_t>(basis[static_cast<size_t>(j)] - 1)]
                           [static_cast<size_t>(i)];
        int s = determinant_sign(minor);
        if (s == 0) {
            degenerate = true;
            bad.assign(basis.begin(), basis.end());
            return;
        }
        signs[static_cast<size_t>(rank++)] = static_cast<int8_t>(s);
    });
    if (degenerate) {
        std::string what = "from_points: not in general position, singular basis {";
        for (size_t i = 0; i < bad.size(); ++i)
            what += (i ? "," : "") + std::to_string(bad[i]);
        throw std::invalid_argument(what + "}");
    }
    return Chirotope(n, r, std::move(signs));
}

int Chirotope::sign_sorted(std::span<const int> sorted_basis) const {
    if (static_cast<int>(sorted_basis.size()) != r_)
        throw std::invalid_argument("sign_sorted: wrong arity");
    return signs_[static_cast<size_t>(colex_rank(sorted_basis))];
}

int Chirotope::evaluate(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != r_)
        throw std::invalid_argument("evaluate: wrong arity");
    for (int v : tuple)
        if (v < 1 || v > n_) throw std::invalid_argument("evaluate: element out of range");
    int parity = tau(tuple);  // throws on repeats
    std::vector<int> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    return parity * sign_sorted(sorted);
}

std::optional<Chirotope::AxiomViolation> Chirotope::verify_axioms() const {
    std::optional<AxiomViolation> witness;
    if (n_ < r_ + 2) return witness;  // no quadruple fits: vacuously true
    std::vector<int> tup(static_cast<size_t>(r_));
    auto chi = [&](std::span<const int> sigma, int x, int y) {
        for (size_t i = 0; i < sigma.size(); ++i) tup[i] = sigma[i];
        tup[static_cast<size_t>(r_ - 2)] = x;
        tup[static_cast<size_t>(r_ - 1)] = y;
        return evaluate(tup);
    };
    for_each_subset(n_, r_ - 2, [&](std::span<const int> sigma) {
        if (witness) return;
        VertexSet used = set_of(sigma);
        std::vector<int> rest;
        for (int v = 1; v <= n_; ++v)
            if (!set_contains(used, v)) rest.push_back(v);
        const int m = static_cast<int>(rest.size());
        for (int i1 = 0; i1 < m && !witness; ++i1)
            for (int i2 = i1 + 1; i2 < m && !witness; ++i2)
                for (int i3 = i2 + 1; i3 < m && !witness; ++i3)
                    for (int i4 = i3 + 1; i4 < m && !witness; ++i4) {
                        int x1 = rest[static_cast<size_t>(i1)], x2 = rest[static_cast<size_t>(i2)];
                        int x3 = rest[static_cast<size_t>(i3)], x4 = rest[static_cast<size_t>(i4)];
                        int p1 = chi(sigma, x1, x2) * chi(sigma, x3, x4);
                        int p2 = chi(sigma, x1, x3) * chi(sigma, x2, x4);
                        int p3 = chi(sigma, x1, x4) * chi(sigma, x2, x3);
                        // {p1, -p2, p3} must contain both signs
                        if (p1 == p3 && p1 == -p2) {
                            witness = AxiomViolation{std::vector<int>(sigma.begin(), sigma.end()),
                                                     {x1, x2, x3, x4}};
                        }
                    }
    });
    return witness;
}

std::vector<VertexSet> Chirotope::facets() const {
    std::vector<VertexSet> out;
    std::vector<int> tup(static_cast<size_t>(r_));
    for_each_subset(n_, r_ - 1, [&](std::span<const int> face) {
        for (size_t i = 0; i + 1 < static_cast<size_t>(r_); ++i) tup[i] = face[i];
        VertexSet mask = set_of(face);
        int common = 0;
        for (int e = 1; e <= n_; ++e) {
            if (set_contains(mask, e)) continue;
            tup[static_cast<size_t>(r_ - 1)] = e;
            int s = evaluate(tup);
            if (common == 0)
                common = s;
            else if (s != common)
                return;
        }
        out.push_back(mask);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Chirotope::elements_off_boundary() const {
    VertexSet covered = 0;
    for (VertexSet f : facets()) covered |= f;
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v)
        if (!set_contains(covered, v)) out.push_back(v);
    return out;
}

int Chirotope::dual_graph_distance(VertexSet a, VertexSet b) const {
    std::vector<VertexSet> fs = facets();
    auto find = [&](VertexSet f) {
        auto it = std::lower_bound(fs.begin(), fs.end(), f);
        if (it == fs.end() || *it != f) throw std::invalid_argument("dual_graph_distance: not a facet");
        return static_cast<size_t>(it - fs.begin());
    };
    size_t src = find(a), dst = find(b);
    std::vector<int> dist(fs.size(), -1);
    std::deque<size_t> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        if (cur == dst) return dist[cur];
        for (size_t next = 0; next < fs.size(); ++next) {
            if (dist[next] >= 0) continue;
            if (set_size(fs[cur] & fs[next]) == r_ - 2) {
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
        }
    }
    throw std::runtime_error("dual_graph_distance: facets are not connected");
}

Chirotope Chirotope::negated() const {
    std::vector<int8_t> flipped(signs_.size());
    for (size_t i = 0; i < signs_.size(); ++i) flipped[i] = static_cast<int8_t>(-signs_[i]);
    return Chirotope(n_, r_, std::move(flipped));
}

void Chirotope::write(std::ostream& out) const {
    out << n_ << ' ' << r_ << '\n';
    int64_t rank = 0;
    for_each_subset(n_, r_, [&](std::span<const int> basis) {
        for (size_t i = 0; i < basis.size(); ++i) out << basis[i] << ' ';
        out << (signs_[static_cast<size_t>(rank++)] > 0 ? '+' : '-') << '\n';
    });
}

Chirotope Chirotope::read(std::istream& in) {
    int n, r;
    if (!(in >> n >> r)) throw std::runtime_error("Chirotope::read: bad header");
    std::vector<int8_t> signs(static_cast<size_t>(binomial(n, r)));
    for (size_t i = 0; i < signs.size(); ++i) {
        std::vector<int> basis(static_cast<size_t>(r));
        for (int j = 0; j < r; ++j)
            if (!(in >> basis[static_cast<size_t>(j)]))
                throw std::runtime_error("Chirotope::read: truncated basis list");
        char s;
        if (!(in >> s) || (s != '+' && s != '-'))
            throw std::runtime_error("Chirotope::read: bad sign");
        if (colex_rank(basis) != static_cast<int64_t>(i))
            throw std::runtime_error("Chirotope::read: bases out of colex order");
        signs[i] = (s == '+') ? 1 : -1;
    }
    return Chirotope(n, r, std::move(signs));
}

}  // namespace hirsch
