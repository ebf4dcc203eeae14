#include "hirsch/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace hirsch {

VarIndex::VarIndex(int n, int r) : n_(n), r_(r) {
    if (r < 1 || n < r || n > kMaxGroundSet) throw std::invalid_argument("VarIndex: bad (n,r)");
    num_vars_ = static_cast<int>(binomial(n, r));
}

int32_t VarIndex::id_of_sorted(std::span<const int> sorted_basis) const {
    if (static_cast<int>(sorted_basis.size()) != r_)
        throw std::invalid_argument("VarIndex: wrong basis arity");
    if (sorted_basis.back() > n_) throw std::invalid_argument("VarIndex: element out of range");
    return static_cast<int32_t>(colex_rank(sorted_basis)) + 1;
}

std::vector<int> VarIndex::basis_of(int32_t id) const {
    if (id < 1 || id > num_vars_) throw std::invalid_argument("VarIndex: id out of range");
    return colex_unrank(id - 1, r_);
}

int32_t literal_for(std::span<const int> tuple, const VarIndex& vars) {
    int parity = tau(tuple);
    std::vector<int> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    int32_t var = vars.id_of_sorted(sorted);
    return parity > 0 ? var : -var;
}

void encode_gp_axioms(const VarIndex& vars, CnfFormula& out) {
    const int n = vars.n(), r = vars.r();
    out.set_num_vars(std::max(out.num_vars(), vars.num_vars()));
    if (n < r + 2 || r < 2) return;
    std::vector<int> tup(static_cast<size_t>(r));
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(n));
    for_each_subset(n, r - 2, [&](std::span<const int> sigma) {
        for (int i = 0; i < r - 2; ++i) tup[static_cast<size_t>(i)] = sigma[static_cast<size_t>(i)];
        VertexSet used = set_of(sigma);
        rest.clear();
        for (int v = 1; v <= n; ++v)
            if (!set_contains(used, v)) rest.push_back(v);
        const int m = static_cast<int>(rest.size());
        auto lit = [&](int x, int y) {
            tup[static_cast<size_t>(r - 2)] = x;
            tup[static_cast<size_t>(r - 1)] = y;
            return literal_for(tup, vars);
        };
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = i1 + 1; i2 < m; ++i2)
                for (int i3 = i2 + 1; i3 < m; ++i3)
                    for (int i4 = i3 + 1; i4 < m; ++i4) {
                        int x1 = rest[static_cast<size_t>(i1)], x2 = rest[static_cast<size_t>(i2)];
                        int x3 = rest[static_cast<size_t>(i3)], x4 = rest[static_cast<size_t>(i4)];
                        // z1 z2 = p1, z3 z4 = p2, z5 z6 = p3
                        const int32_t z[6] = {lit(x1, x2), lit(x3, x4), lit(x1, x3),
                                              lit(x2, x4), lit(x1, x4), lit(x2, x3)};
                        // forbid p1 = -p2 = p3 = s for s in {+,-}
                        for (int s = +1; s >= -1; s -= 2) {
                            const int p[3] = {s, -s, s};
                            // per product, the two sign patterns of its factors
                            for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b)
                                    for (int c = 0; c < 2; ++c) {
                                        // factor signs: (u, u*p) for u in {+,-}
                                        int u1 = a ? -1 : 1, v1 = u1 * p[0];
                                        int u2 = b ? -1 : 1, v2 = u2 * p[1];
                                        int u3 = c ? -1 : 1, v3 = u3 * p[2];
                                        const int want[6] = {u1, v1, u2, v2, u3, v3};
                                        int32_t clause[6];
                                        for (int t = 0; t < 6; ++t)
                                            clause[t] = want[t] > 0 ? -z[t] : z[t];
                                        out.add_clause(std::span<const int32_t>(clause, 6));
                                    }
                        }
                    }
    });
}

void encode_facet(VertexSet facet, const VarIndex& vars, CnfFormula& out) {
    const int n = vars.n(), r = vars.r();
    if (set_size(facet) != r - 1) throw std::invalid_argument("encode_facet: facet must have r-1 elements");
    out.set_num_vars(std::max(out.num_vars(), vars.num_vars()));
    std::vector<int> base = set_elements(facet);
    std::vector<int> tup(static_cast<size_t>(r));
    for (int i = 0; i + 1 < r; ++i) tup[static_cast<size_t>(i)] = base[static_cast<size_t>(i)];
    auto lit = [&](int x) {
        tup[static_cast<size_t>(r - 1)] = x;
        return literal_for(tup, vars);
    };
    int prev = 0;
    for (int x = 1; x <= n; ++x) {
        if (set_contains(facet, x)) continue;
        if (prev != 0) {
            int32_t a = lit(prev), b = lit(x);
            out.add_clause({a, -b});
            out.add_clause({-a, b});
        }
        prev = x;
    }
}

std::vector<int> compute_path_signs(const PathComplex& pc) {
    std::vector<int> sigma;
    sigma.reserve(pc.facets.size());
    sigma.push_back(+1);
    for (size_t i = 1; i < pc.facets.size(); ++i) {
        VertexSet prev = pc.facets[i - 1], cur = pc.facets[i];
        VertexSet gone = prev & ~cur, fresh = cur & ~prev;
        if (set_size(gone) != 1 || set_size(fresh) != 1)
            throw std::invalid_argument("compute_path_signs: consecutive facets not a pivot apart");
        int leave = set_elements(gone)[0], enter = set_elements(fresh)[0];
        std::vector<int> t1 = set_elements(prev);
        t1.push_back(enter);
        std::vector<int> t2 = set_elements(cur);
        t2.push_back(leave);
        sigma.push_back(tau(t1) * tau(t2) * sigma.back());
    }
    return sigma;
}

void encode_path_on_boundary(const PathComplex& pc, const VarIndex& vars, CnfFormula& out) {
    const int n = vars.n(), r = vars.r();
    if (pc.d != r - 1) throw std::invalid_argument("encode_path_on_boundary: rank mismatch");
    if (pc.n > n) throw std::invalid_argument("encode_path_on_boundary: ground set too small");
    out.set_num_vars(std::max(out.num_vars(), vars.num_vars()));
    std::vector<int> sigma = compute_path_signs(pc);
    std::vector<int> tup(static_cast<size_t>(r));
    for (size_t i = 0; i < pc.facets.size(); ++i) {
        std::vector<int> base = set_elements(pc.facets[i]);
        for (int j = 0; j + 1 < r; ++j) tup[static_cast<size_t>(j)] = base[static_cast<size_t>(j)];
        for (int x = 1; x <= n; ++x) {
            if (set_contains(pc.facets[i], x)) continue;
            tup[static_cast<size_t>(r - 1)] = x;
            int32_t lit = literal_for(tup, vars);
            out.add_clause({sigma[i] > 0 ? lit : -lit});
        }
    }
}

void encode_forbid_shortcut(const std::vector<VertexSet>& shortcut, const VarIndex& vars,
                            CnfFormula& out) {
    if (shortcut.size() <= 2)
        throw std::invalid_argument(
            "encode_forbid_shortcut: shortcut has no interior facet; the end facets are adjacent "
            "and the instance would be infeasible by construction");
    const int n = vars.n(), r = vars.r();
    out.set_num_vars(std::max(out.num_vars(), vars.num_vars()));
    PathComplex sc;
    sc.d = r - 1;
    sc.n = n;
    sc.facets = shortcut;
    std::vector<int> sigma = compute_path_signs(sc);
    std::vector<int32_t> pos, neg;
    std::vector<int> tup(static_cast<size_t>(r));
    for (size_t i = 1; i + 1 < shortcut.size(); ++i) {
        std::vector<int> base = set_elements(shortcut[i]);
        for (int j = 0; j + 1 < r; ++j) tup[static_cast<size_t>(j)] = base[static_cast<size_t>(j)];
        for (int x = 1; x <= n; ++x) {
            if (set_contains(shortcut[i], x)) continue;
            tup[static_cast<size_t>(r - 1)] = x;
            int32_t z = literal_for(tup, vars);
            if (sigma[i] < 0) z = -z;
            pos.push_back(z);
            neg.push_back(-z);
        }
    }
    out.add_clause(pos);
    out.add_clause(neg);
}

std::vector<std::string> variable_legend(const VarIndex& vars) {
    std::vector<std::string> legend;
    legend.reserve(static_cast<size_t>(vars.num_vars()));
    for (int32_t id = 1; id <= vars.num_vars(); ++id) {
        std::string line = "var " + std::to_string(id) + " = basis";
        for (int v : vars.basis_of(id)) line += " " + std::to_string(v);
        legend.push_back(std::move(line));
    }
    return legend;
}

}  // namespace hirsch
