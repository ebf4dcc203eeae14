#pragma once

#include "hirsch/chirotope.hpp"
#include "hirsch/cnf.hpp"
#include "hirsch/path_complex.hpp"

namespace hirsch {

// Variable numbering shared between the encoder and model decoding: the
// sorted r-subsets of {1..n} in colexicographic order, ids 1..C(n,r).
class VarIndex {
  public:
    VarIndex(int n, int r);
    int n() const { return n_; }
    int r() const { return r_; }
    int num_vars() const { return num_vars_; }

    int32_t id_of_sorted(std::span<const int> sorted_basis) const;
    std::vector<int> basis_of(int32_t id) const;

  private:
    int n_, r_, num_vars_;
};

// Literal whose truth means "chi of sorted(tuple) is positive", with the
// polarity carrying tau(tuple). Throws on repeated elements.
int32_t literal_for(std::span<const int> tuple, const VarIndex& vars);

// The 16 six-literal clauses per (sigma, quadruple) forbidding the two
// all-equal patterns of {p1, -p2, p3}; clause count is
// 16 C(n, r-2) C(n-r+2, 4).
void encode_gp_axioms(const VarIndex& vars, CnfFormula& out);

// Equality chain chi(F,x_i) = chi(F,x_{i+1}) over the ascending complement of
// F: 2(n-r) binary clauses forcing F onto the boundary.
void encode_facet(VertexSet facet, const VarIndex& vars, CnfFormula& out);

// sigma_0 = +1, sigma_i = tau(F_{i-1}, e_i) tau(F_i, l_i) sigma_{i-1}, with
// facets taken in sorted order.
std::vector<int> compute_path_signs(const PathComplex& pc);

// Unit clauses fixing chi(F_i, x) = sigma_i for every facet of the path and
// every x outside it; fixes the negation symmetry by making F_0 positive.
void encode_path_on_boundary(const PathComplex& pc, const VarIndex& vars, CnfFormula& out);

// The two clauses forbidding that all interior facets of the shortcut lie on
// the boundary with chained orientations. Requires at least one interior
// facet.
void encode_forbid_shortcut(const std::vector<VertexSet>& shortcut, const VarIndex& vars,
                            CnfFormula& out);

// Comment legend mapping variable ids to bases, for DIMACS sidecars.
std::vector<std::string> variable_legend(const VarIndex& vars);

}  // namespace hirsch
