#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hirsch {

// Clause store with flat literal storage. Literals are DIMACS-style signed
// variable ids (1-based); clauses are deduplicated and checked against
// tautologies on insertion.
class CnfFormula {
  public:
    CnfFormula() = default;
    explicit CnfFormula(int num_vars) : num_vars_(num_vars) {}

    int num_vars() const { return num_vars_; }
    void set_num_vars(int n) { num_vars_ = n; }

    size_t clause_count() const { return starts_.size() - 1; }
    std::span<const int32_t> clause(size_t i) const {
        return {lits_.data() + starts_[i], starts_[i + 1] - starts_[i]};
    }

    void add_clause(std::span<const int32_t> lits);
    void add_clause(std::initializer_list<int32_t> lits) {
        add_clause(std::span<const int32_t>(lits.begin(), lits.size()));
    }
    void append(const CnfFormula& other);

    bool satisfied_by(const std::vector<uint8_t>& assignment) const;  // 1-based var -> 0/1

  private:
    int num_vars_ = 0;
    std::vector<int32_t> lits_;
    std::vector<size_t> starts_{0};
};

// Plain DIMACS CNF. Comment lines carrying a variable legend may be supplied
// by the caller and are emitted before the header.
void emit_dimacs(const CnfFormula& f, std::ostream& out,
                 const std::vector<std::string>& comments = {});
CnfFormula parse_dimacs(std::istream& in);

}  // namespace hirsch
