#include "hirsch/cnf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hirsch {

void CnfFormula::add_clause(std::span<const int32_t> lits) {
    if (lits.empty()) throw std::invalid_argument("add_clause: empty clause");
    std::vector<int32_t> scratch(lits.begin(), lits.end());
    std::sort(scratch.begin(), scratch.end(), [](int32_t a, int32_t b) {
        int va = std::abs(a), vb = std::abs(b);
        return va != vb ? va < vb : a < b;
    });
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (size_t i = 0; i < scratch.size(); ++i) {
        if (scratch[i] == 0) throw std::invalid_argument("add_clause: zero literal");
        if (i + 1 < scratch.size() && scratch[i] == -scratch[i + 1])
            throw std::invalid_argument("add_clause: tautological clause");
    }
    for (int32_t lit : scratch) num_vars_ = std::max(num_vars_, std::abs(lit));
    lits_.insert(lits_.end(), scratch.begin(), scratch.end());
    starts_.push_back(lits_.size());
}

void CnfFormula::append(const CnfFormula& other) {
    num_vars_ = std::max(num_vars_, other.num_vars_);
    for (size_t i = 0; i < other.clause_count(); ++i) {
        auto c = other.clause(i);
        lits_.insert(lits_.end(), c.begin(), c.end());
        starts_.push_back(lits_.size());
    }
}

bool CnfFormula::satisfied_by(const std::vector<uint8_t>& assignment) const {
    for (size_t i = 0; i < clause_count(); ++i) {
        bool sat = false;
        for (int32_t lit : clause(i)) {
            size_t v = static_cast<size_t>(std::abs(lit));
            if (v >= assignment.size())
                throw std::invalid_argument("satisfied_by: assignment too short");
            if ((lit > 0) == (assignment[v] != 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

void emit_dimacs(const CnfFormula& f, std::ostream& out,
                 const std::vector<std::string>& comments) {
    for (const std::string& c : comments) out << "c " << c << '\n';
    out << "p cnf " << f.num_vars() << ' ' << f.clause_count() << '\n';
    for (size_t i = 0; i < f.clause_count(); ++i) {
        for (int32_t lit : f.clause(i)) out << lit << ' ';
        out << "0\n";
    }
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    std::string tok;
    int declared_vars = 0;
    long declared_clauses = -1;
    std::vector<int32_t> cur;
    while (in >> tok) {
        if (tok == "c") {
            std::string line;
            std::getline(in, line);
        } else if (tok == "p") {
            std::string fmt;
            in >> fmt >> declared_vars >> declared_clauses;
            if (fmt != "cnf") throw std::runtime_error("parse_dimacs: not a cnf file");
        } else {
            int32_t lit = static_cast<int32_t>(std::stol(tok));
            if (lit == 0) {
                f.add_clause(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        }
    }
    if (!cur.empty()) throw std::runtime_error("parse_dimacs: unterminated clause");
    if (declared_clauses >= 0 && static_cast<long>(f.clause_count()) != declared_clauses)
        throw std::runtime_error("parse_dimacs: clause count mismatch");
    f.set_num_vars(std::max(f.num_vars(), declared_vars));
    return f;
}

}  // namespace hirsch
