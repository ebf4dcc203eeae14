#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "hirsch/cnf.hpp"

namespace hirsch::sat {

enum class Result { sat, unsat, unknown };

// Conflict-driven clause learning solver: two watched literals, first-UIP
// learning with deep clause minimization, VSIDS branching with phase saving,
// Luby restarts and activity-driven learnt-clause reduction. Clauses may be
// added between solve() calls; previously learnt clauses stay valid since
// constraints only ever get stronger.
class Solver {
  public:
    Solver();

    void ensure_vars(int n_external);  // external variables are 1-based
    int num_vars() const { return static_cast<int>(vals_.size()); }

    // DIMACS-style signed literals; returns false if the solver is already in
    // an unsatisfiable state at the root level.
    bool add_clause(std::span<const int32_t> dimacs_lits);
    bool add_formula(const CnfFormula& f);

    // time_limit_seconds < 0 means no limit.
    Result solve(double time_limit_seconds = -1.0);

    // After Result::sat: 1-based assignment, entries 0/1.
    const std::vector<uint8_t>& model() const { return model_; }

    bool ok() const { return ok_; }

    uint64_t conflicts = 0, decisions = 0, propagations = 0, restarts = 0;

  private:
    using Lit = int32_t;   // 2*var + sign, var 0-based
    using CRef = uint32_t;

    static constexpr Lit kLitUndef = -1;
    static constexpr CRef kCRefUndef = 0xFFFFFFFFu;
    static constexpr uint8_t kTrue = 0, kFalse = 1, kUndef = 2;

    static Lit mk_lit(int var, bool neg) { return static_cast<Lit>(2 * var + (neg ? 1 : 0)); }
    static int var_of(Lit p) { return p >> 1; }
    static bool sign_of(Lit p) { return p & 1; }
    static Lit neg(Lit p) { return p ^ 1; }

    struct Watcher {
        CRef cref;
        Lit blocker;
    };

    // clause layout in the arena: [header][activity?][lits...]
    // header = (size << 2) | (dead << 1) | learnt
    uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
    bool clause_learnt(CRef c) const { return arena_[c] & 1u; }
    bool clause_dead(CRef c) const { return arena_[c] & 2u; }
    Lit* clause_lits(CRef c) {
        return reinterpret_cast<Lit*>(&arena_[c + 1 + (clause_learnt(c) ? 1u : 0u)]);
    }
    const Lit* clause_lits(CRef c) const {
        return reinterpret_cast<const Lit*>(&arena_[c + 1 + (clause_learnt(c) ? 1u : 0u)]);
    }
    float& clause_act(CRef c) { return reinterpret_cast<float&>(arena_[c + 1]); }

    uint8_t value(Lit p) const {
        uint8_t v = vals_[static_cast<size_t>(var_of(p))];
        return v == kUndef ? kUndef : static_cast<uint8_t>(v ^ (p & 1));
    }

    CRef alloc_clause(std::span<const Lit> lits, bool learnt);
    void free_clause(CRef c);
    void attach_clause(CRef c);
    void detach_clause(CRef c, bool strict);
    void garbage_collect();

    void new_var_internal();
    void unchecked_enqueue(Lit p, CRef from);
    CRef propagate();
    void cancel_until(int level);
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel);
    bool lit_redundant(Lit p, uint32_t abstract_levels);
    Lit pick_branch_lit();
    void var_bump(int v);
    void var_decay();
    void cla_bump(CRef c);
    void cla_decay();
    void reduce_db();
    void simplify_level0();
    Result search(int64_t conflict_budget, const std::chrono::steady_clock::time_point* deadline);

    void heap_insert(int v);
    void heap_update(int v);
    int heap_pop();
    bool heap_empty() const { return heap_.empty(); }
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);

    // state
    bool ok_ = true;
    std::vector<uint32_t> arena_;
    size_t wasted_ = 0;
    std::vector<CRef> clauses_, learnts_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by literal
    std::vector<uint8_t> vals_;                  // per var
    std::vector<uint8_t> polarity_;              // saved phase, 1 = last was false
    std::vector<int> level_;
    std::vector<CRef> reason_;
    std::vector<double> activity_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;
    size_t simplify_trail_mark_ = 0;

    std::vector<int> heap_;      // max-heap of vars by activity
    std::vector<int> heap_pos_;  // var -> heap index or -1

    std::vector<uint8_t> seen_;
    std::vector<Lit> analyze_stack_, analyze_toclear_;

    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    double max_learnts_ = 0;
    double learnt_adjust_cnt_ = 100, learnt_adjust_confl_ = 100;

    std::vector<uint8_t> model_;
};

}  // namespace hirsch::sat
