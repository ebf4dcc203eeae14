#include "hirsch/sat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hirsch::sat {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClaDecay = 0.999;
constexpr double kRescale = 1e100;
constexpr double kClaRescale = 1e20;
constexpr int kRestartBase = 100;

// Luby sequence: 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {}
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    return std::pow(y, seq);
}

}  // namespace

Solver::Solver() = default;

void Solver::new_var_internal() {
    vals_.push_back(kUndef);
    polarity_.push_back(1);
    level_.push_back(0);
    reason_.push_back(kCRefUndef);
    activity_.push_back(0.0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_pos_.push_back(-1);
    heap_insert(static_cast<int>(vals_.size()) - 1);
}

void Solver::ensure_vars(int n_external) {
    while (num_vars() < n_external) new_var_internal();
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt) {
    CRef c = static_cast<CRef>(arena_.size());
    arena_.push_back((static_cast<uint32_t>(lits.size()) << 2) | (learnt ? 1u : 0u));
    if (learnt) arena_.push_back(0);
    for (Lit p : lits) arena_.push_back(static_cast<uint32_t>(p));
    if (learnt) clause_act(c) = 0.0f;
    return c;
}

void Solver::free_clause(CRef c) {
    arena_[c] |= 2u;  // dead
    wasted_ += 1 + (clause_learnt(c) ? 1 : 0) + clause_size(c);
}

void Solver::attach_clause(CRef c) {
    const Lit* lits = clause_lits(c);
    watches_[static_cast<size_t>(neg(lits[0]))].push_back({c, lits[1]});
    watches_[static_cast<size_t>(neg(lits[1]))].push_back({c, lits[0]});
}

void Solver::detach_clause(CRef c, bool strict) {
    const Lit* lits = clause_lits(c);
    auto remove_from = [&](Lit w) {
        auto& ws = watches_[static_cast<size_t>(neg(w))];
        if (strict) {
            for (size_t i = 0; i < ws.size(); ++i)
                if (ws[i].cref == c) {
                    ws.erase(ws.begin() + static_cast<ptrdiff_t>(i));
                    return;
                }
        }
        // lazy: dead bit makes propagate() drop the watcher
    };
    remove_from(lits[0]);
    remove_from(lits[1]);
}

void Solver::garbage_collect() {
    std::vector<uint32_t> fresh;
    fresh.reserve(arena_.size() - wasted_);
    auto move_clause = [&](CRef c) -> CRef {
        CRef nc = static_cast<CRef>(fresh.size());
        uint32_t words = 1 + (clause_learnt(c) ? 1u : 0u) + clause_size(c);
        for (uint32_t i = 0; i < words; ++i) fresh.push_back(arena_[c + i]);
        return nc;
    };
    // live clauses are exactly those in clauses_/learnts_; reasons point into
    // that set
    std::vector<std::pair<CRef, CRef>> remap;
    for (auto* list : {&clauses_, &learnts_}) {
        for (CRef& c : *list) {
            CRef nc = move_clause(c);
            remap.emplace_back(c, nc);
            c = nc;
        }
    }
    std::sort(remap.begin(), remap.end());
    auto translate = [&](CRef c) -> CRef {
        auto it = std::lower_bound(remap.begin(), remap.end(), std::make_pair(c, CRef{0}));
        return (it != remap.end() && it->first == c) ? it->second : kCRefUndef;
    };
    for (Lit p : trail_) {
        int v = var_of(p);
        if (reason_[static_cast<size_t>(v)] != kCRefUndef)
            reason_[static_cast<size_t>(v)] = translate(reason_[static_cast<size_t>(v)]);
    }
    arena_ = std::move(fresh);
    wasted_ = 0;
    for (auto& ws : watches_) ws.clear();
    for (auto* list : {&clauses_, &learnts_})
        for (CRef c : *list) attach_clause(c);
}

bool Solver::add_clause(std::span<const int32_t> dimacs_lits) {
    if (!ok_) return false;
    if (decision_level() != 0) cancel_until(0);
    std::vector<Lit> lits;
    lits.reserve(dimacs_lits.size());
    int max_var = 0;
    for (int32_t dl : dimacs_lits) max_var = std::max(max_var, std::abs(dl));
    ensure_vars(max_var);
    for (int32_t dl : dimacs_lits) {
        if (dl == 0) throw std::invalid_argument("add_clause: zero literal");
        lits.push_back(mk_lit(std::abs(dl) - 1, dl < 0));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    // drop satisfied clauses and false literals at the root level
    std::vector<Lit> kept;
    for (size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && lits[i] == neg(lits[i + 1])) return true;  // tautology
        uint8_t v = value(lits[i]);
        if (v == kTrue && level_[static_cast<size_t>(var_of(lits[i]))] == 0) return true;
        if (v == kFalse && level_[static_cast<size_t>(var_of(lits[i]))] == 0) continue;
        kept.push_back(lits[i]);
    }
    if (kept.empty()) {
        ok_ = false;
        return false;
    }
    if (kept.size() == 1) {
        unchecked_enqueue(kept[0], kCRefUndef);
        ok_ = (propagate() == kCRefUndef);
        return ok_;
    }
    CRef c = alloc_clause(kept, false);
    clauses_.push_back(c);
    attach_clause(c);
    return true;
}

bool Solver::add_formula(const CnfFormula& f) {
    ensure_vars(f.num_vars());
    for (size_t i = 0; i < f.clause_count(); ++i)
        if (!add_clause(f.clause(i))) return false;
    return true;
}

void Solver::unchecked_enqueue(Lit p, CRef from) {
    size_t v = static_cast<size_t>(var_of(p));
    vals_[v] = static_cast<uint8_t>(p & 1);  // kTrue for the positive phase
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(p);
}

Solver::CRef Solver::propagate() {
    CRef confl = kCRefUndef;
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        ++propagations;
        auto& ws = watches_[static_cast<size_t>(p)];
        size_t i = 0, j = 0;
        const size_t n = ws.size();
        while (i < n) {
            Watcher w = ws[i];
            if (value(w.blocker) == kTrue) {
                ws[j++] = ws[i++];
                continue;
            }
            CRef c = w.cref;
            if (clause_dead(c)) {
                ++i;
                continue;
            }
            Lit* lits = clause_lits(c);
            const Lit false_lit = neg(p);
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            ++i;
            // first literal true: keep watching
            Lit first = lits[0];
            if (first != w.blocker && value(first) == kTrue) {
                ws[j++] = {c, first};
                continue;
            }
            // find a new watch
            uint32_t size = clause_size(c);
            bool found = false;
            for (uint32_t k = 2; k < size; ++k) {
                if (value(lits[k]) != kFalse) {
                    std::swap(lits[1], lits[k]);
                    watches_[static_cast<size_t>(neg(lits[1]))].push_back({c, first});
                    found = true;
                    break;
                }
            }
            if (found) continue;
            // unit or conflict
            ws[j++] = {c, first};
            if (value(first) == kFalse) {
                confl = c;
                qhead_ = trail_.size();
                while (i < n) ws[j++] = ws[i++];
            } else {
                unchecked_enqueue(first, c);
            }
        }
        ws.resize(j);
        if (confl != kCRefUndef) break;
    }
    return confl;
}

void Solver::cancel_until(int target) {
    if (decision_level() <= target) return;
    size_t lim = static_cast<size_t>(trail_lim_[static_cast<size_t>(target)]);
    for (size_t i = trail_.size(); i-- > lim;) {
        int v = var_of(trail_[i]);
        polarity_[static_cast<size_t>(v)] = static_cast<uint8_t>(trail_[i] & 1);
        vals_[static_cast<size_t>(v)] = kUndef;
        reason_[static_cast<size_t>(v)] = kCRefUndef;
        if (heap_pos_[static_cast<size_t>(v)] < 0) heap_insert(v);
    }
    trail_.resize(lim);
    trail_lim_.resize(static_cast<size_t>(target));
    qhead_ = trail_.size();
}

void Solver::var_bump(int v) {
    if ((activity_[static_cast<size_t>(v)] += var_inc_) > kRescale) {
        for (double& a : activity_) a *= 1.0 / kRescale;
        var_inc_ *= 1.0 / kRescale;
    }
    if (heap_pos_[static_cast<size_t>(v)] >= 0) heap_update(v);
}

void Solver::var_decay() { var_inc_ *= 1.0 / kVarDecay; }

void Solver::cla_bump(CRef c) {
    if ((clause_act(c) += static_cast<float>(cla_inc_)) > kClaRescale) {
        for (CRef l : learnts_) clause_act(l) *= static_cast<float>(1.0 / kClaRescale);
        cla_inc_ *= 1.0 / kClaRescale;
    }
}

void Solver::cla_decay() { cla_inc_ *= 1.0 / kClaDecay; }

void Solver::analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel) {
    int path_count = 0;
    Lit p = kLitUndef;
    out_learnt.clear();
    out_learnt.push_back(kLitUndef);  // room for the asserting literal
    size_t index = trail_.size();

    do {
        Lit* lits = clause_lits(confl);
        if (clause_learnt(confl)) cla_bump(confl);
        uint32_t size = clause_size(confl);
        for (uint32_t k = (p == kLitUndef) ? 0 : 1; k < size; ++k) {
            Lit q = lits[k];
            int v = var_of(q);
            if (!seen_[static_cast<size_t>(v)] && level_[static_cast<size_t>(v)] > 0) {
                var_bump(v);
                seen_[static_cast<size_t>(v)] = 1;
                if (level_[static_cast<size_t>(v)] >= decision_level())
                    ++path_count;
                else
                    out_learnt.push_back(q);
            }
        }
        while (!seen_[static_cast<size_t>(var_of(trail_[--index]))]) {}
        p = trail_[index];
        confl = reason_[static_cast<size_t>(var_of(p))];
        seen_[static_cast<size_t>(var_of(p))] = 0;
        --path_count;
    } while (path_count > 0);
    out_learnt[0] = neg(p);

    // deep minimization
    analyze_toclear_.assign(out_learnt.begin(), out_learnt.end());
    uint32_t abstract_level = 0;
    for (size_t i = 1; i < out_learnt.size(); ++i)
        abstract_level |= 1u << (level_[static_cast<size_t>(var_of(out_learnt[i]))] & 31);
    size_t j = 1;
    for (size_t i = 1; i < out_learnt.size(); ++i) {
        int v = var_of(out_learnt[i]);
        if (reason_[static_cast<size_t>(v)] == kCRefUndef ||
            !lit_redundant(out_learnt[i], abstract_level))
            out_learnt[j++] = out_learnt[i];
    }
    out_learnt.resize(j);

    if (out_learnt.size() == 1) {
        out_btlevel = 0;
    } else {
        size_t max_i = 1;
        for (size_t i = 2; i < out_learnt.size(); ++i)
            if (level_[static_cast<size_t>(var_of(out_learnt[i]))] >
                level_[static_cast<size_t>(var_of(out_learnt[max_i]))])
                max_i = i;
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[static_cast<size_t>(var_of(out_learnt[1]))];
    }
    for (Lit q : analyze_toclear_) seen_[static_cast<size_t>(var_of(q))] = 0;
}

bool Solver::lit_redundant(Lit p, uint32_t abstract_levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    size_t top = analyze_toclear_.size();
    while (!analyze_stack_.empty()) {
        Lit q = analyze_stack_.back();
        analyze_stack_.pop_back();
        CRef c = reason_[static_cast<size_t>(var_of(q))];
        Lit* lits = clause_lits(c);
        uint32_t size = clause_size(c);
        for (uint32_t k = 1; k < size; ++k) {
            Lit r = lits[k];
            int v = var_of(r);
            if (seen_[static_cast<size_t>(v)] || level_[static_cast<size_t>(v)] == 0) continue;
            if (reason_[static_cast<size_t>(v)] != kCRefUndef &&
                ((1u << (level_[static_cast<size_t>(v)] & 31)) & abstract_levels)) {
                seen_[static_cast<size_t>(v)] = 1;
                analyze_stack_.push_back(r);
                analyze_toclear_.push_back(r);
            } else {
                for (size_t i = top; i < analyze_toclear_.size(); ++i)
                    seen_[static_cast<size_t>(var_of(analyze_toclear_[i]))] = 0;
                analyze_toclear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

Solver::Lit Solver::pick_branch_lit() {
    while (!heap_empty()) {
        int v = heap_pop();
        if (vals_[static_cast<size_t>(v)] == kUndef)
            return mk_lit(v, polarity_[static_cast<size_t>(v)]);
    }
    return kLitUndef;
}

void Solver::reduce_db() {
    // keep the upper half by activity; clauses locked as reasons survive
    std::vector<CRef> sorted = learnts_;
    std::sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
        uint32_t sa = clause_size(a), sb = clause_size(b);
        if ((sa > 2) != (sb > 2)) return sa > 2;
        return clause_act(a) < clause_act(b);
    });
    double extra_lim = cla_inc_ / std::max<size_t>(learnts_.size(), 1);
    std::vector<CRef> kept;
    kept.reserve(learnts_.size());
    size_t limit = sorted.size() / 2;
    for (size_t i = 0; i < sorted.size(); ++i) {
        CRef c = sorted[i];
        bool locked = false;
        Lit first = clause_lits(c)[0];
        if (value(first) == kTrue && reason_[static_cast<size_t>(var_of(first))] == c)
            locked = true;
        if (clause_size(c) > 2 && !locked &&
            (i < limit || clause_act(c) < extra_lim)) {
            detach_clause(c, false);
            free_clause(c);
        } else {
            kept.push_back(c);
        }
    }
    learnts_ = std::move(kept);
    if (wasted_ > arena_.size() / 4) garbage_collect();
}

void Solver::simplify_level0() {
    if (decision_level() != 0 || trail_.size() == simplify_trail_mark_) return;
    for (auto* list : {&clauses_, &learnts_}) {
        std::vector<CRef> kept;
        kept.reserve(list->size());
        for (CRef c : *list) {
            Lit* lits = clause_lits(c);
            uint32_t size = clause_size(c);
            bool satisfied = false;
            for (uint32_t k = 0; k < size && !satisfied; ++k)
                if (value(lits[k]) == kTrue && level_[static_cast<size_t>(var_of(lits[k]))] == 0)
                    satisfied = true;
            if (satisfied) {
                detach_clause(c, false);
                free_clause(c);
            } else {
                kept.push_back(c);
            }
        }
        *list = std::move(kept);
    }
    simplify_trail_mark_ = trail_.size();
    if (wasted_ > arena_.size() / 4) garbage_collect();
}

Result Solver::search(int64_t conflict_budget,
                      const std::chrono::steady_clock::time_point* deadline) {
    std::vector<Lit> learnt;
    int backtrack_level;
    int64_t local_conflicts = 0;
    for (;;) {
        CRef confl = propagate();
        if (confl != kCRefUndef) {
            ++conflicts;
            ++local_conflicts;
            if (decision_level() == 0) return Result::unsat;
            analyze(confl, learnt, backtrack_level);
            cancel_until(backtrack_level);
            if (learnt.size() == 1) {
                unchecked_enqueue(learnt[0], kCRefUndef);
            } else {
                CRef c = alloc_clause(learnt, true);
                learnts_.push_back(c);
                attach_clause(c);
                cla_bump(c);
                unchecked_enqueue(learnt[0], c);
            }
            var_decay();
            cla_decay();
            if (--learnt_adjust_cnt_ <= 0) {
                learnt_adjust_confl_ *= 1.5;
                learnt_adjust_cnt_ = learnt_adjust_confl_;
                max_learnts_ *= 1.1;
            }
        } else {
            if (conflict_budget >= 0 && local_conflicts >= conflict_budget)
                return Result::unknown;  // restart
            if (deadline && (conflicts & 1023) == 0 &&
                std::chrono::steady_clock::now() >= *deadline)
                return Result::unknown;
            if (decision_level() == 0) simplify_level0();
            if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >=
                max_learnts_)
                reduce_db();
            ++decisions;
            Lit next = pick_branch_lit();
            if (next == kLitUndef) return Result::sat;
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            unchecked_enqueue(next, kCRefUndef);
        }
    }
}

Result Solver::solve(double time_limit_seconds) {
    if (!ok_) return Result::unsat;
    cancel_until(0);
    if (propagate() != kCRefUndef) {
        ok_ = false;
        return Result::unsat;
    }
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = time_limit_seconds >= 0;
    if (has_deadline)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(time_limit_seconds));

    max_learnts_ = std::max(static_cast<double>(clauses_.size()) / 3.0, 1000.0);
    learnt_adjust_confl_ = 100;
    learnt_adjust_cnt_ = 100;

    int curr_restarts = 0;
    for (;;) {
        int64_t budget = static_cast<int64_t>(luby(2.0, curr_restarts) * kRestartBase);
        Result r = search(budget, has_deadline ? &deadline : nullptr);
        if (r == Result::sat) {
            model_.assign(static_cast<size_t>(num_vars()) + 1, 0);
            for (int v = 0; v < num_vars(); ++v)
                model_[static_cast<size_t>(v) + 1] = (vals_[static_cast<size_t>(v)] == kTrue);
            cancel_until(0);
            return Result::sat;
        }
        if (r == Result::unsat) {
            ok_ = false;
            cancel_until(0);
            return Result::unsat;
        }
        if (has_deadline && std::chrono::steady_clock::now() >= deadline) {
            cancel_until(0);
            return Result::unknown;
        }
        ++restarts;
        ++curr_restarts;
        cancel_until(0);
    }
}

void Solver::heap_insert(int v) {
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void Solver::heap_update(int v) { heap_sift_up(static_cast<size_t>(heap_pos_[static_cast<size_t>(v)])); }

int Solver::heap_pop() {
    int top = heap_[0];
    heap_pos_[static_cast<size_t>(top)] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[static_cast<size_t>(heap_[0])] = 0;
        heap_sift_down(0);
    }
    return top;
}

void Solver::heap_sift_up(size_t i) {
    int v = heap_[i];
    double a = activity_[static_cast<size_t>(v)];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (activity_[static_cast<size_t>(heap_[parent])] >= a) break;
        heap_[i] = heap_[parent];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_sift_down(size_t i) {
    int v = heap_[i];
    double a = activity_[static_cast<size_t>(v)];
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() &&
            activity_[static_cast<size_t>(heap_[child + 1])] >
                activity_[static_cast<size_t>(heap_[child])])
            ++child;
        if (activity_[static_cast<size_t>(heap_[child])] <= a) break;
        heap_[i] = heap_[child];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

}  // namespace hirsch::sat
