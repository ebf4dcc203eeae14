#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "hirsch/bounds.hpp"
#include "hirsch/chirotope.hpp"
#include "hirsch/cnf.hpp"
#include "hirsch/encoder.hpp"
#include "hirsch/enumerate.hpp"
#include "hirsch/path_complex.hpp"
#include "hirsch/sat/solver.hpp"

namespace hirsch {

enum class SolveStatus { Sat, Unsat, Timeout };

std::string to_string(SolveStatus s);

struct SolveVerdict {
    SolveStatus status = SolveStatus::Timeout;
    std::optional<Chirotope> model;  // present iff Sat, independently re-verified
    int added_cuts = 0;
    double wall_seconds = 0.0;
    uint64_t conflicts = 0;
};

enum class ProveMode { Eager, Lazy };

struct ProveLimits {
    double time_limit_seconds = 7200.0;
};

// A SAT backend: clauses accumulate between solve calls. Incremental
// backends keep solver state; non-incremental ones re-solve the accumulated
// formula from scratch.
class SolverBackend {
  public:
    virtual ~SolverBackend() = default;
    virtual bool incremental() const = 0;
    virtual bool add(const CnfFormula& f) = 0;  // false: already unsat at root
    virtual sat::Result solve(double time_limit_seconds) = 0;
    virtual std::vector<uint8_t> model() const = 0;  // 1-based, 0/1
    virtual uint64_t conflicts() const { return 0; }
};

class EmbeddedBackend final : public SolverBackend {
  public:
    bool incremental() const override { return true; }
    bool add(const CnfFormula& f) override { return solver_.add_formula(f); }
    sat::Result solve(double limit) override { return solver_.solve(limit); }
    std::vector<uint8_t> model() const override { return solver_.model(); }
    uint64_t conflicts() const override { return solver_.conflicts; }

  private:
    sat::Solver solver_;
};

// Runs `command <cnf-file>` and parses the standard s/v result lines.
class ExternalBackend final : public SolverBackend {
  public:
    explicit ExternalBackend(std::string command) : command_(std::move(command)) {}
    bool incremental() const override { return false; }
    bool add(const CnfFormula& f) override {
        accumulated_.append(f);
        accumulated_.set_num_vars(std::max(accumulated_.num_vars(), f.num_vars()));
        return true;
    }
    sat::Result solve(double limit) override;
    std::vector<uint8_t> model() const override { return model_; }

  private:
    std::string command_;
    CnfFormula accumulated_;
    std::vector<uint8_t> model_;
};

using BackendFactory = std::function<std::unique_ptr<SolverBackend>()>;

// "embedded" or "cmd:<executable and flags>".
BackendFactory make_backend_factory(const std::string& spec);

// Axiom clauses plus the path units; eager mode appends the two forbid
// clauses of every shortcut candidate. The digest fingerprints the ordered
// shortcut list for the instance manifest.
CnfFormula build_instance(const PathComplex& pc, int n, ProveMode mode,
                          int64_t* shortcut_count = nullptr,
                          uint64_t* shortcut_digest = nullptr);

// Model decoding: variable id (colex rank + 1) true means positive sign.
Chirotope decode_model(const std::vector<uint8_t>& model, int n, int r);

// Refute one path complex, or produce an independently verified model that
// carries it geodesically.
SolveVerdict prove_instance(const PathComplex& pc, int n, ProveMode mode, SolverBackend& backend,
                            const ProveLimits& limits);

struct RunConfig {
    int d = 0, n = 0, target_length = 0;
    std::vector<int> revisit_classes;
    ProveMode mode = ProveMode::Lazy;
    std::string backend_spec = "embedded";
    double time_limit_seconds = 7200.0;
    int workers = 1;
    std::string output_dir;  // empty: no artifacts written
    bool emit_cnf = false;
    bool fresh = false;  // ignore existing verdicts instead of resuming
    uint64_t seed = 0;
    std::vector<int> instance_filter;  // empty: all instances
};

struct InstanceRecord {
    int index = 0;
    int revisits = 0;
    std::string digest;
    std::string pivots;
    SolveStatus status = SolveStatus::Timeout;
    int added_cuts = 0;
    double wall_seconds = 0.0;
    bool resumed = false;
    bool attempted = true;
};

struct CaseReport {
    RunConfig config;
    int instance_count = 0;
    std::vector<InstanceRecord> instances;
    bool trivial = false;        // concluded from bounds alone
    bool complete = false;       // every instance has a verdict
    bool all_unsat = false;
    std::optional<int> counterexample_index;
    bool reduction_precondition_ok = true;  // the n > 2d reduction argument
    std::string conclusion;
};

std::string pivot_digest(const PivotSequence& seq);

CaseReport run_case(const RunConfig& config, const BoundsTable& bounds);

void write_case_report(const CaseReport& report, const std::string& path);

}  // namespace hirsch
