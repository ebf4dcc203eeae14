#include "hirsch/prover.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unistd.h>

#include <json.hpp>

#include "hirsch/shortcuts.hpp"

namespace hirsch {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Sat: return "SAT";
        case SolveStatus::Unsat: return "UNSAT";
        case SolveStatus::Timeout: return "TIMEOUT";
    }
    return "?";
}

sat::Result ExternalBackend::solve(double limit) {
    fs::path tmp = fs::temp_directory_path() /
                   ("hirsch_" + std::to_string(::getpid()) + "_" +
                    std::to_string(reinterpret_cast<uintptr_t>(this)) + ".cnf");
    {
        std::ofstream out(tmp);
        emit_dimacs(accumulated_, out);
    }
    std::string cmd;
    if (limit > 0 && fs::exists("/usr/bin/timeout"))
        cmd = "/usr/bin/timeout " + std::to_string(static_cast<long>(limit) + 1) + " ";
    cmd += command_ + " " + tmp.string() + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("ExternalBackend: failed to run " + command_);
    std::string output;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    pclose(pipe);
    fs::remove(tmp);

    sat::Result result = sat::Result::unknown;
    model_.assign(static_cast<size_t>(accumulated_.num_vars()) + 1, 0);
    std::istringstream in(output);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("s SATISFIABLE", 0) == 0) result = sat::Result::sat;
        else if (line.rfind("s UNSATISFIABLE", 0) == 0) result = sat::Result::unsat;
        else if (!line.empty() && line[0] == 'v') {
            std::istringstream vs(line.substr(1));
            long lit;
            while (vs >> lit) {
                if (lit == 0) continue;
                size_t v = static_cast<size_t>(std::labs(lit));
                if (v < model_.size()) model_[v] = lit > 0;
            }
        }
    }
    return result;
}

BackendFactory make_backend_factory(const std::string& spec) {
    if (spec == "embedded")
        return [] { return std::make_unique<EmbeddedBackend>(); };
    if (spec.rfind("cmd:", 0) == 0) {
        std::string cmd = spec.substr(4);
        return [cmd] { return std::make_unique<ExternalBackend>(cmd); };
    }
    throw std::invalid_argument("unknown backend spec: " + spec +
                                " (use \"embedded\" or \"cmd:<solver>\")");
}

CnfFormula build_instance(const PathComplex& pc, int n, ProveMode mode,
                          int64_t* shortcut_count, uint64_t* shortcut_digest) {
    VarIndex vars(n, pc.d + 1);
    CnfFormula f(vars.num_vars());
    encode_gp_axioms(vars, f);
    encode_path_on_boundary(pc, vars, f);
    int64_t shortcuts = 0;
    uint64_t digest = 1469598103934665603ull;
    if (mode == ProveMode::Eager) {
        for_each_shortcut_candidate(pc, [&](const std::vector<VertexSet>& sc) {
            encode_forbid_shortcut(sc, vars, f);
            ++shortcuts;
            for (VertexSet facet : sc) {
                digest ^= facet;
                digest *= 1099511628211ull;
            }
        });
    }
    if (shortcut_count) *shortcut_count = shortcuts;
    if (shortcut_digest) *shortcut_digest = digest;
    return f;
}

Chirotope decode_model(const std::vector<uint8_t>& model, int n, int r) {
    int64_t count = binomial(n, r);
    if (static_cast<int64_t>(model.size()) < count + 1)
        throw std::invalid_argument("decode_model: partial assignment");
    std::vector<int8_t> signs(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i)
        signs[static_cast<size_t>(i)] = model[static_cast<size_t>(i) + 1] ? 1 : -1;
    return Chirotope(n, r, std::move(signs));
}

namespace {

// SAT verdicts are re-checked independently of the solver: axioms, the path
// on the boundary with the expected sign chain, and geodesy.
void verify_sat_model(const Chirotope& chi, const PathComplex& pc) {
    if (auto witness = chi.verify_axioms())
        throw std::runtime_error("model verification: axiom violation survived the clauses");
    std::vector<int> sigma = compute_path_signs(pc);
    std::vector<int> tup(static_cast<size_t>(chi.r()));
    for (size_t i = 0; i < pc.facets.size(); ++i) {
        std::vector<int> base = set_elements(pc.facets[i]);
        for (size_t j = 0; j + 1 < static_cast<size_t>(chi.r()); ++j) tup[j] = base[j];
        for (int x = 1; x <= chi.n(); ++x) {
            if (set_contains(pc.facets[i], x)) continue;
            tup[static_cast<size_t>(chi.r()) - 1] = x;
            if (chi.evaluate(tup) != sigma[i])
                throw std::runtime_error("model verification: path facet sign chain broken");
        }
    }
    if (find_realized_shortcut(chi, pc))
        throw std::runtime_error("model verification: path is not geodesic in the model");
}

}  // namespace

SolveVerdict prove_instance(const PathComplex& pc, int n, ProveMode mode, SolverBackend& backend,
                            const ProveLimits& limits) {
    constexpr size_t kMaxCutsPerRound = 8192;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    std::set<std::vector<VertexSet>> cut_ledger;
    SolveVerdict verdict;
    if (!backend.add(build_instance(pc, n, mode))) {
        verdict.status = SolveStatus::Unsat;
        verdict.wall_seconds = elapsed();
        return verdict;
    }
    for (;;) {
        double remaining = limits.time_limit_seconds - elapsed();
        if (remaining <= 0) {
            verdict.status = SolveStatus::Timeout;
            break;
        }
        sat::Result r = backend.solve(remaining);
        if (r == sat::Result::unknown) {
            verdict.status = SolveStatus::Timeout;
            break;
        }
        if (r == sat::Result::unsat) {
            verdict.status = SolveStatus::Unsat;
            break;
        }
        Chirotope chi = decode_model(backend.model(), n, pc.d + 1);
        if (auto witness = chi.verify_axioms())
            throw std::runtime_error("prove_instance: model violates the sign axioms");
        auto shortcut = find_realized_shortcut(chi, pc);
        if (!shortcut) {
            verify_sat_model(chi, pc);
            verdict.status = SolveStatus::Sat;
            verdict.model = std::move(chi);
            break;
        }
        // Models can escape the eager clause set only through facets on
        // labels outside pc's vertex set; those shortcuts are cut lazily.
        // cut every short facet path the model realizes, not just the
        // shortest one; each pair is violated by this model
        std::vector<std::vector<VertexSet>> realized =
            collect_realized_shortcuts(chi, pc, kMaxCutsPerRound);
        VarIndex vars(n, pc.d + 1);
        CnfFormula cuts;
        int fresh = 0;
        for (const auto& sc : realized) {
            if (!cut_ledger.insert(sc).second) continue;
            encode_forbid_shortcut(sc, vars, cuts);
            ++fresh;
        }
        if (fresh == 0)
            throw std::logic_error("prove_instance: model found but every realized shortcut "
                                   "was already cut");
        verdict.added_cuts += fresh;
        if (!backend.add(cuts)) {
            verdict.status = SolveStatus::Unsat;
            break;
        }
    }
    verdict.wall_seconds = elapsed();
    verdict.conflicts = backend.conflicts();
    return verdict;
}

std::string pivot_digest(const PivotSequence& seq) {
    // FNV-1a over the printable form
    std::string text = seq.str();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json record_to_json(const InstanceRecord& rec) {
    return json{{"index", rec.index},       {"revisits", rec.revisits},
                {"digest", rec.digest},     {"pivots", rec.pivots},
                {"status", to_string(rec.status)}, {"added_cuts", rec.added_cuts},
                {"resumed", rec.resumed},   {"attempted", rec.attempted},   {"timing", {{"wall_seconds", rec.wall_seconds}}}};
}

std::optional<InstanceRecord> load_verdict(const fs::path& file) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    json j;
    in >> j;
    InstanceRecord rec;
    rec.index = j.at("index").get<int>();
    rec.revisits = j.at("revisits").get<int>();
    rec.digest = j.at("digest").get<std::string>();
    rec.pivots = j.at("pivots").get<std::string>();
    std::string st = j.at("status").get<std::string>();
    rec.status = st == "SAT" ? SolveStatus::Sat
                             : (st == "UNSAT" ? SolveStatus::Unsat : SolveStatus::Timeout);
    rec.added_cuts = j.at("added_cuts").get<int>();
    rec.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
    rec.resumed = true;
    return rec;
}

}  // namespace

CaseReport run_case(const RunConfig& config, const BoundsTable& bounds) {
    CaseReport report;
    report.config = config;

    // nothing to refute when the bound already rules the length out
    std::optional<int> known = bounds.upper(config.d, config.n);
    if (known && *known < config.target_length) {
        report.trivial = true;
        report.complete = true;
        report.all_unsat = true;
        report.conclusion = "Delta(" + std::to_string(config.d) + "," + std::to_string(config.n) +
                            ") <= " + std::to_string(*known) +
                            " is already known; no path of length " +
                            std::to_string(config.target_length) + " exists";
        return report;
    }

    // the n > 2d reduction: realizations missing points reduce to smaller n,
    // which must already be below the target length
    if (config.n > 2 * config.d) {
        for (int k = 2 * config.d; k < config.n; ++k) {
            std::optional<int> hi = bounds.upper(config.d, k);
            if (!hi || *hi >= config.target_length) report.reduction_precondition_ok = false;
        }
    }

    std::optional<int> delta_sub = bounds.upper(config.d - 1, config.n - 1);
    struct Item {
        PivotSequence seq;
        int revisits;
    };
    std::vector<Item> items;
    for (int r : config.revisit_classes)
        for (PivotSequence& s : enumerate_candidates(config.d, config.n, config.target_length, r,
                                                     delta_sub))
            items.push_back({std::move(s), r});
    report.instance_count = static_cast<int>(items.size());
    report.instances.resize(items.size());

    fs::path outdir;
    if (!config.output_dir.empty()) {
        outdir = config.output_dir;
        fs::create_directories(outdir / "instances");
    }

    auto wanted = [&](int idx) {
        if (config.instance_filter.empty()) return true;
        for (int w : config.instance_filter)
            if (w == idx) return true;
        return false;
    };

    BackendFactory factory = make_backend_factory(config.backend_spec);
    std::atomic<size_t> cursor{0};
    std::mutex io_mutex;

    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= items.size()) return;
            InstanceRecord rec;
            rec.index = static_cast<int>(i);
            rec.revisits = items[i].revisits;
            rec.pivots = items[i].seq.str();
            rec.digest = pivot_digest(items[i].seq);
            if (!wanted(rec.index)) {
                rec.attempted = false;
                report.instances[i] = rec;
                continue;
            }
            fs::path inst_dir, verdict_file;
            if (!outdir.empty()) {
                inst_dir = outdir / "instances" / rec.digest;
                verdict_file = inst_dir / "verdict.json";
                if (!config.fresh) {
                    if (auto prior = load_verdict(verdict_file)) {
                        prior->index = rec.index;
                        report.instances[i] = *prior;
                        continue;
                    }
                }
                fs::create_directories(inst_dir);
            }
            PathComplex pc = expand_to_facets(items[i].seq, config.n);
            auto backend = factory();
            SolveVerdict v = prove_instance(pc, config.n, config.mode, *backend,
                                            ProveLimits{config.time_limit_seconds});
            rec.status = v.status;
            rec.added_cuts = v.added_cuts;
            rec.wall_seconds = v.wall_seconds;
            if (!outdir.empty()) {
                std::lock_guard<std::mutex> lock(io_mutex);
                if (config.emit_cnf) {
                    std::ofstream cnf(inst_dir / "instance.cnf");
                    emit_dimacs(build_instance(pc, config.n, config.mode), cnf);
                }
                if (v.model) {
                    std::ofstream m(inst_dir / "model.txt");
                    v.model->write(m);
                }
                std::ofstream out(verdict_file);
                out << record_to_json(rec).dump(2) << '\n';
            }
            report.instances[i] = rec;
        }
    };

    int workers = std::max(1, config.workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    report.complete = true;
    report.all_unsat = true;
    for (const InstanceRecord& rec : report.instances) {
        if (!rec.attempted) {
            report.complete = false;
            continue;
        }
        if (rec.status == SolveStatus::Timeout) report.complete = false;
        if (rec.status == SolveStatus::Sat) {
            report.all_unsat = false;
            if (!report.counterexample_index) report.counterexample_index = rec.index;
        }
        if (rec.status != SolveStatus::Unsat) report.all_unsat = false;
    }
    if (report.complete && report.all_unsat && config.instance_filter.empty()) {
        report.conclusion = "no candidate admits a matroid polytope: Delta(" +
                            std::to_string(config.d) + "," + std::to_string(config.n) +
                            ") = " + std::to_string(config.target_length - 1);
    } else if (report.counterexample_index) {
        report.conclusion = "instance " + std::to_string(*report.counterexample_index) +
                            " is satisfiable; model written as a counterexample candidate";
    } else {
        report.conclusion = "incomplete";
    }
    return report;
}

void write_case_report(const CaseReport& report, const std::string& path) {
    json j;
    j["case"] = {{"d", report.config.d},
                 {"n", report.config.n},
                 {"target_length", report.config.target_length},
                 {"revisit_classes", report.config.revisit_classes},
                 {"mode", report.config.mode == ProveMode::Eager ? "eager" : "lazy"},
                 {"backend", report.config.backend_spec}};
    j["instance_count"] = report.instance_count;
    j["trivial"] = report.trivial;
    j["complete"] = report.complete;
    j["all_unsat"] = report.all_unsat;
    j["reduction_precondition_ok"] = report.reduction_precondition_ok;
    j["conclusion"] = report.conclusion;
    if (report.counterexample_index) j["counterexample_index"] = *report.counterexample_index;
    j["instances"] = json::array();
    for (const InstanceRecord& rec : report.instances) j["instances"].push_back(record_to_json(rec));
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

}  // namespace hirsch
