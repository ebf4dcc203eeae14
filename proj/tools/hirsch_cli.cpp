#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hirsch/bounds.hpp"
#include "hirsch/encoder.hpp"
#include "hirsch/enumerate.hpp"
#include "hirsch/prover.hpp"
#include "hirsch/shortcuts.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hirsch;

namespace {

constexpr int kExitConcluded = 0;
constexpr int kExitCounterexample = 10;
constexpr int kExitIncomplete = 20;

std::vector<int> parse_revisits(const std::string& spec) {
    std::vector<int> out;
    size_t dots = spec.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(spec.substr(0, dots));
        int hi = std::stoi(spec.substr(dots + 2));
        for (int r = lo; r <= hi; ++r) out.push_back(r);
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    }
    return out;
}

BoundsTable default_bounds(int d, int n) {
    int d_max = std::max({d, n - d, 8});
    return propagate(standard_base_facts(), {}, d_max, d_max);
}

std::optional<int> sub_bound(const BoundsTable& b, int d, int n) { return b.upper(d - 1, n - 1); }

json sequences_json(const std::vector<PivotSequence>& seqs) {
    json arr = json::array();
    for (const PivotSequence& s : seqs) {
        json pivots = json::array();
        for (const Pivot& p : s.pivots) pivots.push_back({p.leave, p.enter});
        arr.push_back(pivots);
    }
    return arr;
}

int cmd_enumerate(int d, int n, int length, const std::string& revisits,
                  const std::string& out_dir) {
    BoundsTable bounds = default_bounds(d, n);
    std::optional<int> delta_sub = sub_bound(bounds, d, n);
    json manifest;
    manifest["d"] = d;
    manifest["n"] = n;
    manifest["length"] = length;
    manifest["filters"] = {{"lemma_4243", true},
                           {"late_revisit", "single revisit"},
                           {"direction_reduction", "non-revisiting"},
                           {"not_uniq_bound", delta_sub ? json(*delta_sub) : json(nullptr)}};
    json classes = json::array();
    for (int r : parse_revisits(revisits)) {
        EnumerationStats stats;
        std::vector<PivotSequence> seqs = enumerate_candidates(d, n, length, r, delta_sub, &stats);
        for (const PivotSequence& s : seqs) std::cout << s.str() << '\n';
        classes.push_back({{"revisits", r},
                           {"count", seqs.size()},
                           {"stats",
                            {{"sequences", stats.sequences},
                             {"loop_placements", stats.loop_placements},
                             {"after_4243", stats.after_4243},
                             {"after_symmetry", stats.after_symmetry},
                             {"after_validity", stats.after_validity}}},
                           {"sequences", sequences_json(seqs)}});
        std::cerr << "revisits " << r << ": " << seqs.size() << " candidates\n";
    }
    manifest["classes"] = classes;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "enumerate.json");
        out << manifest.dump(2) << '\n';
    }
    return kExitConcluded;
}

int cmd_encode(int d, int n, int length, int revisits, int instance, bool eager,
               const std::string& out_file) {
    BoundsTable bounds = default_bounds(d, n);
    std::vector<PivotSequence> seqs =
        enumerate_candidates(d, n, length, revisits, sub_bound(bounds, d, n));
    if (instance < 0 || instance >= static_cast<int>(seqs.size())) {
        std::cerr << "instance index out of range (0.." << seqs.size() - 1 << ")\n";
        return kExitIncomplete;
    }
    PathComplex pc = expand_to_facets(seqs[static_cast<size_t>(instance)], n);
    int64_t shortcuts = 0;
    uint64_t shortcut_digest = 0;
    CnfFormula f = build_instance(pc, n, eager ? ProveMode::Eager : ProveMode::Lazy, &shortcuts,
                                  &shortcut_digest);
    VarIndex vars(n, d + 1);
    std::ofstream out(out_file);
    if (!out) {
        std::cerr << "cannot write " << out_file << '\n';
        return kExitIncomplete;
    }
    emit_dimacs(f, out, variable_legend(vars));
    int64_t gp = 16 * binomial(n, d - 1) * binomial(n - d + 1, 4);
    std::cerr << "vars " << f.num_vars() << " clauses " << f.clause_count() << " (axioms " << gp
              << ", path units " << (length + 1) * (n - d) << ", shortcut pairs " << shortcuts
              << ")\n";
    json side;
    side["n"] = n;
    side["r"] = d + 1;
    side["pivots"] = seqs[static_cast<size_t>(instance)].str();
    side["digest"] = pivot_digest(seqs[static_cast<size_t>(instance)]);
    side["clauses"] = {{"axioms", gp},
                       {"path_units", (length + 1) * (n - d)},
                       {"shortcut_pairs", shortcuts},
                       {"total", f.clause_count()}};
    if (eager) {
        char digest_hex[17];
        std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                      static_cast<unsigned long long>(shortcut_digest));
        side["shortcut_digest"] = digest_hex;
    }
    std::ofstream sideout(out_file + ".json");
    sideout << side.dump(2) << '\n';
    return kExitConcluded;
}

int cmd_prove(RunConfig config, const std::string& report_file) {
    BoundsTable bounds = default_bounds(config.d, config.n);
    CaseReport report = run_case(config, bounds);
    std::cout << "instances: " << report.instance_count << '\n';
    for (const InstanceRecord& rec : report.instances) {
        if (!rec.attempted) continue;
        std::cout << "  #" << rec.index << " [r=" << rec.revisits << "] "
                  << to_string(rec.status) << " cuts=" << rec.added_cuts << " "
                  << rec.pivots << (rec.resumed ? " (resumed)" : "") << '\n';
    }
    std::cout << report.conclusion << '\n';
    if (!report.reduction_precondition_ok)
        std::cout << "warning: smaller-n diameter bounds do not cover the reduction argument\n";
    if (!report_file.empty()) write_case_report(report, report_file);
    else if (!config.output_dir.empty())
        write_case_report(report, (fs::path(config.output_dir) / "report.json").string());
    if (report.counterexample_index) return kExitCounterexample;
    if (!report.complete) return kExitIncomplete;
    return kExitConcluded;
}

int cmd_bounds(int d_max, int slack_max, bool with_computed, bool as_json) {
    std::vector<DiameterFact> computed;
    if (with_computed) {
        computed.push_back({6, 12, 6, 6, "computed"});
        computed.push_back({4, 11, 6, 6, "computed"});
    }
    BoundsTable table = propagate(standard_base_facts(), computed, d_max, slack_max);
    if (as_json) {
        json j = json::array();
        for (const auto& [key, bound] : table.entries()) {
            json e = {{"d", key.first},
                      {"n", key.second},
                      {"lo", bound.lo},
                      {"lo_src", bound.lo_src}};
            if (bound.hi) {
                e["hi"] = *bound.hi;
                e["hi_src"] = bound.hi_src;
            }
            j.push_back(e);
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << render_table(table, 4, d_max, 4, slack_max);
    }
    return kExitConcluded;
}

int cmd_verify(const std::string& model_file, int d, int n, const std::string& sequence) {
    std::ifstream in(model_file);
    if (!in) {
        std::cerr << "cannot read " << model_file << '\n';
        return kExitIncomplete;
    }
    Chirotope chi = Chirotope::read(in);
    if (chi.n() != n || chi.r() != d + 1) {
        std::cerr << "model is rank " << chi.r() << " on " << chi.n()
                  << " elements; expected rank " << d + 1 << " on " << n << '\n';
        return kExitCounterexample;
    }
    if (auto witness = chi.verify_axioms()) {
        std::cerr << "axiom violation at sigma {";
        for (size_t i = 0; i < witness->sigma.size(); ++i)
            std::cerr << (i ? "," : "") << witness->sigma[i];
        std::cerr << "} quadruple {" << witness->quadruple[0] << "," << witness->quadruple[1]
                  << "," << witness->quadruple[2] << "," << witness->quadruple[3] << "}\n";
        return kExitCounterexample;
    }
    if (!sequence.empty()) {
        PivotSequence seq = parse_pivot_sequence(sequence, d);
        PathComplex pc = expand_to_facets(seq, n);
        std::vector<int> sigma = compute_path_signs(pc);
        std::vector<int> tup(static_cast<size_t>(d) + 1);
        // the model may be globally negated; normalize on the first facet
        std::vector<int> base = set_elements(pc.facets[0]);
        for (int j = 0; j < d; ++j) tup[static_cast<size_t>(j)] = base[static_cast<size_t>(j)];
        int x0 = 1;
        while (set_contains(pc.facets[0], x0)) ++x0;
        tup[static_cast<size_t>(d)] = x0;
        Chirotope chk = chi.evaluate(tup) < 0 ? chi.negated() : chi;
        for (size_t i = 0; i < pc.facets.size(); ++i) {
            base = set_elements(pc.facets[i]);
            for (int j = 0; j < d; ++j) tup[static_cast<size_t>(j)] = base[static_cast<size_t>(j)];
            for (int x = 1; x <= n; ++x) {
                if (set_contains(pc.facets[i], x)) continue;
                tup[static_cast<size_t>(d)] = x;
                if (chk.evaluate(tup) != sigma[i]) {
                    std::cerr << "facet " << i << " is not on the boundary with the expected sign\n";
                    return kExitCounterexample;
                }
            }
        }
        if (auto sc = find_realized_shortcut(chk, pc)) {
            std::cerr << "path is not geodesic: a shorter facet path exists (length "
                      << sc->size() - 1 << ")\n";
            return kExitCounterexample;
        }
        std::cout << "model carries the path geodesically\n";
    } else {
        std::cout << "model satisfies the chirotope axioms\n";
    }
    auto off = chi.elements_off_boundary();
    if (!off.empty()) {
        std::cout << "note: elements off the boundary:";
        for (int v : off) std::cout << ' ' << v;
        std::cout << '\n';
    }
    return kExitConcluded;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAT-based verification of polytope diameter bounds"};
    app.require_subcommand(1);

    int d = 6, n = 12, length = 7;
    std::string revisits = "1";
    std::string out_dir, out_file, report_file, model_file, sequence;
    int revisit_class = 1, instance = 0;
    bool eager = false, with_computed = false, as_json = false, fresh = false, emit_cnf = false;
    int d_max = 7, slack_max = 7;

    auto* enumerate = app.add_subcommand("enumerate", "enumerate candidate path complexes");
    enumerate->add_option("--d", d, "dimension")->required();
    enumerate->add_option("--n", n, "vertex count")->required();
    enumerate->add_option("--length", length, "path length")->required();
    enumerate->add_option("--revisits", revisits, "revisit class, list or range (e.g. 1 or 0..3)");
    enumerate->add_option("--out", out_dir, "manifest directory");

    auto* encode = app.add_subcommand("encode", "write one instance as DIMACS CNF");
    encode->add_option("--d", d)->required();
    encode->add_option("--n", n)->required();
    encode->add_option("--length", length)->required();
    encode->add_option("--revisits", revisit_class)->required();
    encode->add_option("--instance", instance, "candidate index within the class");
    encode->add_flag("--eager", eager, "append the shortcut-forbidding clauses");
    encode->add_option("--out", out_file, "output CNF path")->required();

    RunConfig config;
    std::string mode = "lazy", backend = "embedded", instances;
    auto* prove = app.add_subcommand("prove", "refute candidates by unsatisfiability");
    prove->add_option("--d", config.d)->required();
    prove->add_option("--n", config.n)->required();
    prove->add_option("--length", config.target_length)->required();
    prove->add_option("--revisits", revisits, "revisit classes (e.g. 1 or 0..3)");
    prove->add_option("--mode", mode, "eager | lazy");
    prove->add_option("--backend", backend, "embedded | cmd:<solver>");
    prove->add_option("--limit", config.time_limit_seconds, "per-instance seconds");
    prove->add_option("--workers", config.workers, "parallel instances");
    prove->add_option("--out", config.output_dir, "artifact directory (enables resume)");
    prove->add_option("--instances", instances, "comma-separated instance indices");
    prove->add_option("--report", report_file, "case report path");
    prove->add_flag("--fresh", fresh, "ignore existing verdicts");
    prove->add_flag("--emit-cnf", emit_cnf, "write per-instance DIMACS");
    prove->add_option("--seed", config.seed, "configuration seed (recorded)");

    auto* bounds = app.add_subcommand("bounds", "print diameter bound tables");
    bounds->add_option("--dmax", d_max);
    bounds->add_option("--slack", slack_max);
    bounds->add_flag("--with-computed", with_computed, "include the two computed diameters");
    bounds->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "re-check a chirotope model file");
    verify->add_option("--model", model_file)->required();
    verify->add_option("--d", d)->required();
    verify->add_option("--n", n)->required();
    verify->add_option("--sequence", sequence, "pivot sequence \"(l,e) (l,e) ...\"");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enumerate->parsed()) return cmd_enumerate(d, n, length, revisits, out_dir);
        if (encode->parsed()) return cmd_encode(d, n, length, revisit_class, instance, eager, out_file);
        if (prove->parsed()) {
            config.mode = (mode == "eager") ? ProveMode::Eager : ProveMode::Lazy;
            config.backend_spec = backend;
            config.revisit_classes = parse_revisits(revisits);
            config.fresh = fresh;
            config.emit_cnf = emit_cnf;
            if (!instances.empty())
                for (int i : parse_revisits(instances)) config.instance_filter.push_back(i);
            return cmd_prove(config, report_file);
        }
        if (bounds->parsed()) return cmd_bounds(d_max, slack_max, with_computed, as_json);
        if (verify->parsed()) return cmd_verify(model_file, d, n, sequence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIncomplete;
    }
    return kExitConcluded;
}
