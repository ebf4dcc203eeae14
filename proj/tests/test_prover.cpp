#include <doctest.h>

#include <filesystem>
#include <random>

#include "hirsch/prover.hpp"
#include "hirsch/shortcuts.hpp"

using namespace hirsch;
namespace fs = std::filesystem;

TEST_CASE("axioms-only instances are satisfiable and decode to chirotopes") {
    VarIndex vars(6, 3);
    CnfFormula f(vars.num_vars());
    encode_gp_axioms(vars, f);
    EmbeddedBackend backend;
    REQUIRE(backend.add(f));
    REQUIRE(backend.solve(60) == sat::Result::sat);
    Chirotope chi = decode_model(backend.model(), 6, 3);
    CHECK(!chi.verify_axioms());
}

TEST_CASE("decode_model round trips with the induced assignment") {
    std::mt19937_64 rng(5);
    std::vector<std::vector<int64_t>> cols;
    for (int64_t t = 1; t <= 6; ++t) cols.push_back({t, t * t, 1});
    Chirotope chi = Chirotope::from_points(cols);
    std::vector<uint8_t> assignment(static_cast<size_t>(chi.basis_count()) + 1, 0);
    for (int64_t i = 0; i < chi.basis_count(); ++i)
        assignment[static_cast<size_t>(i) + 1] = chi.sign_at_rank(i) > 0;
    CHECK(decode_model(assignment, 6, 3) == chi);
    CHECK_THROWS_AS(decode_model(std::vector<uint8_t>(5, 1), 6, 3), std::invalid_argument);

    std::vector<uint8_t> trivial{0, 1};
    Chirotope tiny = decode_model(trivial, 3, 3);
    CHECK(tiny.sign_at_rank(0) == 1);
}

TEST_CASE("a realizable geodesic is reported satisfiable with a verified model") {
    // hexagon path of length 3 between opposite edges: realizable and
    // geodesic, so the refutation must fail with a counterexample model
    PathComplex pc{2, 6,
                   {set_of(std::vector<int>{1, 2}), set_of(std::vector<int>{2, 3}),
                    set_of(std::vector<int>{3, 4}), set_of(std::vector<int>{4, 5})}};
    REQUIRE(pc.end_disjoint());
    for (ProveMode mode : {ProveMode::Lazy, ProveMode::Eager}) {
        EmbeddedBackend backend;
        SolveVerdict v = prove_instance(pc, 6, mode, backend, ProveLimits{120});
        REQUIRE(v.status == SolveStatus::Sat);
        REQUIRE(v.model.has_value());
        CHECK(!v.model->verify_axioms());
        CHECK(!find_realized_shortcut(*v.model, pc).has_value());
        CHECK(v.model->dual_graph_distance(pc.facets.front(), pc.facets.back()) == 3);
    }
}

TEST_CASE("eager and lazy agree on a refutable instance") {
    // a non-revisiting candidate uses all 11 labels, so the eager clause set
    // is airtight and the first solve settles it
    auto r0 = enumerate_candidates(4, 11, 7, 0, 5);
    PathComplex pc = expand_to_facets(r0[7], 11);
    EmbeddedBackend lazy_backend;
    SolveVerdict lazy = prove_instance(pc, 11, ProveMode::Lazy, lazy_backend, ProveLimits{600});
    CHECK(lazy.status == SolveStatus::Unsat);
    CHECK(lazy.added_cuts > 0);
    EmbeddedBackend eager_backend;
    SolveVerdict eager = prove_instance(pc, 11, ProveMode::Eager, eager_backend, ProveLimits{600});
    CHECK(eager.status == SolveStatus::Unsat);
    CHECK(eager.added_cuts == 0);
}

TEST_CASE("eager mode stays sound when labels outside the path exist") {
    // single-revisit candidates use ten of the eleven labels; shortcuts
    // through the eleventh are cut on demand
    auto r1 = enumerate_candidates(4, 11, 7, 1, 5);
    PathComplex pc = expand_to_facets(r1[3], 11);
    EmbeddedBackend backend;
    SolveVerdict v = prove_instance(pc, 11, ProveMode::Eager, backend, ProveLimits{600});
    CHECK(v.status == SolveStatus::Unsat);
}

TEST_CASE("timeouts surface as verdicts") {
    auto cands = enumerate_candidates(6, 12, 7, 1, 6);
    PathComplex pc = expand_to_facets(cands[0], 12);
    EmbeddedBackend backend;
    SolveVerdict v = prove_instance(pc, 12, ProveMode::Lazy, backend, ProveLimits{0.0});
    CHECK(v.status == SolveStatus::Timeout);
}

TEST_CASE("run_case concludes trivially from known bounds") {
    BoundsTable bounds = propagate(standard_base_facts(), {}, 7, 7);
    RunConfig config;
    config.d = 3;
    config.n = 9;
    config.target_length = 6;  // Delta(3,9) = 5 < 6
    config.revisit_classes = {0};
    CaseReport report = run_case(config, bounds);
    CHECK(report.trivial);
    CHECK(report.all_unsat);
    CHECK(report.instance_count == 0);
    CHECK(report.conclusion.find("already known") != std::string::npos);
}

TEST_CASE("run_case over a sampled class with artifacts and resume") {
    BoundsTable bounds = propagate(standard_base_facts(), {}, 7, 7);
    fs::path dir = fs::temp_directory_path() / "hirsch_test_case";
    fs::remove_all(dir);

    RunConfig config;
    config.d = 4;
    config.n = 11;
    config.target_length = 7;
    config.revisit_classes = {3};
    config.mode = ProveMode::Lazy;
    config.time_limit_seconds = 600;
    config.workers = 2;
    config.output_dir = dir.string();
    config.instance_filter = {0, 1, 2};

    CaseReport first = run_case(config, bounds);
    REQUIRE(first.instance_count == 32);
    CHECK(!first.complete);  // only three instances attempted
    int unsat = 0;
    for (const InstanceRecord& rec : first.instances)
        if (rec.attempted) {
            CHECK(rec.status == SolveStatus::Unsat);
            CHECK(!rec.resumed);
            ++unsat;
        }
    CHECK(unsat == 3);
    CHECK(fs::exists(dir / "instances"));

    CaseReport second = run_case(config, bounds);
    for (const InstanceRecord& rec : second.instances)
        if (rec.attempted) {
            CHECK(rec.status == SolveStatus::Unsat);
            CHECK(rec.resumed);
        }
    // resumed run reproduces the verdict set
    for (size_t i = 0; i < first.instances.size(); ++i) {
        CHECK(first.instances[i].digest == second.instances[i].digest);
        if (first.instances[i].attempted)
            CHECK(first.instances[i].status == second.instances[i].status);
    }
    write_case_report(second, (dir / "report.json").string());
    CHECK(fs::exists(dir / "report.json"));
    fs::remove_all(dir);
}

TEST_CASE("reduction precondition is recorded for wide cases") {
    BoundsTable bounds = propagate(standard_base_facts(), {}, 7, 7);
    RunConfig config;
    config.d = 4;
    config.n = 11;
    config.target_length = 7;
    config.revisit_classes = {3};
    config.instance_filter = {0};
    CaseReport report = run_case(config, bounds);
    // Delta(4,k) <= 5 for 8 <= k <= 10 covers the missing-point reduction
    CHECK(report.reduction_precondition_ok);
}

TEST_CASE("external backend spec parsing") {
    CHECK_THROWS_AS(make_backend_factory("mystery"), std::invalid_argument);
    BackendFactory f = make_backend_factory("embedded");
    CHECK(f() != nullptr);
    BackendFactory g = make_backend_factory("cmd:/bin/false");
    CHECK(g() != nullptr);
}
