#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "aheft/harness.hpp"

using namespace aheft;

TEST_CASE("config validation") {
    CHECK_THROWS_AS(default_config("at99", RunScale::Desk).validate(), std::invalid_argument);
    ExperimentConfig cfg = default_config("at7", RunScale::Desk);
    CHECK_NOTHROW(cfg.validate());
    cfg.n_list = {12};  // above the DESK cap
    CHECK_THROWS_AS(cfg.validate(), std::length_error);
    cfg = default_config("at11", RunScale::Desk);
    cfg.n_list = {12};  // noise path caps at 10 even at PAPER scale
    cfg.scale = RunScale::Paper;
    CHECK_THROWS_AS(cfg.validate(), std::length_error);
}

TEST_CASE("registry covers all sixteen experiments") {
    for (int k = 1; k <= 16; ++k) {
        const ExperimentConfig cfg = default_config("at" + std::to_string(k), RunScale::Desk);
        CHECK_NOTHROW(cfg.validate());
        CHECK(cfg.n_seeds > 0);
    }
}

TEST_CASE("reference-gap experiment reproduces the frozen values") {
    ExperimentConfig cfg = default_config("at7", RunScale::Desk);
    const json res = run_experiment(cfg);
    const auto gaps = res["aggregates"]["reference_gap_tfim"].get<std::vector<double>>();
    REQUIRE(gaps.size() == 4);
    CHECK(gaps[0] == doctest::Approx(0.573223).epsilon(1e-5));
    CHECK(gaps[1] == doctest::Approx(0.667485).epsilon(1e-5));
    CHECK(gaps[2] == doctest::Approx(0.735959).epsilon(1e-5));
    CHECK(gaps[3] == doctest::Approx(0.789245).epsilon(1e-5));
    for (double g : res["aggregates"]["reference_gap_xxz"].get<std::vector<double>>())
        CHECK(g == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("result document carries the stable schema keys") {
    ExperimentConfig cfg = default_config("at2", RunScale::Desk);
    cfg.n_seeds = 3;
    const json res = run_experiment(cfg);
    for (const char* key : {"schema_version", "experiment_id", "config", "theory_constants",
                            "per_seed", "aggregates", "series", "meta"})
        CHECK(res.contains(key));
    CHECK(res["schema_version"] == 1);
    for (const auto& s : res["series"]) {
        CHECK(s.contains("name"));
        CHECK(s.contains("x"));
        CHECK(s.contains("y"));
    }
    CHECK(res["meta"].contains("duration_s"));
}

TEST_CASE("theory constants block matches the formulas") {
    ExperimentConfig cfg = default_config("at2", RunScale::Desk);
    cfg.n_seeds = 2;
    const json res = run_experiment(cfg);
    const auto& tc = res["theory_constants"][0];
    CHECK(tc["n"] == 8);
    CHECK(tc["l"] == 8);
    CHECK(tc["b"] == doctest::Approx(16.0));
    CHECK(tc["sigma_crit"] == doctest::Approx(0.0625));
    CHECK(tc["delta_eff"] == doctest::Approx(24.0));
    CHECK(tc["w_max"] == 24);
}

TEST_CASE("runs are deterministic and worker-count independent") {
    ExperimentConfig cfg = default_config("at2", RunScale::Desk);
    cfg.n_seeds = 4;
    cfg.master_seed = 77;
    const std::string one = dump_without_meta(run_experiment(cfg));
    cfg.workers = 3;
    const std::string three = dump_without_meta(run_experiment(cfg));
    CHECK(one == three);
    cfg.master_seed = 78;
    CHECK(one != dump_without_meta(run_experiment(cfg)));
}

TEST_CASE("dump_without_meta removes only the meta block") {
    json doc = {{"schema_version", 1}, {"meta", {{"duration_s", 1.0}}}, {"aggregates", 3}};
    const json parsed = json::parse(dump_without_meta(doc));
    CHECK_FALSE(parsed.contains("meta"));
    CHECK(parsed.contains("aggregates"));
}

TEST_CASE("write_result persists parseable JSON") {
    const std::string path = "harness_roundtrip_tmp.json";
    write_result({{"schema_version", 1}, {"experiment_id", "at7"}}, path);
    std::ifstream in(path);
    json parsed;
    in >> parsed;
    CHECK(parsed["experiment_id"] == "at7");
    std::remove(path.c_str());
}
