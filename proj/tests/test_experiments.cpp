#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grouplab/experiments.hpp"

using namespace grouplab;

TEST_CASE("config parsing and schema validation") {
    auto cfg = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"so3"}})");
    CHECK(cfg.experiment == "isolate");
    CHECK(cfg.seed == 0);
    CHECK_THROWS_AS(parse_experiment_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"experiment":"nope"})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"params":{}})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"experiment":"isolate","seed":"x"})"), ConfigError);
    // top-level params are folded in
    auto cfg2 = parse_experiment_config(R"({"experiment":"approximate","group":"T1","ns":[2,4]})");
    CHECK(cfg2.params_json.find("T1") != std::string::npos);
}

TEST_CASE("config hash is canonical and seed-sensitive") {
    auto a = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"so3"}})");
    auto b = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"so3"},"seed":0})");
    CHECK(config_hash(a) == config_hash(b));
    auto c = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"so3"},"seed":1})");
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("list covers every experiment id") {
    auto names = list_experiments();
    CHECK(names.size() == 9);
    for (const char* required : {"approximate", "isolate", "mz-probe", "turing-gap", "myers",
                                 "h2-table", "minimal-classes", "example-3-1", "functorial-probe"})
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
}

TEST_CASE("approximate experiment writes a decreasing CSV") {
    auto cfg = parse_experiment_config(
        R"({"experiment":"approximate","params":{"group":"G_alpha","ns":[2,4,8],"net_mesh":0.01}})");
    auto out = run_experiment(cfg);
    CHECK(out.exit_code == 0);
    REQUIRE(out.artifacts.size() == 1);
    const auto& body = out.artifacts[0].content;
    CHECK(body.find("# config_hash=") != std::string::npos);
    CHECK(body.find("index,n,estimate,error_bound") != std::string::npos);
    CHECK(out.summary.find("strictly decreasing") != std::string::npos);
}

TEST_CASE("isolate experiment emits the verdict JSON") {
    auto cfg = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"u2"}})");
    auto out = run_experiment(cfg);
    CHECK(out.artifacts[0].content.find("\"isolated\": false") != std::string::npos);
    auto cfg2 = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"so3"}})");
    CHECK(run_experiment(cfg2).artifacts[0].content.find("\"isolated\": true") !=
          std::string::npos);
}

TEST_CASE("example-3-1 verifies every claim") {
    auto cfg = parse_experiment_config(R"({"experiment":"example-3-1"})");
    auto out = run_experiment(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.artifacts[0].content.find("\"all_claims_verified\": true") != std::string::npos);
}

TEST_CASE("minimal-classes reports the expected verdicts") {
    auto cfg = parse_experiment_config(R"({"experiment":"minimal-classes"})");
    auto out = run_experiment(cfg);
    const auto& body = out.artifacts[0].content;
    CHECK(body.find("Z4_rotation") != std::string::npos);
    // two minimal, two not
    size_t pos = 0, minimal_true = 0;
    while ((pos = body.find("\"minimal\": true", pos)) != std::string::npos) {
        ++minimal_true;
        pos += 10;
    }
    CHECK(minimal_true == 2);
}

TEST_CASE("h2-table runs its builtin sweep") {
    auto cfg = parse_experiment_config(R"({"experiment":"h2-table"})");
    auto out = run_experiment(cfg);
    const auto& body = out.artifacts[0].content;
    CHECK(body.find("F,M,h2_invariant_factors") != std::string::npos);
    CHECK(body.find("Z2,2,2") != std::string::npos);   // H^2(Z2;Z2) = Z2
    CHECK(body.find("Z2,3,trivial") != std::string::npos);
}

TEST_CASE("byte-identical reruns with the same seed") {
    auto cfg = parse_experiment_config(
        R"({"experiment":"mz-probe","params":{"subgroup_order":4,"perturb_angle":0.2,"budget":800},"seed":7})");
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (size_t i = 0; i < a.artifacts.size(); ++i) {
        CHECK(a.artifacts[i].filename == b.artifacts[i].filename);
        CHECK(a.artifacts[i].content == b.artifacts[i].content);
    }
}

TEST_CASE("functorial-probe passes on both wired cases") {
    for (const char* hom : {"T2_to_T1", "SU2_to_SO3"}) {
        std::string cfg_text = std::string(R"({"experiment":"functorial-probe","params":{"hom":")") +
                               hom + R"("}})";
        auto out = run_experiment(parse_experiment_config(cfg_text));
        CHECK(out.exit_code == 0);
        CHECK(out.artifacts[0].content.find("\"all_pass\": true") != std::string::npos);
    }
}

TEST_CASE("unknown corpus names raise config errors") {
    auto cfg = parse_experiment_config(R"({"experiment":"isolate","params":{"algebra":"nope"}})");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}
