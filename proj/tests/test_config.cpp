#include <doctest.h>

#include "gclab/config.hpp"
#include "gclab/errors.hpp"

using namespace gclab;
using nlohmann::json;

namespace {
json minimal_scalar() {
    return json::parse(R"({
      "model": {"type": "scalar", "map": {"kind": "linear", "q": 0.5},
                "grid": {"L": 14.0, "n": 128, "rule": "gauss"}},
      "noise": {"family": "gaussian", "b0": 1.0, "r": 1.0}
    })");
}
}  // namespace

TEST_CASE("unknown keys are rejected with their path") {
    json j = minimal_scalar();
    j["model"]["grid"]["spacing"] = 0.1;
    try {
        parse_config(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("spacing") != std::string::npos);
        CHECK(e.path() == "model.grid");
    }
}

TEST_CASE("bad model type and bad method are named") {
    json j = minimal_scalar();
    j["model"]["type"] = "navier";
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    json j2 = minimal_scalar();
    j2["scgf"] = {{"method", "magic"}};
    CHECK_THROWS_AS(parse_config(j2), ConfigError);
}

TEST_CASE("resolved config parses back to the same resolved form") {
    json j = minimal_scalar();
    j["scgf"] = {{"alpha_min", -0.5}, {"alpha_max", 1.5}, {"alpha_step", 0.25}};
    const RunConfig cfg = parse_config(j);
    const json echoed = cfg.resolved();
    const RunConfig cfg2 = parse_config(echoed);
    CHECK(cfg2.resolved() == echoed);
    CHECK(cfg2.hash() == cfg.hash());
}

TEST_CASE("defaults are filled and grids generated") {
    const RunConfig cfg = parse_config(minimal_scalar());
    CHECK(cfg.run.k == 10000);
    CHECK(cfg.noise.b0 == 1.0);
    CHECK(cfg.threads == 0);
    ScgfSection s;
    s.alpha_min = 0.0;
    s.alpha_max = 1.0;
    s.alpha_step = 0.25;
    const auto g = s.grid();
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
}

TEST_CASE("burgers model builders produce matching truncations") {
    json j = json::parse(R"({
      "model": {"type": "burgers", "nu": 0.25, "N": 8, "substeps": 50,
                "h": {"modes": [{"j": 1, "cos": 1.0}, {"j": 3, "sin": -0.5}]}},
      "noise": {"family": "gaussian", "b0": 1.0, "r": 1.0}
    })");
    const RunConfig cfg = parse_config(j);
    const TransitionModel tm = make_transition_model(cfg);
    CHECK(tm.modes() == 8);
    const FlowConfig fc = make_flow_config(*cfg.burgers);
    CHECK(fc.h.cos_coeff(1) == 1.0);
    CHECK(fc.h.sin_coeff(3) == -0.5);
    CHECK_THROWS_AS(make_grid_kernel(cfg), ConfigError);
}

TEST_CASE("force mode out of range is rejected") {
    json j = json::parse(R"({
      "model": {"type": "burgers", "N": 4,
                "h": {"modes": [{"j": 9, "cos": 1.0}]}},
      "noise": {"family": "gaussian"}
    })");
    CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("scalar kernel builder respects the noise scale") {
    json j = minimal_scalar();
    j["noise"]["b0"] = 2.0;
    const RunConfig cfg = parse_config(j);
    const GridKernel k = make_grid_kernel(cfg);
    CHECK(k.noise_scale() == 2.0);
    CHECK(k.size() == 128);
}

TEST_CASE("shipped configs load") {
    const std::string dir = GCLAB_CONFIG_DIR;
    for (const char* name : {"ar1.conf", "tanh.conf", "burgers_bench.conf", "burgers_small.conf",
                             "embed_tanh.conf"}) {
        const RunConfig cfg = load_config(dir + "/" + name);
        CHECK((cfg.model_type == "scalar" || cfg.model_type == "burgers"));
    }
}
