#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "gclab/errors.hpp"

using namespace gclab;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig quick_scalar_cfg(const std::string& dir) {
    auto j = nlohmann::json::parse(R"({
      "model": {"type": "scalar", "map": {"kind": "linear", "q": 0.5},
                "grid": {"L": 14.0, "n": 256, "rule": "gauss"}},
      "noise": {"family": "gaussian", "b0": 1.0, "r": 1.0},
      "run": {"k": 200, "seed": 3},
      "scgf": {"alpha_min": -0.25, "alpha_max": 1.25, "alpha_step": 0.25, "method": "oracle"},
      "rate": {"r_min": -0.5, "r_max": 0.5, "r_step": 0.05}
    })");
    j["output"] = {{"dir", dir}, {"tag", "t"}};
    return parse_config(j);
}
}  // namespace

TEST_CASE("oracle command writes summary and density files") {
    const fs::path dir = fs::temp_directory_path() / "gclab_cmd_oracle";
    fs::remove_all(dir);
    const auto res = cli::cmd_oracle(quick_scalar_cfg(dir.string()));
    CHECK(res.exit_code == cli::kPass);
    CHECK(fs::exists(fs::path(res.out_dir) / "summary.json"));
    CHECK(fs::exists(fs::path(res.out_dir) / "rho.csv"));
    CHECK(fs::exists(fs::path(res.out_dir) / "config.resolved"));
    CHECK(std::abs(res.summary["ep"].get<double>()) <= 1e-8);
    fs::remove_all(dir);
}

TEST_CASE("rate command produces a verdict and is byte-idempotent") {
    const fs::path dir1 = fs::temp_directory_path() / "gclab_cmd_rate1";
    const fs::path dir2 = fs::temp_directory_path() / "gclab_cmd_rate2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    auto cfg1 = quick_scalar_cfg(dir1.string());
    auto cfg2 = quick_scalar_cfg(dir2.string());
    const auto r1 = cli::cmd_rate(cfg1);
    const auto r2 = cli::cmd_rate(cfg2);
    CHECK(r1.exit_code == cli::kPass);
    CHECK(r1.summary["pass"].get<bool>());
    for (const char* f : {"scgf.csv", "rate.csv", "summary.json"}) {
        const auto a = slurp(fs::path(r1.out_dir) / f);
        const auto b = slurp(fs::path(r2.out_dir) / f);
        REQUIRE(!a.empty());
        CHECK(a == b);
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("rate without a scgf section is a config error naming scgf") {
    auto cfg = quick_scalar_cfg((fs::temp_directory_path() / "gclab_cmd_none").string());
    cfg.scgf.reset();
    try {
        cli::cmd_rate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("scgf") != std::string::npos);
    }
}

TEST_CASE("simulate command writes trajectory and ensemble summary") {
    const fs::path dir = fs::temp_directory_path() / "gclab_cmd_sim";
    fs::remove_all(dir);
    auto j = nlohmann::json::parse(R"({
      "model": {"type": "burgers", "nu": 0.5, "N": 8, "substeps": 32,
                "h": {"modes": [{"j": 1, "cos": 1.0}]}},
      "noise": {"family": "gaussian", "b0": 1.0, "r": 1.0},
      "run": {"k": 1500, "ensemble": 2, "burn_in": 100, "block": 50, "seed": 7, "thin": 10}
    })");
    j["output"] = {{"dir", dir.string()}, {"tag", "s"}};
    const auto res = cli::cmd_simulate(parse_config(j));
    CHECK(res.exit_code == cli::kPass);
    CHECK(fs::exists(fs::path(res.out_dir) / "trajectory_0.csv"));
    CHECK(fs::exists(fs::path(res.out_dir) / "trajectory_1.csv"));
    CHECK(res.summary.contains("ep_mean"));
    CHECK(res.summary.contains("q_hat"));
    CHECK(res.summary["seeds"].size() == 2);
    fs::remove_all(dir);
}

TEST_CASE("verify on the reversible scalar fixture passes every check") {
    const fs::path dir = fs::temp_directory_path() / "gclab_cmd_verify";
    fs::remove_all(dir);
    auto cfg = quick_scalar_cfg(dir.string());
    const auto res = cli::cmd_verify(cfg);
    CHECK(res.exit_code == cli::kPass);
    bool saw_reversible = false;
    for (const auto& c : res.summary["checks"]) {
        if (c.contains("skipped")) continue;
        CHECK(c["pass"].get<bool>());
        if (c["name"] == "reversible_ep") {
            saw_reversible = true;
            CHECK(std::abs(c["value"].get<double>()) <= 1e-8);
        }
    }
    CHECK(saw_reversible);
    fs::remove_all(dir);
}

TEST_CASE("run_command maps config problems to exit code 2") {
    const int code = cli::run_command("oracle", "/nonexistent/path.conf", {});
    CHECK(code == cli::kConfigError);
}
