#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "sharpquad/cli.hpp"

using namespace sharpquad;
using nlohmann::json;

namespace {

cli::RunConfig parse(std::initializer_list<std::string> args) {
    return cli::parse_config(std::vector<std::string>(args));
}

std::pair<int, json> run_to_json(const cli::RunConfig& cfg) {
    std::ostringstream out, err;
    int code = cli::run(cfg, out, err);
    INFO(err.str());
    REQUIRE(code != 2);
    return {code, json::parse(out.str())};
}

} // namespace

TEST_CASE("parse_config: bound fixed-node example") {
    auto cfg = parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--q", "inf",
                      "--x", "0.5"});
    CHECK(cfg.command == "bound");
    CHECK(cfg.p_spec == "const:1");
    CHECK(cfg.has_interval);
    CHECK(cfg.interval_a == 0.0);
    CHECK(cfg.interval_b == 1.0);
    CHECK(cfg.n == 1);
    CHECK(cfg.q == "inf");
    CHECK(cfg.node_policy == "fixed");
    CHECK(cfg.node_x == 0.5);
}

TEST_CASE("parse_config: validation errors name the constraint") {
    CHECK_THROWS_WITH_AS(parse({"holder", "--p", "const:1", "--interval", "0", "1", "--n", "2",
                                "--omega", "linear:1"}),
                         doctest::Contains("odd"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1",
                                "--q", "2", "--x", "0.5", "--optimize"}),
                         doctest::Contains("exactly one"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1",
                                "--q", "2"}),
                         doctest::Contains("exactly one"), std::invalid_argument);
    CHECK_THROWS_AS(parse({"frobnicate"}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1",
                                "--q", "0.5", "--x", "0.1"}),
                         doctest::Contains("[1, inf]"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse({"cube", "--d", "2", "--q", "2"}), doctest::Contains("exceed"),
                         std::invalid_argument);
}

TEST_CASE("config round trip: parse(render(config)) == config") {
    auto samples = {
        parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "2", "--q", "2",
               "--sweep", "16", "--format", "csv"}),
        parse({"holder", "--p", "poly:0,1", "--interval", "0", "1", "--n", "1", "--omega",
               "power:1:0.5"}),
        parse({"kernel", "--p", "const:1", "--interval", "0", "1", "--n", "3", "--x", "0.25",
               "--csv", "samples.csv"}),
        parse({"cube", "--d", "3", "--q", "inf"}),
        parse({"ball-bv", "--v", "2.5"}),
        parse({"verify", "--suite", "audit", "--trials", "50", "--seed", "99"}),
    };
    for (const auto& cfg : samples) {
        auto back = cli::RunConfig::from_json(cfg.to_json());
        CHECK(back == cfg);
    }
}

TEST_CASE("run: bound reproduces the classical constant") {
    auto cfg = parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--q", "inf",
                      "--x", "0.5"});
    auto [code, j] = run_to_json(cfg);
    CHECK(code == 0);
    CHECK(j["constant"].get<double>() == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(j["kind"] == "sobolev");
    CHECK(j["kernel"]["x"].get<double>() == 0.5);
}

TEST_CASE("run: cube emits 8/3") {
    auto [code, j] = run_to_json(parse({"cube", "--d", "2", "--q", "inf"}));
    CHECK(code == 0);
    CHECK(j["constant"].get<double>() == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("run: holder reports x, constant, sharp") {
    auto cfg = parse({"holder", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--omega",
                      "linear:1"});
    auto [code, j] = run_to_json(cfg);
    CHECK(code == 0);
    CHECK(j["x"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["constant"].get<double>() == doctest::Approx(1.0 / 24.0).epsilon(1e-9));
    CHECK(j["sharp"].get<bool>());
}

TEST_CASE("run: bound sweep as CSV") {
    auto cfg = parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--q", "inf",
                      "--sweep", "2", "--format", "csv"});
    std::ostringstream out, err;
    int code = cli::run(cfg, out, err);
    CHECK(code == 0);
    std::string text = out.str();
    CHECK(text.rfind("x,constant\n", 0) == 0);
    CHECK(text.find("0.5,0.25") != std::string::npos);
}

TEST_CASE("run: optimize finds the midpoint") {
    auto cfg = parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--q", "inf",
                      "--optimize"});
    auto [code, j] = run_to_json(cfg);
    CHECK(code == 0);
    CHECK(j["node"].get<double>() == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(j["constant"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("run: verify exit code reflects contracts; reports are byte-stable") {
    auto cfg = parse({"verify", "--suite", "moments", "--trials", "50", "--seed", "7"});
    std::ostringstream out1, out2, err;
    CHECK(cli::run(cfg, out1, err) == 0);
    CHECK(cli::run(cfg, out2, err) == 0);
    CHECK(out1.str() == out2.str());
}

TEST_CASE("run: errors surface with exit code 2") {
    auto cfg = parse({"bound", "--p", "const:1", "--interval", "0", "1", "--n", "1", "--q", "inf",
                      "--x", "1.5"});
    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 2);
    CHECK(err.str().find("outside") != std::string::npos);
}

TEST_CASE("main_entry: help and unknown flags") {
    std::ostringstream out, err;
    CHECK(cli::main_entry({"--help"}, out, err) == 0);
    CHECK(out.str().find("kernel") != std::string::npos);
    std::ostringstream out2, err2;
    CHECK(cli::main_entry({"bound", "--bogus"}, out2, err2) == 2);
}
