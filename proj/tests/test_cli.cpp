#include "doctest.h"

#include "fracwave/errors.hpp"
#include "fracwave/run_config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fracwave;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("fracwave_test_" + name);
}

json aux_config() {
    return json{{"version", 1},
                {"command", "aux"},
                {"problem", {{"mu", 0.0}, {"nu", 0.5}, {"a", 2.5}}},
                {"grid", {{"ts", {{"min", 0.5}, {"max", 2.0}, {"count", 4}}}}}};
}

}  // namespace

TEST_CASE("config validation reports field paths") {
    json j = aux_config();
    j.erase("version");
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = aux_config();
    j["version"] = 3;
    CHECK_THROWS_WITH_AS(parse_config(j), "version: unsupported schema version (expected 1)",
                         ConfigError);

    j = aux_config();
    j["command"] = "explode";
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = aux_config();
    j["grid"]["ts"] = {{"values", json::array()}};
    try {
        parse_config(j);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.field() == "grid.ts.values");
    }

    j = aux_config();
    j["problem"].erase("nu");
    try {
        parse_config(j);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.field() == "problem.nu");
    }

    // times must be positive and increasing
    j = aux_config();
    j["grid"]["ts"] = {{"values", {2.0, 1.0}}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j["grid"]["ts"] = {{"values", {-1.0, 1.0}}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("deterministic output: identical config, identical bytes, any thread count") {
    const RunConfig cfg = parse_config(aux_config());
    const fs::path p1 = temp_file("aux1.csv"), p2 = temp_file("aux2.csv"),
                   p4 = temp_file("aux4.csv");
    std::ostringstream sink;
    run(cfg, p1.string(), 1, sink);
    run(cfg, p2.string(), 1, sink);
    run(cfg, p4.string(), 4, sink);
    const std::string a = slurp(p1), b = slurp(p2), c = slurp(p4);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a == c);
    fs::remove(p1);
    fs::remove(p2);
    fs::remove(p4);
}

TEST_CASE("config echo permits an exact rerun") {
    const RunConfig cfg = parse_config(aux_config());
    const fs::path p1 = temp_file("echo1.csv"), p2 = temp_file("echo2.csv");
    std::ostringstream sink;
    run(cfg, p1.string(), 1, sink);

    const std::string body = slurp(p1);
    const std::string tag = "# config ";
    const auto start = body.find(tag);
    REQUIRE(start != std::string::npos);
    const auto end = body.find('\n', start);
    const std::string echoed = body.substr(start + tag.size(), end - start - tag.size());
    const RunConfig cfg2 = parse_config(json::parse(echoed));
    run(cfg2, p2.string(), 1, sink);
    CHECK(slurp(p1) == slurp(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("ivp command output matches the closed-form heat solution") {
    json j{{"version", 1},
           {"command", "ivp"},
           {"problem",
            {{"kind", "caputo"},
             {"nu", 0.5},
             {"kappa", 1.0},
             {"f", {{"kind", "gaussian"}, {"center", 0.0}, {"width", 1.0}, {"amplitude", 1.0}}}}},
           {"grid",
            {{"xs", {{"values", {-1.0, 0.0, 1.0}}}}, {"ts", {{"values", {0.5, 1.0}}}}}}};
    const RunConfig cfg = parse_config(j);
    const fs::path p = temp_file("ivp.csv");
    std::ostringstream sink;
    run(cfg, p.string(), 1, sink);

    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // banner
    std::getline(in, line);  // config echo
    std::getline(in, line);
    CHECK(line == "x,t,u");
    int rows = 0;
    while (std::getline(in, line)) {
        double x, t, u;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &u) == 3);
        const double ref = std::exp(-x * x / (1.0 + 4.0 * t)) / std::sqrt(1.0 + 4.0 * t);
        CHECK(std::abs(u - ref) < 1e-3);
        ++rows;
    }
    CHECK(rows == 6);
    fs::remove(p);
}

TEST_CASE("ibvp command reproduces the erfc profile") {
    json j{{"version", 1},
           {"command", "ibvp"},
           {"problem",
            {{"kind", "caputo"},
             {"nu", 0.5},
             {"kappa", 1.0},
             {"h", {{"kind", "indicator"}, {"lo", 0.0}, {"hi", "inf"}, {"amplitude", 1.0}}}}},
           {"grid", {{"xs", {{"values", {0.5, 1.0}}}}, {"ts", {{"values", {1.0}}}}}}};
    const RunConfig cfg = parse_config(j);
    const fs::path p = temp_file("ibvp.csv");
    std::ostringstream sink;
    run(cfg, p.string(), 1, sink);
    std::ifstream in(p);
    std::string line;
    for (int i = 0; i < 3; ++i) std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        double x, t, u;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &u) == 3);
        CHECK(std::abs(u - std::erfc(x / (2.0 * std::sqrt(t)))) < 1e-6);
        ++rows;
    }
    CHECK(rows == 2);
    fs::remove(p);
}

TEST_CASE("figures command emits two files with the expected curves") {
    json j{{"version", 1},
           {"command", "figures"},
           {"problem", {{"a", 2.5}}},
           {"grid", {{"ts", {{"min", 0.05}, {"max", 3.0}, {"count", 60}}}}}};
    const RunConfig cfg = parse_config(j);
    const fs::path stem = temp_file("figs");
    std::ostringstream sink;
    const RunResult r = run(cfg, stem.string(), 2, sink);
    REQUIRE(r.files.size() == 2);

    const std::string f1 = slurp(r.files[0]);
    CHECK(f1.find("t,R_nu_0.3,R_nu_0.4,R_nu_0.5,R_nu_0.6,R_nu_0.7") != std::string::npos);

    // the nu = 0.5 column of figure 1 equals the closed form
    std::istringstream in(f1);
    std::string line;
    for (int i = 0; i < 3; ++i) std::getline(in, line);
    while (std::getline(in, line)) {
        double t, c3, c4, c5, c6, c7;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &c3, &c4, &c5, &c6,
                            &c7) == 6);
        const double ref = 2.5 * std::exp(-2.5 * 2.5 / (4.0 * t)) /
                           (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5));
        CHECK(std::abs(c5 - ref) <= 1e-12 * (1.0 + ref));
    }
    for (const std::string& f : r.files) fs::remove(f);
}

TEST_CASE("pdf command sweeps x and t") {
    json j{{"version", 1},
           {"command", "pdf"},
           {"problem", {{"nu", 0.5}, {"kappa", 0.5}}},
           {"grid", {{"xs", {{"values", {0.0, 1.0}}}}, {"ts", {{"values", {1.0}}}}}}};
    const RunConfig cfg = parse_config(j);
    const fs::path p = temp_file("pdf.csv");
    std::ostringstream sink;
    run(cfg, p.string(), 1, sink);
    std::ifstream in(p);
    std::string line;
    for (int i = 0; i < 3; ++i) std::getline(in, line);
    std::getline(in, line);
    double x, t, u;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &u) == 3);
    CHECK(u == doctest::Approx(0.3989422804014327).epsilon(1e-10));
    fs::remove(p);
}
