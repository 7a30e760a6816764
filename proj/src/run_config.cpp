#include "fracwave/run_config.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/verification.hpp"
#include "fracwave/version.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

namespace fracwave {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path, msg);
}

double get_number(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing required number");
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

// accepts a number or the string "inf" for unbounded right endpoints
double get_endpoint(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing required endpoint");
    const json& v = j.at(key);
    if (v.is_string() && v.get<std::string>() == "inf")
        return DataFunction::inf;
    if (v.is_number()) return v.get<double>();
    fail(path + "." + key, "expected a number or \"inf\"");
}

Eigen::ArrayXd to_array(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
    Eigen::ArrayXd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(path, "expected numbers");
        out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
}

DataFunction parse_data_function(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a kind");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "zero") return DataFunction::zero();
        if (kind == "gaussian")
            return DataFunction::gaussian(get_number(j, path, "center"),
                                          get_number(j, path, "width"),
                                          get_number(j, path, "amplitude"));
        if (kind == "indicator")
            return DataFunction::indicator(get_number(j, path, "lo"),
                                           get_endpoint(j, path, "hi"),
                                           get_number(j, path, "amplitude"));
        if (kind == "polynomial") {
            if (!j.contains("coeffs")) fail(path + ".coeffs", "missing coefficients");
            std::vector<double> coeffs = j.at("coeffs").get<std::vector<double>>();
            return DataFunction::polynomial(std::move(coeffs), get_number(j, path, "lo"),
                                            get_endpoint(j, path, "hi"));
        }
        if (kind == "table") {
            if (!j.contains("xs") || !j.contains("ys"))
                fail(path, "table needs xs and ys arrays");
            return DataFunction::table(to_array(j.at("xs"), path + ".xs"),
                                       to_array(j.at("ys"), path + ".ys"));
        }
        if (kind == "dirac")
            return DataFunction::dirac(get_number(j, path, "center"),
                                       get_number(j, path, "weight"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown kind '" + kind + "'");
}

Eigen::ArrayXd parse_grid_axis(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (j.contains("values")) return to_array(j.at("values"), path + ".values");
    const double lo = get_number(j, path, "min");
    const double hi = get_number(j, path, "max");
    if (!j.contains("count")) fail(path + ".count", "missing required integer");
    const Eigen::Index n = j.at("count").get<Eigen::Index>();
    if (n < 1) fail(path + ".count", "count must be >= 1");
    if (hi < lo) fail(path, "max must be >= min");
    if (n == 1) return Eigen::ArrayXd::Constant(1, lo);
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

void require_times(const Eigen::ArrayXd& ts, const std::string& path) {
    if (ts.size() == 0) fail(path, "time grid is empty");
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0.0)) fail(path, "times must be > 0");
        if (i > 0 && !(ts[i] > ts[i - 1])) fail(path, "times must be strictly increasing");
    }
}

DerivativeKind parse_kind(const json& j, const std::string& path) {
    const std::string k = j.value("kind", "caputo");
    if (k == "caputo") return DerivativeKind::caputo;
    if (k == "riemann_liouville") return DerivativeKind::riemann_liouville;
    fail(path + ".kind", "expected caputo or riemann_liouville");
}

void parse_controls(const json& j, RunConfig& cfg) {
    if (!j.contains("controls")) return;
    const json& c = j.at("controls");
    if (c.contains("quadrature")) {
        const json& q = c.at("quadrature");
        cfg.qctrl.space_points = static_cast<int>(get_number_or(q, "space_points", 257));
        cfg.qctrl.time_steps = static_cast<int>(get_number_or(q, "time_steps", 64));
        cfg.qctrl.tol = get_number_or(q, "tol", 1e-8);
        cfg.qctrl.boundary_check_tol = get_number_or(q, "boundary_check_tol", 1e-3);
        if (cfg.qctrl.space_points < 8) fail("controls.quadrature.space_points", "must be >= 8");
    }
    if (c.contains("inversion")) {
        const json& v = c.at("inversion");
        const std::string m = v.value("method", "talbot");
        if (m == "talbot")
            cfg.ictrl.method = InversionControl::Method::talbot;
        else if (m == "gaver_stehfest")
            cfg.ictrl.method = InversionControl::Method::gaver_stehfest;
        else
            fail("controls.inversion.method", "expected talbot or gaver_stehfest");
        cfg.ictrl.nodes = static_cast<int>(get_number_or(v, "nodes", 32));
        cfg.ictrl.scale = get_number_or(v, "scale", 0.4);
    }
}

json echo_grid(const Eigen::ArrayXd& v) {
    json j;
    j["values"] = std::vector<double>(v.data(), v.data() + v.size());
    return j;
}

json build_echo(const RunConfig& cfg, const json& original) {
    json j;
    j["version"] = 1;
    j["command"] = original.at("command");
    if (original.contains("problem")) j["problem"] = original.at("problem");
    json grid;
    if (cfg.xs.size() > 0) grid["xs"] = echo_grid(cfg.xs);
    if (cfg.ts.size() > 0) grid["ts"] = echo_grid(cfg.ts);
    if (!grid.empty()) j["grid"] = grid;
    json controls;
    controls["quadrature"] = {{"space_points", cfg.qctrl.space_points},
                              {"time_steps", cfg.qctrl.time_steps},
                              {"tol", cfg.qctrl.tol},
                              {"boundary_check_tol", cfg.qctrl.boundary_check_tol}};
    controls["inversion"] = {
        {"method",
         cfg.ictrl.method == InversionControl::Method::talbot ? "talbot" : "gaver_stehfest"},
        {"nodes", cfg.ictrl.nodes},
        {"scale", cfg.ictrl.scale}};
    j["controls"] = controls;
    if (!cfg.output_path.empty()) j["output_path"] = cfg.output_path;
    return j;
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) fail("", "config must be a JSON object");
    if (!j.contains("version")) fail("version", "missing schema version");
    if (j.at("version") != 1) fail("version", "unsupported schema version (expected 1)");
    if (!j.contains("command")) fail("command", "missing command");

    RunConfig cfg;
    const std::string cmd = j.at("command").get<std::string>();
    if (cmd == "aux")
        cfg.command = RunConfig::Command::aux;
    else if (cmd == "ivp")
        cfg.command = RunConfig::Command::ivp;
    else if (cmd == "ibvp")
        cfg.command = RunConfig::Command::ibvp;
    else if (cmd == "pdf")
        cfg.command = RunConfig::Command::pdf;
    else if (cmd == "verify")
        cfg.command = RunConfig::Command::verify;
    else if (cmd == "figures")
        cfg.command = RunConfig::Command::figures;
    else
        fail("command", "unknown command '" + cmd + "'");

    const json grid = j.value("grid", json::object());
    const bool needs_xs = cfg.command == RunConfig::Command::ivp ||
                          cfg.command == RunConfig::Command::ibvp ||
                          cfg.command == RunConfig::Command::pdf;
    const bool needs_ts = needs_xs || cfg.command == RunConfig::Command::aux ||
                          cfg.command == RunConfig::Command::figures;
    if (needs_xs) {
        if (!grid.contains("xs")) fail("grid.xs", "missing spatial grid");
        cfg.xs = parse_grid_axis(grid.at("xs"), "grid.xs");
    }
    if (needs_ts) {
        if (grid.contains("ts")) {
            cfg.ts = parse_grid_axis(grid.at("ts"), "grid.ts");
        } else if (cfg.command == RunConfig::Command::figures) {
            cfg.ts = Eigen::ArrayXd::LinSpaced(800, 0.01, 8.0);
        } else {
            fail("grid.ts", "missing time grid");
        }
        require_times(cfg.ts, "grid.ts");
    }

    const json problem = j.value("problem", json::object());
    const std::string ppath = "problem";
    try {
        switch (cfg.command) {
            case RunConfig::Command::aux:
                cfg.aux_params.mu = get_number(problem, ppath, "mu");
                cfg.aux_params.nu = get_number(problem, ppath, "nu");
                cfg.aux_params.a = get_number(problem, ppath, "a");
                cfg.aux_params.validate();
                break;
            case RunConfig::Command::ivp: {
                cfg.ivp.kind = parse_kind(problem, ppath);
                cfg.ivp.nu = get_number(problem, ppath, "nu");
                cfg.ivp.kappa = get_number_or(problem, "kappa", 1.0);
                if (!problem.contains("f")) fail(ppath + ".f", "missing initial datum");
                cfg.ivp.f = parse_data_function(problem.at("f"), ppath + ".f");
                if (problem.contains("g"))
                    cfg.ivp.g = parse_data_function(problem.at("g"), ppath + ".g");
                if (problem.contains("forcing")) {
                    const json& fo = problem.at("forcing");
                    if (!fo.contains("space") || !fo.contains("time"))
                        fail(ppath + ".forcing", "separable forcing needs space and time parts");
                    cfg.ivp.forcing_space =
                        parse_data_function(fo.at("space"), ppath + ".forcing.space");
                    cfg.ivp.forcing_time =
                        parse_data_function(fo.at("time"), ppath + ".forcing.time");
                }
                cfg.ivp.validate();
                break;
            }
            case RunConfig::Command::ibvp: {
                cfg.ibvp.kind = parse_kind(problem, ppath);
                cfg.ibvp.nu = get_number(problem, ppath, "nu");
                cfg.ibvp.kappa = get_number_or(problem, "kappa", 1.0);
                cfg.ibvp.f = problem.contains("f")
                                 ? parse_data_function(problem.at("f"), ppath + ".f")
                                 : DataFunction::zero();
                if (problem.contains("g"))
                    cfg.ibvp.g = parse_data_function(problem.at("g"), ppath + ".g");
                if (!problem.contains("h")) fail(ppath + ".h", "missing boundary datum");
                cfg.ibvp.h = parse_data_function(problem.at("h"), ppath + ".h");
                const std::string ext = problem.value("extension", "zero");
                if (ext == "zero")
                    cfg.ibvp.extension = Extension::zero;
                else if (ext == "even")
                    cfg.ibvp.extension = Extension::even;
                else if (ext == "odd")
                    cfg.ibvp.extension = Extension::odd;
                else
                    fail(ppath + ".extension", "expected zero, even or odd");
                cfg.ibvp.validate();
                break;
            }
            case RunConfig::Command::pdf:
                cfg.dist.nu = get_number(problem, ppath, "nu");
                cfg.dist.kappa = get_number_or(problem, "kappa", 1.0);
                cfg.dist.t = 1.0;  // overwritten per time-grid row
                cfg.dist.validate();
                break;
            case RunConfig::Command::figures:
                cfg.figures_a = get_number_or(problem, "a", 2.5);
                if (problem.contains("nus"))
                    cfg.figures_nus = problem.at("nus").get<std::vector<double>>();
                if (cfg.figures_nus.empty()) fail(ppath + ".nus", "needs at least one nu");
                for (double nu : cfg.figures_nus)
                    if (!(nu > 0.0 && nu < 1.0)) fail(ppath + ".nus", "each nu must be in (0,1)");
                if (!(cfg.figures_a > 0.0)) fail(ppath + ".a", "a must be > 0");
                break;
            case RunConfig::Command::verify: break;
        }
    } catch (const std::invalid_argument& e) {
        fail(ppath, e.what());
    }

    parse_controls(j, cfg);
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    cfg.echo = build_echo(cfg, j);
    return cfg;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void write_header(std::ofstream& os, const json& echo, const std::string& columns) {
    os << "# fracwave v" << FRACWAVE_VERSION_STRING << "\n";
    os << "# config " << echo.dump() << "\n";
    os << columns << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

// evaluate rows [0, n) with `worker(i)` across up to `threads` workers;
// results land in a preallocated buffer so ordering is grid order
template <typename Worker>
void parallel_rows(Eigen::Index n, int threads, const Worker& worker) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (Eigen::Index i = 0; i < n; ++i) worker(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<Eigen::Index> next{0};
    const int nw = std::min<Eigen::Index>(threads, n);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&]() {
            for (Eigen::Index i = next.fetch_add(1); i < n; i = next.fetch_add(1)) worker(i);
        });
    }
    for (auto& th : pool) th.join();
}

RunResult run_aux(const RunConfig& cfg, const std::string& path, int threads) {
    const Eigen::Index n = cfg.ts.size();
    std::vector<AuxValue> vals(n);
    parallel_rows(n, threads,
                  [&](Eigen::Index i) { vals[i] = aux_eval(cfg.aux_params, cfg.ts[i], cfg.ictrl); });
    std::ofstream os = open_out(path);
    write_header(os, cfg.echo, "t,u,err_est");
    for (Eigen::Index i = 0; i < n; ++i)
        os << format_double(cfg.ts[i]) << ',' << format_double(vals[i].value) << ','
           << format_double(vals[i].err_est) << "\n";
    return {true, {path}};
}

template <typename Solve>
RunResult run_field(const RunConfig& cfg, const std::string& path, int threads,
                    const Solve& solve) {
    const Eigen::Index nt = cfg.ts.size();
    Eigen::MatrixXd u(nt, cfg.xs.size());
    parallel_rows(nt, threads, [&](Eigen::Index i) {
        Eigen::ArrayXd one(1);
        one << cfg.ts[i];
        u.row(i) = solve(one).u.row(0);
    });
    std::ofstream os = open_out(path);
    write_header(os, cfg.echo, "x,t,u");
    for (Eigen::Index i = 0; i < nt; ++i)
        for (Eigen::Index j = 0; j < cfg.xs.size(); ++j)
            os << format_double(cfg.xs[j]) << ',' << format_double(cfg.ts[i]) << ','
               << format_double(u(i, j)) << "\n";
    return {true, {path}};
}

RunResult run_pdf(const RunConfig& cfg, const std::string& path, int threads) {
    const Eigen::Index nt = cfg.ts.size();
    Eigen::MatrixXd u(nt, cfg.xs.size());
    parallel_rows(nt, threads, [&](Eigen::Index i) {
        FracDist d = cfg.dist;
        d.t = cfg.ts[i];
        for (Eigen::Index j = 0; j < cfg.xs.size(); ++j)
            u(i, j) = pdf(d, cfg.xs[j], cfg.ictrl);
    });
    std::ofstream os = open_out(path);
    write_header(os, cfg.echo, "x,t,u");
    for (Eigen::Index i = 0; i < nt; ++i)
        for (Eigen::Index j = 0; j < cfg.xs.size(); ++j)
            os << format_double(cfg.xs[j]) << ',' << format_double(cfg.ts[i]) << ','
               << format_double(u(i, j)) << "\n";
    return {true, {path}};
}

RunResult run_figures(const RunConfig& cfg, const std::string& stem, int threads) {
    const Eigen::Index nt = cfg.ts.size();
    const std::size_t ncurves = cfg.figures_nus.size();
    Eigen::MatrixXd fig1(nt, ncurves), fig2(nt, ncurves);
    parallel_rows(nt, threads, [&](Eigen::Index i) {
        for (std::size_t c = 0; c < ncurves; ++c) {
            const double nu = cfg.figures_nus[c];
            fig1(i, c) = aux_eval_value({0.0, nu, cfg.figures_a}, cfg.ts[i], cfg.ictrl);
            fig2(i, c) = aux_eval_value({2.0 * nu, nu, cfg.figures_a}, cfg.ts[i], cfg.ictrl);
        }
    });

    std::string header = "t";
    for (double nu : cfg.figures_nus) header += ",R_nu_" + format_double(nu);

    RunResult result;
    const std::string p1 = stem + "_fig1.csv", p2 = stem + "_fig2.csv";
    for (const auto& [p, mat] : {std::pair<const std::string&, Eigen::MatrixXd&>(p1, fig1),
                                 std::pair<const std::string&, Eigen::MatrixXd&>(p2, fig2)}) {
        std::ofstream os = open_out(p);
        write_header(os, cfg.echo, header);
        for (Eigen::Index i = 0; i < nt; ++i) {
            os << format_double(cfg.ts[i]);
            for (std::size_t c = 0; c < ncurves; ++c)
                os << ',' << format_double(mat(i, static_cast<Eigen::Index>(c)));
            os << "\n";
        }
        result.files.push_back(p);
    }
    return result;
}

}  // namespace

RunResult run(const RunConfig& cfg, const std::string& out_override, int threads,
              std::ostream& log) {
    std::string path = !out_override.empty() ? out_override : cfg.output_path;

    switch (cfg.command) {
        case RunConfig::Command::verify: {
            const auto results = run_acceptance(nullptr);
            const bool ok = print_acceptance_table(results, log);
            return {ok, {}};
        }
        case RunConfig::Command::aux:
            return run_aux(cfg, path.empty() ? "aux.csv" : path, threads);
        case RunConfig::Command::ivp:
            return run_field(cfg, path.empty() ? "ivp.csv" : path, threads,
                             [&](const Eigen::ArrayXd& one) {
                                 return solve_ivp(cfg.ivp, cfg.xs, one, cfg.qctrl, cfg.ictrl);
                             });
        case RunConfig::Command::ibvp:
            return run_field(cfg, path.empty() ? "ibvp.csv" : path, threads,
                             [&](const Eigen::ArrayXd& one) {
                                 return solve_ibvp(cfg.ibvp, cfg.xs, one, cfg.qctrl, cfg.ictrl);
                             });
        case RunConfig::Command::pdf:
            return run_pdf(cfg, path.empty() ? "pdf.csv" : path, threads);
        case RunConfig::Command::figures: {
            std::string stem = path.empty() ? "figures" : path;
            const std::string suffix = ".csv";
            if (stem.size() > suffix.size() &&
                stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
                stem.resize(stem.size() - suffix.size());
            return run_figures(cfg, stem, threads);
        }
    }
    return {false, {}};
}

}  // namespace fracwave
