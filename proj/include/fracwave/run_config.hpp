#pragma once

#include "fracwave/aux_kernel.hpp"
#include "fracwave/distribution.hpp"
#include "fracwave/ibvp.hpp"
#include "fracwave/ivp.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace fracwave {

/// A parsed, validated run request. `echo` holds the normalized config that is
/// embedded into every CSV so a run can be reproduced exactly.
struct RunConfig {
    enum class Command { aux, ivp, ibvp, pdf, verify, figures };
    Command command = Command::aux;

    AuxParams aux_params;   // aux
    IvpSpec ivp;            // ivp
    IbvpSpec ibvp;          // ibvp
    FracDist dist;          // pdf (t taken from the time grid per row)
    double figures_a = 2.5;                                    // figures
    std::vector<double> figures_nus = {0.3, 0.4, 0.5, 0.6, 0.7};

    Eigen::ArrayXd xs;
    Eigen::ArrayXd ts;

    QuadratureControl qctrl;
    InversionControl ictrl;
    std::string output_path;

    nlohmann::json echo;
};

/// Parse and validate; throws ConfigError carrying the offending field path.
RunConfig parse_config(const nlohmann::json& j);

/// Files written by a successful run (empty for `verify`).
struct RunResult {
    bool ok = true;
    std::vector<std::string> files;
};

/// Execute a run. `out_override` (when nonempty) replaces the configured
/// output path; grid evaluation may be split across `threads` workers with
/// output ordering and values independent of the split.
RunResult run(const RunConfig& cfg, const std::string& out_override, int threads,
              std::ostream& log);

/// Shortest round-trip decimal representation (CSV number format).
std::string format_double(double v);

}  // namespace fracwave
