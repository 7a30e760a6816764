#pragma once

#include <Eigen/Core>

#include <string>

namespace fracwave {

struct FieldMeta {
    std::string method;
    int space_points = 0;
    int time_steps = 0;
    int inversion_nodes = 0;
    double tol = 0.0;
    std::string spec_echo;
};

/// u sampled on an (x, t) grid; u(i, j) = u(xs[j], ts[i]).
struct SolutionField {
    Eigen::ArrayXd xs;
    Eigen::ArrayXd ts;
    Eigen::MatrixXd u;
    FieldMeta meta;

    void validate() const;
};

}  // namespace fracwave
