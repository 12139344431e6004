#pragma once

#include <functional>
#include <vector>
#include <Eigen/Dense>

namespace holosim {

struct LmResult {
  Eigen::VectorXd params;
  bool converged = false;
  int iterations = 0;
  double ssr = 0;
  Eigen::MatrixXd covariance;
};

/// Small-scale Levenberg-Marquardt with analytic Jacobian.
/// model(params, x) -> prediction; jacobian(params, x) -> d prediction / d params.
LmResult levenberg_marquardt(const std::function<double(const Eigen::VectorXd&, double)>& model,
                             const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& jacobian,
                             const std::vector<double>& xs, const std::vector<double>& ys,
                             Eigen::VectorXd init, int max_iterations = 300, double tol = 1e-15);

}  // namespace holosim
