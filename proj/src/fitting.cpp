#include "holosim/fitting.hpp"

#include <cmath>

namespace holosim {

LmResult levenberg_marquardt(const std::function<double(const Eigen::VectorXd&, double)>& model,
                             const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& jacobian,
                             const std::vector<double>& xs, const std::vector<double>& ys,
                             Eigen::VectorXd init, int max_iterations, double tol) {
  const int n = int(xs.size());
  const int k = int(init.size());
  LmResult out;
  out.params = init;

  auto ssr_of = [&](const Eigen::VectorXd& p) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      const double r = ys[i] - model(p, xs[i]);
      s += r * r;
    }
    return s;
  };

  double lambda = 1e-3;
  double ssr = ssr_of(out.params);
  Eigen::MatrixXd jtj(k, k);
  Eigen::VectorXd jtr(k);

  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;
    jtj.setZero();
    jtr.setZero();
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd ji = jacobian(out.params, xs[i]);
      const double ri = ys[i] - model(out.params, xs[i]);
      jtj += ji * ji.transpose();
      jtr += ji * ri;
    }
    if (jtr.norm() < tol * (1.0 + std::sqrt(ssr))) {
      out.converged = true;
      break;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::VectorXd step = damped.ldlt().solve(jtr);
      const Eigen::VectorXd trial = out.params + step;
      const double trial_ssr = ssr_of(trial);
      if (trial_ssr <= ssr) {
        const double improvement = ssr - trial_ssr;
        out.params = trial;
        ssr = trial_ssr;
        lambda = std::max(lambda * 0.3, 1e-14);
        stepped = true;
        if (improvement < tol * (1.0 + ssr) && step.norm() < 1e-12 * (1.0 + out.params.norm())) {
          out.converged = true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (out.converged || !stepped) {
      if (!stepped && ssr < 1e-20) out.converged = true;
      break;
    }
  }
  out.ssr = ssr;

  // covariance = s^2 (J^T J)^-1 with s^2 = SSR/(n-k)
  jtj.setZero();
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ji = jacobian(out.params, xs[i]);
    jtj += ji * ji.transpose();
  }
  const double dof = std::max(1, n - k);
  Eigen::MatrixXd inv = jtj.completeOrthogonalDecomposition().pseudoInverse();
  out.covariance = (ssr / dof) * inv;
  return out;
}

}  // namespace holosim
