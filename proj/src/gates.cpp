#include "holosim/gates.hpp"

#include <cmath>
#include <stdexcept>

#include "holosim/fitting.hpp"

namespace holosim {

GateSpec GateSpec::named(const std::string& name) {
  GateSpec g;
  g.alias = name;
  if (name == "I") {
    g.gamma = 0; g.theta = 0; g.phi = 0;
  } else if (name == "X") {
    g.gamma = M_PI; g.theta = M_PI_2; g.phi = 0;
  } else if (name == "Y") {
    g.gamma = M_PI; g.theta = M_PI_2; g.phi = M_PI_2;
  } else if (name == "X/2") {
    g.gamma = M_PI_2; g.theta = M_PI_2; g.phi = 0;
  } else if (name == "Y/2") {
    g.gamma = M_PI_2; g.theta = M_PI_2; g.phi = M_PI_2;
  } else if (name == "T") {
    g.gamma = M_PI / 4.0; g.theta = 0; g.phi = 0;
  } else if (name == "Z") {
    g.gamma = M_PI; g.theta = 0; g.phi = 0;
  } else {
    throw std::invalid_argument("gates: unknown gate alias '" + name + "'");
  }
  return g;
}

GateSpec GateSpec::angles(double gamma, double theta, double phi) {
  GateSpec g;
  g.gamma = gamma;
  g.theta = theta;
  g.phi = phi;
  return g;
}

const std::vector<std::string>& GateSpec::six_gate_names() {
  static const std::vector<std::string> names = {"I", "X/2", "X", "Y/2", "Y", "T"};
  return names;
}

nlohmann::json GateSpec::to_json() const {
  nlohmann::json j{{"gamma_rad", gamma}, {"theta_rad", theta}, {"phi_rad", phi}};
  if (!alias.empty()) j["name"] = alias;
  return j;
}

GateSpec GateSpec::from_json(const nlohmann::json& j) {
  if (j.contains("name")) return named(j.at("name").get<std::string>());
  return angles(j.at("gamma_rad").get<double>(), j.at("theta_rad").get<double>(),
                j.at("phi_rad").get<double>());
}

Mat2 target_unitary(const GateSpec& g) {
  if (g.is_identity()) return Mat2::Identity();
  const double h = 0.5 * g.gamma;
  const Mat2 axis = std::sin(g.theta) * std::cos(g.phi) * pauli_x() +
                    std::sin(g.theta) * std::sin(g.phi) * pauli_y() + std::cos(g.theta) * pauli_z();
  return std::exp(kI * h) * (std::cos(h) * Mat2::Identity() - kI * std::sin(h) * axis);
}

double gate_fidelity(const CMat& u_sim, const CMat& u_tgt) {
  if (u_sim.rows() != u_tgt.rows() || u_sim.cols() != u_tgt.cols() || u_sim.rows() != u_sim.cols())
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  const double d = double(u_sim.rows());
  const CMat m = u_tgt.adjoint() * u_sim;
  const double tr2 = std::norm(m.trace());
  const double mm = m.adjoint().cwiseProduct(m.transpose()).sum().real();
  return (tr2 + mm) / (d * (d + 1.0));
}

double trace_fidelity(const CMat& u_sim, const CMat& u_tgt) {
  const double d = double(u_sim.rows());
  return std::norm((u_tgt.adjoint() * u_sim).trace()) / (d * d);
}

PulseSchedule bnhqc_schedule(const GateSpec& g, double omega) {
  if (g.is_identity()) {
    PulseSchedule s;
    s.note = "identity gate: zero-duration schedule";
    return s;
  }
  return make_bnhqc(g.gamma, g.theta, g.phi, omega);
}

PulseSchedule nhqc_schedule(const GateSpec& g, const Envelope& envelope) {
  if (g.is_identity()) {
    PulseSchedule s;
    s.note = "identity gate: zero-duration schedule";
    return s;
  }
  return make_nhqc(g.gamma, g.theta, g.phi, envelope);
}

CyGate cy_schedule(const SpinSystemParams& p, const GateSpec& electron_gate, double omega) {
  CyGate cy;
  cy.rotate.pulse = bnhqc_schedule(electron_gate, omega);
  cy.rotate.manifold = 1;
  cy.rotate.carrier_lower = hybrid_transition(p, Transition::ZeroToAncilla, 1);
  cy.rotate.carrier_upper = hybrid_transition(p, Transition::AncillaToOne, 1);

  // Trivial-holonomy loop (gamma = 2pi) driven on the m_I=-1 manifold, same
  // Rabi frequency so the off-manifold Stark shifts of the two pulses cancel
  // at leading order.
  cy.loop_identity.pulse = make_nhqc(2.0 * M_PI, electron_gate.theta, electron_gate.phi,
                                     Envelope::constant(omega));
  cy.loop_identity.manifold = -1;
  cy.loop_identity.carrier_lower = hybrid_transition(p, Transition::ZeroToAncilla, -1);
  cy.loop_identity.carrier_upper = hybrid_transition(p, Transition::AncillaToOne, -1);
  return cy;
}

Mat4 cy_target() {
  Mat4 u = Mat4::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  // R_y(pi) = exp(-i pi sigma_y / 2) = [[0, -1], [1, 0]]
  u(2, 3) = -1.0;
  u(3, 2) = 1.0;
  return u;
}

namespace {
int electron_m(int e) { return e == 0 ? -1 : 1; }
int nuclear_m(int n) { return n == 0 ? -1 : 1; }
}  // namespace

Mat4 computational_block(const CMat& u9) {
  if (u9.rows() != 9 || u9.cols() != 9) throw std::invalid_argument("computational_block: expected 9x9");
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int rn = r / 2, re = r % 2, cn = c / 2, ce = c % 2;
      out(r, c) = u9(hybrid_index(electron_m(re), nuclear_m(rn)),
                     hybrid_index(electron_m(ce), nuclear_m(cn)));
    }
  return out;
}

CMat nuclear_frame_correction(Complex phase_plus1) {
  CMat f = CMat::Identity(9, 9);
  for (int m_s : {1, 0, -1}) {
    const int k = hybrid_index(m_s, 1);
    f(k, k) = phase_plus1;
  }
  return f;
}

DecaySeries repeat_gate_experiment(const GateSpec& g, int n_max, const NoiseModel& noise, double eps_if) {
  if (n_max < 1) throw std::invalid_argument("repeat_gate_experiment: N_max must be >= 1");
  noise.validate();
  const Mat2 u = target_unitary(g);
  const double p = noise.depol_per_gate;

  Mat2 rho = (1.0 - eps_if) * (Mat2() << 1, 0, 0, 0).finished() + (eps_if / 2.0) * Mat2::Identity();
  Eigen::Vector2cd psi(1.0, 0.0);

  DecaySeries series;
  for (int n = 1; n <= n_max; ++n) {
    rho = ((1.0 - p) * (u * rho * u.adjoint()) + (p / 2.0) * Mat2::Identity()).eval();
    psi = (u * psi).eval();
    series.n.push_back(n);
    series.fidelity.push_back((psi.adjoint() * rho * psi)(0, 0).real());
  }
  return series;
}

DecaySeries cy_repeat_experiment(int n_max, double depol_two_qubit, double eps_if) {
  if (n_max < 1) throw std::invalid_argument("cy_repeat_experiment: N_max must be >= 1");
  const Mat4 u = cy_target();
  Eigen::Vector4cd psi;
  psi << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0;  // (|0>+|1>)_n |0>_e
  Mat4 rho = (1.0 - eps_if) * (psi * psi.adjoint()) + (eps_if / 4.0) * Mat4::Identity();

  DecaySeries series;
  for (int n = 1; n <= n_max; ++n) {
    rho = ((1.0 - depol_two_qubit) * (u * rho * u.adjoint()) +
           (depol_two_qubit / 4.0) * Mat4::Identity()).eval();
    psi = (u * psi).eval();
    series.n.push_back(n);
    series.fidelity.push_back((psi.adjoint() * rho * psi)(0, 0).real());
  }
  return series;
}

DecayFit fit_single_decay(const DecaySeries& series) {
  if (series.n.size() < 3 || series.n.size() != series.fidelity.size())
    throw std::invalid_argument("fit_single_decay: need at least 3 points");

  std::vector<double> xs(series.n.begin(), series.n.end());
  const std::vector<double>& ys = series.fidelity;

  // Initial guess from the log-linear form 2F-1 = (1-eps)(1-p)^N.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double g = 2.0 * ys[i] - 1.0;
    if (g > 1e-6) {
      const double ly = std::log(g);
      sx += xs[i]; sy += ly; sxx += xs[i] * xs[i]; sxy += xs[i] * ly;
      ++m;
    }
  }
  double p0 = 0.01, e0 = 0.02;
  if (m >= 2) {
    const double slope = (m * sxy - sx * sy) / std::max(1e-300, m * sxx - sx * sx);
    const double icept = (sy - slope * sx) / m;
    p0 = std::clamp(1.0 - std::exp(slope), 1e-6, 0.999);
    e0 = std::clamp(1.0 - std::exp(icept), 0.0, 0.999);
  }

  auto model = [](const Eigen::VectorXd& q, double n) {
    return 0.5 * (1.0 + (1.0 - q(0)) * std::pow(1.0 - q(1), n));
  };
  auto jac = [](const Eigen::VectorXd& q, double n) {
    Eigen::VectorXd j(2);
    const double d = std::pow(1.0 - q(1), n);
    j(0) = -0.5 * d;
    j(1) = -0.5 * (1.0 - q(0)) * n * std::pow(1.0 - q(1), n - 1.0);
    return j;
  };

  Eigen::VectorXd init(2);
  init << e0, p0;
  const LmResult lm = levenberg_marquardt(model, jac, xs, ys, init);

  DecayFit fit;
  fit.eps_if = std::clamp(lm.params(0), 0.0, 1.0);
  fit.p = std::clamp(lm.params(1), 0.0, 1.0);
  fit.covariance = lm.covariance;
  fit.converged = lm.converged;
  fit.rms_residual = std::sqrt(lm.ssr / double(xs.size()));
  return fit;
}

TwoQubitDecayFit fit_two_qubit_decay(const DecaySeries& series) {
  if (series.n.size() < 3 || series.n.size() != series.fidelity.size())
    throw std::invalid_argument("fit_two_qubit_decay: need at least 3 points");

  std::vector<double> xs(series.n.begin(), series.n.end());
  const std::vector<double>& ys = series.fidelity;

  // F(N)-F(N+1) = A F^N (1-F): consecutive difference ratios estimate F.
  std::vector<double> ratios;
  for (size_t i = 0; i + 2 < xs.size(); ++i) {
    const double d0 = ys[i] - ys[i + 1];
    const double d1 = ys[i + 1] - ys[i + 2];
    if (std::abs(d0) > 1e-9 && d1 / d0 > 0.0 && d1 / d0 < 1.0) ratios.push_back(d1 / d0);
  }
  double f0 = 0.95;
  if (!ratios.empty()) {
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    f0 = ratios[ratios.size() / 2];
  }
  // Given F, (A, B) is a linear fit.
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double g = std::pow(f0, xs[i]);
    s11 += g * g; s12 += g; s22 += 1.0;
    b1 += g * ys[i]; b2 += ys[i];
  }
  const double det = s11 * s22 - s12 * s12;
  double a0 = 0.5, c0 = 0.4;
  if (std::abs(det) > 1e-12) {
    a0 = (b1 * s22 - b2 * s12) / det;
    c0 = (s11 * b2 - s12 * b1) / det;
  }

  auto model = [](const Eigen::VectorXd& q, double n) { return q(0) * std::pow(q(2), n) + q(1); };
  auto jac = [](const Eigen::VectorXd& q, double n) {
    Eigen::VectorXd j(3);
    j(0) = std::pow(q(2), n);
    j(1) = 1.0;
    j(2) = q(0) * n * std::pow(q(2), n - 1.0);
    return j;
  };

  Eigen::VectorXd init(3);
  init << a0, c0, std::clamp(f0, 1e-3, 0.999999);
  const LmResult lm = levenberg_marquardt(model, jac, xs, ys, init);

  TwoQubitDecayFit fit;
  fit.a = lm.params(0);
  fit.b = lm.params(1);
  fit.f_g = std::clamp(lm.params(2), 0.0, 1.0);
  fit.covariance = lm.covariance;
  fit.converged = lm.converged;
  fit.rms_residual = std::sqrt(lm.ssr / double(xs.size()));
  return fit;
}

}  // namespace holosim
