#include "holosim/metrology.hpp"

#include <cmath>
#include <stdexcept>

#include "holosim/rng.hpp"

namespace holosim {

TimingBudget TimingBudget::for_backend(GatesBackend b) {
  switch (b) {
    case GatesBackend::Ideal: return ideal();
    case GatesBackend::Nhqc: return nhqc();
    case GatesBackend::Bnhqc: return bnhqc();
  }
  return ideal();
}

void InterferometerConfig::validate() const {
  if (phase_grid.empty()) throw std::invalid_argument("interferometer: phase grid must be nonempty");
  if (shots_per_point < 1) throw std::invalid_argument("interferometer: shots >= 1");
  if (visibility < 0 || visibility > 1) throw std::invalid_argument("interferometer: visibility in [0,1]");
  if (readout.contrast <= 0 || readout.contrast > 1 || readout.base_rate <= 0 || readout.base_rate > 1)
    throw std::invalid_argument("interferometer: readout contrast/base_rate in (0,1]");
}

std::vector<double> InterferometerConfig::default_grid(int points) {
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(M_PI * double(i) / double(points - 1));
  return grid;
}

double ideal_signal(double phi, Scheme scheme, double visibility) {
  if (visibility < 0 || visibility > 1) throw std::invalid_argument("ideal_signal: visibility in [0,1]");
  const double k = scheme == Scheme::Noon ? 2.0 : 1.0;
  return 0.5 * (1.0 + visibility * std::cos(k * phi));
}

namespace {

// Independent-probe circuit: Y/2, dephase over the algorithm time, Z_phi,
// close with (Y/2)^-1, read out P(|0>).
double single_probe_probability(double phi, double v_e) {
  const Mat2 half_y = target_unitary(GateSpec::named("Y/2"));
  Eigen::Vector2cd psi(1.0, 0.0);
  Mat2 rho = psi * psi.adjoint();
  rho = (half_y * rho * half_y.adjoint()).eval();
  rho(0, 1) *= v_e;
  rho(1, 0) *= v_e;
  Mat2 zphi = Mat2::Identity();
  zphi(1, 1) = std::exp(-kI * phi);
  rho = (zphi * rho * zphi.adjoint()).eval();
  rho = (half_y.adjoint() * rho * half_y).eval();
  return rho(0, 0).real();
}

// NOON circuit on |n e>: Y/2 on the control, C-Y entangler, Z_phi on both,
// dephasing on both spins, inverse circuit, read out P(|00>).
double noon_probability(double phi, double v_e, double v_n) {
  const Mat2 half_y = target_unitary(GateSpec::named("Y/2"));
  const Mat4 prep1 = kron(half_y, identity2());
  const Mat4 cy = cy_target();
  Eigen::Vector4cd psi;
  psi << 1.0, 0.0, 0.0, 0.0;
  Mat4 rho = psi * psi.adjoint();
  rho = (prep1 * rho * prep1.adjoint()).eval();
  rho = (cy * rho * cy.adjoint()).eval();

  Mat4 zz = Mat4::Identity();
  zz(1, 1) = std::exp(-kI * phi);
  zz(2, 2) = std::exp(-kI * phi);
  zz(3, 3) = std::exp(-2.0 * kI * phi);
  rho = (zz * rho * zz.adjoint()).eval();

  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (r == c) continue;
      double factor = 1.0;
      if ((r % 2) != (c % 2)) factor *= v_e;  // electron coherence
      if ((r / 2) != (c / 2)) factor *= v_n;  // nuclear coherence
      rho(r, c) *= factor;
    }

  rho = (cy.adjoint() * rho * cy).eval();
  rho = (prep1.adjoint() * rho * prep1).eval();
  return rho(0, 0).real();
}

}  // namespace

FringeData run_interferometer(const InterferometerConfig& cfg, GatesBackend backend,
                              const NoiseModel& noise) {
  cfg.validate();
  noise.validate();
  const TimingBudget budget = TimingBudget::for_backend(backend);
  // sigma_z dephasing at rate G decays coherences as exp(-2 G t)
  const double v_e = cfg.visibility * std::exp(-2.0 * noise.dephasing_rate_e * budget.t_algo);
  const double v_n = std::exp(-2.0 * noise.dephasing_rate_n * budget.t_algo);

  FringeData data;
  data.scheme = cfg.scheme;
  data.backend = backend;
  for (size_t i = 0; i < cfg.phase_grid.size(); ++i) {
    const double phi = cfg.phase_grid[i];
    const double p = cfg.scheme == Scheme::Noon ? noon_probability(phi, v_e, v_n)
                                                : single_probe_probability(phi, v_e);
    Substream rng(cfg.seed, i);
    const double q = std::clamp(cfg.readout.base_rate * (1.0 - cfg.readout.contrast * p), 0.0, 1.0);
    const long k = rng.binomial(cfg.shots_per_point, q);
    const double n = double(cfg.shots_per_point);
    const double q_hat = std::clamp(double(k) / n, 0.25 / n, 1.0 - 0.25 / n);
    const double p_hat = (1.0 - double(k) / (n * cfg.readout.base_rate)) / cfg.readout.contrast;
    const double sigma =
        std::sqrt(q_hat * (1.0 - q_hat) / n) / (cfg.readout.base_rate * cfg.readout.contrast);
    data.points.push_back({phi, p_hat, sigma});
  }
  return data;
}

FringeFit fit_fringe(const FringeData& data) {
  if (data.points.size() < 5)
    throw std::invalid_argument("fit_fringe: need at least 5 phase points");
  const double span = data.points.back().phi - data.points.front().phi;
  if (span < M_PI_2) throw std::invalid_argument("fit_fringe: grid must span at least half a fringe");

  FringeFit best;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 2; ++k) {
    // P - 1/2 = a cos(k phi) + b sin(k phi), linear least squares in (a, b).
    double caa = 0, cab = 0, cbb = 0, ya = 0, yb = 0;
    for (const auto& pt : data.points) {
      const double c = std::cos(k * pt.phi);
      const double s = std::sin(k * pt.phi);
      const double y = pt.mean - 0.5;
      caa += c * c; cab += c * s; cbb += s * s;
      ya += c * y; yb += s * y;
    }
    const double det = caa * cbb - cab * cab;
    if (std::abs(det) < 1e-12) continue;
    const double a = (ya * cbb - yb * cab) / det;
    const double b = (caa * yb - cab * ya) / det;
    double ssr = 0;
    for (const auto& pt : data.points) {
      const double r = pt.mean - 0.5 - a * std::cos(k * pt.phi) - b * std::sin(k * pt.phi);
      ssr += r * r;
    }
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best.k = k;
      best.visibility = 2.0 * std::hypot(a, b);
      best.offset = std::atan2(-b, a);
      best.rms_residual = std::sqrt(ssr / double(data.points.size()));
      best.ok = true;
    }
  }
  if (best.ok && best.visibility < 1e-3) best.ok = false;  // constant data
  return best;
}

double phase_uncertainty(double sigma_s, double dp) {
  if (!(dp > 0)) throw std::invalid_argument("phase_uncertainty: degenerate fringe (dP <= 0)");
  return sigma_s / dp;
}

double sensitivity(double delta_phi, const TimingBudget& budget) {
  const double t = budget.total();
  if (!(t > 0)) throw std::invalid_argument("sensitivity: total time must be > 0");
  return delta_phi * std::sqrt(t);
}

SensitivityReport analyze_fringe(const FringeData& data, const TimingBudget& budget,
                                 const std::string& label) {
  const FringeFit fit = fit_fringe(data);
  if (!fit.ok) throw std::runtime_error("analyze_fringe: fringe fit failed (degenerate data)");
  SensitivityReport rep;
  rep.label = label;
  rep.fitted_visibility = fit.visibility;
  rep.fitted_k = fit.k;
  double sum = 0;
  for (const auto& pt : data.points) sum += pt.sigma;
  rep.sigma_s = sum / double(data.points.size());
  rep.dp = fit.visibility * double(fit.k) / 2.0;
  rep.delta_phi_min = phase_uncertainty(rep.sigma_s, rep.dp);
  rep.t_total = budget.total();
  rep.s = sensitivity(rep.delta_phi_min, budget);
  return rep;
}

double kappa(const SensitivityReport& a, const SensitivityReport& b) {
  if (!(b.s > 0)) throw std::invalid_argument("kappa: reference sensitivity must be > 0");
  return a.s / b.s;
}

}  // namespace holosim
