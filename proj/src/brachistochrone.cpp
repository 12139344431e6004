#include "holosim/brachistochrone.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "holosim/evolve.hpp"

namespace holosim {

ConstraintReport constraint_residuals(const PulseSchedule& s, int grid, double added_detuning) {
  if (grid < 2) throw std::invalid_argument("constraint_residuals: grid must be >= 2");
  ConstraintReport report;
  if (s.trivial()) return report;
  const double total = s.duration();
  const Mat2 sz = pauli_z();
  for (int i = 0; i < grid; ++i) {
    const double t = total * double(i) / double(grid - 1);
    const double omega = s.omega_at(t);
    Mat2 h = lambda_hamiltonian(omega, s.phi2_at(t));
    h += added_detuning * sz;
    const double tr_h2 = (h * h).trace().real();
    const double f1 = std::abs(tr_h2 - 0.5 * omega * omega);
    const double f2 = std::abs((h * sz).trace().real());
    report.f1_residual = std::max(report.f1_residual, f1);
    report.f2_residual = std::max(report.f2_residual, f2);
  }
  return report;
}

namespace {

// max_t || lambda1 * dH/dt + i [H, lambda1 H + lambda2 sigma_z] ||_F with the
// time derivative taken analytically per segment.
double residual_for(const PulseSchedule& s, double lambda1, double lambda2, int time_grid) {
  const Mat2 sz = pauli_z();
  double worst = 0;
  double seg_start = 0;
  for (const auto& seg : s.segments) {
    if (seg.phase.kind != PhaseProgram::Kind::Constant &&
        seg.phase.kind != PhaseProgram::Kind::LinearRamp)
      throw std::invalid_argument("qbe_residual: unsupported phase program shape");
    for (int i = 0; i < time_grid; ++i) {
      const double tau = seg.duration * (i + 0.5) / time_grid;
      const double omega = seg.envelope.value(tau, seg.duration);
      const double omega_dot = seg.envelope.derivative(tau, seg.duration);
      const double phi2 = seg.phase.at(tau);
      const double phi2_dot = seg.phase.rate();
      const double c = std::cos(phi2);
      const double d = std::sin(phi2);
      const Mat2 h = lambda_hamiltonian(omega, phi2);
      const Mat2 h_dot = 0.5 * omega_dot * (c * pauli_x() + d * pauli_y()) +
                         0.5 * omega * phi2_dot * (-d * pauli_x() + c * pauli_y());
      const Mat2 f = lambda1 * h + lambda2 * sz;
      const Mat2 r = lambda1 * h_dot + kI * (h * f - f * h);
      worst = std::max(worst, r.norm());
    }
    seg_start += seg.duration;
  }
  (void)seg_start;
  return worst;
}

}  // namespace

QbeWitness qbe_residual(const PulseSchedule& s, const LambdaSearch& search, int time_grid) {
  QbeWitness w;
  if (s.trivial()) return w;

  auto at_angle = [&](double alpha) {
    return residual_for(s, std::cos(alpha), std::sin(alpha), time_grid);
  };

  // Coarse scan of the normalized multiplier angle, then golden-section
  // refinement around the best cell.
  double best_alpha = 0;
  double best = at_angle(0);
  for (int i = 0; i < search.coarse_points; ++i) {
    const double alpha = -M_PI_2 + M_PI * (i + 0.5) / search.coarse_points;
    const double r = at_angle(alpha);
    if (r < best) {
      best = r;
      best_alpha = alpha;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_alpha - M_PI / search.coarse_points;
  double hi = best_alpha + M_PI / search.coarse_points;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = at_angle(x1), f2 = at_angle(x2);
  for (int it = 0; it < search.refine_iterations; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = at_angle(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = at_angle(x2);
    }
  }
  const double alpha = 0.5 * (lo + hi);
  const double r = at_angle(alpha);
  if (r < best) {
    best = r;
    best_alpha = alpha;
  }
  w.lambda1 = std::cos(best_alpha);
  w.lambda2 = std::sin(best_alpha);
  w.residual = best;
  return w;
}

ScanResult optimality_scan(double gamma, double theta, double phi, double omega,
                           const std::vector<double>& slope_grid,
                           const std::vector<double>& duration_grid, double epsilon,
                           const StepPolicy& policy, int threads) {
  if (slope_grid.empty() || duration_grid.empty())
    throw std::invalid_argument("optimality_scan: grids must be nonempty");
  if (!(epsilon > 0) || epsilon > 1e-3)
    throw std::invalid_argument("optimality_scan: epsilon must lie in (0, 1e-3]");

  const Mat2 target = target_unitary(GateSpec::angles(gamma, theta, phi));
  const size_t n_cells = slope_grid.size() * duration_grid.size();
  ScanResult result;
  result.table.resize(n_cells);

  auto run_cell = [&](size_t cell) {
    const size_t si = cell % slope_grid.size();
    const size_t di = cell / slope_grid.size();
    PulseSchedule s;
    s.gamma = gamma;
    s.theta = theta;
    s.phi = phi;
    Segment seg;
    seg.duration = duration_grid[di];
    seg.envelope = Envelope::constant(omega);
    seg.phase.kind = PhaseProgram::Kind::LinearRamp;
    seg.phase.slope = slope_grid[si];
    seg.phase.intercept = 0.0;
    s.segments = {seg};

    const TrajectoryResult tr = propagate_unitary(s, 3, policy);
    const CMat& u = tr.final();
    Mat2 block;
    block(0, 0) = u(kIdxZero, kIdxZero);
    block(0, 1) = u(kIdxZero, kIdxOne);
    block(1, 0) = u(kIdxOne, kIdxZero);
    block(1, 1) = u(kIdxOne, kIdxOne);
    result.table[cell] = {slope_grid[si], duration_grid[di], 1.0 - gate_fidelity(block, target)};
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    for (size_t c = 0; c < n_cells; ++c) run_cell(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (size_t c = next.fetch_add(1); c < n_cells; c = next.fetch_add(1)) run_cell(c);
      });
    for (auto& th : pool) th.join();
  }

  for (size_t di = 0; di < duration_grid.size(); ++di) {
    double best = 1.0;
    for (size_t si = 0; si < slope_grid.size(); ++si)
      best = std::min(best, result.table[di * slope_grid.size() + si].infidelity);
    if (best <= epsilon) {
      if (!result.found || duration_grid[di] < result.tau_star) {
        result.tau_star = duration_grid[di];
        result.found = true;
      }
    }
  }
  return result;
}

std::vector<double> bracket_durations(double gamma, double omega, double step, int half_width) {
  const double center = tau_min(gamma, omega);
  std::vector<double> out;
  for (int k = -half_width; k <= half_width; ++k) {
    const double d = center + k * step;
    if (d > 0) out.push_back(d);
  }
  return out;
}

std::vector<double> matched_slopes(double gamma, const std::vector<double>& durations) {
  std::vector<double> out;
  out.reserve(durations.size());
  for (double d : durations) out.push_back(2.0 * (gamma - M_PI) / d);
  return out;
}

}  // namespace holosim
