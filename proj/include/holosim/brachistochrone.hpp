#pragma once

#include <vector>

#include "holosim/noise.hpp"
#include "holosim/pulses.hpp"

namespace holosim {

// Residuals of the two control constraints evaluated on the working 2x2
// subspace: f1 = |Tr(H^2) - Omega^2/2| (speed constraint saturated) and
// f2 = |Tr(H sigma_z)| (no independent sigma_z drive).
struct ConstraintReport {
  double f1_residual = 0;  // rad^2/us^2
  double f2_residual = 0;  // rad/us
};

/// Evaluates H(t) on `grid` sample points; added_detuning injects an extra
/// detuning * sigma_z term the way the noise model does.
ConstraintReport constraint_residuals(const PulseSchedule& s, int grid, double added_detuning = 0);

// Best constant Lagrange multipliers for F = lambda1*H + lambda2*sigma_z and
// the residual max_t ||dF/dt + i[H, F]||_F at that choice. The pair is
// normalized to lambda1^2 + lambda2^2 = 1 (the equation is homogeneous).
struct QbeWitness {
  double lambda1 = 1;
  double lambda2 = 0;
  double residual = 0;
};

struct LambdaSearch {
  int coarse_points = 181;   // grid over the normalized multiplier angle
  int refine_iterations = 80;
};

QbeWitness qbe_residual(const PulseSchedule& s, const LambdaSearch& search = {}, int time_grid = 257);

struct ScanCell {
  double slope = 0;       // rad/us
  double duration = 0;    // us
  double infidelity = 0;
};

struct ScanResult {
  std::vector<ScanCell> table;
  double tau_star = 0;
  bool found = false;
};

/// Brute-force time-optimality scan over the {constant Omega, linear phase
/// ramp} control family: propagates each (slope, duration) cell and records
/// the infidelity to U_G(gamma, theta, phi). tau_star is the shortest
/// duration reaching infidelity <= epsilon.
ScanResult optimality_scan(double gamma, double theta, double phi, double omega,
                           const std::vector<double>& slope_grid,
                           const std::vector<double>& duration_grid, double epsilon,
                           const StepPolicy& policy = {}, int threads = 1);

/// Duration grid centered on tau_min(gamma, omega) with the given step,
/// together with the phase-matched slope for each duration.
std::vector<double> bracket_durations(double gamma, double omega, double step, int half_width);
std::vector<double> matched_slopes(double gamma, const std::vector<double>& durations);

}  // namespace holosim
