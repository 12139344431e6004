#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holosim/noise.hpp"
#include "holosim/tomography.hpp"

namespace holosim {

enum class Scheme { Independent, Noon };
enum class GatesBackend { Ideal, Nhqc, Bnhqc };

struct TimingBudget {
  double t_init = 0;  // us
  double t_algo = 0;
  double t_read = 0;
  int repetitions = 1;

  double total() const { return repetitions * (t_init + t_algo + t_read); }
  static TimingBudget nhqc() { return {3.0, 287.0, 2.0, 1}; }
  static TimingBudget bnhqc() { return {3.0, 80.0, 2.0, 1}; }
  static TimingBudget ideal() { return {0.0, 0.0, 0.0, 1}; }
  static TimingBudget for_backend(GatesBackend b);
};

struct InterferometerConfig {
  Scheme scheme = Scheme::Independent;
  double visibility = 1.0;  // extra coherence factor on top of modeled dephasing
  ReadoutModel readout;
  int shots_per_point = 2000;
  std::vector<double> phase_grid;  // radians, typically spanning [0, pi]
  uint64_t seed = 1;

  void validate() const;
  static std::vector<double> default_grid(int points = 17);
};

/// P = (1 + V cos(k phi))/2 with k = 1 (independent) or 2 (noon).
double ideal_signal(double phi, Scheme scheme, double visibility);

struct FringePoint {
  double phi = 0;
  double mean = 0;
  double sigma = 0;  // sigma_S^n of the normalized signal at this point
};

struct FringeData {
  std::vector<FringePoint> points;
  Scheme scheme = Scheme::Independent;
  GatesBackend backend = GatesBackend::Ideal;
};

/// Simulates the phase-estimation circuit per grid point (density-matrix
/// gates + dephasing over the backend's algorithm time), samples shots
/// binomially through the contrast readout model, deterministic under seed.
FringeData run_interferometer(const InterferometerConfig& cfg, GatesBackend backend,
                              const NoiseModel& noise);

struct FringeFit {
  double visibility = 0;
  int k = 1;
  double offset = 0;
  double rms_residual = 0;
  bool ok = false;
};

/// Least squares against P = (1 + V cos(k phi + offset))/2, k restricted to
/// {1, 2}, winner picked by residual. Degenerate (constant) data reports ok=false.
FringeFit fit_fringe(const FringeData& data);

double phase_uncertainty(double sigma_s, double dp);
double sensitivity(double delta_phi, const TimingBudget& budget);

struct SensitivityReport {
  std::string label;
  double fitted_visibility = 0;
  int fitted_k = 1;
  double sigma_s = 0;         // mean over grid points
  double dp = 0;              // analytic max slope V*k/2
  double delta_phi_min = 0;   // sigma_s / dp
  double t_total = 0;         // us
  double s = 0;               // delta_phi_min * sqrt(t_total)
};

SensitivityReport analyze_fringe(const FringeData& data, const TimingBudget& budget,
                                 const std::string& label = "");

/// kappa = S_a / S_b.
double kappa(const SensitivityReport& a, const SensitivityReport& b);

}  // namespace holosim
