#pragma once

#include <nlohmann/json.hpp>

namespace holosim {

// Quasi-static control errors (resampled per Monte Carlo shot) plus Lindblad
// dephasing rates and a per-gate depolarizing strength.
struct NoiseModel {
  double detuning_sigma = 0;       // rad/us, Gaussian spread of the sigma_z error
  double amplitude_rel_sigma = 0;  // relative Rabi error spread
  double dephasing_rate_e = 0;     // 1/us
  double dephasing_rate_n = 0;     // 1/us
  double depol_per_gate = 0;       // p in [0,1]

  void validate() const;
  static NoiseModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// One sampled realization of the quasi-static errors.
struct QuasiStaticError {
  double detuning = 0;         // rad/us, added as detuning * sigma_z in {|b>,|a>}
  double amplitude_scale = 1;  // multiplies Omega(t)
};

struct StepPolicy {
  double max_phase = 0.01;        // max ||H||*dt per step, rad (must be <= 0.05)
  int min_steps_per_segment = 128;
  int max_samples = 513;          // trajectory samples kept (endpoints always)

  void validate() const;
  static StepPolicy from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

}  // namespace holosim
