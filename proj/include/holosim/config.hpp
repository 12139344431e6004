#pragma once

#include <string>

#include "holosim/evolve.hpp"
#include "holosim/report.hpp"

namespace holosim {

struct OutputOptions {
  std::string dir = ".";
  std::string format = "both";  // csv | json | both
};

// Fully validated run configuration. JSON parsing is strict: unknown keys are
// rejected so that misspelled physics parameters cannot be silently ignored.
struct RunConfig {
  SpinSystemParams system;
  std::string scheme = "bnhqc";  // nhqc | bnhqc
  GateSpec gate = GateSpec::named("T");
  double rabi_mhz = 12.5;        // B-NHQC constant Rabi frequency (cyclic MHz)
  double nhqc_peak_mhz = 12.76;  // NHQC Gaussian peak (cyclic MHz)
  std::string nhqc_envelope = "gaussian";  // gaussian | constant
  NoiseModel noise;
  StepPolicy integrator;
  OutputOptions output;
  uint64_t seed = 1;
  int threads = 1;

  double rabi() const { return kTwoPi * rabi_mhz; }
  double nhqc_peak() const { return kTwoPi * nhqc_peak_mhz; }
  Envelope nhqc_env() const;
  PulseSchedule schedule() const;  // per scheme/gate
  void validate() const;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
  ordered_json echo() const;
};

/// Accepts a named alias ("T", "X/2", ...) or an explicit
/// "(gamma=0.7,theta=1.1,phi=0.3)" triple.
GateSpec parse_gate_arg(const std::string& text);

}  // namespace holosim
