#pragma once

#include <string>
#include <vector>
#include <nlohmann/json.hpp>

#include "holosim/spinsys.hpp"

namespace holosim {

enum class EnvelopeKind { Constant, TruncatedGaussian };

// Drive envelope Omega(t) on one segment. The truncated Gaussian spans 4 sigma
// (duration == 4*sigma), is centered at 2 sigma and, with baseline
// subtraction, starts and ends exactly at zero with maximum `peak`.
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::Constant;
  double peak = 0;  // rad/us
  double sigma = 0; // us, gaussian only
  bool baseline_subtract = true;

  double value(double t, double duration) const;
  double derivative(double t, double duration) const;
  double area(double duration) const;                         // closed form
  double partial_area(double t0, double t1, double duration) const;

  static Envelope constant(double peak);
  static Envelope truncated_gaussian(double peak, double sigma, bool baseline_subtract = true);

  nlohmann::json to_json() const;
  static Envelope from_json(const nlohmann::json& j);
};

/// Effective area fraction of the baseline-subtracted 4-sigma Gaussian:
/// integral of the unit-peak waveform over [0,4s] divided by 4s.
double gaussian_area_coefficient();

struct PhaseProgram {
  enum class Kind { Constant, LinearRamp };
  Kind kind = Kind::Constant;
  double intercept = 0;  // rad
  double slope = 0;      // rad/us, LinearRamp only

  double at(double t) const { return intercept + (kind == Kind::LinearRamp ? slope * t : 0.0); }
  double rate() const { return kind == Kind::LinearRamp ? slope : 0.0; }

  nlohmann::json to_json() const;
  static PhaseProgram from_json(const nlohmann::json& j);
};

struct Segment {
  double duration = 0;  // us
  Envelope envelope;
  PhaseProgram phase;   // phi2(t), t relative to segment start
};

// A full drive program for one holonomic gate: segments plus the gate-axis
// parameters (gamma, theta, phi) it is meant to realize. The bright/dark
// frame used by the physics is derived from the axis (see BrightFrame).
struct PulseSchedule {
  std::vector<Segment> segments;
  double theta = 0;
  double phi = 0;
  double gamma = 0;
  std::string note;  // set e.g. for degenerate gamma in {0, 2pi}

  double duration() const;
  bool trivial() const { return segments.empty(); }
  BrightFrame frame() const { return BrightFrame::for_gate_axis(theta, phi); }

  int segment_index(double t) const;      // throws outside [0, duration]
  double omega_at(double t) const;
  double phi2_at(double t) const;

  nlohmann::json to_json() const;
  static PulseSchedule from_json(const nlohmann::json& j);
  /// Sampled waveform rows (t_us, omega_rad_per_us, phi2_rad).
  std::vector<std::array<double, 3>> sample(double dt) const;
};

/// Minimum brachistochrone loop duration 2*sqrt(pi^2-(pi-gamma)^2)/Omega.
/// Domain error outside gamma in (0, 2pi).
double tau_min(double gamma, double omega);

/// Single constant-Omega segment of duration tau_min with the linear phase
/// ramp phi2(t) = 2(gamma-pi) t / tau. gamma of exactly 0 or 2pi degenerates
/// to a zero-duration identity schedule (note field set).
PulseSchedule make_bnhqc(double gamma, double theta, double phi, double omega);

/// Two equal segments of pulse area pi each; phi2 = 0 on the first and
/// pi + gamma on the second. Envelope supplies kind and peak; for the
/// truncated Gaussian sigma is derived as T_seg/4.
PulseSchedule make_nhqc(double gamma, double theta, double phi, const Envelope& envelope);

struct ToneSample {
  double omega1 = 0;  // |0><->|a| tone amplitude
  double omega2 = 0;  // |a><->|1| tone amplitude
  double phi1 = 0;
  double phi2 = 0;
};

/// Two-tone decomposition at time t: Omega1 = Omega sin(theta_f/2),
/// Omega2 = Omega cos(theta_f/2), phi1 = phi_f + phi2(t), with (theta_f,
/// phi_f) the bright-frame angles of the schedule.
ToneSample two_tone(const PulseSchedule& s, double t);

/// Total pulse area by adaptive quadrature (relative error <= 1e-9).
double area(const PulseSchedule& s);

/// Physical lab-frame tones at time t: carriers at the bare transition
/// frequencies, phases negated relative to the rotating-frame program
/// (cos(wt+phi) against the e^{-iwt} frame leaves e^{-i phi} on the
/// coupling).
std::vector<DriveTone> lab_tones(const PulseSchedule& s, const SpinSystemParams& p, double t);

}  // namespace holosim
