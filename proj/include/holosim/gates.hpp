#pragma once

#include <string>
#include <vector>
#include <nlohmann/json.hpp>

#include "holosim/noise.hpp"
#include "holosim/pulses.hpp"

namespace holosim {

// Holonomic gate parameters: rotation by gamma about the axis
// n = (sin theta cos phi, sin theta sin phi, cos theta).
// Named aliases: X (pi, pi/2, 0), Y (pi, pi/2, pi/2), X/2 (pi/2, pi/2, 0),
// Y/2 (pi/2, pi/2, pi/2), T (pi/4, 0, 0), Z (pi, 0, 0), I (zero-duration).
struct GateSpec {
  double gamma = 0;
  double theta = 0;
  double phi = 0;
  std::string alias;

  bool is_identity() const { return alias == "I"; }
  static GateSpec named(const std::string& name);
  static GateSpec angles(double gamma, double theta, double phi);
  static const std::vector<std::string>& six_gate_names();

  nlohmann::json to_json() const;
  static GateSpec from_json(const nlohmann::json& j);
};

/// U_G = e^{i gamma/2} exp(-i (gamma/2) n.sigma) on (|0>, |1>).
Mat2 target_unitary(const GateSpec& g);

/// Average gate fidelity (|Tr M|^2 + Tr M^dag M)/(d(d+1)), M = U_tgt^dag U_sim.
/// Works for any square dimension; global-phase invariant.
double gate_fidelity(const CMat& u_sim, const CMat& u_tgt);

double trace_fidelity(const CMat& u_sim, const CMat& u_tgt);

PulseSchedule bnhqc_schedule(const GateSpec& g, double omega);
PulseSchedule nhqc_schedule(const GateSpec& g, const Envelope& envelope);

// ---- two-qubit C-Y construction ----

// One electron drive program addressed at the hyperfine-shifted transitions of
// a single nuclear manifold.
struct ConditionalSchedule {
  PulseSchedule pulse;
  int manifold = 1;          // m_I this pulse is resonant with
  double carrier_lower = 0;  // |0> <-> |a> carrier, rad/us
  double carrier_upper = 0;  // |a> <-> |1> carrier, rad/us
};

// Selective Y loop on m_I=+1 plus a trivial-holonomy loop on m_I=-1. The
// conditional phase between manifolds is a nuclear frame convention; the
// virtual-Z factor recorded here pins it so the composite equals
// blockdiag(1, R_y(pi)) on the computational subspace.
struct CyGate {
  ConditionalSchedule rotate;
  ConditionalSchedule loop_identity;
  Complex control_frame_phase{0.0, -1.0};  // applied to the m_I=+1 manifold
};

CyGate cy_schedule(const SpinSystemParams& p, const GateSpec& electron_gate, double omega);

/// blockdiag(I2, R_y(pi)) in the (nuclear, electron) qubit ordering |n e>.
Mat4 cy_target();

/// 4x4 computational block of a 9-dim operator, |n e> ordering with
/// n,e = 0 mapped to m = -1 and 1 mapped to m = +1.
Mat4 computational_block(const CMat& u9);

/// Diagonal 9x9 virtual-Z correction multiplying the m_I=+1 manifold.
CMat nuclear_frame_correction(Complex phase_plus1);

// ---- repeated-gate decay experiments ----

struct DecaySeries {
  std::vector<int> n;
  std::vector<double> fidelity;
};

/// N sequential gate applications with per-gate depolarizing noise.depol_per_gate
/// and SPAM error eps_if (initial depolarizing mix); returns the state
/// fidelity against the ideal N-fold target per N.
DecaySeries repeat_gate_experiment(const GateSpec& g, int n_max, const NoiseModel& noise, double eps_if);

/// Repeated C-Y applications at matrix level with two-qubit depolarizing
/// noise p2 per gate; fidelity of the state against the ideal alternating
/// entangled/separable sequence.
DecaySeries cy_repeat_experiment(int n_max, double depol_two_qubit, double eps_if);

struct DecayFit {
  double eps_if = 0;
  double p = 0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  bool converged = false;
  double rms_residual = 0;
};

struct TwoQubitDecayFit {
  double a = 0;
  double b = 0;
  double f_g = 0;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  bool converged = false;
  double rms_residual = 0;
};

/// Nonlinear least squares against F_N = [1 + (1 - eps_if)(1 - p)^N]/2.
DecayFit fit_single_decay(const DecaySeries& series);

/// Nonlinear least squares against F_s(N) = A F_g^N + B.
TwoQubitDecayFit fit_two_qubit_decay(const DecaySeries& series);

}  // namespace holosim
