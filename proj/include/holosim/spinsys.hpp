#pragma once

#include <vector>
#include <nlohmann/json.hpp>

#include "holosim/numerics.hpp"

namespace holosim {

// Basis conventions used everywhere:
//   3-level electron: (|m_s=+1>, |m_s=0>, |m_s=-1>) == (|1>, |a>, |0>)
//   9-level hybrid:   electron (x) nuclear, each ordered (+1, 0, -1)
// All frequencies are angular (rad/us); JSON boundaries speak cyclic MHz.
inline constexpr int kIdxOne = 0;      // |m_s=+1> == |1>
inline constexpr int kIdxAncilla = 1;  // |m_s=0>  == |a>
inline constexpr int kIdxZero = 2;     // |m_s=-1> == |0>

inline constexpr double kTwoPi = 6.283185307179586476925287;

struct SpinSystemParams {
  double zero_field_splitting = kTwoPi * 2870.0;  // D
  double gamma_e = kTwoPi * 2.8025;               // rad/us per gauss
  double gamma_n = kTwoPi * (-3.077e-4);          // rad/us per gauss
  double quadrupole = kTwoPi * (-4.95);           // P
  double hyperfine = kTwoPi * 2.16;               // A
  double b0 = 510.0;                              // gauss

  // Bare transition frequencies: |a><->|1> sits at D + gamma_e*B0,
  // |a><->|0> at D - gamma_e*B0.
  double omega_upper() const { return zero_field_splitting + gamma_e * b0; }
  double omega_lower() const { return zero_field_splitting - gamma_e * b0; }

  void validate() const;
  static SpinSystemParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class Transition { ZeroToAncilla, AncillaToOne };

struct DriveTone {
  double carrier = 0;    // rad/us
  double phase = 0;      // radians, drive is cos(carrier*t + phase)
  double amplitude = 0;  // peak Rabi angular frequency, rad/us
  Transition target = Transition::ZeroToAncilla;
};

// Bright/dark pair for a two-tone drive:
//   |b> = e^{i phi} sin(theta/2)|0> + cos(theta/2)|1>,   tan(theta/2) = Omega1/Omega2
//   |d> = cos(theta/2)|0> - e^{-i phi} sin(theta/2)|1>
// The dark state of from_mixing(theta, phi) has Bloch vector
// (-sin theta cos phi, sin theta sin phi, cos theta); for_gate_axis flips
// phi -> pi - phi so the dark state lands exactly on the rotation axis
// (sin theta cos phi, sin theta sin phi, cos theta) of the holonomic gate.
struct BrightFrame {
  double theta = 0;
  double phi = 0;
  Eigen::Vector3cd bright;  // components in (|1>, |a>, |0>)
  Eigen::Vector3cd dark;

  static BrightFrame from_mixing(double theta, double phi);
  static BrightFrame for_gate_axis(double axis_theta, double axis_phi);
  static BrightFrame from_tones(double omega1, double omega2, double phi1, double phi2);
};

/// H_s(t) = D*Sz^2 + gamma_e*B0*Sz + sum_i gamma_e*B_i cos(w_i t + phi_i) Sx,
/// with gamma_e*B_i = sqrt(2)*amplitude_i. 3x3 in (|1>, |a>, |0>).
Mat3 electron_hamiltonian_lab(const SpinSystemParams& p, const std::vector<DriveTone>& tones, double t);

/// V^dag H V + i (dV^dag/dt) V with V = diag(e^{-i w_plus t}, 1, e^{-i w_minus t}).
/// On resonance (w_plus = D + gamma_e B0, w_minus = D - gamma_e B0) the
/// diagonal vanishes.
Mat3 rotating_frame_exact(const Mat3& h_lab, double t, double omega_plus, double omega_minus);

/// Combined lab-build + frame transform. With rwa=true all oscillating terms
/// are dropped and each tone contributes Omega/2 e^{-i phase} on its target
/// transition, giving the static rotating-frame matrix.
Mat3 rotating_frame(const SpinSystemParams& p, const std::vector<DriveTone>& tones, double t,
                    double omega_plus, double omega_minus, bool rwa);

Mat3 frame_operator(double t, double omega_plus, double omega_minus);

/// Effective Lambda Hamiltonian (Omega/2)(cos phi2 sx + sin phi2 sy) in the
/// ordered basis (|b>, |a>).
Mat2 lambda_hamiltonian(double omega, double phi2);

/// Same coupling embedded in the 3-level basis via the bright state.
Mat3 lambda_hamiltonian3(double omega, double phi2, const BrightFrame& frame);

/// D Sz^2 + gamma_e B Sz + P Iz^2 + gamma_n B Iz + A Sz Iz, diagonal 9x9.
CMat hybrid_hamiltonian(const SpinSystemParams& p);

/// Electron transition frequency within a nuclear manifold.
double hybrid_transition(const SpinSystemParams& p, Transition tr, int m_i);

/// Flattened hybrid index for (m_s, m_i), each in {+1, 0, -1}.
int hybrid_index(int m_s, int m_i);

}  // namespace holosim
