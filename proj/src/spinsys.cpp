#include "holosim/spinsys.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

void SpinSystemParams::validate() const {
  if (!(zero_field_splitting > 0)) throw std::invalid_argument("spinsys: D must be > 0");
  if (!(b0 >= 0)) throw std::invalid_argument("spinsys: B0 must be >= 0");
}

SpinSystemParams SpinSystemParams::from_json(const nlohmann::json& j) {
  SpinSystemParams p;
  if (j.contains("d_mhz")) p.zero_field_splitting = kTwoPi * j.at("d_mhz").get<double>();
  if (j.contains("gamma_e_mhz_per_g")) p.gamma_e = kTwoPi * j.at("gamma_e_mhz_per_g").get<double>();
  if (j.contains("gamma_n_mhz_per_g")) p.gamma_n = kTwoPi * j.at("gamma_n_mhz_per_g").get<double>();
  if (j.contains("p_quad_mhz")) p.quadrupole = kTwoPi * j.at("p_quad_mhz").get<double>();
  if (j.contains("a_hf_mhz")) p.hyperfine = kTwoPi * j.at("a_hf_mhz").get<double>();
  if (j.contains("b0_gauss")) p.b0 = j.at("b0_gauss").get<double>();
  p.validate();
  return p;
}

nlohmann::json SpinSystemParams::to_json() const {
  return nlohmann::json{{"d_mhz", zero_field_splitting / kTwoPi},
                        {"gamma_e_mhz_per_g", gamma_e / kTwoPi},
                        {"gamma_n_mhz_per_g", gamma_n / kTwoPi},
                        {"p_quad_mhz", quadrupole / kTwoPi},
                        {"a_hf_mhz", hyperfine / kTwoPi},
                        {"b0_gauss", b0}};
}

BrightFrame BrightFrame::from_mixing(double theta, double phi) {
  BrightFrame f;
  f.theta = theta;
  f.phi = phi;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex eip = std::exp(kI * phi);
  f.bright = Eigen::Vector3cd::Zero();
  f.dark = Eigen::Vector3cd::Zero();
  f.bright(kIdxZero) = eip * s;
  f.bright(kIdxOne) = c;
  f.dark(kIdxZero) = c;
  f.dark(kIdxOne) = -std::conj(eip) * s;
  return f;
}

BrightFrame BrightFrame::for_gate_axis(double axis_theta, double axis_phi) {
  return from_mixing(axis_theta, M_PI - axis_phi);
}

BrightFrame BrightFrame::from_tones(double omega1, double omega2, double phi1, double phi2) {
  return from_mixing(2.0 * std::atan2(omega1, omega2), phi1 - phi2);
}

Mat3 electron_hamiltonian_lab(const SpinSystemParams& p, const std::vector<DriveTone>& tones, double t) {
  Mat3 h = Mat3::Zero();
  const Mat3& sz = spin1_z();
  h += p.zero_field_splitting * (sz * sz) + p.gamma_e * p.b0 * sz;
  double drive = 0.0;
  for (const auto& tone : tones)
    drive += std::sqrt(2.0) * tone.amplitude * std::cos(tone.carrier * t + tone.phase);
  h += drive * spin1_x();
  return h;
}

Mat3 frame_operator(double t, double omega_plus, double omega_minus) {
  Mat3 v = Mat3::Zero();
  v(kIdxOne, kIdxOne) = std::exp(-kI * omega_plus * t);
  v(kIdxAncilla, kIdxAncilla) = 1.0;
  v(kIdxZero, kIdxZero) = std::exp(-kI * omega_minus * t);
  return v;
}

Mat3 rotating_frame_exact(const Mat3& h_lab, double t, double omega_plus, double omega_minus) {
  const Mat3 v = frame_operator(t, omega_plus, omega_minus);
  Mat3 shift = Mat3::Zero();
  shift(kIdxOne, kIdxOne) = -omega_plus;
  shift(kIdxZero, kIdxZero) = -omega_minus;
  return v.adjoint() * h_lab * v + shift;
}

Mat3 rotating_frame(const SpinSystemParams& p, const std::vector<DriveTone>& tones, double t,
                    double omega_plus, double omega_minus, bool rwa) {
  if (!rwa) return rotating_frame_exact(electron_hamiltonian_lab(p, tones, t), t, omega_plus, omega_minus);
  Mat3 h = Mat3::Zero();
  h(kIdxOne, kIdxOne) = p.zero_field_splitting + p.gamma_e * p.b0 - omega_plus;
  h(kIdxZero, kIdxZero) = p.zero_field_splitting - p.gamma_e * p.b0 - omega_minus;
  // Co-rotating part of cos(wt+phi) against the e^{-iwt} frame leaves
  // (Omega/2) e^{-i phi} on <upper|H|a>.
  for (const auto& tone : tones) {
    const Complex c = 0.5 * tone.amplitude * std::exp(-kI * tone.phase);
    if (tone.target == Transition::AncillaToOne) {
      h(kIdxOne, kIdxAncilla) += c;
      h(kIdxAncilla, kIdxOne) += std::conj(c);
    } else {
      h(kIdxZero, kIdxAncilla) += c;
      h(kIdxAncilla, kIdxZero) += std::conj(c);
    }
  }
  return h;
}

Mat2 lambda_hamiltonian(double omega, double phi2) {
  if (omega < 0) throw std::invalid_argument("lambda_hamiltonian: omega must be >= 0");
  return 0.5 * omega * (std::cos(phi2) * pauli_x() + std::sin(phi2) * pauli_y());
}

Mat3 lambda_hamiltonian3(double omega, double phi2, const BrightFrame& frame) {
  if (omega < 0) throw std::invalid_argument("lambda_hamiltonian: omega must be >= 0");
  Eigen::Vector3cd ancilla = Eigen::Vector3cd::Zero();
  ancilla(kIdxAncilla) = 1.0;
  const Complex c = 0.5 * omega * std::exp(kI * phi2);
  Mat3 h = c * (frame.bright * ancilla.adjoint());
  return h + Mat3(h.adjoint());
}

int hybrid_index(int m_s, int m_i) {
  auto slot = [](int m) {
    switch (m) {
      case 1: return 0;
      case 0: return 1;
      case -1: return 2;
    }
    throw std::invalid_argument("hybrid_index: m must be +1, 0 or -1");
  };
  return 3 * slot(m_s) + slot(m_i);
}

CMat hybrid_hamiltonian(const SpinSystemParams& p) {
  CMat h = CMat::Zero(9, 9);
  for (int m_s : {1, 0, -1}) {
    for (int m_i : {1, 0, -1}) {
      const double e = p.zero_field_splitting * m_s * m_s + p.gamma_e * p.b0 * m_s +
                       p.quadrupole * m_i * m_i + p.gamma_n * p.b0 * m_i + p.hyperfine * m_s * m_i;
      const int k = hybrid_index(m_s, m_i);
      h(k, k) = e;
    }
  }
  return h;
}

double hybrid_transition(const SpinSystemParams& p, Transition tr, int m_i) {
  const CMat h = hybrid_hamiltonian(p);
  const int a = hybrid_index(0, m_i);
  const int u = hybrid_index(tr == Transition::AncillaToOne ? 1 : -1, m_i);
  return (h(u, u) - h(a, a)).real();
}

}  // namespace holosim
