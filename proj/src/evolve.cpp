#include "holosim/evolve.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "holosim/rng.hpp"

namespace holosim {

void NoiseModel::validate() const {
  if (detuning_sigma < 0 || amplitude_rel_sigma < 0 || dephasing_rate_e < 0 || dephasing_rate_n < 0)
    throw std::invalid_argument("noise: rates and spreads must be >= 0");
  if (depol_per_gate < 0 || depol_per_gate > 1)
    throw std::invalid_argument("noise: depol_per_gate must lie in [0, 1]");
}

NoiseModel NoiseModel::from_json(const nlohmann::json& j) {
  NoiseModel n;
  if (j.contains("detuning_sigma_rad_per_us")) n.detuning_sigma = j.at("detuning_sigma_rad_per_us").get<double>();
  if (j.contains("amplitude_rel_sigma")) n.amplitude_rel_sigma = j.at("amplitude_rel_sigma").get<double>();
  if (j.contains("dephasing_rate_e_per_us")) n.dephasing_rate_e = j.at("dephasing_rate_e_per_us").get<double>();
  if (j.contains("dephasing_rate_n_per_us")) n.dephasing_rate_n = j.at("dephasing_rate_n_per_us").get<double>();
  if (j.contains("depol_per_gate")) n.depol_per_gate = j.at("depol_per_gate").get<double>();
  n.validate();
  return n;
}

nlohmann::json NoiseModel::to_json() const {
  return nlohmann::json{{"detuning_sigma_rad_per_us", detuning_sigma},
                        {"amplitude_rel_sigma", amplitude_rel_sigma},
                        {"dephasing_rate_e_per_us", dephasing_rate_e},
                        {"dephasing_rate_n_per_us", dephasing_rate_n},
                        {"depol_per_gate", depol_per_gate}};
}

void StepPolicy::validate() const {
  if (!(max_phase > 0) || max_phase > 0.05)
    throw std::invalid_argument("step policy: max_phase must lie in (0, 0.05]");
  if (min_steps_per_segment < 1) throw std::invalid_argument("step policy: min_steps_per_segment >= 1");
}

StepPolicy StepPolicy::from_json(const nlohmann::json& j) {
  StepPolicy p;
  if (j.contains("max_phase_rad")) p.max_phase = j.at("max_phase_rad").get<double>();
  if (j.contains("min_steps_per_segment")) p.min_steps_per_segment = j.at("min_steps_per_segment").get<int>();
  p.validate();
  return p;
}

nlohmann::json StepPolicy::to_json() const {
  return nlohmann::json{{"max_phase_rad", max_phase}, {"min_steps_per_segment", min_steps_per_segment}};
}

namespace {

// sigma_z on {|b>,|a>} embedded in the working basis.
CMat working_sigma_z(int dims, const BrightFrame& frame) {
  if (dims == 2) return pauli_z();
  Eigen::Vector3cd ancilla = Eigen::Vector3cd::Zero();
  ancilla(kIdxAncilla) = 1.0;
  Mat3 z = frame.bright * frame.bright.adjoint() - ancilla * ancilla.adjoint();
  return z;
}

CMat hamiltonian_at(const PulseSchedule& s, int dims, const BrightFrame& frame, double t,
                    const QuasiStaticError& err, const CMat& sigma_z_work) {
  const double omega = err.amplitude_scale * s.omega_at(t);
  const double phi2 = s.phi2_at(t);
  CMat h = (dims == 2) ? CMat(lambda_hamiltonian(omega, phi2))
                       : CMat(lambda_hamiltonian3(omega, phi2, frame));
  if (err.detuning != 0.0) h += err.detuning * sigma_z_work;
  return h;
}

int steps_for_segment(const Segment& seg, const StepPolicy& policy, const QuasiStaticError& err) {
  const double bound = 0.5 * std::abs(err.amplitude_scale) * seg.envelope.peak + std::abs(err.detuning);
  const int by_phase = int(std::ceil(seg.duration * std::max(bound, 1e-12) / policy.max_phase));
  return std::max(policy.min_steps_per_segment, by_phase);
}

double unitary_worst_leakage(const CMat& u, int dims) {
  if (dims == 2) return 0.0;
  std::vector<CVec> probes;
  const double r = 1.0 / std::sqrt(2.0);
  if (dims == 3) {
    auto basis = [](int idx) {
      CVec v = CVec::Zero(3);
      v(idx) = 1.0;
      return v;
    };
    probes = {basis(kIdxZero), basis(kIdxOne), r * (basis(kIdxZero) + basis(kIdxOne)),
              r * (basis(kIdxZero) - basis(kIdxOne))};
  } else {
    for (int m_i : {-1, 1}) {
      auto vec = [&](std::initializer_list<std::pair<int, Complex>> amps) {
        CVec v = CVec::Zero(9);
        for (auto& [ms, amp] : amps) v(hybrid_index(ms, m_i)) = amp;
        return v;
      };
      probes.push_back(vec({{-1, 1.0}}));
      probes.push_back(vec({{1, 1.0}}));
      probes.push_back(vec({{-1, r}, {1, r}}));
      probes.push_back(vec({{-1, r}, {1, -r}}));
    }
  }
  double worst = 0.0;
  for (const auto& psi : probes) {
    const CVec out = u * psi;
    double pop = 0.0;
    if (dims == 3) {
      pop = std::norm(out(kIdxAncilla));
    } else {
      for (int m_s : {1, 0, -1})
        for (int m_i : {1, 0, -1})
          if (m_s == 0 || m_i == 0) pop += std::norm(out(hybrid_index(m_s, m_i)));
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

}  // namespace

TrajectoryResult propagate_unitary(const PulseSchedule& s, int dims, const StepPolicy& policy,
                                   const QuasiStaticError& err) {
  if (dims != 2 && dims != 3) throw std::invalid_argument("propagate_unitary: dims must be 2 or 3");
  policy.validate();
  const BrightFrame frame = s.frame();
  const CMat sz = working_sigma_z(dims, frame);

  TrajectoryResult tr;
  tr.dims = dims;
  tr.density = false;
  CMat u = CMat::Identity(dims, dims);
  tr.times.push_back(0.0);
  tr.states.push_back(u);
  if (s.trivial()) {
    tr.leakage_final = 0.0;
    return tr;
  }

  long total_steps = 0;
  std::vector<int> seg_steps;
  for (const auto& seg : s.segments) {
    seg_steps.push_back(steps_for_segment(seg, policy, err));
    total_steps += seg_steps.back();
  }
  const long stride = std::max(1L, total_steps / std::max(1, policy.max_samples - 1));

  double seg_start = 0.0;
  long step_counter = 0;
  for (size_t k = 0; k < s.segments.size(); ++k) {
    const auto& seg = s.segments[k];
    const int n = seg_steps[k];
    const double dt = seg.duration / n;
    for (int i = 0; i < n; ++i) {
      const double tm = seg_start + (i + 0.5) * dt;
      const CMat h = hamiltonian_at(s, dims, frame, tm, err, sz);
      u = (mat_exp_hermitian(h, -kI * dt) * u).eval();
      ++step_counter;
      if (step_counter % stride == 0 && step_counter != total_steps) {
        tr.times.push_back(seg_start + (i + 1) * dt);
        tr.states.push_back(u);
      }
    }
    seg_start += seg.duration;
  }
  tr.times.push_back(s.duration());
  tr.states.push_back(u);
  tr.leakage_final = unitary_worst_leakage(u, dims);
  return tr;
}

CMat propagate_unitary_rk4(const PulseSchedule& s, int dims, int steps_per_segment,
                           const QuasiStaticError& err) {
  const BrightFrame frame = s.frame();
  const CMat sz = working_sigma_z(dims, frame);
  CMat u = CMat::Identity(dims, dims);
  if (s.trivial()) return u;
  double seg_start = 0.0;
  for (const auto& seg : s.segments) {
    const double dt = seg.duration / steps_per_segment;
    auto deriv = [&](double t, const CMat& x) -> CMat {
      return -kI * (hamiltonian_at(s, dims, frame, t, err, sz) * x);
    };
    for (int i = 0; i < steps_per_segment; ++i) {
      const double t = seg_start + i * dt;
      const CMat k1 = deriv(t, u);
      const CMat k2 = deriv(t + dt / 2, u + (dt / 2) * k1);
      const CMat k3 = deriv(t + dt / 2, u + (dt / 2) * k2);
      const CMat k4 = deriv(t + dt, u + dt * k3);
      u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    seg_start += seg.duration;
  }
  return u;
}

TrajectoryResult propagate_master(const CMat& rho0, const PulseSchedule& s, const NoiseModel& noise,
                                  int dims, const StepPolicy& policy) {
  if (dims != 2 && dims != 3) throw std::invalid_argument("propagate_master: dims must be 2 or 3");
  if (rho0.rows() != dims || rho0.cols() != dims)
    throw std::invalid_argument("propagate_master: rho0 dimension mismatch");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 || std::abs(rho0.trace().imag()) > 1e-10)
    throw std::invalid_argument("propagate_master: rho0 must have unit trace");
  {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho0);
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw std::invalid_argument("propagate_master: rho0 must be positive semidefinite");
  }
  noise.validate();
  policy.validate();

  const BrightFrame frame = s.frame();
  const CMat sz = working_sigma_z(dims, frame);
  const CMat dephase_op = (dims == 2) ? CMat(pauli_z()) : CMat(spin1_z());
  const double rate = noise.dephasing_rate_e;
  const CMat ll = dephase_op.adjoint() * dephase_op;

  const QuasiStaticError no_err{};
  auto lindblad = [&](double t, const CMat& rho) -> CMat {
    CMat h = s.trivial() ? CMat::Zero(dims, dims) : hamiltonian_at(s, dims, frame, t, no_err, sz);
    CMat d = -kI * (h * rho - rho * h);
    if (rate > 0)
      d += rate * (dephase_op * rho * dephase_op.adjoint() - 0.5 * (ll * rho + rho * ll));
    return d;
  };

  TrajectoryResult tr;
  tr.dims = dims;
  tr.density = true;
  CMat rho = rho0;
  tr.times.push_back(0.0);
  tr.states.push_back(rho);

  const double total = s.trivial() ? 0.0 : s.duration();
  if (total == 0.0) {
    tr.leakage_final = (dims == 3) ? rho(kIdxAncilla, kIdxAncilla).real() : 0.0;
    return tr;
  }

  long total_steps = 0;
  std::vector<int> seg_steps;
  for (const auto& seg : s.segments) {
    const double bound = 0.5 * seg.envelope.peak + rate;
    int n = std::max(policy.min_steps_per_segment,
                     int(std::ceil(seg.duration * std::max(bound, 1e-12) / policy.max_phase)));
    seg_steps.push_back(n);
    total_steps += n;
  }
  const long stride = std::max(1L, total_steps / std::max(1, policy.max_samples - 1));

  double seg_start = 0.0;
  long step_counter = 0;
  for (size_t k = 0; k < s.segments.size(); ++k) {
    const int n = seg_steps[k];
    const double dt = s.segments[k].duration / n;
    for (int i = 0; i < n; ++i) {
      const double t = seg_start + i * dt;
      const CMat k1 = lindblad(t, rho);
      const CMat k2 = lindblad(t + dt / 2, rho + (dt / 2) * k1);
      const CMat k3 = lindblad(t + dt / 2, rho + (dt / 2) * k2);
      const CMat k4 = lindblad(t + dt, rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++step_counter;
      if (step_counter % stride == 0 && step_counter != total_steps) {
        tr.times.push_back(t + dt);
        tr.states.push_back(rho);
      }
    }
    seg_start += s.segments[k].duration;
  }
  tr.times.push_back(total);
  tr.states.push_back(rho);
  tr.leakage_final = (dims == 3) ? rho(kIdxAncilla, kIdxAncilla).real() : 0.0;
  return tr;
}

double leakage(const TrajectoryResult& tr) {
  if (tr.dims != 3 && tr.dims != 9)
    throw std::invalid_argument("leakage: only defined for dims 3 or 9");
  return tr.density ? tr.leakage_final : unitary_worst_leakage(tr.final(), tr.dims);
}

CMat AveragedChannel::apply(const CMat& rho) const {
  const CVec v = Eigen::Map<const CVec>(rho.data(), rho.size());
  const CVec out = superop * v;
  const int d = int(rho.rows());
  return Eigen::Map<const CMat>(out.data(), d, d);
}

AveragedChannel monte_carlo(const PulseSchedule& s, const NoiseModel& noise, int n_shots,
                            uint64_t seed, const StepPolicy& policy, int threads) {
  if (n_shots < 1) throw std::invalid_argument("monte_carlo: n_shots must be >= 1");
  noise.validate();
  const Mat2 target = target_unitary(GateSpec::angles(s.gamma, s.theta, s.phi));

  struct Partial {
    CMat superop = CMat::Zero(4, 4);
    double f_sum = 0;
    double f_sq = 0;
  };
  constexpr int kBlock = 64;  // fixed reduction block, independent of threads
  const int n_blocks = (n_shots + kBlock - 1) / kBlock;
  std::vector<Partial> partials(n_blocks);

  auto run_shot = [&](int shot) -> std::pair<CMat, double> {
    Substream rng(seed, uint64_t(shot));
    QuasiStaticError err;
    err.detuning = noise.detuning_sigma > 0 ? rng.normal() * noise.detuning_sigma : 0.0;
    err.amplitude_scale = 1.0 + (noise.amplitude_rel_sigma > 0 ? rng.normal() * noise.amplitude_rel_sigma : 0.0);
    const TrajectoryResult tr = propagate_unitary(s, 3, policy, err);
    Mat2 block;
    const CMat& u = tr.final();
    block(0, 0) = u(kIdxZero, kIdxZero);
    block(0, 1) = u(kIdxZero, kIdxOne);
    block(1, 0) = u(kIdxOne, kIdxZero);
    block(1, 1) = u(kIdxOne, kIdxOne);
    const CMat sop = kron(block.conjugate(), block);
    return {sop, gate_fidelity(block, target)};
  };

  auto run_block = [&](int b) {
    Partial& acc = partials[b];
    const int lo = b * kBlock;
    const int hi = std::min(n_shots, lo + kBlock);
    for (int shot = lo; shot < hi; ++shot) {
      auto [sop, f] = run_shot(shot);
      acc.superop += sop;
      acc.f_sum += f;
      acc.f_sq += f * f;
    }
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    for (int b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  AveragedChannel avg;
  avg.superop = CMat::Zero(4, 4);
  double fs = 0, fsq = 0;
  for (const auto& part : partials) {  // fixed order reduction
    avg.superop += part.superop;
    fs += part.f_sum;
    fsq += part.f_sq;
  }
  avg.superop /= double(n_shots);
  avg.shots = n_shots;
  avg.fidelity_mean = fs / n_shots;
  avg.fidelity_variance = std::max(0.0, fsq / n_shots - avg.fidelity_mean * avg.fidelity_mean);
  return avg;
}

CMat propagate_hybrid(const SpinSystemParams& p, const std::vector<ConditionalSchedule>& drives,
                      const StepPolicy& policy) {
  policy.validate();
  struct Pair {
    int upper, lower;   // hybrid indices, upper has the larger bare energy
    double freq;        // transition frequency
  };
  std::vector<Pair> pairs;
  for (int m_i : {1, 0, -1}) {
    pairs.push_back({hybrid_index(1, m_i), hybrid_index(0, m_i),
                     hybrid_transition(p, Transition::AncillaToOne, m_i)});
    pairs.push_back({hybrid_index(-1, m_i), hybrid_index(0, m_i),
                     hybrid_transition(p, Transition::ZeroToAncilla, m_i)});
  }

  CMat u = CMat::Identity(9, 9);
  double clock = 0.0;
  for (const auto& drive : drives) {
    const PulseSchedule& s = drive.pulse;
    if (s.trivial()) continue;
    const BrightFrame frame = s.frame();
    const double sin_half = std::sin(frame.theta / 2.0);
    const double cos_half = std::cos(frame.theta / 2.0);

    // Pair-tone terms detuned beyond this are wrong-branch couplings at the
    // electron Zeeman scale; their weight is (Omega/Delta)^2 < 1e-8 here and
    // keeping them would force a step size tracking ~GHz oscillations.
    const double detuning_cutoff = 200.0;
    double max_detuning = 0.0;
    for (const auto& pr : pairs) {
      for (double carrier : {drive.carrier_lower, drive.carrier_upper}) {
        const double d = std::abs(pr.freq - carrier);
        if (d <= detuning_cutoff) max_detuning = std::max(max_detuning, d);
      }
    }

    for (const auto& seg : s.segments) {
      const double bound = 0.5 * seg.envelope.peak;
      int n = std::max(policy.min_steps_per_segment,
                       int(std::ceil(seg.duration * std::max(bound, 1e-12) / policy.max_phase)));
      n = std::max(n, int(std::ceil(seg.duration * max_detuning / 0.05)));
      const double dt = seg.duration / n;
      const double seg_start = clock;
      for (int i = 0; i < n; ++i) {
        const double t = seg_start + (i + 0.5) * dt;  // global clock
        const double tau = t - seg_start;             // within segment
        const double omega_t = seg.envelope.value(tau, seg.duration);
        const double phi2 = seg.phase.at(tau);
        // Two tones (rotating-frame program -> negated lab phases), carriers
        // tied to this drive's manifold.
        const double amp[2] = {omega_t * sin_half, omega_t * cos_half};
        const double carrier[2] = {drive.carrier_lower, drive.carrier_upper};
        const double phase[2] = {-(frame.phi + phi2), -phi2};
        CMat h = CMat::Zero(9, 9);
        for (const auto& pr : pairs) {
          Complex c{0.0, 0.0};
          for (int tone = 0; tone < 2; ++tone) {
            const double delta = pr.freq - carrier[tone];
            if (std::abs(delta) > detuning_cutoff) continue;
            c += 0.5 * amp[tone] * std::exp(kI * (delta * t - phase[tone]));
          }
          h(pr.upper, pr.lower) += c;
          h(pr.lower, pr.upper) += std::conj(c);
        }
        u = (mat_exp_hermitian(h, -kI * dt) * u).eval();
      }
      clock = seg_start + seg.duration;
    }
  }
  return u;
}

}  // namespace holosim
