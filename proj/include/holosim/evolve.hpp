#pragma once

#include <cstdint>
#include <vector>

#include "holosim/gates.hpp"
#include "holosim/noise.hpp"
#include "holosim/pulses.hpp"

namespace holosim {

struct TrajectoryResult {
  std::vector<double> times;
  std::vector<CMat> states;  // unitaries or density matrices at the sample times
  bool density = false;
  int dims = 0;
  double leakage_final = 0;

  const CMat& final() const { return states.back(); }
};

/// Piecewise-constant midpoint exponential stepping of the schedule's Lambda
/// Hamiltonian. dims=2 works in (|b>,|a>), dims=3 embeds the coupling in
/// (|1>,|a>,|0>). Quasi-static errors enter as err.detuning * sigma_z in
/// {|b>,|a>} and a rescaled envelope.
TrajectoryResult propagate_unitary(const PulseSchedule& s, int dims, const StepPolicy& policy,
                                   const QuasiStaticError& err = {});

/// RK4 integration of the Lindblad equation with sigma_z-type dephasing
/// (sigma_z for dims=2, the spin-1 Sz for dims=3), rate noise.dephasing_rate_e.
TrajectoryResult propagate_master(const CMat& rho0, const PulseSchedule& s, const NoiseModel& noise,
                                  int dims, const StepPolicy& policy);

/// Ancilla population at final time; for unitary trajectories the worst case
/// over |0>, |1> and the two equal superpositions. dims must be 3 or 9.
double leakage(const TrajectoryResult& tr);

struct AveragedChannel {
  CMat superop;  // 4x4 qubit-block superoperator, column-major vec convention
  int shots = 0;
  double fidelity_mean = 0;      // average gate fidelity of the qubit block vs target
  double fidelity_variance = 0;
  CMat apply(const CMat& rho) const;
};

/// Seeded Monte Carlo over quasi-static noise; per-shot substreams derive from
/// (seed, shot index) and partial sums reduce in fixed blocks, so the result
/// is bit-identical for any thread count.
AveragedChannel monte_carlo(const PulseSchedule& s, const NoiseModel& noise, int n_shots,
                            uint64_t seed, const StepPolicy& policy = {}, int threads = 1);

/// Interaction-picture propagation of the 9-dim hybrid register under the
/// listed conditional drives, applied sequentially on a global clock.
/// Counter-rotating terms at-carrier are dropped; all cross-manifold
/// co-rotating terms are kept, so hyperfine selectivity errors show up
/// physically.
CMat propagate_hybrid(const SpinSystemParams& p, const std::vector<ConditionalSchedule>& drives,
                      const StepPolicy& policy);

/// RK4 oracle used by tests to cross-check the unitary integrator.
CMat propagate_unitary_rk4(const PulseSchedule& s, int dims, int steps_per_segment,
                           const QuasiStaticError& err = {});

}  // namespace holosim
