#pragma once

#include <map>
#include <string>
#include <vector>

#include "holosim/gates.hpp"

namespace holosim {

/// Nearest PSD unit-trace matrix by Hermitization, eigenvalue clipping and
/// trace renormalization.
CMat project_to_density(const CMat& rho);

/// Pauli words over {I,X,Y,Z}; n_qubits 1 or 2 ("XZ" = X on qubit 0 (x) Z on qubit 1).
const std::vector<std::string>& pauli_labels(int n_qubits);
CMat pauli_from_label(const std::string& label);

/// Linear-inversion state tomography rho = (1/d) sum <P> P followed by the
/// PSD projection. Requires the complete non-identity Pauli set (3 or 15
/// expectations); missing settings raise an error listing the absent labels.
CMat qst(const std::map<std::string, double>& expectations, int dim);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const CMat& rho, const CMat& sigma);

// Linear quantum channel as a superoperator on column-major vec(rho).
struct Channel {
  CMat superop;
  int dim = 0;

  CMat apply(const CMat& rho) const;
  Channel then(const Channel& next) const;  // composition: next after this

  static Channel identity(int dim);
  static Channel unitary(const CMat& u);
  static Channel depolarizing(int dim, double p);
};

struct ReadoutModel {
  double contrast = 1.0;   // C: detected rate R = base_rate * (1 - C * P)
  double base_rate = 1.0;  // detection probability per shot at P = 0
};

struct QptOptions {
  long shots = 0;          // 0 = exact expectations
  uint64_t seed = 0;
  ReadoutModel readout;
  double prep_error = 0;   // depolarizing weight mixed into every input state
  double meas_scale = 1;   // multiplies non-identity expectations (SPAM)
};

/// Standard chi-matrix reconstruction in the {I, sx, sy, sz} operator basis
/// from the listed input states, least squares over all Pauli expectations,
/// followed by the PSD/trace-preserving projection. Raises a rank-deficiency
/// error if the inputs do not span the operator space.
CMat qpt(const Channel& channel, const std::vector<CMat>& inputs, const QptOptions& opts = {});

/// chi of a single-qubit unitary (rank one).
CMat chi_of_unitary(const Mat2& u);

/// Alternating projection onto Hermitian PSD matrices and the
/// trace-preservation affine subspace.
CMat project_chi(const CMat& chi);

/// F = |Tr(chi_E chi_id^dag)|.
double process_fidelity(const CMat& chi_e, const CMat& chi_id);

/// Input states generated by the six rotations {I, X/2, X, Y/2, Y, T} on |0>.
std::vector<CMat> six_rotation_inputs();

}  // namespace holosim
