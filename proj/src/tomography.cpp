#include "holosim/tomography.hpp"

#include <cmath>
#include <stdexcept>

#include "holosim/rng.hpp"

namespace holosim {

CMat project_to_density(const CMat& rho) {
  CMat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  const double tr = vals.sum();
  if (tr <= 0) {
    return CMat::Identity(rho.rows(), rho.cols()) / double(rho.rows());
  }
  vals /= tr;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

const std::vector<std::string>& pauli_labels(int n_qubits) {
  static const std::vector<std::string> one = {"I", "X", "Y", "Z"};
  static const std::vector<std::string> two = [] {
    std::vector<std::string> out;
    for (const auto& a : one)
      for (const auto& b : one) out.push_back(a + b);
    return out;
  }();
  if (n_qubits == 1) return one;
  if (n_qubits == 2) return two;
  throw std::invalid_argument("pauli_labels: 1 or 2 qubits");
}

CMat pauli_from_label(const std::string& label) {
  auto single = [](char c) -> Mat2 {
    switch (c) {
      case 'I': return identity2();
      case 'X': return pauli_x();
      case 'Y': return pauli_y();
      case 'Z': return pauli_z();
    }
    throw std::invalid_argument(std::string("pauli_from_label: bad letter '") + c + "'");
  };
  if (label.size() == 1) return single(label[0]);
  if (label.size() == 2) return kron(single(label[0]), single(label[1]));
  throw std::invalid_argument("pauli_from_label: bad label '" + label + "'");
}

CMat qst(const std::map<std::string, double>& expectations, int dim) {
  if (dim != 2 && dim != 4) throw std::invalid_argument("qst: dim must be 2 or 4");
  const int n_qubits = dim == 2 ? 1 : 2;
  std::vector<std::string> missing;
  CMat rho = CMat::Identity(dim, dim);
  for (const auto& label : pauli_labels(n_qubits)) {
    if (label == std::string(size_t(n_qubits), 'I')) continue;
    auto it = expectations.find(label);
    if (it == expectations.end()) {
      missing.push_back(label);
      continue;
    }
    rho += it->second * pauli_from_label(label);
  }
  if (!missing.empty()) {
    std::string msg = "qst: missing measurement settings:";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }
  rho /= double(dim);
  return project_to_density(rho);
}

double state_fidelity(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()));
  const Eigen::VectorXd sqrt_vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMat sqrt_rho = es.eigenvectors() * sqrt_vals.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> inner(sqrt_rho * sigma * sqrt_rho);
  double f = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(1.0, f * f);
}

CMat Channel::apply(const CMat& rho) const {
  const CVec v = Eigen::Map<const CVec>(rho.data(), rho.size());
  const CVec out = superop * v;
  return Eigen::Map<const CMat>(out.data(), dim, dim);
}

Channel Channel::then(const Channel& next) const {
  Channel out;
  out.dim = dim;
  out.superop = next.superop * superop;
  return out;
}

Channel Channel::identity(int dim) {
  Channel c;
  c.dim = dim;
  c.superop = CMat::Identity(dim * dim, dim * dim);
  return c;
}

Channel Channel::unitary(const CMat& u) {
  Channel c;
  c.dim = int(u.rows());
  c.superop = kron(u.conjugate(), u);
  return c;
}

Channel Channel::depolarizing(int dim, double p) {
  Channel c;
  c.dim = dim;
  const CMat id = CMat::Identity(dim, dim);
  const CVec vec_id = Eigen::Map<const CVec>(id.data(), id.size());
  c.superop = (1.0 - p) * CMat::Identity(dim * dim, dim * dim) +
              (p / double(dim)) * (vec_id * vec_id.adjoint());
  return c;
}

namespace {

double sampled_expectation(double exact, long shots, Substream& rng, const ReadoutModel& readout) {
  const double p_plus = 0.5 * (1.0 + exact);
  const double q = std::clamp(readout.base_rate * (1.0 - readout.contrast * p_plus), 0.0, 1.0);
  const long k = rng.binomial(shots, q);
  const double p_hat = (1.0 - double(k) / (double(shots) * readout.base_rate)) / readout.contrast;
  return 2.0 * p_hat - 1.0;
}

// Orthogonal projection of chi onto the affine trace-preservation subspace
// sum_mn chi_mn E_n^dag E_m = I.
CMat project_trace_preserving(const CMat& chi) {
  static const std::vector<Mat2> basis = {identity2(), pauli_x(), pauli_y(), pauli_z()};
  CMat l(4, 16);  // rows: vec index of the 2x2 constraint, cols: (m,n)
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const Mat2 prod = basis[n].adjoint() * basis[m];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) l(2 * j + i, 4 * n + m) = prod(i, j);
    }
  CVec chi_vec(16);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) chi_vec(4 * n + m) = chi(m, n);
  const Mat2 id = identity2();
  CVec target(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) target(2 * j + i) = id(i, j);
  const CVec defect = l * chi_vec - target;
  const CMat gram = l * l.adjoint();
  const CVec corr = l.adjoint() * gram.ldlt().solve(defect);
  const CVec fixed = chi_vec - corr;
  CMat out(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out(m, n) = fixed(4 * n + m);
  return out;
}

CMat clip_psd(const CMat& chi) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (chi + chi.adjoint()));
  const Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMat project_chi(const CMat& chi) {
  CMat out = 0.5 * (chi + chi.adjoint());
  for (int iter = 0; iter < 300; ++iter) {
    out = project_trace_preserving(out);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (out + out.adjoint()));
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig > -1e-12) break;
    out = clip_psd(out);
  }
  return 0.5 * (out + out.adjoint());
}

CMat qpt(const Channel& channel, const std::vector<CMat>& inputs, const QptOptions& opts) {
  if (channel.dim != 2) throw std::invalid_argument("qpt: single-qubit channels only");
  // Completeness: the input density matrices must span the operator space.
  {
    CMat stack(4, Eigen::Index(inputs.size()));
    for (size_t k = 0; k < inputs.size(); ++k)
      stack.col(k) = Eigen::Map<const CVec>(inputs[k].data(), 4);
    Eigen::JacobiSVD<CMat> svd(stack);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank;
    if (rank < 4)
      throw std::invalid_argument("qpt: input set is rank-deficient (rank " + std::to_string(rank) +
                                  " of 4); add linearly independent preparations");
  }

  static const std::vector<Mat2> basis = {identity2(), pauli_x(), pauli_y(), pauli_z()};
  const auto& labels = pauli_labels(1);

  Substream rng(opts.seed, 0xA11CE);
  const Channel prep_noise = Channel::depolarizing(2, opts.prep_error);

  const Eigen::Index rows = Eigen::Index(inputs.size() * 4);
  CMat a(rows, 16);
  CVec b(rows);
  Eigen::Index row = 0;
  for (const auto& input : inputs) {
    const CMat rho_in = opts.prep_error > 0 ? prep_noise.apply(input) : input;
    const CMat rho_out = channel.apply(rho_in);
    for (size_t j = 0; j < labels.size(); ++j) {
      const CMat pj = pauli_from_label(labels[j]);
      double meas = (pj * rho_out).trace().real();
      if (labels[j] != "I") {
        meas *= opts.meas_scale;
        if (opts.shots > 0) meas = sampled_expectation(meas, opts.shots, rng, opts.readout);
      }
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          a(row, 4 * n + m) = (pj * basis[m] * input * basis[n].adjoint()).trace();
      b(row) = meas;
      ++row;
    }
  }
  const CVec chi_vec = a.colPivHouseholderQr().solve(b);
  CMat chi(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) chi(m, n) = chi_vec(4 * n + m);
  return project_chi(chi);
}

CMat chi_of_unitary(const Mat2& u) {
  static const std::vector<Mat2> basis = {identity2(), pauli_x(), pauli_y(), pauli_z()};
  CVec coeff(4);
  for (int m = 0; m < 4; ++m) coeff(m) = 0.5 * (basis[m].adjoint() * u).trace();
  return coeff * coeff.adjoint();
}

double process_fidelity(const CMat& chi_e, const CMat& chi_id) {
  if (chi_e.rows() != chi_id.rows()) throw std::invalid_argument("process_fidelity: dimension mismatch");
  return std::abs((chi_e * chi_id.adjoint()).trace());
}

std::vector<CMat> six_rotation_inputs() {
  std::vector<CMat> inputs;
  CVec zero(2);
  zero << 1.0, 0.0;
  for (const auto& name : GateSpec::six_gate_names()) {
    const Mat2 u = target_unitary(GateSpec::named(name));
    const CVec psi = u * zero;
    inputs.push_back(psi * psi.adjoint());
  }
  return inputs;
}

}  // namespace holosim
