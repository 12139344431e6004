#include "holosim/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

bool is_unitary(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  CMat id = CMat::Identity(a.rows(), a.cols());
  return (a.adjoint() * a - id).norm() <= tol * std::sqrt(double(a.rows()));
}

double frobenius_distance(const CMat& a, const CMat& b) { return (a - b).norm(); }

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat mat_exp_hermitian(const CMat& a, Complex scale) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_exp: matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("mat_exp: eigendecomposition failed");
  CVec phases(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) phases(k) = std::exp(scale * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Higham's 2005 scaling-and-squaring with the degree-13 Pade approximant.
// Dimensions here never exceed 16, so no balancing is needed.
CMat mat_exp_pade(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_exp: matrix must be square");
  const Eigen::Index n = m.rows();
  const double theta13 = 5.371920351148152;
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = std::max(0, int(std::ceil(std::log2(norm1 / theta13))));
  CMat a = m / std::pow(2.0, squarings);

  const CMat a2 = a * a;
  const CMat a4 = a2 * a2;
  const CMat a6 = a2 * a4;
  const CMat id = CMat::Identity(n, n);
  CMat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  CMat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  CMat num = v + u;
  CMat den = v - u;
  CMat r = den.partialPivLu().solve(num);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

CMat mat_exp(const CMat& a, Complex scale) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_exp: matrix must be square");
  if (is_hermitian(a, 1e-12)) return mat_exp_hermitian(a, scale);
  return mat_exp_pade(scale * a);
}

const Mat2& pauli_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}
const Mat2& pauli_y() {
  static const Mat2 m = (Mat2() << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)).finished();
  return m;
}
const Mat2& pauli_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}
const Mat2& identity2() {
  static const Mat2 m = Mat2::Identity();
  return m;
}

const Mat3& spin1_z() {
  static const Mat3 m = (Mat3() << 1, 0, 0, 0, 0, 0, 0, 0, -1).finished();
  return m;
}
const Mat3& spin1_x() {
  static const Mat3 m = [] {
    Mat3 x = Mat3::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    x(0, 1) = s; x(1, 0) = s; x(1, 2) = s; x(2, 1) = s;
    return x;
  }();
  return m;
}

}  // namespace holosim
