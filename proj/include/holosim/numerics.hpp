#pragma once

#include <complex>
#include <Eigen/Dense>

namespace holosim {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

// Default tolerances shared across modules: algebraic identities are held to
// 1e-10, unitarity of propagators to 1e-12 (Frobenius).
inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kUnitarityTol = 1e-12;

bool is_hermitian(const CMat& a, double tol = kAlgebraTol);
bool is_unitary(const CMat& a, double tol = kUnitarityTol);

double frobenius_distance(const CMat& a, const CMat& b);

/// Kronecker product, row-major index convention: (i1*rowsB+i2, j1*colsB+j2).
CMat kron(const CMat& a, const CMat& b);

/// exp(scale*a). Hermitian inputs go through an eigendecomposition, anything
/// else through Pade scaling-and-squaring. Throws std::invalid_argument for
/// non-square input.
CMat mat_exp(const CMat& a, Complex scale = Complex{1.0, 0.0});

/// Eigendecomposition route; requires a Hermitian (checked to 1e-12).
CMat mat_exp_hermitian(const CMat& a, Complex scale);

/// Pade-13 scaling-and-squaring of exp(m), no symmetry assumed.
CMat mat_exp_pade(const CMat& m);

const Mat2& pauli_x();
const Mat2& pauli_y();
const Mat2& pauli_z();
const Mat2& identity2();

/// Spin-1 operators in the (+1, 0, -1) basis.
const Mat3& spin1_z();
const Mat3& spin1_x();

}  // namespace holosim
